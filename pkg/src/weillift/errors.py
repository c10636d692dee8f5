"""Exception types raised by the weillift core.

Construction errors carry the first offending index tuple in ``where`` so a
failure can be located without re-running the check.
"""


class WeilliftError(Exception):
    """Base class for all weillift errors."""

    def __init__(self, message: str, where=None):
        super().__init__(message)
        self.where = where


class AlgebraError(WeilliftError):
    """Invalid multiplication table or algebra-level data."""


class NotCommutative(AlgebraError):
    pass


class NotAssociative(AlgebraError):
    pass


class BadUnit(AlgebraError):
    pass


class NotJordanHolder(AlgebraError):
    pass


class NotNilpotent(AlgebraError):
    pass


class DimensionMismatch(WeilliftError):
    pass


class NotFrobenius(AlgebraError):
    pass


class HeightIdealNotLine(AlgebraError):
    pass


class PVanishesOnTop(AlgebraError):
    pass


class IndexOutOfRange(WeilliftError):
    pass


class VarCountMismatch(WeilliftError):
    pass


class NotASmooth(WeilliftError):
    pass


class NoInverseProvided(WeilliftError):
    pass


class VarianceMismatch(WeilliftError):
    pass


class DegreeMismatch(WeilliftError):
    pass


class DegreeOverflow(WeilliftError):
    pass


class PatchMismatch(WeilliftError):
    pass


class NotVectorField(WeilliftError):
    pass


class NotVerified(WeilliftError):
    pass


class AlgebraMismatch(WeilliftError):
    pass


class SpecError(WeilliftError):
    """Problems with input documents, tagged with a path into the document."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(message)
        self.path = path

    def __str__(self):
        base = super().__str__()
        return f"{base} (at {self.path})" if self.path else base


class ParseError(SpecError):
    pass


class UnknownReference(SpecError):
    pass


class BadRational(SpecError):
    pass
