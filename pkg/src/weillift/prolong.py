"""Prolongation of polynomial functions and maps to algebra-valued functions.

A function on the bundle over an ``m``-dimensional patch is stored as
``n + 1`` component polynomials in the ``m * (n + 1)`` fibered variables.
The flat variable ordering is fixed project-wide: base index ``i`` and
algebra slot ``a`` map to flat position ``i * (n + 1) + a`` (all 0-based).

Two independent constructions of the prolongation are provided and used as
mutual oracles: direct substitution of algebra-valued arguments into the
polynomial, and the truncated Taylor expansion over the nilpotent part.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .algebra import AlgebraElement, WeilAlgebra
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NoInverseProvided,
    NotASmooth,
    VarCountMismatch,
)
from .poly import Polynomial


def flat_index(i: int, a: int, width: int) -> int:
    return i * width + a


def flat_vars(base_dim: int, width: int) -> int:
    return base_dim * width


class AFunction:
    """An algebra-valued polynomial function of algebra-valued arguments."""

    __slots__ = ("base_dim", "algebra", "components")

    def __init__(self, base_dim: int, algebra: WeilAlgebra, components: Sequence[Polynomial]):
        width = algebra.dim_total
        if len(components) != width:
            raise DimensionMismatch(
                f"need {width} component polynomials, got {len(components)}"
            )
        nvars = flat_vars(base_dim, width)
        for comp in components:
            if comp.num_vars != nvars:
                raise VarCountMismatch(
                    f"components must live in {nvars} variables, got {comp.num_vars}"
                )
        self.base_dim = base_dim
        self.algebra = algebra
        self.components = tuple(components)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, base_dim: int, algebra: WeilAlgebra) -> "AFunction":
        nvars = flat_vars(base_dim, algebra.dim_total)
        return cls(base_dim, algebra, [Polynomial.zero(nvars)] * algebra.dim_total)

    @classmethod
    def constant(cls, base_dim: int, algebra: WeilAlgebra, value) -> "AFunction":
        nvars = flat_vars(base_dim, algebra.dim_total)
        comps = [Polynomial.zero(nvars) for _ in range(algebra.dim_total)]
        comps[0] = Polynomial.constant(nvars, value)
        return cls(base_dim, algebra, comps)

    @classmethod
    def from_element(cls, base_dim: int, element: AlgebraElement) -> "AFunction":
        nvars = flat_vars(base_dim, element.algebra.dim_total)
        comps = [Polynomial.constant(nvars, c) for c in element.coords]
        return cls(base_dim, element.algebra, comps)

    @classmethod
    def coordinate(cls, base_dim: int, algebra: WeilAlgebra, i: int) -> "AFunction":
        """The algebra-valued coordinate function ``X^i = sum_a x^{ia} e_a``."""
        width = algebra.dim_total
        nvars = flat_vars(base_dim, width)
        comps = [
            Polynomial.variable(nvars, flat_index(i, a, width)) for a in range(width)
        ]
        return cls(base_dim, algebra, comps)

    @classmethod
    def nil_coordinate(cls, base_dim: int, algebra: WeilAlgebra, i: int) -> "AFunction":
        """The nilpotent part of ``X^i`` (slot 0 removed)."""
        width = algebra.dim_total
        nvars = flat_vars(base_dim, width)
        comps = [Polynomial.zero(nvars)]
        comps += [
            Polynomial.variable(nvars, flat_index(i, a, width)) for a in range(1, width)
        ]
        return cls(base_dim, algebra, comps)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "AFunction"):
        if self.base_dim != other.base_dim or self.algebra != other.algebra:
            raise DimensionMismatch("operands live on different bundles")

    def __add__(self, other: "AFunction") -> "AFunction":
        self._check(other)
        return AFunction(
            self.base_dim,
            self.algebra,
            [a + b for a, b in zip(self.components, other.components)],
        )

    def __sub__(self, other: "AFunction") -> "AFunction":
        self._check(other)
        return AFunction(
            self.base_dim,
            self.algebra,
            [a - b for a, b in zip(self.components, other.components)],
        )

    def __neg__(self) -> "AFunction":
        return AFunction(self.base_dim, self.algebra, [-c for c in self.components])

    def __mul__(self, other: "AFunction") -> "AFunction":
        self._check(other)
        width = self.algebra.dim_total
        gamma = self.algebra.gamma
        nvars = flat_vars(self.base_dim, width)
        acc = [Polynomial.zero(nvars) for _ in range(width)]
        for a in range(width):
            fa = self.components[a]
            if fa.is_zero():
                continue
            for b in range(width):
                gb = other.components[b]
                if gb.is_zero():
                    continue
                prod = fa * gb
                for c in range(width):
                    coeff = gamma[a][b][c]
                    if coeff != 0:
                        acc[c] = acc[c] + prod * coeff
        return AFunction(self.base_dim, self.algebra, acc)

    def scale_poly(self, poly: Polynomial) -> "AFunction":
        return AFunction(self.base_dim, self.algebra, [c * poly for c in self.components])

    def scale(self, value) -> "AFunction":
        c = Fraction(value)
        return AFunction(self.base_dim, self.algebra, [comp * c for comp in self.components])

    def mul_element(self, element: AlgebraElement) -> "AFunction":
        if element.algebra != self.algebra:
            raise DimensionMismatch("element belongs to a different algebra")
        return self * AFunction.from_element(self.base_dim, element)

    def power(self, k: int) -> "AFunction":
        out = AFunction.constant(self.base_dim, self.algebra, 1)
        for _ in range(k):
            out = out * self
        return out

    def compose_flat(self, args: Sequence[Polynomial]) -> "AFunction":
        """Substitute polynomials for every flat variable, componentwise."""
        return AFunction(
            # base_dim of the result is determined by the substituted variables
            args[0].num_vars // self.algebra.dim_total,
            self.algebra,
            [c.compose(args) for c in self.components],
        )

    def diff_flat(self, flat: int) -> "AFunction":
        return AFunction(self.base_dim, self.algebra, [c.diff(flat) for c in self.components])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        return (
            isinstance(other, AFunction)
            and self.base_dim == other.base_dim
            and self.algebra == other.algebra
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.base_dim, self.algebra, self.components))

    def __repr__(self):
        comps = ", ".join(c.render() for c in self.components)
        return f"AFunction[{comps}]"


# -- prolongation ---------------------------------------------------------------


def prolong_scalar(f: Polynomial, algebra: WeilAlgebra) -> AFunction:
    """Prolong by substituting algebra-valued coordinates into ``f``.

    This is the substitution-homomorphism route: every monomial of ``f`` is
    evaluated on the ``X^i`` with algebra multiplication.
    """
    m = f.num_vars
    coords = [AFunction.coordinate(m, algebra, i) for i in range(m)]
    powers: list[dict[int, AFunction]] = [
        {0: AFunction.constant(m, algebra, 1)} for _ in range(m)
    ]

    def coord_power(i: int, e: int) -> AFunction:
        cache = powers[i]
        if e not in cache:
            best = max(k for k in cache if k <= e)
            val = cache[best]
            for _ in range(best, e):
                val = val * coords[i]
            cache[e] = val
        return cache[e]

    out = AFunction.zero(m, algebra)
    for expo, c in f.terms.items():
        term = AFunction.constant(m, algebra, c)
        for i, e in enumerate(expo):
            if e:
                term = term * coord_power(i, e)
        out = out + term
    return out


def _multi_indices(m: int, total: int):
    if m == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _multi_indices(m - 1, total - head):
            yield (head,) + rest


def prolong_scalar_taylor(f: Polynomial, algebra: WeilAlgebra) -> AFunction:
    """Prolong by the truncated Taylor expansion around the base slot.

    Terms beyond the algebra height vanish because the nilpotent coordinate
    parts multiply to zero; the expansion is cut there explicitly.
    """
    m = f.num_vars
    width = algebra.dim_total
    nvars = flat_vars(m, width)
    base_slot = [Polynomial.variable(nvars, flat_index(i, 0, width)) for i in range(m)]

    comps = [Polynomial.zero(nvars) for _ in range(width)]
    comps[0] = f.compose(base_slot)
    out = AFunction(m, algebra, comps)

    nil = [AFunction.nil_coordinate(m, algebra, i) for i in range(m)]
    for total in range(1, algebra.height + 1):
        for p in _multi_indices(m, total):
            deriv = f
            denom = 1
            for i, k in enumerate(p):
                denom *= factorial(k)
                for _ in range(k):
                    deriv = deriv.diff(i)
                    if deriv.is_zero():
                        break
                if deriv.is_zero():
                    break
            if deriv.is_zero():
                continue
            coeff = deriv.compose(base_slot) * Fraction(1, denom)
            term = AFunction.constant(m, algebra, 1)
            for i, k in enumerate(p):
                if k:
                    term = term * nil[i].power(k)
            out = out + term.scale_poly(coeff)
    return out


def scheffers_failure(func: AFunction) -> Optional[tuple]:
    """First ``(component, base index, slot)`` violating the smoothness
    equations, or None when the function is algebra-differentiable."""
    width = func.algebra.dim_total
    gamma = func.algebra.gamma
    base_partials = [
        [func.components[c].diff(flat_index(i, 0, width)) for c in range(width)]
        for i in range(func.base_dim)
    ]
    for b in range(width):
        for i in range(func.base_dim):
            for a in range(width):
                lhs = func.components[b].diff(flat_index(i, a, width))
                rhs = Polynomial.zero(lhs.num_vars)
                for c in range(width):
                    coeff = gamma[a][c][b]
                    if coeff != 0:
                        rhs = rhs + base_partials[i][c] * coeff
                if lhs != rhs:
                    return (b, i, a)
    return None


def check_scheffers(func: AFunction) -> tuple[bool, Optional[tuple]]:
    where = scheffers_failure(func)
    return (where is None, where)


def a_derivative(func: AFunction, i: int) -> AFunction:
    """Partial derivative with respect to the ``i``-th algebra-valued argument."""
    if i < 0 or i >= func.base_dim:
        raise IndexOutOfRange(f"base index {i} out of range 0..{func.base_dim - 1}")
    where = scheffers_failure(func)
    if where is not None:
        raise NotASmooth(f"function is not algebra-differentiable, first failure at {where}",
                         where=where)
    width = func.algebra.dim_total
    return AFunction(
        func.base_dim,
        func.algebra,
        [c.diff(flat_index(i, 0, width)) for c in func.components],
    )


# -- chart maps -------------------------------------------------------------------


class ChartMap:
    """A polynomial map between coordinate patches, optionally invertible.

    When an inverse is supplied both round trips are checked to be the
    identity exactly; coordinate changes require it.
    """

    __slots__ = ("source_dim", "target_dim", "components", "inverse_components")

    def __init__(self, source_dim: int, target_dim: int,
                 components: Sequence[Polynomial],
                 inverse_components: Optional[Sequence[Polynomial]] = None):
        if len(components) != target_dim:
            raise VarCountMismatch("one component per target coordinate required")
        for comp in components:
            if comp.num_vars != source_dim:
                raise VarCountMismatch("components must be polynomials in the source variables")
        self.source_dim = source_dim
        self.target_dim = target_dim
        self.components = tuple(components)
        if inverse_components is None:
            self.inverse_components = None
        else:
            if source_dim != target_dim:
                raise VarCountMismatch("only square maps can carry an inverse")
            if len(inverse_components) != source_dim:
                raise VarCountMismatch("one inverse component per source coordinate required")
            for comp in inverse_components:
                if comp.num_vars != target_dim:
                    raise VarCountMismatch(
                        "inverse components must be polynomials in the target variables"
                    )
            self.inverse_components = tuple(inverse_components)
            for k in range(target_dim):
                fwd = self.components[k].compose(self.inverse_components)
                if fwd != Polynomial.variable(target_dim, k):
                    raise VarCountMismatch(
                        f"supplied inverse is not a right inverse at component {k}"
                    )
            for k in range(source_dim):
                back = self.inverse_components[k].compose(self.components)
                if back != Polynomial.variable(source_dim, k):
                    raise VarCountMismatch(
                        f"supplied inverse is not a left inverse at component {k}"
                    )

    @classmethod
    def identity(cls, dim: int) -> "ChartMap":
        comps = [Polynomial.variable(dim, k) for k in range(dim)]
        return cls(dim, dim, comps, comps)

    def require_inverse(self):
        if self.inverse_components is None:
            raise NoInverseProvided("this operation needs an invertible chart map")

    def inverse_map(self) -> "ChartMap":
        self.require_inverse()
        return ChartMap(self.target_dim, self.source_dim,
                        self.inverse_components, self.components)

    def jacobian(self) -> list[list[Polynomial]]:
        return [
            [self.components[k].diff(i) for i in range(self.source_dim)]
            for k in range(self.target_dim)
        ]

    def apply(self, point: Sequence) -> list:
        return [c.evaluate(point) for c in self.components]

    def __eq__(self, other):
        return (
            isinstance(other, ChartMap)
            and self.source_dim == other.source_dim
            and self.components == other.components
            and self.inverse_components == other.inverse_components
        )

    def __repr__(self):
        return f"ChartMap({self.source_dim}->{self.target_dim})"


def prolong_chart_map(chart: ChartMap, algebra: WeilAlgebra) -> ChartMap:
    """Flattened prolongation of an invertible chart map and of its inverse."""
    chart.require_inverse()
    width = algebra.dim_total

    def flatten(components: Sequence[Polynomial]) -> list[Polynomial]:
        flat: list[Polynomial] = []
        for comp in components:
            lifted = prolong_scalar(comp, algebra)
            flat.extend(lifted.components)
        return flat

    return ChartMap(
        flat_vars(chart.source_dim, width),
        flat_vars(chart.target_dim, width),
        flatten(chart.components),
        flatten(chart.inverse_components),
    )
