"""Exact multivariate polynomials over the rationals.

A polynomial is stored as a map from exponent vectors (tuples of non-negative
ints, one slot per variable) to nonzero ``Fraction`` coefficients.  All
arithmetic is exact; equality is equality of the canonical term maps.
Printing uses graded-lexicographic term order so renderings are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import IndexOutOfRange, VarCountMismatch

Rat = Fraction


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class Polynomial:
    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Mapping[tuple, object] | None = None):
        if num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        self.num_vars = num_vars
        clean: dict[tuple, Fraction] = {}
        if terms:
            for expo, coeff in terms.items():
                expo = tuple(int(e) for e in expo)
                if len(expo) != num_vars:
                    raise VarCountMismatch(
                        f"exponent vector {expo} has {len(expo)} entries, expected {num_vars}"
                    )
                if any(e < 0 for e in expo):
                    raise ValueError(f"negative exponent in {expo}")
                c = _as_fraction(coeff)
                if c != 0:
                    c0 = clean.get(expo)
                    c = c if c0 is None else c0 + c
                    if c != 0:
                        clean[expo] = c
                    elif expo in clean:
                        del clean[expo]
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "Polynomial":
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, value) -> "Polynomial":
        c = _as_fraction(value)
        if c == 0:
            return cls(num_vars)
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "Polynomial":
        if not 0 <= index < num_vars:
            raise IndexOutOfRange(f"variable index {index} out of range 0..{num_vars - 1}")
        expo = tuple(1 if k == index else 0 for k in range(num_vars))
        return cls(num_vars, {expo: Fraction(1)})

    @classmethod
    def monomial(cls, num_vars: int, expo: Sequence[int], coeff=1) -> "Polynomial":
        return cls(num_vars, {tuple(expo): _as_fraction(coeff)})

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in expo) for expo in self.terms)

    def total_degree(self) -> int:
        """Degree of the zero polynomial is reported as -1."""
        if not self.terms:
            return -1
        return max(sum(expo) for expo in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.num_vars, Fraction(0))

    # -- ring operations ----------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.num_vars != other.num_vars:
            raise VarCountMismatch(
                f"operands have {self.num_vars} and {other.num_vars} variables"
            )

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.num_vars, other)
        self._check_compatible(other)
        terms = dict(self.terms)
        for expo, c in other.terms.items():
            s = terms.get(expo, Fraction(0)) + c
            if s == 0:
                terms.pop(expo, None)
            else:
                terms[expo] = s
        out = Polynomial.__new__(Polynomial)
        out.num_vars = self.num_vars
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial.__new__(Polynomial)
        out.num_vars = self.num_vars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.num_vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _as_fraction(other)
            if c == 0:
                return Polynomial(self.num_vars)
            out = Polynomial.__new__(Polynomial)
            out.num_vars = self.num_vars
            out.terms = {e: k * c for e, k in self.terms.items()}
            return out
        self._check_compatible(other)
        acc: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(expo, Fraction(0)) + c1 * c2
                if s == 0:
                    acc.pop(expo, None)
                else:
                    acc[expo] = s
        out = Polynomial.__new__(Polynomial)
        out.num_vars = self.num_vars
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus -----------------------------------------------------------

    def diff(self, index: int) -> "Polynomial":
        """Formal partial derivative with respect to the ``index``-th variable."""
        if not 0 <= index < self.num_vars:
            raise IndexOutOfRange(f"variable index {index} out of range 0..{self.num_vars - 1}")
        acc: dict[tuple, Fraction] = {}
        for expo, c in self.terms.items():
            e = expo[index]
            if e == 0:
                continue
            new = list(expo)
            new[index] = e - 1
            acc[tuple(new)] = c * e
        out = Polynomial.__new__(Polynomial)
        out.num_vars = self.num_vars
        out.terms = acc
        return out

    def compose(self, args: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``args[i]`` for variable ``i``.  All args must share a
        common variable count, which becomes the variable count of the result."""
        if len(args) != self.num_vars:
            raise VarCountMismatch(
                f"need {self.num_vars} substitution arguments, got {len(args)}"
            )
        if self.num_vars == 0:
            return Polynomial(0, dict(self.terms))
        out_vars = args[0].num_vars
        for g in args:
            if g.num_vars != out_vars:
                raise VarCountMismatch("substitution arguments disagree on variable count")
        result = Polynomial(out_vars)
        # Cache powers of each argument since exponents repeat across terms.
        powers: list[dict[int, Polynomial]] = [
            {0: Polynomial.constant(out_vars, 1)} for _ in args
        ]
        for expo, c in self.terms.items():
            term = Polynomial.constant(out_vars, c)
            for i, e in enumerate(expo):
                if e == 0:
                    continue
                cache = powers[i]
                if e not in cache:
                    prev = max(k for k in cache if k <= e)
                    val = cache[prev]
                    for _ in range(prev, e):
                        val = val * args[i]
                    cache[e] = val
                term = term * cache[e]
            result = result + term
        return result

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.num_vars:
            raise VarCountMismatch(f"need {self.num_vars} coordinates, got {len(point)}")
        pt = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for expo, c in self.terms.items():
            val = c
            for x, e in zip(pt, expo):
                if e:
                    val *= x**e
            total += val
        return total

    def rename_into(self, num_vars: int, positions: Sequence[int]) -> "Polynomial":
        """Re-embed into a ring with ``num_vars`` variables, sending old
        variable ``i`` to new variable ``positions[i]``."""
        if len(positions) != self.num_vars:
            raise VarCountMismatch("positions must list one slot per variable")
        acc: dict[tuple, Fraction] = {}
        for expo, c in self.terms.items():
            new = [0] * num_vars
            for i, e in enumerate(expo):
                if e:
                    new[positions[i]] += e
            acc[tuple(new)] = acc.get(tuple(new), Fraction(0)) + c
        return Polynomial(num_vars, acc)

    # -- comparison / hashing / printing -------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.num_vars == other.num_vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.num_vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.num_vars)]
        chunks = []
        for expo, c in self.sorted_terms():
            factors = [
                names[i] if e == 1 else f"{names[i]}^{e}"
                for i, e in enumerate(expo)
                if e
            ]
            if not factors:
                chunks.append(str(c))
            elif c == 1:
                chunks.append("*".join(factors))
            elif c == -1:
                chunks.append("-" + "*".join(factors))
            else:
                chunks.append(f"{c}*" + "*".join(factors))
        text = chunks[0]
        for chunk in chunks[1:]:
            text += " - " + chunk[1:] if chunk.startswith("-") else " + " + chunk
        return text

    def __repr__(self):
        return f"Polynomial({self.num_vars}, {self.render()})"


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_diff(f: Polynomial, index: int) -> Polynomial:
    return f.diff(index)


def poly_compose(f: Polynomial, args: Sequence[Polynomial]) -> Polynomial:
    return f.compose(args)


def poly_eval(f: Polynomial, point: Sequence) -> Fraction:
    return f.evaluate(point)


def random_polynomial(rng, num_vars: int, max_degree: int, max_terms: int = 4,
                      coeff_pool: Iterable[int] = (-3, -2, -1, 1, 2, 3)) -> Polynomial:
    """Small random polynomial for property checks; may be zero."""
    pool = list(coeff_pool)
    terms: dict[tuple, Fraction] = {}
    for _ in range(rng.randint(1, max_terms)):
        expo = [0] * num_vars
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            expo[rng.randrange(num_vars)] += 1
        c = Fraction(rng.choice(pool))
        key = tuple(expo)
        terms[key] = terms.get(key, Fraction(0)) + c
    return Polynomial(num_vars, terms)
