"""Weil algebras given by structure constants, and Frobenius covectors.

A Weil algebra here is a finite-dimensional commutative associative unital
algebra over the rationals whose basis ``e_0 = 1, e_1, ..., e_n`` is adapted
to a maximal chain of ideals: products of two nilpotent basis vectors only
involve basis vectors of strictly larger index.  The multiplication table
``gamma[a][b][c]`` holds the coefficient of ``e_c`` in ``e_a * e_b``.

Attaching a covector ``p`` with nondegenerate pairing ``q(x, y) = p(x * y)``
produces a :class:`FrobeniusStructure`, the engine that turns algebra-valued
tensors into real ones.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (
    BadUnit,
    DimensionMismatch,
    HeightIdealNotLine,
    IndexOutOfRange,
    NotAssociative,
    NotCommutative,
    NotFrobenius,
    NotJordanHolder,
    NotNilpotent,
    PVanishesOnTop,
    AlgebraError,
)


def _to_fraction_cube(dim: int, gamma) -> tuple:
    if len(gamma) != dim:
        raise ValueError(f"gamma must have shape {dim}^3")
    cube = []
    for a in range(dim):
        if len(gamma[a]) != dim:
            raise ValueError(f"gamma must have shape {dim}^3")
        plane = []
        for b in range(dim):
            if len(gamma[a][b]) != dim:
                raise ValueError(f"gamma must have shape {dim}^3")
            plane.append(tuple(Fraction(v) for v in gamma[a][b]))
        cube.append(tuple(plane))
    return tuple(cube)


class WeilAlgebra:
    """Validated multiplication table plus derived filtration data."""

    __slots__ = ("dim_total", "gamma", "nil_dim", "height", "power_dims")

    def __init__(self, dim_total: int, gamma, height: int, power_dims: tuple):
        self.dim_total = dim_total
        self.gamma = gamma
        self.nil_dim = dim_total - 1
        self.height = height
        self.power_dims = power_dims

    # Elements ---------------------------------------------------------------

    def element(self, coords: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(Fraction(c) for c in coords))

    def unit(self) -> "AlgebraElement":
        return self.basis_element(0)

    def zero(self) -> "AlgebraElement":
        return self.element([0] * self.dim_total)

    def basis_element(self, a: int) -> "AlgebraElement":
        if not 0 <= a < self.dim_total:
            raise IndexOutOfRange(f"basis index {a} out of range 0..{self.dim_total - 1}")
        return self.element([1 if k == a else 0 for k in range(self.dim_total)])

    def unit_coords(self) -> tuple:
        return tuple(Fraction(1) if a == 0 else Fraction(0) for a in range(self.dim_total))

    def mul_coords(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple:
        gamma = self.gamma
        dim = self.dim_total
        out = [Fraction(0)] * dim
        for a in range(dim):
            xa = x[a]
            if xa == 0:
                continue
            row = gamma[a]
            for b in range(dim):
                yb = y[b]
                if yb == 0:
                    continue
                coeffs = row[b]
                s = xa * yb
                for c in range(dim):
                    if coeffs[c] != 0:
                        out[c] += s * coeffs[c]
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, WeilAlgebra) and self.gamma == other.gamma

    def __hash__(self):
        return hash(self.gamma)

    def __repr__(self):
        return (
            f"WeilAlgebra(dim={self.dim_total}, height={self.height}, "
            f"power_dims={self.power_dims})"
        )


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: WeilAlgebra, coords: tuple):
        if len(coords) != algebra.dim_total:
            raise DimensionMismatch(
                f"element has {len(coords)} coordinates, algebra dimension is {algebra.dim_total}"
            )
        self.algebra = algebra
        self.coords = coords

    def _check(self, other: "AlgebraElement"):
        if self.algebra != other.algebra:
            raise DimensionMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(
            self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(
            self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra, self.algebra.mul_coords(self.coords, other.coords))
        c = Fraction(other)
        return AlgebraElement(self.algebra, tuple(a * c for a in self.coords))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.algebra.unit()
        for _ in range(k):
            out = out * self
        return out

    def real_part(self) -> Fraction:
        return self.coords[0]

    def nil_part(self) -> "AlgebraElement":
        return AlgebraElement(
            self.algebra,
            (Fraction(0),) + self.coords[1:],
        )

    def is_nilpotent(self) -> bool:
        return self.coords[0] == 0

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.algebra == other.algebra
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.algebra, self.coords))

    def __repr__(self):
        return f"AlgebraElement({list(self.coords)})"


# -- construction -------------------------------------------------------------


def build_plural(n: int) -> WeilAlgebra:
    """Truncated polynomials in one nilpotent generator of height ``n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    dim = n + 1
    gamma = [
        [[1 if a + b == c else 0 for c in range(dim)] for b in range(dim)]
        for a in range(dim)
    ]
    return build_from_constants(dim, gamma)


def build_from_constants(dim: int, gamma) -> WeilAlgebra:
    """Validate a multiplication table and compute the nilpotent filtration.

    The checks run in a fixed order and report the first offending index
    tuple: commutativity, associativity, unit row, triangularity of the
    nilpotent block, nilpotency of the ideal spanned by e_1..e_n.
    """
    if dim < 1:
        raise ValueError("dim must be at least 1")
    cube = _to_fraction_cube(dim, gamma)

    for a in range(dim):
        for b in range(a + 1, dim):
            for c in range(dim):
                if cube[a][b][c] != cube[b][a][c]:
                    raise NotCommutative(
                        f"gamma[{a}][{b}][{c}] != gamma[{b}][{a}][{c}]", where=(a, b, c)
                    )

    for a in range(dim):
        for e in range(dim):
            for f in range(dim):
                for c in range(dim):
                    lhs = sum(cube[a][b][c] * cube[e][f][b] for b in range(dim))
                    rhs = sum(cube[a][e][b] * cube[b][f][c] for b in range(dim))
                    if lhs != rhs:
                        raise NotAssociative(
                            f"associativity fails at (a,e,f,c)=({a},{e},{f},{c})",
                            where=(a, e, f, c),
                        )

    for a in range(dim):
        for b in range(dim):
            expected = Fraction(1) if a == b else Fraction(0)
            if cube[0][a][b] != expected:
                raise BadUnit(f"e_0 is not the unit: gamma[0][{a}][{b}] != {expected}",
                              where=(0, a, b))

    for a in range(1, dim):
        for b in range(1, dim):
            for c in range(max(a, b) + 1):
                if cube[a][b][c] != 0:
                    raise NotJordanHolder(
                        f"gamma[{a}][{b}][{c}] != 0 breaks basis triangularity",
                        where=(a, b, c),
                    )

    algebra = WeilAlgebra(dim, cube, 0, (1,))
    height, power_dims = _filtration(algebra)
    return WeilAlgebra(dim, cube, height, power_dims)


def _filtration(algebra: WeilAlgebra) -> tuple[int, tuple]:
    dim = algebra.dim_total
    n = dim - 1
    if n == 0:
        return 0, (1,)
    nil_basis = [
        [Fraction(1) if k == a else Fraction(0) for k in range(dim)]
        for a in range(1, dim)
    ]
    dims = [n]  # dims[k-1] = dim of the k-th ideal power
    current = nil_basis
    for _ in range(dim + 1):
        products = []
        for u in current:
            for v in nil_basis:
                w = algebra.mul_coords(u, v)
                if any(c != 0 for c in w):
                    products.append(list(w))
        r = linalg.rank(products)
        if r == 0:
            height = len(dims)
            dims.append(0)
            power_dims = [1] + [dims[k] - dims[k + 1] for k in range(height)]
            if sum(power_dims) != dim:
                raise AlgebraError("filtration dimensions do not add up")
            return height, tuple(power_dims)
        dims.append(r)
        current = products
    raise NotNilpotent("nilpotent ideal power chain does not terminate")


# -- element-level operations --------------------------------------------------


def multiply(algebra: WeilAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.algebra != algebra or y.algebra != algebra:
        raise DimensionMismatch("elements do not belong to the given algebra")
    return x * y


def basis_product_coeffs(algebra: WeilAlgebra, indices: Sequence[int]) -> tuple:
    """Coordinates of ``e_{a_1} * ... * e_{a_k}``; ``k = 1`` gives a unit vector."""
    if len(indices) < 1:
        raise IndexOutOfRange("need at least one basis index")
    for a in indices:
        if not 0 <= a < algebra.dim_total:
            raise IndexOutOfRange(f"basis index {a} out of range 0..{algebra.dim_total - 1}")
    coords = algebra.basis_element(indices[0]).coords
    for a in indices[1:]:
        coords = algebra.mul_coords(coords, algebra.basis_element(a).coords)
    return coords


# -- Frobenius structure -------------------------------------------------------


class FrobeniusStructure:
    """A Weil algebra together with a normalized Frobenius covector.

    Stores the pairing matrix ``q_lower``, its inverse ``q_upper``, the dual
    basis rows and the raised structure constants ``gamma_upper[c][a][b]``.
    """

    __slots__ = ("algebra", "p", "q_lower", "q_upper", "dual_basis", "gamma_upper",
                 "_basis_product_cache")

    def __init__(self, algebra, p, q_lower, q_upper, dual_basis, gamma_upper):
        self.algebra = algebra
        self.p = p
        self.q_lower = q_lower
        self.q_upper = q_upper
        self.dual_basis = dual_basis
        self.gamma_upper = gamma_upper
        self._basis_product_cache = {}

    @property
    def dim_total(self) -> int:
        return self.algebra.dim_total

    def p_value(self, x: AlgebraElement | Sequence[Fraction]) -> Fraction:
        coords = x.coords if isinstance(x, AlgebraElement) else x
        return sum(pa * xa for pa, xa in zip(self.p, coords))

    def q_value(self, x: AlgebraElement, y: AlgebraElement) -> Fraction:
        return self.p_value(x * y)

    def dual_element(self, a: int) -> AlgebraElement:
        """The element ``e^a`` with ``p(e_b * e^a) = delta_b^a``."""
        return self.algebra.element(self.dual_basis[a])

    def phi(self, x: AlgebraElement) -> tuple:
        """Coordinates of the covector ``q(x, -)``."""
        q = self.q_lower
        return tuple(
            sum(q[a][b] * x.coords[b] for b in range(self.dim_total))
            for a in range(self.dim_total)
        )

    def phi_inv(self, xi: Sequence[Fraction]) -> AlgebraElement:
        qu = self.q_upper
        coords = tuple(
            sum(qu[a][b] * xi[b] for b in range(self.dim_total))
            for a in range(self.dim_total)
        )
        return self.algebra.element(coords)

    def mixed_basis_product(self, lowers: tuple, uppers: tuple) -> tuple:
        """Coordinates of ``e_{a_1}...e_{a_k} e^{b_1}...e^{b_l}`` (cached)."""
        key = (lowers, uppers)
        cached = self._basis_product_cache.get(key)
        if cached is not None:
            return cached
        coords = self.algebra.unit_coords()
        for a in lowers:
            coords = self.algebra.mul_coords(coords, self.algebra.basis_element(a).coords)
        for b in uppers:
            coords = self.algebra.mul_coords(coords, self.dual_basis[b])
        self._basis_product_cache[key] = coords
        return coords

    def __eq__(self, other):
        return (
            isinstance(other, FrobeniusStructure)
            and self.algebra == other.algebra
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.algebra, self.p))

    def __repr__(self):
        return f"FrobeniusStructure(dim={self.dim_total}, p={[str(v) for v in self.p]})"


def _pairing_matrix(algebra: WeilAlgebra, p: Sequence[Fraction]) -> list:
    dim = algebra.dim_total
    return [
        [
            sum(p[c] * algebra.gamma[a][b][c] for c in range(dim))
            for b in range(dim)
        ]
        for a in range(dim)
    ]


def attach_frobenius(algebra: WeilAlgebra, p: Sequence) -> FrobeniusStructure:
    """Validate ``p`` as a Frobenius covector and derive the dual data.

    ``p`` is rescaled so that its value on the top basis vector ``e_n`` is 1.
    Rejection cases: the top power of the nilpotent ideal is not a line
    (no covector can work), or the pairing ``p(xy)`` is degenerate.
    """
    dim = algebra.dim_total
    if len(p) != dim:
        raise DimensionMismatch(f"covector has {len(p)} coordinates, expected {dim}")
    p = [Fraction(v) for v in p]

    top_dim = algebra.power_dims[algebra.height]
    if top_dim != 1:
        raise HeightIdealNotLine(
            f"top ideal power has dimension {top_dim}, so no pairing is nondegenerate"
        )

    q = _pairing_matrix(algebra, p)
    if linalg.det(q) == 0:
        raise NotFrobenius("pairing p(xy) is degenerate for this covector")
    if p[dim - 1] == 0:
        raise PVanishesOnTop("covector vanishes on the top basis vector")

    scale = Fraction(1) / p[dim - 1]
    p = tuple(v * scale for v in p)
    q = [tuple(row) for row in _pairing_matrix(algebra, list(p))]

    q_upper = linalg.invert([list(row) for row in q])
    if q_upper is None:
        raise NotFrobenius("pairing became degenerate after rescaling")
    q_upper = tuple(tuple(row) for row in q_upper)
    dual_basis = q_upper  # row a holds the coordinates of e^a
    gamma_upper = tuple(
        tuple(
            tuple(
                sum(q_upper[a][d] * algebra.gamma[d][c][b] for d in range(dim))
                for b in range(dim)
            )
            for a in range(dim)
        )
        for c in range(dim)
    )
    structure = FrobeniusStructure(algebra, tuple(p), tuple(q), q_upper, dual_basis, gamma_upper)
    _verify_structure(structure)
    return structure


def _verify_structure(f: FrobeniusStructure):
    """Exact consistency checks on the derived Frobenius data."""
    algebra = f.algebra
    dim = f.dim_total
    gamma = algebra.gamma
    q, qu = f.q_lower, f.q_upper
    delta = algebra.unit_coords()

    for a in range(dim):
        for b in range(dim):
            if q[a][b] != q[b][a]:
                raise AlgebraError("pairing matrix is not symmetric")

    # Associativity of the pairing: q_{ac} gamma_{bd}^c = gamma_{ab}^c q_{cd}.
    for a in range(dim):
        for b in range(dim):
            for d in range(dim):
                lhs = sum(q[a][c] * gamma[b][d][c] for c in range(dim))
                rhs = sum(gamma[a][b][c] * q[c][d] for c in range(dim))
                if lhs != rhs:
                    raise AlgebraError("pairing is not associative")

    for b in range(dim):
        if f.p[b] != sum(q[b][c] * delta[c] for c in range(dim)):
            raise AlgebraError("covector does not match pairing against the unit")
        if sum(qu[b][c] * f.p[c] for c in range(dim)) != delta[b]:
            raise AlgebraError("inverse pairing does not send p to the unit")

    for a in range(dim):
        for b in range(dim):
            if f.gamma_upper[0][a][b] != qu[a][b]:
                raise AlgebraError("raised constants disagree with inverse pairing at c=0")
    for c in range(dim):
        for a in range(dim):
            for b in range(dim):
                expected = sum(qu[a][d] * gamma[d][c][b] for d in range(dim))
                if f.gamma_upper[c][a][b] != expected:
                    raise AlgebraError("raised constants inconsistent")

    # p(e_a e^c) = delta_a^c and the top-row shape of the inverse pairing.
    for a in range(dim):
        for c in range(dim):
            val = f.p_value(algebra.mul_coords(
                algebra.basis_element(a).coords, f.dual_basis[c]))
            if val != (Fraction(1) if a == c else Fraction(0)):
                raise AlgebraError("dual basis does not pair to the identity")
    for b in range(dim):
        expected = Fraction(1) if b == dim - 1 else Fraction(0)
        if qu[0][b] != expected:
            raise AlgebraError("row 0 of the inverse pairing is not the top unit row")


def star_multiply(f: FrobeniusStructure, xi: Sequence, eta: Sequence) -> tuple:
    """Multiplication transported to covectors; ``p`` is the unit."""
    dim = f.dim_total
    if len(xi) != dim or len(eta) != dim:
        raise DimensionMismatch(f"covectors must have {dim} coordinates")
    x = f.phi_inv([Fraction(v) for v in xi])
    y = f.phi_inv([Fraction(v) for v in eta])
    return f.phi(x * y)
