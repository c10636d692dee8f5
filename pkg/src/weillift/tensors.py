"""Polynomial tensor fields on a coordinate patch.

Antisymmetric fields (exterior forms and multivector fields) store one
polynomial per strictly increasing index tuple; the value at an arbitrary
index tuple is the canonical one times the permutation sign, zero on repeats.
All contractions are full-array: sums run over every index order, so the
pairing of a k-vector with a k-form picks up a factor k! relative to the
canonical-key sum.  The graded bracket of multivector fields realizes the
antisymmetrized two-term derivative formula through shuffle sums over
canonical keys.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Mapping

from .errors import (
    DegreeMismatch,
    IndexOutOfRange,
    NotVectorField,
    PatchMismatch,
    VarianceMismatch,
)
from .poly import Polynomial
from .prolong import ChartMap


def sort_with_sign(indices: tuple) -> tuple | None:
    """(sorted tuple, sign) for distinct indices, None when an index repeats."""
    items = list(indices)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(items)):
        if items[i - 1] == items[i]:
            return None
    return tuple(items), sign


def merge_sign(left: tuple, right: tuple) -> int:
    """Sign of sorting the concatenation of two disjoint increasing tuples."""
    inversions = 0
    for x in left:
        for y in right:
            if x > y:
                inversions += 1
    return -1 if inversions % 2 else 1


class AntisymmetricField:
    """Shared storage and arithmetic for forms and multivector fields."""

    __slots__ = ("patch_dim", "degree", "components")

    def __init__(self, patch_dim: int, degree: int, components: Mapping[tuple, Polynomial] | None = None):
        if degree < 0:
            raise DegreeMismatch("degree must be non-negative")
        self.patch_dim = patch_dim
        self.degree = degree
        clean: dict[tuple, Polynomial] = {}
        if components:
            for key, poly in components.items():
                key = tuple(int(k) for k in key)
                if len(key) != degree:
                    raise IndexOutOfRange(f"key {key} has wrong length for degree {degree}")
                if any(not 0 <= k < patch_dim for k in key):
                    raise IndexOutOfRange(f"key {key} out of range for patch dim {patch_dim}")
                if poly.num_vars != patch_dim:
                    raise PatchMismatch("component polynomial has wrong variable count")
                sorted_sign = sort_with_sign(key)
                if sorted_sign is None:
                    continue
                skey, sign = sorted_sign
                poly = poly if sign == 1 else -poly
                if skey in clean:
                    poly = clean[skey] + poly
                if poly.is_zero():
                    clean.pop(skey, None)
                else:
                    clean[skey] = poly
        self.components = clean

    def full(self, key: tuple) -> Polynomial:
        """Component at an arbitrary index tuple, with sign extension."""
        sorted_sign = sort_with_sign(tuple(key))
        if sorted_sign is None:
            return Polynomial.zero(self.patch_dim)
        skey, sign = sorted_sign
        poly = self.components.get(skey)
        if poly is None:
            return Polynomial.zero(self.patch_dim)
        return poly if sign == 1 else -poly

    def is_zero(self) -> bool:
        return not self.components

    def _like(self, degree: int, components) -> "AntisymmetricField":
        return type(self)(self.patch_dim, degree, components)

    def _check(self, other: "AntisymmetricField"):
        if type(self) is not type(other):
            raise VarianceMismatch("cannot mix covariant and contravariant fields")
        if self.patch_dim != other.patch_dim:
            raise PatchMismatch("fields live on patches of different dimension")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree:
            # the zero field is degree-neutral (a bracket of two functions
            # lands in degree -1, represented as a zero of degree 0)
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise DegreeMismatch("cannot add fields of different degree")
        acc = dict(self.components)
        for key, poly in other.components.items():
            s = acc.get(key)
            s = poly if s is None else s + poly
            if s.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = s
        return self._like(self.degree, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like(self.degree, {k: -p for k, p in self.components.items()})

    def scale(self, factor) -> "AntisymmetricField":
        if isinstance(factor, Polynomial):
            acc = {k: p * factor for k, p in self.components.items()}
        else:
            acc = {k: p * Fraction(factor) for k, p in self.components.items()}
        return self._like(self.degree, acc)

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.patch_dim == other.patch_dim
            and self.degree == other.degree
            and self.components == other.components
        )

    def __hash__(self):
        return hash((type(self).__name__, self.patch_dim, self.degree,
                     frozenset(self.components.items())))

    def sorted_items(self) -> list:
        return sorted(self.components.items())

    def __repr__(self):
        body = ", ".join(f"{key}: {poly.render()}" for key, poly in self.sorted_items())
        return f"{type(self).__name__}(deg={self.degree}, {{{body}}})"


class DifferentialForm(AntisymmetricField):
    """Skew covariant field; degree-0 instances are scalar functions."""

    @classmethod
    def zero(cls, patch_dim: int, degree: int) -> "DifferentialForm":
        return cls(patch_dim, degree)

    @classmethod
    def function(cls, poly: Polynomial) -> "DifferentialForm":
        return cls(poly.num_vars, 0, {(): poly})

    def scalar(self) -> Polynomial:
        if self.degree != 0:
            raise DegreeMismatch("only degree-0 fields are scalars")
        return self.components.get((), Polynomial.zero(self.patch_dim))

    def to_mixed(self) -> "MixedTensorField":
        comps = {}
        for key, poly in self.components.items():
            for perm in permutations(key):
                _, sign = sort_with_sign(perm)
                comps[(perm, ())] = poly if sign == 1 else -poly
        return MixedTensorField(self.patch_dim, self.degree, 0, comps)


class MultiVectorField(AntisymmetricField):
    """Skew contravariant field; degree-0 instances are scalar functions."""

    @classmethod
    def zero(cls, patch_dim: int, degree: int) -> "MultiVectorField":
        return cls(patch_dim, degree)

    @classmethod
    def function(cls, poly: Polynomial) -> "MultiVectorField":
        return cls(poly.num_vars, 0, {(): poly})

    @classmethod
    def vector(cls, components: Iterable[Polynomial]) -> "MultiVectorField":
        comps = list(components)
        return cls(comps[0].num_vars, 1,
                   {(i,): poly for i, poly in enumerate(comps) if not poly.is_zero()})

    def scalar(self) -> Polynomial:
        if self.degree != 0:
            raise DegreeMismatch("only degree-0 fields are scalars")
        return self.components.get((), Polynomial.zero(self.patch_dim))

    def vector_component(self, i: int) -> Polynomial:
        if self.degree != 1:
            raise NotVectorField("not a vector field")
        return self.components.get((i,), Polynomial.zero(self.patch_dim))

    def to_mixed(self) -> "MixedTensorField":
        comps = {}
        for key, poly in self.components.items():
            for perm in permutations(key):
                _, sign = sort_with_sign(perm)
                comps[((), perm)] = poly if sign == 1 else -poly
        return MixedTensorField(self.patch_dim, 0, self.degree, comps)


class MixedTensorField:
    """General (k, l) tensor field stored as a sparse full-index map."""

    __slots__ = ("patch_dim", "cov", "contra", "components")

    def __init__(self, patch_dim: int, cov: int, contra: int,
                 components: Mapping[tuple, Polynomial] | None = None):
        self.patch_dim = patch_dim
        self.cov = cov
        self.contra = contra
        clean: dict[tuple, Polynomial] = {}
        if components:
            for (lower, upper), poly in components.items():
                lower = tuple(int(v) for v in lower)
                upper = tuple(int(v) for v in upper)
                if len(lower) != cov or len(upper) != contra:
                    raise IndexOutOfRange("index tuple lengths do not match the variance")
                if any(not 0 <= v < patch_dim for v in lower + upper):
                    raise IndexOutOfRange("tensor index out of range")
                if poly.num_vars != patch_dim:
                    raise PatchMismatch("component polynomial has wrong variable count")
                if poly.is_zero():
                    continue
                key = (lower, upper)
                if key in clean:
                    s = clean[key] + poly
                    if s.is_zero():
                        del clean[key]
                    else:
                        clean[key] = s
                else:
                    clean[key] = poly
        self.components = clean

    @classmethod
    def zero(cls, patch_dim: int, cov: int, contra: int) -> "MixedTensorField":
        return cls(patch_dim, cov, contra)

    def component(self, lower: tuple, upper: tuple) -> Polynomial:
        return self.components.get((tuple(lower), tuple(upper)),
                                   Polynomial.zero(self.patch_dim))

    def is_zero(self) -> bool:
        return not self.components

    def _check(self, other: "MixedTensorField"):
        if self.patch_dim != other.patch_dim:
            raise PatchMismatch("tensors live on patches of different dimension")
        if (self.cov, self.contra) != (other.cov, other.contra):
            raise VarianceMismatch("tensors have different variance")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.components)
        for key, poly in other.components.items():
            s = acc.get(key)
            s = poly if s is None else s + poly
            if s.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = s
        return MixedTensorField(self.patch_dim, self.cov, self.contra, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return MixedTensorField(self.patch_dim, self.cov, self.contra,
                                {k: -p for k, p in self.components.items()})

    def scale(self, factor) -> "MixedTensorField":
        if isinstance(factor, Polynomial):
            acc = {k: p * factor for k, p in self.components.items()}
        else:
            acc = {k: p * Fraction(factor) for k, p in self.components.items()}
        return MixedTensorField(self.patch_dim, self.cov, self.contra, acc)

    def to_form(self) -> DifferentialForm:
        if self.contra != 0:
            raise VarianceMismatch("tensor has contravariant slots")
        comps = {}
        for (lower, _), poly in self.components.items():
            if sort_with_sign(lower) and lower == sort_with_sign(lower)[0]:
                comps[lower] = poly
        return DifferentialForm(self.patch_dim, self.cov, comps)

    def to_multivector(self) -> MultiVectorField:
        if self.cov != 0:
            raise VarianceMismatch("tensor has covariant slots")
        comps = {}
        for (_, upper), poly in self.components.items():
            if sort_with_sign(upper) and upper == sort_with_sign(upper)[0]:
                comps[upper] = poly
        return MultiVectorField(self.patch_dim, self.contra, comps)

    def __eq__(self, other):
        return (
            isinstance(other, MixedTensorField)
            and self.patch_dim == other.patch_dim
            and (self.cov, self.contra) == (other.cov, other.contra)
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.patch_dim, self.cov, self.contra,
                     frozenset(self.components.items())))

    def sorted_items(self) -> list:
        return sorted(self.components.items())

    def __repr__(self):
        body = ", ".join(f"{k}: {p.render()}" for k, p in self.sorted_items())
        return f"MixedTensorField(({self.cov},{self.contra}), {{{body}}})"


def tensor_product(left: MixedTensorField, right: MixedTensorField) -> MixedTensorField:
    if left.patch_dim != right.patch_dim:
        raise PatchMismatch("tensors live on patches of different dimension")
    acc: dict[tuple, Polynomial] = {}
    for (l1, u1), p1 in left.components.items():
        for (l2, u2), p2 in right.components.items():
            key = (l1 + l2, u1 + u2)
            prod = p1 * p2
            if key in acc:
                s = acc[key] + prod
                if s.is_zero():
                    del acc[key]
                else:
                    acc[key] = s
            else:
                acc[key] = prod
    return MixedTensorField(left.patch_dim, left.cov + right.cov,
                            left.contra + right.contra, acc)


# -- exterior algebra ------------------------------------------------------------


def wedge(left: AntisymmetricField, right: AntisymmetricField) -> AntisymmetricField:
    """Determinant-convention exterior product (no 1/k! factors)."""
    left._check(right)
    degree = left.degree + right.degree
    acc: dict[tuple, Polynomial] = {}
    for k1, p1 in left.components.items():
        s1 = set(k1)
        for k2, p2 in right.components.items():
            if s1 & set(k2):
                continue
            sign = merge_sign(k1, k2)
            skey = tuple(sorted(k1 + k2))
            term = p1 * p2
            if sign < 0:
                term = -term
            if skey in acc:
                s = acc[skey] + term
                if s.is_zero():
                    del acc[skey]
                else:
                    acc[skey] = s
            else:
                acc[skey] = term
    return type(left)(left.patch_dim, degree, acc)


def exterior_d(xi: DifferentialForm) -> DifferentialForm:
    if not isinstance(xi, DifferentialForm):
        raise VarianceMismatch("exterior derivative applies to forms")
    acc: dict[tuple, Polynomial] = {}
    for key, poly in xi.components.items():
        in_key = set(key)
        for j in range(xi.patch_dim):
            if j in in_key:
                continue
            dpoly = poly.diff(j)
            if dpoly.is_zero():
                continue
            sign = merge_sign((j,), key)
            skey = tuple(sorted((j,) + key))
            term = dpoly if sign == 1 else -dpoly
            if skey in acc:
                s = acc[skey] + term
                if s.is_zero():
                    del acc[skey]
                else:
                    acc[skey] = s
            else:
                acc[skey] = term
    return DifferentialForm(xi.patch_dim, xi.degree + 1, acc)


def interior(u: MultiVectorField, xi: DifferentialForm) -> DifferentialForm:
    """Full-array contraction of a k-vector into the leading slots of a form."""
    if not isinstance(u, MultiVectorField) or not isinstance(xi, DifferentialForm):
        raise VarianceMismatch("interior product takes a multivector and a form")
    if u.patch_dim != xi.patch_dim:
        raise PatchMismatch("fields live on patches of different dimension")
    if u.degree > xi.degree:
        raise DegreeMismatch(f"cannot insert degree {u.degree} into degree {xi.degree}")
    fact = factorial(u.degree)
    acc: dict[tuple, Polynomial] = {}
    for ukey, upoly in u.components.items():
        uset = set(ukey)
        for xkey, xpoly in xi.components.items():
            if not uset <= set(xkey):
                continue
            rest = tuple(v for v in xkey if v not in uset)
            sign = merge_sign(ukey, rest) * fact
            term = upoly * xpoly * sign
            if rest in acc:
                s = acc[rest] + term
                if s.is_zero():
                    del acc[rest]
                else:
                    acc[rest] = s
            else:
                acc[rest] = term
    return DifferentialForm(xi.patch_dim, xi.degree - u.degree, acc)


# -- graded bracket ----------------------------------------------------------------


def schouten(u: MultiVectorField, v: MultiVectorField) -> MultiVectorField:
    """Graded bracket of multivector fields (functions allowed as degree 0).

    Realized by shuffle sums over canonical keys: each term antisymmetrizes a
    contracted-derivative array whose blocks are already antisymmetric, so
    only shuffles of the result key survive.  Reduces to the Lie bracket on
    vector fields and to the Hamiltonian pairing on (2, 0) inputs.
    """
    if not isinstance(u, MultiVectorField) or not isinstance(v, MultiVectorField):
        raise VarianceMismatch("bracket takes two multivector fields")
    if u.patch_dim != v.patch_dim:
        raise PatchMismatch("fields live on patches of different dimension")
    p, q = u.degree, v.degree
    patch = u.patch_dim
    if p == 0 and q == 0:
        return MultiVectorField.zero(patch, 0)
    out_degree = p + q - 1
    acc: dict[tuple, Polynomial] = {}

    def accumulate(key: tuple, poly: Polynomial):
        if poly.is_zero():
            return
        if key in acc:
            s = acc[key] + poly
            if s.is_zero():
                del acc[key]
            else:
                acc[key] = s
        else:
            acc[key] = poly

    if p >= 1:
        # derivative of v contracted against one slot of u
        for ukey, upoly in u.components.items():
            for t in range(p):
                r = ukey[t]
                head = ukey[:t] + ukey[t + 1:]
                head_sign = -1 if t % 2 else 1
                head_set = set(head)
                for vkey, vpoly in v.components.items():
                    if head_set & set(vkey):
                        continue
                    dv = vpoly.diff(r)
                    if dv.is_zero():
                        continue
                    sign = head_sign * merge_sign(head, vkey)
                    accumulate(tuple(sorted(head + vkey)), upoly * dv * sign)

    if q >= 1:
        parity = -1 if p % 2 else 1
        # derivative of u contracted against one slot of v
        for vkey, vpoly in v.components.items():
            for t in range(q):
                r = vkey[t]
                tail = vkey[:t] + vkey[t + 1:]
                tail_sign = -1 if t % 2 else 1
                tail_set = set(tail)
                for ukey, upoly in u.components.items():
                    if tail_set & set(ukey):
                        continue
                    du = upoly.diff(r)
                    if du.is_zero():
                        continue
                    sign = parity * tail_sign * merge_sign(ukey, tail)
                    accumulate(tuple(sorted(ukey + tail)), vpoly * du * sign)

    return MultiVectorField(patch, out_degree, acc)


# -- Lie derivative -----------------------------------------------------------------


def lie_derive(v: MultiVectorField, t: MixedTensorField | AntisymmetricField):
    """Lie derivative of a tensor field along a vector field."""
    if not isinstance(v, MultiVectorField) or v.degree != 1:
        raise NotVectorField("the first argument must be a vector field")
    if isinstance(t, DifferentialForm):
        return lie_derive(v, t.to_mixed()).to_form()
    if isinstance(t, MultiVectorField):
        return lie_derive(v, t.to_mixed()).to_multivector()
    if v.patch_dim != t.patch_dim:
        raise PatchMismatch("fields live on patches of different dimension")
    patch = t.patch_dim
    vcomp = [v.vector_component(i) for i in range(patch)]
    dv = [[vm.diff(i) for i in range(patch)] for vm in vcomp]  # dv[m][i] = d v^m / d x^i
    acc: dict[tuple, Polynomial] = {}

    def accumulate(key, poly):
        if poly.is_zero():
            return
        if key in acc:
            s = acc[key] + poly
            if s.is_zero():
                del acc[key]
            else:
                acc[key] = s
        else:
            acc[key] = poly

    for (lower, upper), poly in t.components.items():
        for m in range(patch):
            if not vcomp[m].is_zero():
                accumulate((lower, upper), poly.diff(m) * vcomp[m])
        for r in range(t.cov):
            m = lower[r]
            for i in range(patch):
                dmi = dv[m][i]
                if not dmi.is_zero():
                    accumulate((lower[:r] + (i,) + lower[r + 1:], upper), poly * dmi)
        for s in range(t.contra):
            m = upper[s]
            for j in range(patch):
                djm = dv[j][m]
                if not djm.is_zero():
                    accumulate((lower, upper[:s] + (j,) + upper[s + 1:]), -(poly * djm))
    return MixedTensorField(patch, t.cov, t.contra, acc)


# -- transport along chart maps ------------------------------------------------------


def _det_poly(matrix: list[list[Polynomial]], patch: int) -> Polynomial:
    size = len(matrix)
    if size == 0:
        return Polynomial.constant(patch, 1)
    total = Polynomial.zero(patch)
    for perm in permutations(range(size)):
        _, sign = sort_with_sign(perm) if size > 1 else ((), 1)
        term = Polynomial.constant(patch, sign)
        for row, col in enumerate(perm):
            term = term * matrix[row][col]
            if term.is_zero():
                break
        total = total + term
    return total


def pushforward(chart: ChartMap, field):
    """Transport a field from the source patch to the target patch.

    Upper indices transform by the Jacobian of the map, lower indices by the
    Jacobian of the inverse; all coefficient functions are composed with the
    inverse so the result lives in the target coordinates.
    """
    chart.require_inverse()
    patch = chart.target_dim
    inv = list(chart.inverse_components)
    jac_fwd = [[entry.compose(inv) for entry in row] for row in chart.jacobian()]
    jac_inv = chart.inverse_map().jacobian()  # already in target variables

    if isinstance(field, MultiVectorField):
        acc: dict[tuple, Polynomial] = {}
        k = field.degree
        for key, poly in field.components.items():
            moved = poly.compose(inv)
            for out in combinations(range(patch), k):
                minor = [[jac_fwd[out[s]][key[t]] for t in range(k)] for s in range(k)]
                det = _det_poly(minor, patch)
                if det.is_zero():
                    continue
                term = moved * det
                if out in acc:
                    s = acc[out] + term
                    if s.is_zero():
                        del acc[out]
                    else:
                        acc[out] = s
                else:
                    acc[out] = term
        return MultiVectorField(patch, k, acc)

    if isinstance(field, DifferentialForm):
        acc = {}
        k = field.degree
        for key, poly in field.components.items():
            moved = poly.compose(inv)
            for out in combinations(range(patch), k):
                minor = [[jac_inv[key[s]][out[t]] for t in range(k)] for s in range(k)]
                det = _det_poly(minor, patch)
                if det.is_zero():
                    continue
                term = moved * det
                if out in acc:
                    s = acc[out] + term
                    if s.is_zero():
                        del acc[out]
                    else:
                        acc[out] = s
                else:
                    acc[out] = term
        return DifferentialForm(patch, k, acc)

    if isinstance(field, MixedTensorField):
        acc = {}
        for (lower, upper), poly in field.components.items():
            moved = poly.compose(inv)
            partial = {((), ()): moved}
            for a in lower:
                extended = {}
                for (lo, up), val in partial.items():
                    for i in range(patch):
                        factor = jac_inv[a][i]
                        if factor.is_zero():
                            continue
                        term = val * factor
                        key = (lo + (i,), up)
                        if key in extended:
                            extended[key] = extended[key] + term
                        else:
                            extended[key] = term
                partial = extended
            for b in upper:
                extended = {}
                for (lo, up), val in partial.items():
                    for j in range(patch):
                        factor = jac_fwd[j][b]
                        if factor.is_zero():
                            continue
                        term = val * factor
                        key = (lo, up + (j,))
                        if key in extended:
                            extended[key] = extended[key] + term
                        else:
                            extended[key] = term
                partial = extended
            for key, val in partial.items():
                if key in acc:
                    s = acc[key] + val
                    if s.is_zero():
                        del acc[key]
                    else:
                        acc[key] = s
                elif not val.is_zero():
                    acc[key] = val
        return MixedTensorField(patch, field.cov, field.contra, acc)

    raise VarianceMismatch(f"cannot transport a {type(field).__name__}")


def pullback(chart: ChartMap, field):
    """Transport against the map direction; realized through the inverse."""
    chart.require_inverse()
    return pushforward(chart.inverse_map(), field)
