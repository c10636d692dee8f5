"""Lifting tensor fields from a base patch to the bundle patch.

The pipeline is: prolong every polynomial component to an algebra-valued
function, optionally multiply by a fixed algebra element, then realize the
result as a real tensor field on the ``m * (n + 1)``-dimensional patch by
pairing with the Frobenius covector.  Lower index slots absorb plain basis
vectors, upper slots absorb dual basis vectors.

Closed coordinate formulas for the vertical lift and for complete lifts of
bivectors are implemented separately and used as independent cross-checks.
"""

from __future__ import annotations

from itertools import combinations, product as iter_product
from typing import Union

from .algebra import AlgebraElement, FrobeniusStructure, WeilAlgebra
from .errors import AlgebraMismatch, IndexOutOfRange, VarianceMismatch
from .poly import Polynomial
from .prolong import AFunction, flat_index, flat_vars, prolong_scalar
from .tensors import (
    DifferentialForm,
    MixedTensorField,
    MultiVectorField,
    sort_with_sign,
)

BaseField = Union[DifferentialForm, MultiVectorField, MixedTensorField]


class ATensorField:
    """Algebra-valued tensor field: one algebra-valued function per component.

    ``kind`` records whether the source was a form, a multivector field or a
    general mixed tensor; antisymmetric kinds store canonical keys only.
    """

    __slots__ = ("base_dim", "algebra", "kind", "cov", "contra", "components")

    def __init__(self, base_dim: int, algebra: WeilAlgebra, kind: str,
                 cov: int, contra: int, components: dict):
        self.base_dim = base_dim
        self.algebra = algebra
        self.kind = kind
        self.cov = cov
        self.contra = contra
        self.components = {k: v for k, v in components.items() if not v.is_zero()}

    def full(self, key: tuple) -> AFunction | None:
        """Sign-extended component for antisymmetric kinds."""
        sorted_sign = sort_with_sign(key)
        if sorted_sign is None:
            return None
        skey, sign = sorted_sign
        comp = self.components.get(skey)
        if comp is None:
            return None
        return comp if sign == 1 else -comp

    def mul_element(self, element: AlgebraElement) -> "ATensorField":
        if element.algebra != self.algebra:
            raise AlgebraMismatch("element belongs to a different algebra")
        return ATensorField(
            self.base_dim, self.algebra, self.kind, self.cov, self.contra,
            {k: v.mul_element(element) for k, v in self.components.items()},
        )

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        return (
            isinstance(other, ATensorField)
            and (self.base_dim, self.algebra, self.kind, self.cov, self.contra)
            == (other.base_dim, other.algebra, other.kind, other.cov, other.contra)
            and self.components == other.components
        )

    def __repr__(self):
        return f"ATensorField({self.kind}, ({self.cov},{self.contra}), {len(self.components)} comps)"


class LiftedTensorField:
    """A tensor field on the bundle patch with decoding back-references."""

    __slots__ = ("field", "base_dim", "frobenius")

    def __init__(self, field, base_dim: int, frobenius: FrobeniusStructure):
        self.field = field
        self.base_dim = base_dim
        self.frobenius = frobenius

    @property
    def patch_dim(self) -> int:
        return self.base_dim * self.frobenius.dim_total

    def decode(self, flat: int) -> tuple[int, int]:
        """Split a flat patch index into (base index, algebra slot)."""
        return divmod(flat, self.frobenius.dim_total)

    def __eq__(self, other):
        if isinstance(other, LiftedTensorField):
            return self.field == other.field and self.base_dim == other.base_dim
        return self.field == other

    def __repr__(self):
        return f"LiftedTensorField({self.field!r})"


def a_exterior_d(tensor: ATensorField) -> ATensorField:
    """Exterior differential of an algebra-valued form, one algebra-valued
    partial derivative per new slot."""
    if tensor.kind != "form":
        raise VarianceMismatch("algebra-valued differential applies to forms")
    _require_smooth(tensor)
    acc: dict[tuple, AFunction] = {}
    for key, comp in tensor.components.items():
        in_key = set(key)
        for j in range(tensor.base_dim):
            if j in in_key:
                continue
            partial = _base_partial(comp, j)
            if partial.is_zero():
                continue
            from .tensors import merge_sign

            sign = merge_sign((j,), key)
            skey = tuple(sorted((j,) + key))
            term = partial if sign == 1 else -partial
            if skey in acc:
                term = acc[skey] + term
            if term.is_zero():
                acc.pop(skey, None)
            else:
                acc[skey] = term
    return ATensorField(tensor.base_dim, tensor.algebra, "form",
                        tensor.cov + 1, 0, acc)


def a_schouten(left: ATensorField, right: ATensorField) -> ATensorField:
    """Graded bracket of algebra-valued multivector fields, with the same
    shuffle realization as the real bracket but algebra-valued coefficients
    and algebra-valued partial derivatives."""
    if left.kind != "multivector" or right.kind != "multivector":
        raise VarianceMismatch("bracket takes two multivector fields")
    if left.base_dim != right.base_dim or left.algebra != right.algebra:
        raise AlgebraMismatch("operands live on different bundles")
    _require_smooth(left)
    _require_smooth(right)
    from .tensors import merge_sign

    p, q = left.contra, right.contra
    m = left.base_dim
    if p == 0 and q == 0:
        return ATensorField(m, left.algebra, "multivector", 0, 0, {})
    acc: dict[tuple, AFunction] = {}

    def accumulate(key, value):
        if value.is_zero():
            return
        if key in acc:
            s = acc[key] + value
            if s.is_zero():
                del acc[key]
            else:
                acc[key] = s
        else:
            acc[key] = value

    if p >= 1:
        for ukey, ucomp in left.components.items():
            for t in range(p):
                r = ukey[t]
                head = ukey[:t] + ukey[t + 1:]
                head_sign = -1 if t % 2 else 1
                head_set = set(head)
                for vkey, vcomp in right.components.items():
                    if head_set & set(vkey):
                        continue
                    dv = _base_partial(vcomp, r)
                    if dv.is_zero():
                        continue
                    sign = head_sign * merge_sign(head, vkey)
                    term = ucomp * dv
                    accumulate(tuple(sorted(head + vkey)),
                               term if sign == 1 else -term)

    if q >= 1:
        parity = -1 if p % 2 else 1
        for vkey, vcomp in right.components.items():
            for t in range(q):
                r = vkey[t]
                tail = vkey[:t] + vkey[t + 1:]
                tail_sign = -1 if t % 2 else 1
                tail_set = set(tail)
                for ukey, ucomp in left.components.items():
                    if tail_set & set(ukey):
                        continue
                    du = _base_partial(ucomp, r)
                    if du.is_zero():
                        continue
                    sign = parity * tail_sign * merge_sign(ukey, tail)
                    term = vcomp * du
                    accumulate(tuple(sorted(ukey + tail)),
                               term if sign == 1 else -term)
    return ATensorField(m, left.algebra, "multivector", 0, p + q - 1, acc)


def a_interior_vector(vector: ATensorField, form: ATensorField) -> ATensorField:
    """Contraction of an algebra-valued vector field into the leading slot."""
    if vector.kind != "multivector" or vector.contra != 1 or form.kind != "form":
        raise VarianceMismatch("expected a vector field and a form")
    if vector.base_dim != form.base_dim or vector.algebra != form.algebra:
        raise AlgebraMismatch("operands live on different bundles")
    acc: dict[tuple, AFunction] = {}
    for key, comp in form.components.items():
        for t, j in enumerate(key):
            vcomp = vector.components.get((j,))
            if vcomp is None:
                continue
            rest = key[:t] + key[t + 1:]
            sign = -1 if t % 2 else 1
            term = vcomp * comp
            term = term if sign == 1 else -term
            if rest in acc:
                term = acc[rest] + term
            if term.is_zero():
                acc.pop(rest, None)
            else:
                acc[rest] = term
    return ATensorField(form.base_dim, form.algebra, "form", form.cov - 1, 0, acc)


def _base_partial(func: AFunction, i: int) -> AFunction:
    width = func.algebra.dim_total
    return AFunction(func.base_dim, func.algebra,
                     [c.diff(flat_index(i, 0, width)) for c in func.components])


def _require_smooth(tensor: ATensorField):
    from .prolong import scheffers_failure

    for key, comp in tensor.components.items():
        where = scheffers_failure(comp)
        if where is not None:
            from .errors import NotASmooth

            raise NotASmooth(
                f"component {key} is not algebra-differentiable (first failure {where})",
                where=where,
            )


def prolong_tensor(t: BaseField, algebra: WeilAlgebra) -> ATensorField:
    """Componentwise prolongation of a polynomial tensor field."""
    if isinstance(t, DifferentialForm):
        comps = {k: prolong_scalar(p, algebra) for k, p in t.components.items()}
        return ATensorField(t.patch_dim, algebra, "form", t.degree, 0, comps)
    if isinstance(t, MultiVectorField):
        comps = {k: prolong_scalar(p, algebra) for k, p in t.components.items()}
        return ATensorField(t.patch_dim, algebra, "multivector", 0, t.degree, comps)
    if isinstance(t, MixedTensorField):
        comps = {k: prolong_scalar(p, algebra) for k, p in t.components.items()}
        return ATensorField(t.patch_dim, algebra, "mixed", t.cov, t.contra, comps)
    raise VarianceMismatch(f"cannot prolong a {type(t).__name__}")


def _pair(frob: FrobeniusStructure, func: AFunction, element_coords: tuple) -> Polynomial:
    """The realized scalar p(func * element): a q-weighted component sum."""
    width = frob.dim_total
    weights = [
        sum(frob.q_lower[s][t] * element_coords[t] for t in range(width))
        for s in range(width)
    ]
    nvars = func.components[0].num_vars
    out = Polynomial.zero(nvars)
    for s in range(width):
        if weights[s] != 0 and not func.components[s].is_zero():
            out = out + func.components[s] * weights[s]
    return out


def realize(frob: FrobeniusStructure, tensor: ATensorField) -> LiftedTensorField:
    """Turn an algebra-valued tensor into a real tensor on the bundle patch.

    Components are paired with products of basis vectors (one per lower
    slot) and dual basis vectors (one per upper slot); the pairing with the
    covector is injective, so a nonzero input realizes to a nonzero output.
    """
    if tensor.algebra != frob.algebra:
        raise AlgebraMismatch("tensor and Frobenius structure use different algebras")
    width = frob.dim_total
    m = tensor.base_dim
    patch = flat_vars(m, width)

    if tensor.kind in ("form", "multivector"):
        degree = tensor.cov if tensor.kind == "form" else tensor.contra
        acc: dict[tuple, Polynomial] = {}
        for flatkey in combinations(range(patch), degree):
            pairs = [divmod(v, width) for v in flatkey]
            ikey = tuple(i for i, _ in pairs)
            slots = tuple(a for _, a in pairs)
            comp = tensor.full(ikey)
            if comp is None:
                continue
            if tensor.kind == "form":
                element = frob.mixed_basis_product(slots, ())
            else:
                element = frob.mixed_basis_product((), slots)
            value = _pair(frob, comp, element)
            if not value.is_zero():
                acc[flatkey] = value
        cls = DifferentialForm if tensor.kind == "form" else MultiVectorField
        return LiftedTensorField(cls(patch, degree, acc), m, frob)

    acc = {}
    slot_range = range(width)
    for (lower, upper), comp in tensor.components.items():
        for aslots in iter_product(slot_range, repeat=len(lower)):
            for bslots in iter_product(slot_range, repeat=len(upper)):
                element = frob.mixed_basis_product(aslots, bslots)
                value = _pair(frob, comp, element)
                if value.is_zero():
                    continue
                key = (
                    tuple(flat_index(i, a, width) for i, a in zip(lower, aslots)),
                    tuple(flat_index(j, b, width) for j, b in zip(upper, bslots)),
                )
                if key in acc:
                    s = acc[key] + value
                    if s.is_zero():
                        del acc[key]
                    else:
                        acc[key] = s
                else:
                    acc[key] = value
    return LiftedTensorField(
        MixedTensorField(patch, tensor.cov, tensor.contra, acc), m, frob
    )


# -- the lift family ---------------------------------------------------------------


def complete_lift(frob: FrobeniusStructure, t: BaseField) -> LiftedTensorField:
    return realize(frob, prolong_tensor(t, frob.algebra))


def epsilon_lift(frob: FrobeniusStructure, t: BaseField,
                 epsilon: AlgebraElement) -> LiftedTensorField:
    if epsilon.algebra != frob.algebra:
        raise AlgebraMismatch("lift element belongs to a different algebra")
    return realize(frob, prolong_tensor(t, frob.algebra).mul_element(epsilon))


def a_lift(frob: FrobeniusStructure, t: BaseField, a: int) -> LiftedTensorField:
    if not 0 <= a < frob.dim_total:
        raise IndexOutOfRange(f"basis index {a} out of range 0..{frob.dim_total - 1}")
    return epsilon_lift(frob, t, frob.algebra.basis_element(a))


def vertical_lift(frob: FrobeniusStructure, t: BaseField) -> LiftedTensorField:
    return a_lift(frob, t, frob.dim_total - 1)


def lambda_lift(frob: FrobeniusStructure, t: BaseField, lam: int) -> LiftedTensorField:
    """Component lift for one-generator algebras: extract the coefficient of
    the ``lam``-th power of the generator.  The 0-lift is the vertical lift,
    the top lift is the complete lift, and tensor products expand as a
    convolution over the two lift orders."""
    if not 0 <= lam < frob.dim_total:
        raise IndexOutOfRange(f"lift order {lam} out of range 0..{frob.dim_total - 1}")
    return a_lift(frob, t, frob.dim_total - 1 - lam)


def base_pullback(frob: FrobeniusStructure, xi: DifferentialForm) -> LiftedTensorField:
    """Pull a form back along the bundle projection: components are copied
    onto the slot-0 coordinate differentials."""
    if not isinstance(xi, DifferentialForm):
        raise VarianceMismatch("base pullback applies to forms")
    width = frob.dim_total
    m = xi.patch_dim
    patch = flat_vars(m, width)
    projection = [Polynomial.variable(patch, flat_index(i, 0, width)) for i in range(m)]
    acc = {}
    for key, poly in xi.components.items():
        moved = poly.compose(projection)
        if not moved.is_zero():
            acc[tuple(flat_index(i, 0, width) for i in key)] = moved
    return LiftedTensorField(DifferentialForm(patch, xi.degree, acc), m, frob)


# -- closed-form cross-checks --------------------------------------------------------


def vertical_lift_direct(frob: FrobeniusStructure, t: BaseField) -> LiftedTensorField:
    """Vertical lift by its closed coordinate form: base components compose
    with the projection and attach to slot-0 differentials and top-slot
    partials only."""
    width = frob.dim_total
    top = width - 1
    m = t.patch_dim
    patch = flat_vars(m, width)
    projection = [Polynomial.variable(patch, flat_index(i, 0, width)) for i in range(m)]

    if isinstance(t, MixedTensorField):
        acc = {}
        for (lower, upper), poly in t.components.items():
            moved = poly.compose(projection)
            if moved.is_zero():
                continue
            acc[(tuple(flat_index(i, 0, width) for i in lower),
                 tuple(flat_index(j, top, width) for j in upper))] = moved
        return LiftedTensorField(MixedTensorField(patch, t.cov, t.contra, acc), m, frob)

    acc = {}
    slot = 0 if isinstance(t, DifferentialForm) else top
    for key, poly in t.components.items():
        moved = poly.compose(projection)
        if not moved.is_zero():
            acc[tuple(flat_index(i, slot, width) for i in key)] = moved
    return LiftedTensorField(type(t)(patch, t.degree, acc), m, frob)


def complete_lift_bivector_direct(frob: FrobeniusStructure,
                                  w: MultiVectorField) -> LiftedTensorField:
    """Complete lift of a bivector through the raised structure constants."""
    if not isinstance(w, MultiVectorField) or w.degree != 2:
        raise VarianceMismatch("this closed form applies to bivector fields")
    width = frob.dim_total
    m = w.patch_dim
    patch = flat_vars(m, width)
    gamma_upper = frob.gamma_upper
    acc: dict[tuple, Polynomial] = {}
    for (i, j), poly in w.components.items():
        lifted = prolong_scalar(poly, frob.algebra)
        for a in range(width):
            for b in range(width):
                value = Polynomial.zero(patch)
                for s in range(width):
                    coeff = gamma_upper[s][a][b]
                    if coeff != 0 and not lifted.components[s].is_zero():
                        value = value + lifted.components[s] * coeff
                if value.is_zero():
                    continue
                fi, fj = flat_index(i, a, width), flat_index(j, b, width)
                if fi == fj:
                    continue
                if fi < fj:
                    key, signed = (fi, fj), value
                else:
                    key, signed = (fj, fi), -value
                if key in acc:
                    s2 = acc[key] + signed
                    if s2.is_zero():
                        del acc[key]
                    else:
                        acc[key] = s2
                else:
                    acc[key] = signed
    return LiftedTensorField(MultiVectorField(patch, 2, acc), m, frob)
