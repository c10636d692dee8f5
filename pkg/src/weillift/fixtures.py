"""Shared fixture algebras and random generators for the verification suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product as iter_product

from .algebra import FrobeniusStructure, attach_frobenius, build_from_constants, build_plural
from .poisson import PoissonStructure, jacobi_check
from .poly import Polynomial, random_polynomial
from .prolong import ChartMap
from .tensors import DifferentialForm, MixedTensorField, MultiVectorField, pushforward


def width_two_algebra():
    """Four-dimensional algebra with two generators squaring to the same top
    vector and annihilating each other."""
    dim = 4
    gamma = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for a in range(dim):
        gamma[0][a][a] = 1
        gamma[a][0][a] = 1
    gamma[1][1][3] = 1
    gamma[2][2][3] = 1
    return build_from_constants(dim, gamma)


def standard_frobenius_fixtures() -> list[FrobeniusStructure]:
    """The four fixture structures exercised throughout the suite."""
    return [
        attach_frobenius(build_plural(1), [0, 1]),
        attach_frobenius(build_plural(2), [0, 0, 1]),
        attach_frobenius(build_plural(3), [0, 0, 0, 1]),
        attach_frobenius(width_two_algebra(), [0, 0, 0, 1]),
    ]


def tangent_fixture() -> FrobeniusStructure:
    return attach_frobenius(build_plural(1), [0, 1])


def tangent_shifted_fixture() -> FrobeniusStructure:
    return attach_frobenius(build_plural(1), [1, 1])


def random_form(rng: random.Random, patch: int, degree: int, max_degree: int = 2,
                density: float = 0.8) -> DifferentialForm:
    comps = {}
    for key in combinations(range(patch), degree):
        if rng.random() < density:
            comps[key] = random_polynomial(rng, patch, max_degree)
    return DifferentialForm(patch, degree, comps)


def random_multivector(rng: random.Random, patch: int, degree: int, max_degree: int = 2,
                       density: float = 0.8) -> MultiVectorField:
    comps = {}
    for key in combinations(range(patch), degree):
        if rng.random() < density:
            comps[key] = random_polynomial(rng, patch, max_degree)
    return MultiVectorField(patch, degree, comps)


def random_mixed(rng: random.Random, patch: int, cov: int, contra: int,
                 max_degree: int = 2, density: float = 0.5) -> MixedTensorField:
    comps = {}
    for lower in iter_product(range(patch), repeat=cov):
        for upper in iter_product(range(patch), repeat=contra):
            if rng.random() < density:
                comps[(lower, upper)] = random_polynomial(rng, patch, max_degree)
    return MixedTensorField(patch, cov, contra, comps)


def fixed_shears(dim: int) -> list[ChartMap]:
    """Triangular polynomial coordinate changes with polynomial inverses."""
    x = [Polynomial.variable(dim, i) for i in range(dim)]
    if dim == 2:
        return [
            ChartMap(2, 2, [x[0] + x[1] ** 2, x[1]], [x[0] - x[1] ** 2, x[1]]),
            ChartMap(2, 2, [x[0], x[1] + 2 * x[0] ** 2], [x[0], x[1] - 2 * x[0] ** 2]),
            ChartMap(2, 2, [x[0] + 3 * x[1], x[1]], [x[0] - 3 * x[1], x[1]]),
        ]
    if dim == 3:
        return [
            ChartMap(3, 3, [x[0] + x[1] * x[2], x[1], x[2]],
                     [x[0] - x[1] * x[2], x[1], x[2]]),
            ChartMap(3, 3, [x[0], x[1] + x[2] ** 2, x[2]],
                     [x[0], x[1] - x[2] ** 2, x[2]]),
            ChartMap(3, 3, [x[0] + x[2], x[1] - 2 * x[2] ** 2, x[2]],
                     [x[0] - x[2], x[1] + 2 * x[2] ** 2, x[2]]),
        ]
    raise ValueError(f"no fixture shears for dimension {dim}")


def random_shear(rng: random.Random, dim: int) -> ChartMap:
    """A random triangular shear: variable i is shifted by a polynomial in
    the later variables, so the inverse is the opposite shift."""
    x = [Polynomial.variable(dim, i) for i in range(dim)]
    i = rng.randrange(dim - 1)
    shift = random_polynomial(rng, dim - i - 1, 2)
    tail = x[i + 1:]
    shift_poly = shift.compose(tail) if dim - i - 1 else Polynomial.zero(dim)
    fwd = list(x)
    bwd = list(x)
    fwd[i] = x[i] + shift_poly
    bwd[i] = x[i] - shift_poly
    return ChartMap(dim, dim, fwd, bwd)


def so3_structure() -> PoissonStructure:
    x = [Polynomial.variable(3, i) for i in range(3)]
    w = MultiVectorField(3, 2, {(0, 1): x[2], (1, 2): x[0], (0, 2): -x[1]})
    result = jacobi_check(w)
    assert isinstance(result, PoissonStructure)
    return result


def plane_rank_structure(rng: random.Random, dim: int = 2,
                         max_degree: int = 2) -> PoissonStructure:
    """A bivector supported on one coordinate plane; always a Poisson
    structure because the cyclic sums collapse."""
    f = random_polynomial(rng, dim, max_degree)
    w = MultiVectorField(dim, 2, {(0, 1): f})
    result = jacobi_check(w)
    assert isinstance(result, PoissonStructure)
    return result


def random_poisson(rng: random.Random, dim: int) -> PoissonStructure:
    """Random Poisson structures: plane-supported, linear of rotation type,
    or a shear transport of either."""
    kind = rng.randrange(3)
    if kind == 0 or dim == 2:
        base = plane_rank_structure(rng, dim)
    elif kind == 1:
        base = so3_structure()
    else:
        base = plane_rank_structure(rng, dim)
    if rng.random() < 0.5:
        shear = random_shear(rng, dim)
        moved = pushforward(shear, base.bivector)
        result = jacobi_check(moved)
        assert isinstance(result, PoissonStructure)
        return result
    return base


def random_element(rng: random.Random, frob: FrobeniusStructure,
                   nilpotent: bool = False, unit_real: bool = False):
    width = frob.dim_total
    coords = [Fraction(rng.randint(-3, 3)) for _ in range(width)]
    if nilpotent:
        coords[0] = Fraction(0)
        if all(c == 0 for c in coords[1:]):
            coords[-1] = Fraction(1)
    else:
        while coords[0] == 0:
            coords[0] = Fraction(rng.randint(-3, 3))
    if unit_real:
        coords[0] = Fraction(1)
    return frob.algebra.element(coords)
