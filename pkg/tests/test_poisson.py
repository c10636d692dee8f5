from fractions import Fraction

import pytest

from weillift.errors import NotVerified
from weillift.fixtures import (
    plane_rank_structure,
    random_form,
    random_multivector,
    random_poisson,
    so3_structure,
)
from weillift.lifts import complete_lift, vertical_lift
from weillift.poisson import (
    JacobiFailure,
    LogDensity,
    PoissonStructure,
    calibration_constants,
    form_bracket,
    hamiltonian,
    jacobi_check,
    jacobi_cyclic_failure,
    lichnerowicz,
    lift_density,
    lift_poisson,
    modular_field,
    poisson_bracket,
    sharp,
    verify_modular_theorem,
)
from weillift.poly import Polynomial, random_polynomial
from weillift.tensors import DifferentialForm, MultiVectorField, exterior_d, wedge


def one(n):
    return Polynomial.constant(n, 1)


def var(n, i):
    return Polynomial.variable(n, i)


def plane():
    return PoissonStructure(MultiVectorField(2, 2, {(0, 1): one(2)}),
                            jacobi_verified=True)


class TestJacobiCheck:
    def test_constant_bivector_verifies(self):
        assert isinstance(jacobi_check(MultiVectorField(3, 2, {(0, 1): one(3)})),
                          PoissonStructure)

    def test_rotation_structure_verifies(self):
        assert isinstance(jacobi_check(so3_structure().bivector), PoissonStructure)

    def test_generic_fails_with_witness(self):
        x = [var(3, i) for i in range(3)]
        w = MultiVectorField(3, 2, {(0, 1): x[0] * x[1], (0, 2): x[2] * x[2],
                                    (1, 2): x[1] + x[2]})
        result = jacobi_check(w)
        assert isinstance(result, JacobiFailure)
        assert result.bracket_triple == (0, 1, 2) == result.cyclic_triple
        assert not result.bracket_component.is_zero()

    def test_oracle_agreement_randomized(self, rng):
        for _ in range(50):
            dim = rng.choice([2, 3])
            w = random_multivector(rng, dim, 2) if rng.random() < 0.5 \
                else random_poisson(rng, dim).bivector
            result = jacobi_check(w)
            oracle = jacobi_cyclic_failure(w)
            assert isinstance(result, PoissonStructure) == (oracle is None)


class TestPoissonBracket:
    def test_canonical_pair(self):
        assert poisson_bracket(plane(), var(2, 0), var(2, 1)) == one(2)

    def test_constant_is_central(self, rng):
        structure = so3_structure()
        f = random_polynomial(rng, 3, 2)
        assert poisson_bracket(structure, f, Polynomial.constant(3, 4)).is_zero()

    def test_jacobi_identity(self, rng):
        structure = so3_structure()
        for _ in range(10):
            f, g, h = (random_polynomial(rng, 3, 2) for _ in range(3))
            total = poisson_bracket(structure, poisson_bracket(structure, f, g), h) \
                + poisson_bracket(structure, poisson_bracket(structure, g, h), f) \
                + poisson_bracket(structure, poisson_bracket(structure, h, f), g)
            assert total.is_zero()

    def test_unverified_rejected(self, rng):
        loose = PoissonStructure(random_multivector(rng, 3, 2), jacobi_verified=False)
        with pytest.raises(NotVerified):
            poisson_bracket(loose, var(3, 0), var(3, 1))


class TestHamiltonian:
    def test_coordinate_field(self):
        assert hamiltonian(plane(), var(2, 0)) \
            == MultiVectorField(2, 1, {(1,): one(2)})

    def test_rotation_casimir(self):
        x = [var(3, i) for i in range(3)]
        casimir = x[0] ** 2 + x[1] ** 2 + x[2] ** 2
        assert hamiltonian(so3_structure(), casimir).is_zero()

    def test_constant_function(self):
        assert hamiltonian(plane(), Polynomial.constant(2, 3)).is_zero()


class TestSharp:
    def test_zero_form(self):
        assert sharp(plane(), DifferentialForm.zero(2, 1)).is_zero()

    def test_degree_one_alternating_sign(self):
        theta = DifferentialForm(2, 1, {(0,): one(2)})
        assert sharp(plane(), theta) == MultiVectorField(2, 1, {(1,): -one(2)})

    def test_area_form(self):
        area = DifferentialForm(2, 2, {(0, 1): one(2)})
        assert sharp(plane(), area) == MultiVectorField(2, 2, {(0, 1): one(2)})

    def test_chain_rule_uniform_constant(self, rng):
        constant = calibration_constants()["sharp-chain-sign"]
        for _ in range(12):
            dim = rng.choice([2, 3])
            structure = random_poisson(rng, dim)
            deg = rng.randint(0, dim - 1)
            xi = random_form(rng, dim, deg)
            assert lichnerowicz(structure, sharp(structure, xi)) \
                == sharp(structure, exterior_d(xi)).scale(constant)


class TestFormBracket:
    def test_exact_forms(self, rng):
        for _ in range(8):
            structure = random_poisson(rng, rng.choice([2, 3]))
            dim = structure.patch_dim
            f = random_polynomial(rng, dim, 2)
            g = random_polynomial(rng, dim, 2)
            lhs = form_bracket(structure,
                               exterior_d(DifferentialForm.function(f)),
                               exterior_d(DifferentialForm.function(g)))
            assert lhs == exterior_d(
                DifferentialForm.function(poisson_bracket(structure, f, g)))

    def test_alternating(self, rng):
        structure = so3_structure()
        alpha = random_form(rng, 3, 1)
        assert form_bracket(structure, alpha, alpha).is_zero()

    def test_constant_structure_coordinates(self):
        dx1 = DifferentialForm(2, 1, {(0,): one(2)})
        dx2 = DifferentialForm(2, 1, {(1,): one(2)})
        assert form_bracket(plane(), dx1, dx2).is_zero()


class TestLichnerowicz:
    def test_structure_is_cocycle(self):
        structure = so3_structure()
        assert lichnerowicz(structure, structure.bivector).is_zero()

    def test_coordinate_coboundary(self):
        got = lichnerowicz(plane(), MultiVectorField.function(var(2, 0)))
        assert got == MultiVectorField(2, 1, {(1,): one(2)})

    def test_square_zero(self, rng):
        for _ in range(10):
            structure = random_poisson(rng, 3)
            u = random_multivector(rng, 3, rng.randint(0, 2))
            assert lichnerowicz(structure, lichnerowicz(structure, u)).is_zero()

    def test_derivation_rule(self, rng):
        structure = so3_structure()
        for _ in range(8):
            du = rng.randint(0, 2)
            u = random_multivector(rng, 3, du)
            v = random_multivector(rng, 3, rng.randint(0, 2))
            assert lichnerowicz(structure, wedge(u, v)) \
                == wedge(lichnerowicz(structure, u), v) \
                + wedge(u, lichnerowicz(structure, v)).scale(Fraction(-1) ** du)


class TestModularField:
    def test_linear_plane_structure(self):
        structure = jacobi_check(MultiVectorField(2, 2, {(0, 1): var(2, 0)}))
        assert modular_field(structure, LogDensity(Polynomial.zero(2))) \
            == MultiVectorField(2, 1, {(1,): -one(2)})

    def test_constant_symplectic_flat_density(self):
        assert modular_field(plane(), LogDensity(Polynomial.zero(2))).is_zero()

    def test_exponential_density(self):
        assert modular_field(plane(), LogDensity(var(2, 0))) \
            == hamiltonian(plane(), -var(2, 0))

    def test_cocycle_and_shift(self, rng):
        for _ in range(8):
            structure = random_poisson(rng, 3)
            lam = random_polynomial(rng, 3, 2)
            delta = modular_field(structure, LogDensity(lam))
            assert lichnerowicz(structure, delta).is_zero()
            shift = random_polynomial(rng, 3, 2)
            assert modular_field(structure, LogDensity(lam + shift)) \
                == delta + hamiltonian(structure, -shift)


class TestDensityLift:
    def test_zero(self, tangent):
        assert lift_density(LogDensity(Polynomial.zero(2)), tangent).lam.is_zero()

    def test_linear_density_doubles(self, tangent):
        assert lift_density(LogDensity(var(2, 0)), tangent).lam == var(4, 0) * 2

    def test_quadratic_density_triples(self, frobs):
        frob = frobs[1]  # three-dimensional truncated power algebra
        got = lift_density(LogDensity(var(1, 0) ** 2), frob)
        assert got.lam == var(3, 0) ** 2 * 3


class TestLiftPoisson:
    def test_unit_and_top(self, tangent, rng):
        structure = plane_rank_structure(rng, 2)
        lifted_c = lift_poisson(tangent, structure, tangent.algebra.unit())
        assert lifted_c.jacobi_verified
        assert lifted_c.bivector == complete_lift(tangent, structure.bivector).field
        lifted_v = lift_poisson(tangent, structure, tangent.algebra.basis_element(1))
        assert lifted_v.bivector == vertical_lift(tangent, structure.bivector).field

    def test_closed_form_instance(self, tangent):
        # the tangent-bundle pattern: base-fiber part plus fiber-fiber derivative part
        w = MultiVectorField(2, 2, {(0, 1): var(2, 0)})
        structure = jacobi_check(w)
        lifted = lift_poisson(tangent, structure, tangent.algebra.unit())
        expected = MultiVectorField(4, 2, {
            (0, 3): var(4, 0), (1, 2): var(4, 0), (1, 3): var(4, 1)})
        assert lifted.bivector == expected

    def test_pairwise_compatibility(self, frobs, rng):
        from weillift.lifts import a_lift
        from weillift.tensors import schouten

        for frob in frobs:
            structure = plane_rank_structure(rng, 2)
            lifts = [a_lift(frob, structure.bivector, a).field
                     for a in range(frob.dim_total)]
            for wa in lifts:
                for wb in lifts:
                    assert schouten(wa, wb).is_zero()


class TestModularTheorem:
    def test_concrete_tangent_instance(self, tangent):
        structure = jacobi_check(MultiVectorField(2, 2, {(0, 1): var(2, 0)}))
        report = verify_modular_theorem(
            tangent, structure, LogDensity(Polynomial.zero(2)), tangent.algebra.unit())
        expected = MultiVectorField(4, 1, {(3,): Polynomial.constant(4, -2)})
        assert report.equal
        assert report.lhs == expected and report.rhs == expected
        assert report.counterexample is None

    def test_nilpotent_element_vanishes(self, tangent):
        structure = jacobi_check(MultiVectorField(2, 2, {(0, 1): var(2, 0)}))
        report = verify_modular_theorem(
            tangent, structure, LogDensity(Polynomial.zero(2)),
            tangent.algebra.basis_element(1))
        assert report.equal and report.lhs.is_zero()

    def test_scaled_element(self, tangent):
        structure = jacobi_check(MultiVectorField(2, 2, {(0, 1): var(2, 0)}))
        report = verify_modular_theorem(
            tangent, structure, LogDensity(Polynomial.zero(2)),
            tangent.algebra.element([3, 1]))
        assert report.equal
        assert report.lhs == MultiVectorField(4, 1, {(3,): Polynomial.constant(4, -6)})

    def test_rotation_structure_across_algebras(self, frobs, rng):
        structure = so3_structure()
        lam = LogDensity(random_polynomial(rng, 3, 2))
        for frob in frobs[:2] + frobs[3:]:
            for eps in (frob.algebra.unit(),
                        frob.algebra.basis_element(frob.dim_total - 1)):
                report = verify_modular_theorem(frob, structure, lam, eps)
                assert report.equal

    def test_forward_exactness_witness(self, tangent, frobs):
        structure = jacobi_check(MultiVectorField(2, 2, {(0, 1): one(2)}))
        density = LogDensity(var(2, 0))
        for frob in (tangent, frobs[1]):
            lifted = lift_poisson(frob, structure, frob.algebra.unit())
            delta_bar = modular_field(lifted, lift_density(density, frob))
            potential = vertical_lift(
                frob, MultiVectorField.function(-var(2, 0))).field.scalar()
            assert delta_bar == lichnerowicz(
                lifted, MultiVectorField.function(potential)).scale(frob.dim_total)


class TestCalibrationConstants:
    def test_recorded_values(self):
        constants = calibration_constants()
        assert constants["interior-pairing-factor"] == 2
        assert constants["self-bracket-cyclic-factor"] == -2
        assert constants["sharp-chain-sign"] == -1
