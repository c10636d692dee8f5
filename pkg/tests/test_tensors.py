from fractions import Fraction

import pytest

from weillift.errors import (
    DegreeMismatch,
    NotVectorField,
    PatchMismatch,
    VarianceMismatch,
)
from weillift.fixtures import fixed_shears, random_form, random_multivector, random_mixed
from weillift.poly import Polynomial, random_polynomial
from weillift.prolong import ChartMap
from weillift.tensors import (
    DifferentialForm,
    MixedTensorField,
    MultiVectorField,
    exterior_d,
    interior,
    lie_derive,
    pullback,
    pushforward,
    schouten,
    tensor_product,
    wedge,
)


def one(n=2):
    return Polynomial.constant(n, 1)


def var(n, i):
    return Polynomial.variable(n, i)


class TestCanonicalStorage:
    def test_sign_canonicalization(self):
        w = MultiVectorField(3, 2, {(1, 0): one(3)})
        assert w.components == {(0, 1): -one(3)}
        assert w.full((1, 0)) == one(3)
        assert w.full((0, 0)).is_zero()

    def test_degree_cannot_exceed_patch_nonzero(self):
        with pytest.raises(Exception):
            DifferentialForm(2, 3, {(0, 1, 2): one(2)})


class TestWedge:
    def test_self_wedge_vanishes(self):
        a = DifferentialForm(2, 1, {(0,): one()})
        assert wedge(a, a).is_zero()

    def test_coordinate_area(self):
        dx1 = DifferentialForm(2, 1, {(0,): one()})
        dx2 = DifferentialForm(2, 1, {(1,): one()})
        assert wedge(dx1, dx2) == DifferentialForm(2, 2, {(0, 1): one()})

    def test_associative_randomized(self, rng):
        for _ in range(15):
            a = random_form(rng, 3, rng.randint(0, 2))
            b = random_form(rng, 3, rng.randint(0, 2))
            c = random_form(rng, 3, rng.randint(0, 2))
            assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))

    def test_graded_commutative(self, rng):
        for _ in range(15):
            da, db = rng.randint(0, 2), rng.randint(0, 2)
            a = random_form(rng, 3, da)
            b = random_form(rng, 3, db)
            assert wedge(a, b) == wedge(b, a).scale(Fraction(-1) ** (da * db))

    def test_overflow_is_zero(self, rng):
        a = random_form(rng, 2, 2)
        b = random_form(rng, 2, 1)
        assert wedge(a, b).is_zero()

    def test_variance_mismatch(self):
        with pytest.raises(VarianceMismatch):
            wedge(DifferentialForm(2, 1, {(0,): one()}),
                  MultiVectorField(2, 1, {(0,): one()}))


class TestExteriorD:
    def test_twisted_coordinate_form(self):
        form = DifferentialForm(2, 1, {(0,): var(2, 1)})
        assert exterior_d(form) == DifferentialForm(2, 2, {(0, 1): -one()})

    def test_square_zero(self, rng):
        for _ in range(10):
            xi = random_form(rng, 3, rng.randint(0, 2))
            assert exterior_d(exterior_d(xi)).is_zero()

    def test_antiderivation(self, rng):
        for _ in range(10):
            f = random_polynomial(rng, 3, 2)
            xi = random_form(rng, 3, rng.randint(0, 2))
            assert exterior_d(xi.scale(f)) \
                == wedge(exterior_d(DifferentialForm.function(f)), xi) \
                + exterior_d(xi).scale(f)


class TestInterior:
    def test_vector_into_area(self):
        d1 = MultiVectorField(2, 1, {(0,): one()})
        area = DifferentialForm(2, 2, {(0, 1): one()})
        assert interior(d1, area) == DifferentialForm(2, 1, {(1,): one()})

    def test_full_pairing(self):
        pair = MultiVectorField(2, 2, {(0, 1): one()})
        area = DifferentialForm(2, 2, {(0, 1): one()})
        assert interior(pair, area).scalar() == Polynomial.constant(2, 2)

    def test_zero_form(self):
        d1 = MultiVectorField(2, 1, {(0,): one()})
        assert interior(d1, DifferentialForm.zero(2, 2)).is_zero()

    def test_degree_mismatch(self):
        pair = MultiVectorField(2, 2, {(0, 1): one()})
        with pytest.raises(DegreeMismatch):
            interior(pair, DifferentialForm(2, 1, {(0,): one()}))


class TestSchouten:
    def test_coordinate_lie_bracket(self):
        d1 = MultiVectorField(3, 1, {(0,): one(3)})
        x1d1 = MultiVectorField(3, 1, {(0,): var(3, 0)})
        assert schouten(d1, x1d1) == d1

    def test_rotation_structure_closed(self):
        x = [var(3, i) for i in range(3)]
        w = MultiVectorField(3, 2, {(0, 1): x[2], (1, 2): x[0], (0, 2): -x[1]})
        assert schouten(w, w).is_zero()

    def test_graded_commutativity(self, rng):
        for _ in range(15):
            du, dv = rng.randint(0, 2), rng.randint(0, 2)
            u = random_multivector(rng, 3, du, 1)
            v = random_multivector(rng, 3, dv, 1)
            assert schouten(u, v) == schouten(v, u).scale(Fraction(-1) ** (du * dv))

    def test_graded_jacobi(self, rng):
        for _ in range(12):
            du, dv, dy = (rng.randint(0, 2) for _ in range(3))
            u = random_multivector(rng, 3, du, 1)
            v = random_multivector(rng, 3, dv, 1)
            y = random_multivector(rng, 3, dy, 1)
            total = schouten(schouten(v, y), u).scale(Fraction(-1) ** (du * dv)) \
                + schouten(schouten(y, u), v).scale(Fraction(-1) ** (dv * dy)) \
                + schouten(schouten(u, v), y).scale(Fraction(-1) ** (dy * du))
            assert total.is_zero()

    def test_graded_leibniz(self, rng):
        for _ in range(12):
            du, dv, dy = (rng.randint(0, 2) for _ in range(3))
            u = random_multivector(rng, 3, du, 1)
            v = random_multivector(rng, 3, dv, 1)
            y = random_multivector(rng, 3, dy, 1)
            assert schouten(u, wedge(v, y)) \
                == wedge(schouten(u, v), y) \
                + wedge(v, schouten(u, y)).scale(Fraction(-1) ** ((du - 1) * dv))

    def test_patch_mismatch(self):
        with pytest.raises(PatchMismatch):
            schouten(MultiVectorField(2, 1, {(0,): one()}),
                     MultiVectorField(3, 1, {(0,): one(3)}))


class TestLieDerivative:
    def test_translation_differentiates(self, rng):
        d1 = MultiVectorField(3, 1, {(0,): one(3)})
        t = random_mixed(rng, 3, 1, 1)
        moved = lie_derive(d1, t)
        expected = MixedTensorField(3, 1, 1, {
            key: poly.diff(0) for key, poly in t.components.items()
        })
        assert moved == expected

    def test_vector_case_is_bracket(self, rng):
        X = random_multivector(rng, 3, 1)
        Y = random_multivector(rng, 3, 1)
        assert lie_derive(X, Y) == schouten(X, Y)

    def test_cartan_homotopy(self, rng):
        for _ in range(10):
            X = random_multivector(rng, 3, 1)
            xi = random_form(rng, 3, rng.randint(1, 2))
            assert lie_derive(X, xi) \
                == interior(X, exterior_d(xi)) + exterior_d(interior(X, xi))

    def test_not_vector_field(self, rng):
        w = random_multivector(rng, 3, 2)
        with pytest.raises(NotVectorField):
            lie_derive(w, random_mixed(rng, 3, 1, 0))


class TestTransport:
    def shear(self):
        return fixed_shears(2)[0]

    def test_pullback_identity(self, rng):
        xi = random_form(rng, 2, rng.randint(0, 2))
        assert pullback(ChartMap.identity(2), xi) == xi

    def test_pullback_of_coordinate_form(self):
        dx1 = DifferentialForm(2, 1, {(0,): one()})
        pulled = pullback(self.shear(), dx1)
        assert pulled == DifferentialForm(2, 1, {(0,): one(), (1,): 2 * var(2, 1)})

    def test_round_trip(self, rng):
        shear = self.shear()
        for _ in range(6):
            u = random_multivector(rng, 2, rng.randint(1, 2))
            assert pushforward(shear.inverse_map(), pushforward(shear, u)) == u
            t = random_mixed(rng, 2, 1, 1)
            assert pushforward(shear.inverse_map(), pushforward(shear, t)) == t

    def test_bracket_natural_under_transport(self, rng):
        shear = self.shear()
        u = random_multivector(rng, 2, 1)
        v = random_multivector(rng, 2, 2)
        assert pushforward(shear, schouten(u, v)) \
            == schouten(pushforward(shear, u), pushforward(shear, v))


class TestTensorProduct:
    def test_components_concatenate(self, rng):
        u = random_mixed(rng, 2, 1, 0)
        v = random_mixed(rng, 2, 0, 1)
        uv = tensor_product(u, v)
        assert uv.cov == 1 and uv.contra == 1
        for (lo, up), poly in uv.components.items():
            assert poly == u.component(lo, ()) * v.component((), up)
