from fractions import Fraction

import pytest

from weillift.errors import NoInverseProvided, NotASmooth, VarCountMismatch
from weillift.poly import Polynomial, random_polynomial
from weillift.prolong import (
    AFunction,
    ChartMap,
    a_derivative,
    check_scheffers,
    flat_index,
    prolong_chart_map,
    prolong_scalar,
    prolong_scalar_taylor,
)


def var(n, i):
    return Polynomial.variable(n, i)


class TestProlongScalar:
    def test_square_on_dual_numbers(self, tangent):
        f = var(1, 0) ** 2
        lifted = prolong_scalar(f, tangent.algebra)
        x, y = var(2, 0), var(2, 1)
        assert lifted.components == (x * x, 2 * x * y)

    def test_constant(self, frobs):
        for frob in frobs:
            lifted = prolong_scalar(Polynomial.constant(2, 7), frob.algebra)
            assert lifted.components[0].is_constant()
            assert all(c.is_zero() for c in lifted.components[1:])

    def test_product_of_coordinates(self, tangent):
        f = var(2, 0) * var(2, 1)
        lifted = prolong_scalar(f, tangent.algebra)
        x1, y1, x2, y2 = (var(4, i) for i in range(4))
        assert lifted.components == (x1 * x2, x1 * y2 + x2 * y1)

    def test_base_slot_recovers_function(self, frobs, rng):
        for frob in frobs:
            width = frob.dim_total
            f = random_polynomial(rng, 2, 3)
            lifted = prolong_scalar(f, frob.algebra)
            proj = [var(2 * width, flat_index(i, 0, width)) for i in range(2)]
            assert lifted.components[0] == f.compose(proj)


class TestTaylorOracle:
    def test_square_matches(self, tangent):
        f = var(1, 0) ** 2
        assert prolong_scalar_taylor(f, tangent.algebra) == prolong_scalar(f, tangent.algebra)

    def test_linear_terminates_at_first_order(self, frobs):
        f = var(2, 0) * 3 + var(2, 1) - 5
        for frob in frobs:
            lifted = prolong_scalar_taylor(f, frob.algebra)
            assert lifted == prolong_scalar(f, frob.algebra)
            for comp in lifted.components:
                assert comp.total_degree() <= 1

    def test_randomized_oracle(self, frobs, rng):
        for frob in frobs:
            for _ in range(8):
                m = rng.randint(1, 3)
                f = random_polynomial(rng, m, 4)
                assert prolong_scalar(f, frob.algebra) == prolong_scalar_taylor(f, frob.algebra)


class TestSmoothness:
    def test_prolongations_are_smooth(self, frobs, rng):
        for frob in frobs:
            f = random_polynomial(rng, 2, 3)
            ok, where = check_scheffers(prolong_scalar(f, frob.algebra))
            assert ok and where is None

    def test_violation_located(self, tangent):
        bad = AFunction(1, tangent.algebra, [var(2, 1), Polynomial.zero(2)])
        ok, where = check_scheffers(bad)
        assert not ok and where == (0, 0, 1)

    def test_constants_smooth(self, tangent):
        const = AFunction.constant(2, tangent.algebra, 3)
        assert check_scheffers(const)[0]


class TestADerivative:
    def test_derivative_of_square(self, tangent):
        f = var(1, 0) ** 2
        lifted = prolong_scalar(f, tangent.algebra)
        assert a_derivative(lifted, 0) == prolong_scalar(2 * var(1, 0), tangent.algebra)

    def test_derivative_of_constant(self, frobs):
        for frob in frobs:
            const = AFunction.constant(2, frob.algebra, 5)
            assert a_derivative(const, 0).is_zero()

    def test_mixed_partials_commute(self, frobs, rng):
        for frob in frobs:
            f = random_polynomial(rng, 2, 3)
            lifted = prolong_scalar(f, frob.algebra)
            assert a_derivative(a_derivative(lifted, 0), 1) \
                == a_derivative(a_derivative(lifted, 1), 0)

    def test_commutes_with_prolongation(self, frobs, rng):
        for frob in frobs:
            f = random_polynomial(rng, 3, 3)
            lifted = prolong_scalar(f, frob.algebra)
            for i in range(3):
                assert a_derivative(lifted, i) == prolong_scalar(f.diff(i), frob.algebra)

    def test_rejects_non_smooth(self, tangent):
        bad = AFunction(1, tangent.algebra, [var(2, 1), Polynomial.zero(2)])
        with pytest.raises(NotASmooth):
            a_derivative(bad, 0)


class TestHomomorphism:
    def test_sum_and_product(self, frobs, rng):
        for frob in frobs:
            for _ in range(5):
                f = random_polynomial(rng, 2, 3)
                g = random_polynomial(rng, 2, 3)
                lf, lg = prolong_scalar(f, frob.algebra), prolong_scalar(g, frob.algebra)
                assert prolong_scalar(f + g, frob.algebra) == lf + lg
                assert prolong_scalar(f * g, frob.algebra) == lf * lg


class TestChartMap:
    def shear(self):
        x1, x2 = var(2, 0), var(2, 1)
        return ChartMap(2, 2, [x1 + x2 ** 2, x2], [x1 - x2 ** 2, x2])

    def test_bad_inverse_rejected(self):
        x1, x2 = var(2, 0), var(2, 1)
        with pytest.raises(VarCountMismatch):
            ChartMap(2, 2, [x1 + x2 ** 2, x2], [x1, x2])

    def test_identity_prolongs_to_identity(self, frobs):
        for frob in frobs:
            width = frob.dim_total
            big = prolong_chart_map(ChartMap.identity(2), frob.algebra)
            assert big == ChartMap.identity(2 * width)

    def test_shear_prolongation_components(self, tangent):
        big = prolong_chart_map(self.shear(), tangent.algebra)
        x1, y1, x2, y2 = (var(4, i) for i in range(4))
        assert big.components == (x1 + x2 * x2, y1 + 2 * x2 * y2, x2, y2)

    def test_no_inverse(self, tangent):
        x1, x2 = var(2, 0), var(2, 1)
        chart = ChartMap(2, 2, [x1, x2])
        with pytest.raises(NoInverseProvided):
            prolong_chart_map(chart, tangent.algebra)

    def test_determinant_relation_at_point(self, tangent):
        from weillift import linalg

        big = prolong_chart_map(self.shear(), tangent.algebra)
        base_pt = [Fraction(1), Fraction(2)]
        full_pt = [Fraction(1), Fraction(3), Fraction(2), Fraction(4)]
        small = [[e.evaluate(base_pt) for e in row] for row in self.shear().jacobian()]
        large = [[e.evaluate(full_pt) for e in row] for row in big.jacobian()]
        assert linalg.det(small) == 1
        assert linalg.det(large) == 1

    def test_composition_rule(self, frobs, rng):
        for frob in frobs:
            f = random_polynomial(rng, 2, 3)
            shear = self.shear()
            big = prolong_chart_map(shear, frob.algebra)
            lhs = prolong_scalar(f.compose(list(shear.components)), frob.algebra)
            rhs = prolong_scalar(f, frob.algebra).compose_flat(list(big.components))
            assert lhs == rhs


class TestCovariantSlots:
    def test_value_and_slot_derivatives(self, frobs, rng):
        for frob in frobs:
            dim = frob.dim_total
            func = prolong_scalar(random_polynomial(rng, 2, 3), frob.algebra)
            covariant = []
            for b in range(dim):
                total = func.components[0] * frob.q_lower[b][0]
                for s in range(1, dim):
                    total = total + func.components[s] * frob.q_lower[b][s]
                covariant.append(total)
            value = func.components[0] * frob.p[0]
            for s in range(1, dim):
                value = value + func.components[s] * frob.p[s]
            assert value == covariant[0]
            for j in range(2):
                for b in range(dim):
                    assert covariant[0].diff(flat_index(j, b, dim)) \
                        == covariant[b].diff(flat_index(j, 0, dim))
