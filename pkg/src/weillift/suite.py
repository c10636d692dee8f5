"""The verification suite: every lift and bracket law as a named check.

Each check draws its own deterministic RNG from the global seed and its
name, so the report is byte-stable for a fixed seed and independent of
check execution order.  A failing check records the first counterexample
it hit; recorded calibration constants land in the report header.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .algebra import attach_frobenius, basis_product_coeffs, build_plural, star_multiply
from .errors import DegreeMismatch, NotFrobenius, PVanishesOnTop
from .fixtures import (
    fixed_shears,
    random_element,
    random_form,
    random_mixed,
    random_multivector,
    random_poisson,
    random_shear,
    so3_structure,
    standard_frobenius_fixtures,
    tangent_fixture,
    tangent_shifted_fixture,
)
from .lifts import (
    a_exterior_d,
    a_interior_vector,
    a_lift,
    a_schouten,
    base_pullback,
    complete_lift,
    complete_lift_bivector_direct,
    epsilon_lift,
    lambda_lift,
    prolong_tensor,
    realize,
    vertical_lift,
    vertical_lift_direct,
)
from .poisson import (
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
from .poly import Polynomial, random_polynomial
from .prolong import (
    AFunction,
    a_derivative,
    check_scheffers,
    flat_index,
    prolong_chart_map,
    prolong_scalar,
    prolong_scalar_taylor,
)
from .specfile import SpecDocument, render_polynomial, render_tensor
from .tensors import (
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


@dataclass
class CheckResult:
    name: str
    law: str
    status: str
    cases: int
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)


class CheckFailure(Exception):
    def __init__(self, counterexample: dict):
        super().__init__("check failed")
        self.counterexample = counterexample


class Context:
    def __init__(self, doc: SpecDocument, seed: int, cases: int):
        self.doc = doc
        self.seed = seed
        self.cases = cases
        self.frobs = standard_frobenius_fixtures()
        if all(f != doc.frobenius for f in self.frobs):
            self.frobs.append(doc.frobenius)
        self.tangent = tangent_fixture()
        self.tangent_shifted = tangent_shifted_fixture()

    def rng(self, name: str) -> random.Random:
        digest = hashlib.sha256(f"{self.seed}:{name}".encode()).digest()
        return random.Random(int.from_bytes(digest[:8], "big"))

    def frob_cycle(self, i: int):
        return self.frobs[i % len(self.frobs)]


def _expect(condition: bool, case: int, **info):
    if not condition:
        payload = {"case": case}
        for key, value in info.items():
            payload[key] = value if isinstance(value, (str, int, list, dict)) else repr(value)
        raise CheckFailure(payload)


CHECKS: list[tuple[str, str, callable]] = []


def check(name: str, law: str):
    def factory(fn):
        CHECKS.append((name, law, fn))
        return fn

    return factory


# ---------------------------------------------------------------- algebra


@check("algebra-plural-determinant",
       "symbolic det of the covector pairing on truncated power algebras is the "
       "signed (n+1)-st power of the top coordinate, so acceptance is exactly "
       "p_top != 0")
def _plural_determinant(ctx: Context) -> dict:
    rng = ctx.rng("algebra-plural-determinant")
    cases = 0
    for n in range(1, 5):
        nv = n + 1
        mat = [
            [Polynomial.variable(nv, a + b) if a + b <= n else Polynomial.zero(nv)
             for b in range(nv)]
            for a in range(nv)
        ]
        det = _poly_matrix_det(mat, nv)
        # the antidiagonal permutation contributes its sign to the monomial
        sign = -1 if (n * (n + 1) // 2) % 2 else 1
        expected = Polynomial.variable(nv, n) ** (n + 1) * sign
        _expect(det == expected, cases, n=n, got=det.render(), want=expected.render())
        cases += 1
        algebra = build_plural(n)
        for _ in range(3):
            p = [Fraction(rng.randint(-3, 3)) for _ in range(nv)]
            while all(v == 0 for v in p[:-1]):
                p = [Fraction(rng.randint(-3, 3)) for _ in range(nv)]
            accepted = True
            try:
                attach_frobenius(algebra, p)
            except (NotFrobenius, PVanishesOnTop):
                accepted = False
            _expect(accepted == (p[-1] != 0), cases, n=n, p=[str(v) for v in p])
            cases += 1
    return {"cases": cases}


def _poly_matrix_det(mat, nv):
    from itertools import permutations

    from .tensors import sort_with_sign

    size = len(mat)
    total = Polynomial.zero(nv)
    for perm in permutations(range(size)):
        sign = sort_with_sign(perm)[1] if size > 1 else 1
        term = Polynomial.constant(nv, sign)
        for row, col in enumerate(perm):
            term = term * mat[row][col]
            if term.is_zero():
                break
        total = total + term
    return total


@check("algebra-pairing-identities",
       "pairing, dual basis and raised-constant identities hold exactly")
def _pairing_identities(ctx: Context) -> dict:
    rng = ctx.rng("algebra-pairing-identities")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        algebra = frob.algebra
        dim = frob.dim_total
        X = random_element(rng, frob)
        Y = random_element(rng, frob)
        _expect(frob.q_value(X, Y) == frob.p_value(X * Y), cases, law="q(X,Y)=p(XY)")
        for a in range(dim):
            for b in range(dim):
                val = frob.p_value(frob.algebra.mul_coords(frob.dual_basis[a],
                                                           frob.dual_basis[b]))
                _expect(val == frob.q_upper[a][b], cases, law="p(e^a e^b)=q^{ab}", a=a, b=b)
                _expect(frob.gamma_upper[0][a][b] == frob.q_upper[a][b], cases,
                        law="raised constants contract to inverse pairing")
        for a in range(dim):
            for c in range(dim):
                prod = algebra.mul_coords(algebra.basis_element(a).coords, frob.dual_basis[c])
                lhs1 = [sum(algebra.gamma[a][b][c] * frob.dual_basis[b][k] for b in range(dim))
                        for k in range(dim)]
                lhs2 = [sum(frob.gamma_upper[a][c][b] * (1 if b == k else 0) for b in range(dim))
                        for k in range(dim)]
                _expect(list(prod) == lhs1 == lhs2, cases, law="e_a e^c expansion", a=a, c=c)
                _expect(frob.p_value(prod) == (1 if a == c else 0), cases,
                        law="p(e_a e^c)=delta", a=a, c=c)
        for a in range(dim):
            for b in range(dim):
                for c in range(dim):
                    triple = algebra.mul_coords(
                        algebra.mul_coords(algebra.basis_element(a).coords,
                                           algebra.basis_element(b).coords),
                        frob.dual_basis[c])
                    _expect(frob.p_value(triple) == algebra.gamma[a][b][c], cases,
                            law="p(e_a e_b e^c)=gamma")
        for a in range(dim):
            for d in range(dim):
                for b in range(dim):
                    for c in range(dim):
                        lhs = sum(frob.gamma_upper[c][a][f] * algebra.gamma[b][f][d]
                                  for f in range(dim))
                        rhs = sum(frob.gamma_upper[f][a][d] * algebra.gamma[b][c][f]
                                  for f in range(dim))
                        _expect(lhs == rhs, cases, law="raised-lowered exchange")
        chain = basis_product_coeffs(algebra, tuple(rng.randrange(dim) for _ in range(3)))
        _expect(len(chain) == dim, cases)
        cases += 1
    return {"cases": cases}


@check("algebra-star-transport",
       "covector multiplication transported through the pairing has p as unit")
def _star_transport(ctx: Context) -> dict:
    rng = ctx.rng("algebra-star-transport")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        dim = frob.dim_total
        xi = tuple(Fraction(rng.randint(-3, 3)) for _ in range(dim))
        eta = tuple(Fraction(rng.randint(-3, 3)) for _ in range(dim))
        prod = star_multiply(frob, xi, eta)
        pairing = sum(x * c for x, c in zip(xi, frob.phi_inv(eta).coords))
        at_unit = sum(p * d for p, d in zip(prod, frob.algebra.unit_coords()))
        _expect(at_unit == pairing, cases, law="pairing equals product evaluated at the unit")
        _expect(tuple(star_multiply(frob, frob.p, xi)) == xi, cases, law="p is the unit")
        X = random_element(rng, frob)
        Y = random_element(rng, frob)
        _expect(tuple(star_multiply(frob, frob.phi(X), frob.phi(Y))) == frob.phi(X * Y),
                cases, law="transport is multiplicative")
        cases += 1
    return {"cases": cases}


@check("algebra-covector-shift",
       "zeroing the unit coordinate of an accepted covector keeps it accepted")
def _covector_shift(ctx: Context) -> dict:
    rng = ctx.rng("algebra-covector-shift")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        dim = frob.dim_total
        if dim == 1:
            continue
        p = [Fraction(rng.randint(-3, 3)) for _ in range(dim)]
        p[-1] = Fraction(rng.choice([1, 2, -1, 3]))
        base = attach_frobenius(frob.algebra, p)
        shifted = list(base.p)
        shifted[0] = Fraction(0)
        attach_frobenius(frob.algebra, shifted)
        cases += 1
    return {"cases": cases}


# ---------------------------------------------------------------- prolongation


@check("prolong-substitution-vs-taylor",
       "substitution and truncated-expansion prolongations agree and are smooth")
def _prolong_oracle(ctx: Context) -> dict:
    rng = ctx.rng("prolong-substitution-vs-taylor")
    cases = 0
    total = max(ctx.cases, 100)
    for i in range(total):
        frob = ctx.frob_cycle(i)
        m = rng.randint(1, 3)
        f = random_polynomial(rng, m, 4)
        sub = prolong_scalar(f, frob.algebra)
        tay = prolong_scalar_taylor(f, frob.algebra)
        _expect(sub == tay, cases, poly=f.render(), algebra_dim=frob.dim_total)
        ok, where = check_scheffers(sub)
        _expect(ok, cases, where=where)
        width = frob.dim_total
        proj = [Polynomial.variable(m * width, flat_index(j, 0, width)) for j in range(m)]
        _expect(sub.components[0] == f.compose(proj), cases, law="slot 0 is the base value")
        cases += 1
    return {"cases": cases}


@check("prolong-ring-homomorphism", "prolongation preserves sums and products")
def _prolong_hom(ctx: Context) -> dict:
    rng = ctx.rng("prolong-ring-homomorphism")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        m = rng.randint(1, 3)
        f = random_polynomial(rng, m, 3)
        g = random_polynomial(rng, m, 3)
        _expect(prolong_scalar(f + g, frob.algebra)
                == prolong_scalar(f, frob.algebra) + prolong_scalar(g, frob.algebra),
                cases, law="additive")
        _expect(prolong_scalar(f * g, frob.algebra)
                == prolong_scalar(f, frob.algebra) * prolong_scalar(g, frob.algebra),
                cases, law="multiplicative")
        cases += 1
    return {"cases": cases}


@check("prolong-composition", "prolonging a composite equals composing prolongations")
def _prolong_compose(ctx: Context) -> dict:
    rng = ctx.rng("prolong-composition")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        m = rng.choice([2, 3])
        if i % 2 == 0:
            inner = list(random_shear(rng, m).components)
        else:
            # arbitrary polynomial maps, not necessarily invertible
            inner = [random_polynomial(rng, m, 2) for _ in range(m)]
        f = random_polynomial(rng, m, 3)
        lhs = prolong_scalar(f.compose(inner), frob.algebra)
        flat_inner: list[Polynomial] = []
        for comp in inner:
            flat_inner.extend(prolong_scalar(comp, frob.algebra).components)
        rhs = prolong_scalar(f, frob.algebra).compose_flat(flat_inner)
        _expect(lhs == rhs, cases, poly=f.render())
        cases += 1
    return {"cases": cases}


@check("prolong-derivative-commutes",
       "the algebra-valued partial of a prolongation is the prolonged partial")
def _prolong_derivative(ctx: Context) -> dict:
    rng = ctx.rng("prolong-derivative-commutes")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        m = rng.randint(1, 3)
        f = random_polynomial(rng, m, 3)
        lifted = prolong_scalar(f, frob.algebra)
        for j in range(m):
            _expect(a_derivative(lifted, j) == prolong_scalar(f.diff(j), frob.algebra),
                    cases, j=j)
        if m >= 2:
            _expect(a_derivative(a_derivative(lifted, 0), 1)
                    == a_derivative(a_derivative(lifted, 1), 0),
                    cases, law="mixed partials commute")
        cases += 1
    bad = AFunction(1, ctx.tangent.algebra,
                    [Polynomial.variable(2, 1), Polynomial.zero(2)])
    ok, where = check_scheffers(bad)
    _expect(not ok and where == (0, 0, 1), cases, law="violation is located")
    return {"cases": cases + 1}


@check("prolong-covariant-slots",
       "covariant components reproduce the covector value and its slot derivatives")
def _covariant_slots(ctx: Context) -> dict:
    rng = ctx.rng("prolong-covariant-slots")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        dim = frob.dim_total
        m = rng.randint(1, 2)
        func = prolong_scalar(random_polynomial(rng, m, 3), frob.algebra)
        func = func.mul_element(random_element(rng, frob))
        covariant = [
            sum_poly([func.components[s] * frob.q_lower[b][s] for s in range(dim)])
            for b in range(dim)
        ]
        value = sum_poly([func.components[s] * frob.p[s] for s in range(dim)])
        _expect(value == covariant[0], cases, law="covector value is the unit covariant slot")
        for j in range(m):
            for b in range(dim):
                lhs = covariant[0].diff(flat_index(j, b, dim))
                rhs = covariant[b].diff(flat_index(j, 0, dim))
                _expect(lhs == rhs, cases, law="slot derivative exchange", j=j, b=b)
        cases += 1
    return {"cases": cases}


def sum_poly(polys):
    out = polys[0]
    for p in polys[1:]:
        out = out + p
    return out


@check("prolong-chart-block-structure",
       "prolonged coordinate changes are block triangular and their Jacobian "
       "determinant is the base determinant to the algebra dimension")
def _chart_blocks(ctx: Context) -> dict:
    rng = ctx.rng("prolong-chart-block-structure")
    cases = 0
    for frob in ctx.frobs:
        width = frob.dim_total
        for m in (2, 3):
            for shear in fixed_shears(m):
                big = prolong_chart_map(shear, frob.algebra)
                jac = big.jacobian()
                for ip in range(m):
                    for ap in range(width):
                        for j in range(m):
                            for b in range(width):
                                if b > ap:
                                    _expect(jac[flat_index(ip, ap, width)]
                                            [flat_index(j, b, width)].is_zero(),
                                            cases, law="upper slots do not feed lower rows")
                base_jac = shear.jacobian()
                proj = [Polynomial.variable(m * width, flat_index(i, 0, width))
                        for i in range(m)]
                for a in range(width):
                    for ip in range(m):
                        for j in range(m):
                            _expect(jac[flat_index(ip, a, width)][flat_index(j, a, width)]
                                    == base_jac[ip][j].compose(proj),
                                    cases, law="diagonal blocks are the base Jacobian")
                for _ in range(5):
                    base_pt = [Fraction(rng.randint(-4, 4)) for _ in range(m)]
                    full_pt = [Fraction(rng.randint(-4, 4)) for _ in range(m * width)]
                    for i in range(m):
                        full_pt[flat_index(i, 0, width)] = base_pt[i]
                    small = [[e.evaluate(base_pt) for e in row] for row in base_jac]
                    large = [[e.evaluate(full_pt) for e in row] for row in jac]
                    _expect(linalg.det(large) == linalg.det(small) ** width,
                            cases, law="determinant power relation")
                    cases += 1
    return {"cases": cases}


# ---------------------------------------------------------------- tensor calculus


@check("exterior-calculus-laws",
       "d is a square-zero antiderivation and the wedge is associative and graded")
def _exterior_laws(ctx: Context) -> dict:
    rng = ctx.rng("exterior-calculus-laws")
    cases = 0
    for i in range(ctx.cases):
        patch = rng.choice([2, 3])
        da, db = rng.randint(0, 2), rng.randint(0, 2)
        alpha = random_form(rng, patch, da)
        beta = random_form(rng, patch, db)
        gamma = random_form(rng, patch, rng.randint(0, 2))
        _expect(wedge(wedge(alpha, beta), gamma) == wedge(alpha, wedge(beta, gamma)),
                cases, law="associativity")
        sign = Fraction(-1) ** (da * db)
        _expect(wedge(alpha, beta) == wedge(beta, alpha).scale(sign), cases,
                law="graded commutativity")
        _expect(exterior_d(exterior_d(alpha)).is_zero(), cases, law="d twice is zero")
        f = random_polynomial(rng, patch, 2)
        _expect(exterior_d(alpha.scale(f))
                == wedge(exterior_d(DifferentialForm.function(f)), alpha)
                + exterior_d(alpha).scale(f),
                cases, law="antiderivation")
        cases += 1
    x2 = Polynomial.variable(2, 1)
    got = exterior_d(DifferentialForm(2, 1, {(0,): x2}))
    _expect(got == DifferentialForm(2, 2, {(0, 1): Polynomial.constant(2, -1)}),
            cases, law="derivative of a twisted coordinate form")
    return {"cases": cases + 1}


@check("interior-contraction-laws",
       "full-array insertion sums over all index orders")
def _interior_laws(ctx: Context) -> dict:
    one2 = Polynomial.constant(2, 1)
    dx12 = DifferentialForm(2, 2, {(0, 1): one2})
    d1 = MultiVectorField(2, 1, {(0,): one2})
    _expect(interior(d1, dx12) == DifferentialForm(2, 1, {(1,): one2}), 0,
            law="vector into a coordinate area form")
    pair = MultiVectorField(2, 2, {(0, 1): one2})
    _expect(interior(pair, dx12).scalar() == Polynomial.constant(2, 2), 1,
            law="full pairing doubles the canonical product")
    _expect(interior(d1, DifferentialForm.zero(2, 2)).is_zero(), 2, law="zero input")
    try:
        interior(pair, DifferentialForm(2, 1, {(0,): one2}))
        raise CheckFailure({"case": 3, "law": "degree mismatch not raised"})
    except DegreeMismatch:
        pass
    return {"cases": 4}


@check("bracket-grading-laws",
       "the multivector bracket is graded commutative with graded Jacobi and Leibniz rules")
def _bracket_grading(ctx: Context) -> dict:
    rng = ctx.rng("bracket-grading-laws")
    cases = 0
    for i in range(ctx.cases):
        patch = 3
        du, dv, dy = rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)
        u = random_multivector(rng, patch, du, 1)
        v = random_multivector(rng, patch, dv, 1)
        y = random_multivector(rng, patch, dy, 1)
        _expect(schouten(u, v) == schouten(v, u).scale(Fraction(-1) ** (du * dv)),
                cases, law="graded commutativity", degrees=[du, dv])
        t1 = schouten(schouten(v, y), u).scale(Fraction(-1) ** (du * dv))
        t2 = schouten(schouten(y, u), v).scale(Fraction(-1) ** (dv * dy))
        t3 = schouten(schouten(u, v), y).scale(Fraction(-1) ** (dy * du))
        _expect((t1 + t2 + t3).is_zero(), cases, law="graded Jacobi", degrees=[du, dv, dy])
        lhs = schouten(u, wedge(v, y))
        rhs = wedge(schouten(u, v), y) + wedge(v, schouten(u, y)).scale(
            Fraction(-1) ** ((du - 1) * dv))
        _expect(lhs == rhs, cases, law="graded Leibniz", degrees=[du, dv, dy])
        cases += 1
    return {"cases": cases}


@check("bracket-reductions",
       "the bracket restricts to the Lie bracket, the Cartan homotopy and Hamiltonian pairing")
def _bracket_reductions(ctx: Context) -> dict:
    rng = ctx.rng("bracket-reductions")
    cases = 0
    one3 = Polynomial.constant(3, 1)
    d1 = MultiVectorField(3, 1, {(0,): one3})
    x1d1 = MultiVectorField(3, 1, {(0,): Polynomial.variable(3, 0)})
    _expect(schouten(d1, x1d1) == d1, cases, law="coordinate Lie bracket")
    for i in range(ctx.cases):
        X = random_multivector(rng, 3, 1)
        Y = random_multivector(rng, 3, 1)
        _expect(lie_derive(X, Y) == schouten(X, Y), cases, law="derivative along equals bracket")
        deg = rng.randint(1, 2)
        xi = random_form(rng, 3, deg)
        _expect(lie_derive(X, xi)
                == interior(X, exterior_d(xi)) + exterior_d(interior(X, xi)),
                cases, law="homotopy formula")
        w = random_multivector(rng, 3, 2)
        f = random_polynomial(rng, 3, 2)
        expected = MultiVectorField.vector([
            sum_poly([w.full((r, j)) * f.diff(r) for r in range(3)]) for j in range(3)
        ])
        _expect(schouten(w, MultiVectorField.function(f)) == expected, cases,
                law="bracket with a function is the gradient pairing")
        cases += 1
    return {"cases": cases}


@check("bracket-pairing-calibration",
       "the full-array pairing of a bivector with two exact forms is a fixed "
       "multiple of the operational bracket")
def _pairing_calibration(ctx: Context) -> dict:
    rng = ctx.rng("bracket-pairing-calibration")
    constant = calibration_constants()["interior-pairing-factor"]
    cases = 0
    for i in range(ctx.cases):
        dim = rng.choice([2, 3])
        structure = random_poisson(rng, dim)
        f = random_polynomial(rng, dim, 2)
        g = random_polynomial(rng, dim, 2)
        lhs = interior(structure.bivector,
                       wedge(exterior_d(DifferentialForm.function(f)),
                             exterior_d(DifferentialForm.function(g)))).scalar()
        rhs = poisson_bracket(structure, f, g) * constant
        _expect(lhs == rhs, cases, constant=str(constant))
        cases += 1
    return {"cases": cases, "interior-pairing-factor": str(constant)}


@check("bracket-self-cyclic-calibration",
       "the self-bracket of a bivector is a fixed multiple of the cyclic sums, "
       "so both vanish together")
def _self_bracket_calibration(ctx: Context) -> dict:
    rng = ctx.rng("bracket-self-cyclic-calibration")
    constant = calibration_constants()["self-bracket-cyclic-factor"]
    cases = 0
    for i in range(ctx.cases):
        w = random_multivector(rng, 3, 2)
        bracket = schouten(w, w)
        for key in combinations(range(3), 3):
            cyc = _cyclic(w, *key)
            got = bracket.components.get(key, Polynomial.zero(3))
            _expect(got == cyc * constant, cases, key=list(key), constant=str(constant))
        cases += 1
    return {"cases": cases, "self-bracket-cyclic-factor": str(constant)}


def _cyclic(w, i, j, k):
    patch = w.patch_dim
    out = Polynomial.zero(patch)
    for r in range(patch):
        out = out + w.full((i, r)) * w.full((j, k)).diff(r)
        out = out + w.full((j, r)) * w.full((k, i)).diff(r)
        out = out + w.full((k, r)) * w.full((i, j)).diff(r)
    return out


# ---------------------------------------------------------------- lifts


@check("lift-d-commutes",
       "the complete lift commutes with the exterior differential, also at the "
       "algebra-valued level")
def _lift_d(ctx: Context) -> dict:
    rng = ctx.rng("lift-d-commutes")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        deg = rng.randint(0, 2)
        xi = random_form(rng, 2, deg)
        _expect(complete_lift(frob, exterior_d(xi)).field
                == exterior_d(complete_lift(frob, xi).field), cases, law="complete lift")
        lifted = prolong_tensor(xi, frob.algebra).mul_element(random_element(rng, frob))
        _expect(realize(frob, a_exterior_d(lifted)).field
                == exterior_d(realize(frob, lifted).field),
                cases, law="realization commutes with the algebra-valued differential")
        cases += 1
    return {"cases": cases}


@check("lift-bracket-commutes",
       "the complete lift commutes with the multivector bracket, also at the "
       "algebra-valued level")
def _lift_bracket(ctx: Context) -> dict:
    rng = ctx.rng("lift-bracket-commutes")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        du, dv = rng.randint(0, 2), rng.randint(1, 2)
        u = random_multivector(rng, 2, du, 2)
        v = random_multivector(rng, 2, dv, 2)
        _expect(complete_lift(frob, schouten(u, v)).field
                == schouten(complete_lift(frob, u).field, complete_lift(frob, v).field),
                cases, law="complete lift", degrees=[du, dv])
        U = prolong_tensor(random_multivector(rng, 2, rng.randint(1, 2), 1),
                           frob.algebra).mul_element(random_element(rng, frob))
        V = prolong_tensor(random_multivector(rng, 2, rng.randint(1, 2), 1),
                           frob.algebra).mul_element(
                               frob.algebra.basis_element(rng.randrange(frob.dim_total)))
        _expect(realize(frob, a_schouten(U, V)).field
                == schouten(realize(frob, U).field, realize(frob, V).field),
                cases, law="realization commutes with the algebra-valued bracket")
        cases += 1
    return {"cases": cases}


@check("lift-interior-vector",
       "insertion of a lifted vector field commutes with lifting; bivector "
       "insertion is the recorded counterexample")
def _lift_interior(ctx: Context) -> dict:
    rng = ctx.rng("lift-interior-vector")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        v = random_multivector(rng, 2, 1, 2)
        deg = rng.randint(1, 2)
        xi = random_form(rng, 2, deg)
        _expect(interior(complete_lift(frob, v).field, complete_lift(frob, xi).field)
                == complete_lift(frob, interior(v, xi)).field, cases, law="vector case")
        V = prolong_tensor(v, frob.algebra).mul_element(random_element(rng, frob))
        Xi = prolong_tensor(xi, frob.algebra).mul_element(
            frob.algebra.basis_element(rng.randrange(frob.dim_total)))
        _expect(realize(frob, a_interior_vector(V, Xi)).field
                == interior(realize(frob, V).field, realize(frob, Xi).field),
                cases, law="algebra-valued vector case")
        cases += 1
    frob = ctx.tangent
    one2 = Polynomial.constant(2, 1)
    v2 = MultiVectorField(2, 2, {(0, 1): one2})
    xi2 = DifferentialForm(2, 2, {(0, 1): Polynomial.variable(2, 0)})
    lhs = interior(complete_lift(frob, v2).field, complete_lift(frob, xi2).field).scalar()
    rhs = complete_lift(frob, interior(v2, xi2)).field.scalar()
    patch4 = 4
    base = Polynomial.variable(patch4, 0) * 4
    fiber = Polynomial.variable(patch4, 1) * 2
    _expect(lhs == base and rhs == fiber and lhs != rhs, cases,
            law="bivector insertion does not commute with lifting")
    return {"cases": cases + 1}


@check("lift-vertical-closed-form",
       "the vertical lift matches its closed coordinate form and factors "
       "through the projection")
def _vertical_closed(ctx: Context) -> dict:
    rng = ctx.rng("lift-vertical-closed-form")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        width = frob.dim_total
        kind = rng.randrange(3)
        if kind == 0:
            t = random_form(rng, 2, rng.randint(0, 2))
        elif kind == 1:
            t = random_multivector(rng, 2, rng.randint(0, 2))
        else:
            t = random_mixed(rng, 2, 1, 1)
        lifted = vertical_lift(frob, t)
        _expect(lifted == vertical_lift_direct(frob, t), cases, law="realization equals closed form")
        if isinstance(t, DifferentialForm):
            for key, poly in lifted.field.components.items():
                _expect(all(v % width == 0 for v in key), cases,
                        law="covariant vertical lift uses slot-0 differentials")
                for expo in poly.terms:
                    live = [k for k, e in enumerate(expo) if e]
                    _expect(all(v % width == 0 for v in live), cases,
                            law="covariant vertical lift depends on base variables only")
        cases += 1
    frob = ctx.tangent
    f = random_polynomial(rng, 2, 3)
    lifted = vertical_lift(frob, MultiVectorField.function(f)).field.scalar()
    proj = [Polynomial.variable(4, flat_index(i, 0, 2)) for i in range(2)]
    _expect(lifted == f.compose(proj), cases, law="functions lift to their pullback")
    return {"cases": cases + 1}


@check("lift-bivector-closed-form",
       "the complete lift of a bivector matches the raised-constant closed form")
def _bivector_closed(ctx: Context) -> dict:
    rng = ctx.rng("lift-bivector-closed-form")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        w = random_multivector(rng, rng.choice([2, 3]), 2)
        _expect(complete_lift(frob, w) == complete_lift_bivector_direct(frob, w), cases)
        cases += 1
    # tangent-bundle pattern: base-fiber split plus fiber-fiber derivative term
    frob = ctx.tangent
    w = MultiVectorField(2, 2, {(0, 1): Polynomial.variable(2, 0)})
    got = complete_lift(frob, w).field
    x10 = Polynomial.variable(4, 0)
    x11 = Polynomial.variable(4, 1)
    expected = MultiVectorField(4, 2, {(0, 3): x10, (1, 2): x10, (1, 3): x11})
    _expect(got == expected, cases, law="tangent-bundle closed form")
    return {"cases": cases + 1}


@check("lift-bracket-family",
       "vertical and complete lifts interleave in the bracket; two verticals commute")
def _lift_family(ctx: Context) -> dict:
    rng = ctx.rng("lift-bracket-family")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        du, dv = rng.randint(1, 2), rng.randint(1, 2)
        u = random_multivector(rng, 2, du, 2)
        v = random_multivector(rng, 2, dv, 2)
        uvV = vertical_lift(frob, schouten(u, v)).field
        _expect(uvV == schouten(vertical_lift(frob, u).field,
                                complete_lift(frob, v).field), cases, law="vertical-complete")
        _expect(uvV == schouten(complete_lift(frob, u).field,
                                vertical_lift(frob, v).field), cases, law="complete-vertical")
        _expect(schouten(vertical_lift(frob, u).field,
                         vertical_lift(frob, v).field).is_zero(), cases,
                law="vertical-vertical vanishes")
        cases += 1
    return {"cases": cases}


@check("lift-tensor-product-expansion",
       "tensor products expand over lift orders through the pairing and the "
       "raised constants; vertical lifts factor")
def _lift_products(ctx: Context) -> dict:
    rng = ctx.rng("lift-tensor-product-expansion")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        width = frob.dim_total
        u = random_mixed(rng, 2, 1, 0, 2, 0.7)
        v = random_mixed(rng, 2, 0, 1, 2, 0.7)
        uv = tensor_product(u, v)
        lhs = complete_lift(frob, uv).field
        rhs = None
        for a in range(width):
            for b in range(width):
                coeff = frob.q_upper[a][b]
                if coeff == 0:
                    continue
                term = tensor_product(a_lift(frob, u, a).field,
                                      a_lift(frob, v, b).field).scale(coeff)
                rhs = term if rhs is None else rhs + term
        _expect(lhs == rhs, cases, law="complete product expansion")
        a = rng.randrange(width)
        lhs2 = a_lift(frob, uv, a).field
        rhs2 = None
        for b in range(width):
            for d in range(width):
                coeff = frob.gamma_upper[a][b][d]
                if coeff == 0:
                    continue
                term = tensor_product(a_lift(frob, u, b).field,
                                      a_lift(frob, v, d).field).scale(coeff)
                rhs2 = term if rhs2 is None else rhs2 + term
        if rhs2 is None:
            rhs2 = MixedTensorField.zero(lhs2.patch_dim, 1, 1)
        _expect(lhs2 == rhs2, cases, law="order-a product expansion", a=a)
        _expect(vertical_lift(frob, uv).field
                == tensor_product(vertical_lift(frob, u).field,
                                  vertical_lift(frob, v).field),
                cases, law="vertical product")
        cases += 1
    # one-generator convolution over component lift orders
    rng2 = ctx.rng("lift-tensor-product-expansion:plural")
    for frob in ctx.frobs:
        if frob.algebra != build_plural(frob.dim_total - 1):
            continue
        n = frob.dim_total - 1
        u = random_mixed(rng2, 2, 1, 0, 2, 0.7)
        v = random_mixed(rng2, 2, 0, 1, 2, 0.7)
        uv = tensor_product(u, v)
        for lam in range(n + 1):
            lhs = lambda_lift(frob, uv, lam).field
            rhs = None
            for k in range(lam + 1):
                term = tensor_product(lambda_lift(frob, u, k).field,
                                      lambda_lift(frob, v, lam - k).field)
                rhs = term if rhs is None else rhs + term
            _expect(lhs == rhs, cases, law="one-generator convolution", order=lam)
            cases += 1
    return {"cases": cases}


@check("lift-element-linearity",
       "lifting by an algebra element is linear and interpolates the lift family")
def _lift_linearity(ctx: Context) -> dict:
    rng = ctx.rng("lift-element-linearity")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        t = random_multivector(rng, 2, rng.randint(1, 2))
        eps = random_element(rng, frob)
        expected = None
        for a in range(frob.dim_total):
            term = a_lift(frob, t, a).field.scale(eps.coords[a])
            expected = term if expected is None else expected + term
        _expect(epsilon_lift(frob, t, eps).field == expected, cases, law="linearity")
        _expect(a_lift(frob, t, 0) == complete_lift(frob, t), cases, law="order zero")
        _expect(a_lift(frob, t, frob.dim_total - 1) == vertical_lift(frob, t),
                cases, law="top order")
        cases += 1
    return {"cases": cases}


@check("lift-injectivity",
       "nonzero tensors lift to nonzero tensors; the scalar kernel is the "
       "constants exactly when the covector kills the unit")
def _lift_injectivity(ctx: Context) -> dict:
    rng = ctx.rng("lift-injectivity")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        deg = rng.randint(1, 2)
        t = random_multivector(rng, 2, deg)
        _expect(complete_lift(frob, t).field.is_zero() == t.is_zero(), cases,
                law="multivector injectivity")
        xi = random_form(rng, 2, deg)
        _expect(complete_lift(frob, xi).field.is_zero() == xi.is_zero(), cases,
                law="form injectivity")
        f = random_polynomial(rng, 2, 3)
        lifted = complete_lift(frob, MultiVectorField.function(f)).field
        if frob.p[0] == 0:
            _expect(lifted.is_zero() == f.is_constant(), cases,
                    law="kernel is the constants")
        else:
            _expect(lifted.is_zero() == f.is_zero(), cases, law="injective on functions")
        cases += 1
    shifted = ctx.tangent_shifted
    f = Polynomial.constant(2, 7)
    _expect(not complete_lift(shifted, MultiVectorField.function(f)).field.is_zero(),
            cases, law="unit-seeing covector keeps constants")
    return {"cases": cases + 1}


@check("lift-base-pullback",
       "pulling back along the projection equals the top-order lift on forms")
def _lift_pullback(ctx: Context) -> dict:
    rng = ctx.rng("lift-base-pullback")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        deg = rng.randint(1, 2)
        xi = random_form(rng, 2, deg)
        pulled = base_pullback(frob, xi)
        _expect(pulled == vertical_lift(frob, xi), cases, law="equals the vertical lift")
        top = frob.algebra.basis_element(frob.dim_total - 1)
        _expect(pulled == realize(frob, prolong_tensor(xi, frob.algebra).mul_element(top)),
                cases, law="equals the top-element realization")
        f = random_polynomial(rng, 2, 2)
        width = frob.dim_total
        proj = [Polynomial.variable(2 * width, flat_index(j, 0, width)) for j in range(2)]
        _expect(base_pullback(frob, xi.scale(f)).field
                == pulled.field.scale(f.compose(proj)), cases,
                law="module law over pulled-back functions")
        cases += 1
    frob = ctx.tangent
    dx1 = DifferentialForm(2, 1, {(0,): Polynomial.constant(2, 1)})
    _expect(base_pullback(frob, dx1).field
            == DifferentialForm(4, 1, {(0,): Polynomial.constant(4, 1)}), cases,
            law="coordinate differential pulls back to the slot-0 differential")
    return {"cases": cases + 1}


@check("lift-naturality",
       "transporting along a prolonged coordinate change commutes with lifting")
def _lift_naturality(ctx: Context) -> dict:
    rng = ctx.rng("lift-naturality")
    cases = 0
    frob = ctx.tangent
    frob2 = ctx.frobs[1]
    for m, frb in ((2, frob), (3, frob), (2, frob2)):
        for shear in fixed_shears(m):
            big = prolong_chart_map(shear, frb.algebra)
            for lift_fn in (complete_lift, vertical_lift):
                u = random_multivector(rng, m, 2, 1)
                _expect(pushforward(big, lift_fn(frb, u).field)
                        == lift_fn(frb, pushforward(shear, u)).field,
                        cases, law="multivector transport", m=m)
                xi = random_form(rng, m, 2, 1)
                _expect(pullback(big, lift_fn(frb, xi).field)
                        == lift_fn(frb, pullback(shear, xi)).field,
                        cases, law="form transport", m=m)
                t = random_mixed(rng, m, 1, 1, 1, 0.4)
                _expect(pushforward(big, lift_fn(frb, t).field)
                        == lift_fn(frb, pushforward(shear, t)).field,
                        cases, law="mixed transport", m=m)
                cases += 1
    return {"cases": cases}


@check("lift-tangent-potential",
       "on the tangent fixture a closed form lifts to an exact form with an "
       "explicit fiber-contracted potential")
def _tangent_potential(ctx: Context) -> dict:
    rng = ctx.rng("lift-tangent-potential")
    frob = ctx.tangent
    cases = 0
    for i in range(max(10, ctx.cases)):
        m, deg = rng.choice([(2, 2), (3, 2), (3, 3)])
        alpha = random_form(rng, m, deg - 1)
        xi = exterior_d(alpha)
        lifted = complete_lift(frob, xi).field
        patch = 2 * m
        proj = [Polynomial.variable(patch, flat_index(j, 0, 2)) for j in range(m)]
        comps = {}
        for rest in combinations(range(m), deg - 1):
            total = Polynomial.zero(patch)
            for j in range(m):
                full = xi.full((j,) + rest)
                if full.is_zero():
                    continue
                total = total + Polynomial.variable(patch, flat_index(j, 1, 2)) \
                    * full.compose(proj)
            if not total.is_zero():
                comps[tuple(flat_index(v, 0, 2) for v in rest)] = total
        eta = DifferentialForm(patch, deg - 1, comps)
        _expect(lifted == exterior_d(eta), cases, m=m, degree=deg)
        cases += 1
    return {"cases": cases}


@check("lift-tangent-covector-split",
       "the unit-seeing tangent lift splits as projection pullback plus the "
       "fiber-only lift")
def _tangent_split(ctx: Context) -> dict:
    rng = ctx.rng("lift-tangent-covector-split")
    cases = 0
    for i in range(ctx.cases):
        deg = rng.randint(1, 2)
        xi = random_form(rng, 2, deg)
        lhs = complete_lift(ctx.tangent_shifted, xi).field
        rhs = base_pullback(ctx.tangent, xi).field + complete_lift(ctx.tangent, xi).field
        _expect(lhs == rhs, cases, degree=deg)
        cases += 1
    return {"cases": cases}


@check("lift-lie-derivative-laws",
       "Lie derivatives interleave with complete and vertical lifts")
def _lift_lie(ctx: Context) -> dict:
    rng = ctx.rng("lift-lie-derivative-laws")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        v = random_multivector(rng, 2, 1, 2)
        t = random_mixed(rng, 2, 1, 1, 2, 0.5)
        moved = lie_derive(v, t)
        vC = complete_lift(frob, v).field
        vV = vertical_lift(frob, v).field
        tC = complete_lift(frob, t).field
        tV = vertical_lift(frob, t).field
        _expect(complete_lift(frob, moved).field == lie_derive(vC, tC), cases,
                law="complete-complete")
        _expect(vertical_lift(frob, moved).field == lie_derive(vC, tV), cases,
                law="complete-vertical")
        _expect(vertical_lift(frob, moved).field == lie_derive(vV, tC), cases,
                law="vertical-complete")
        _expect(lie_derive(vV, tV).is_zero(), cases, law="vertical-vertical vanishes")
        cases += 1
    return {"cases": cases}


# ---------------------------------------------------------------- poisson


@check("poisson-jacobi-oracle",
       "the self-bracket test and the direct cyclic-sum oracle agree on every bivector")
def _jacobi_oracle(ctx: Context) -> dict:
    rng = ctx.rng("poisson-jacobi-oracle")
    cases = 0
    total = max(50, ctx.cases)
    for i in range(total):
        dim = rng.choice([2, 3])
        if rng.random() < 0.5:
            w = random_multivector(rng, dim, 2)
        else:
            w = random_poisson(rng, dim).bivector
        result = jacobi_check(w)
        oracle = jacobi_cyclic_failure(w)
        if isinstance(result, PoissonStructure):
            _expect(oracle is None, cases, law="verified iff cyclic sums vanish")
        else:
            _expect(oracle is not None, cases, law="failure iff some cyclic sum is nonzero")
            _expect(result.bracket_triple == result.cyclic_triple, cases,
                    law="first failing triples coincide")
        cases += 1
    _expect(isinstance(jacobi_check(so3_structure().bivector), PoissonStructure),
            cases, law="rotation structure verifies")
    x = [Polynomial.variable(3, i) for i in range(3)]
    generic = MultiVectorField(3, 2, {(0, 1): x[0] * x[1], (0, 2): x[2] * x[2],
                                      (1, 2): x[1] + x[2]})
    result = jacobi_check(generic)
    _expect(isinstance(result, JacobiFailure) and result.bracket_triple == (0, 1, 2),
            cases, law="generic bivector fails with a located witness")
    return {"cases": cases + 2}


@check("poisson-hamiltonian-calculus",
       "the operational bracket is a biderivation with Jacobi identity and "
       "Casimir kernel")
def _hamiltonian_calculus(ctx: Context) -> dict:
    rng = ctx.rng("poisson-hamiltonian-calculus")
    cases = 0
    so3 = so3_structure()
    x = [Polynomial.variable(3, i) for i in range(3)]
    casimir = x[0] ** 2 + x[1] ** 2 + x[2] ** 2
    _expect(hamiltonian(so3, casimir).is_zero(), cases, law="rotation Casimir")
    plane = PoissonStructure(MultiVectorField(2, 2, {(0, 1): Polynomial.constant(2, 1)}),
                             jacobi_verified=True)
    x2 = [Polynomial.variable(2, i) for i in range(2)]
    _expect(poisson_bracket(plane, x2[0], x2[1]) == Polynomial.constant(2, 1),
            cases, law="canonical pair")
    _expect(hamiltonian(plane, x2[0])
            == MultiVectorField(2, 1, {(1,): Polynomial.constant(2, 1)}),
            cases, law="coordinate Hamiltonian field")
    for i in range(ctx.cases):
        structure = so3 if i % 2 else random_poisson(rng, 3)
        f, g, h = (random_polynomial(rng, 3, 2) for _ in range(3))
        _expect(poisson_bracket(structure, f, g) == -poisson_bracket(structure, g, f),
                cases, law="antisymmetry")
        _expect(poisson_bracket(structure, f, g * h)
                == poisson_bracket(structure, f, g) * h + g * poisson_bracket(structure, f, h),
                cases, law="derivation")
        jac = (poisson_bracket(structure, poisson_bracket(structure, f, g), h)
               + poisson_bracket(structure, poisson_bracket(structure, g, h), f)
               + poisson_bracket(structure, poisson_bracket(structure, h, f), g))
        _expect(jac.is_zero(), cases, law="Jacobi identity")
        _expect(poisson_bracket(structure, f, Polynomial.constant(3, 5)).is_zero(),
                cases, law="constants are central")
        Xf = hamiltonian(structure, f)
        _expect(sum_poly([Xf.vector_component(j) * g.diff(j) for j in range(3)])
                == poisson_bracket(structure, f, g), cases,
                law="Hamiltonian field realizes the bracket")
        cases += 1
    return {"cases": cases + 3}


@check("poisson-sharp-chain-rule",
       "raising then taking the coboundary equals the recorded constant times "
       "raising the differential, in every degree")
def _sharp_chain(ctx: Context) -> dict:
    rng = ctx.rng("poisson-sharp-chain-rule")
    constant = calibration_constants()["sharp-chain-sign"]
    cases = 0
    for i in range(ctx.cases):
        dim = rng.choice([2, 3])
        structure = random_poisson(rng, dim)
        deg = rng.randint(0, dim - 1)
        xi = random_form(rng, dim, deg)
        lhs = lichnerowicz(structure, sharp(structure, xi))
        rhs = sharp(structure, exterior_d(xi)).scale(constant)
        _expect(lhs == rhs, cases, degree=deg, constant=str(constant))
        cases += 1
    plane = PoissonStructure(MultiVectorField(2, 2, {(0, 1): Polynomial.constant(2, 1)}),
                             jacobi_verified=True)
    theta = DifferentialForm(2, 1, {(0,): Polynomial.constant(2, 1)})
    _expect(sharp(plane, theta)
            == MultiVectorField(2, 1, {(1,): Polynomial.constant(2, -1)}), cases,
            law="literal degree-1 raise carries the alternating sign")
    area = DifferentialForm(2, 2, {(0, 1): Polynomial.constant(2, 1)})
    _expect(sharp(plane, area)
            == MultiVectorField(2, 2, {(0, 1): Polynomial.constant(2, 1)}), cases,
            law="area form raises to the bivector")
    return {"cases": cases + 2, "sharp-chain-sign": str(constant)}


@check("poisson-form-bracket",
       "the 1-form bracket extends the differential of the function bracket")
def _form_bracket(ctx: Context) -> dict:
    rng = ctx.rng("poisson-form-bracket")
    cases = 0
    for i in range(ctx.cases):
        dim = rng.choice([2, 3])
        structure = random_poisson(rng, dim)
        f = random_polynomial(rng, dim, 2)
        g = random_polynomial(rng, dim, 2)
        lhs = form_bracket(structure,
                           exterior_d(DifferentialForm.function(f)),
                           exterior_d(DifferentialForm.function(g)))
        rhs = exterior_d(DifferentialForm.function(poisson_bracket(structure, f, g)))
        _expect(lhs == rhs, cases, law="exact forms")
        alpha = random_form(rng, dim, 1)
        _expect(form_bracket(structure, alpha, alpha).is_zero(), cases, law="alternating")
        cases += 1
    constant_plane = PoissonStructure(
        MultiVectorField(2, 2, {(0, 1): Polynomial.constant(2, 1)}), jacobi_verified=True)
    dx1 = DifferentialForm(2, 1, {(0,): Polynomial.constant(2, 1)})
    dx2 = DifferentialForm(2, 1, {(1,): Polynomial.constant(2, 1)})
    _expect(form_bracket(constant_plane, dx1, dx2).is_zero(), cases,
            law="constant structure kills coordinate differentials")
    return {"cases": cases + 1}


@check("poisson-coboundary-complex",
       "the bivector coboundary squares to zero and is a graded derivation")
def _coboundary_complex(ctx: Context) -> dict:
    rng = ctx.rng("poisson-coboundary-complex")
    cases = 0
    for i in range(ctx.cases):
        dim = rng.choice([2, 3])
        structure = random_poisson(rng, dim)
        du = rng.randint(0, 2)
        u = random_multivector(rng, dim, du)
        _expect(lichnerowicz(structure, lichnerowicz(structure, u)).is_zero(), cases,
                law="square zero")
        v = random_multivector(rng, dim, rng.randint(0, 2))
        _expect(lichnerowicz(structure, wedge(u, v))
                == wedge(lichnerowicz(structure, u), v)
                + wedge(u, lichnerowicz(structure, v)).scale(Fraction(-1) ** du),
                cases, law="graded derivation")
        _expect(lichnerowicz(structure, structure.bivector).is_zero(), cases,
                law="structure is a cocycle")
        cases += 1
    plane = PoissonStructure(MultiVectorField(2, 2, {(0, 1): Polynomial.constant(2, 1)}),
                             jacobi_verified=True)
    got = lichnerowicz(plane, MultiVectorField.function(Polynomial.variable(2, 0)))
    _expect(got == MultiVectorField(2, 1, {(1,): Polynomial.constant(2, 1)}), cases,
            law="coboundary of a coordinate is its Hamiltonian field")
    return {"cases": cases + 1}


@check("poisson-modular-field",
       "the divergence field is a cocycle and shifts by a Hamiltonian field "
       "under density changes")
def _modular_laws(ctx: Context) -> dict:
    rng = ctx.rng("poisson-modular-field")
    cases = 0
    x2 = [Polynomial.variable(2, i) for i in range(2)]
    linear = jacobi_check(MultiVectorField(2, 2, {(0, 1): x2[0]}))
    _expect(modular_field(linear, LogDensity(Polynomial.zero(2)))
            == MultiVectorField(2, 1, {(1,): Polynomial.constant(2, -1)}), cases,
            law="linear plane structure")
    plane = jacobi_check(MultiVectorField(2, 2, {(0, 1): Polynomial.constant(2, 1)}))
    _expect(modular_field(plane, LogDensity(Polynomial.zero(2))).is_zero(), cases,
            law="constant structure with flat density")
    _expect(modular_field(plane, LogDensity(x2[0]))
            == hamiltonian(plane, -x2[0]), cases, law="exponential density")
    for i in range(ctx.cases):
        dim = rng.choice([2, 3])
        structure = random_poisson(rng, dim)
        lam = random_polynomial(rng, dim, 2)
        delta = modular_field(structure, LogDensity(lam))
        _expect(lichnerowicz(structure, delta).is_zero(), cases, law="cocycle")
        shift = random_polynomial(rng, dim, 2)
        _expect(modular_field(structure, LogDensity(lam + shift))
                == delta + hamiltonian(structure, -shift), cases, law="density shift")
        cases += 1
    return {"cases": cases + 3}


@check("poisson-density-lift",
       "log-densities lift through the projection scaled by the algebra dimension")
def _density_lift(ctx: Context) -> dict:
    rng = ctx.rng("poisson-density-lift")
    cases = 0
    frob = ctx.tangent
    x1 = Polynomial.variable(2, 0)
    lifted = lift_density(LogDensity(x1), frob)
    _expect(lifted.lam == Polynomial.variable(4, 0) * 2, cases, law="linear density doubles")
    frob2 = ctx.frobs[1]
    lifted2 = lift_density(LogDensity(Polynomial.variable(1, 0) ** 2), frob2)
    _expect(lifted2.lam == Polynomial.variable(3, 0) ** 2 * 3, cases,
            law="quadratic density triples")
    for i in range(ctx.cases):
        frb = ctx.frob_cycle(i)
        width = frb.dim_total
        lam = random_polynomial(rng, 2, 3)
        lifted = lift_density(LogDensity(lam), frb)
        for j in range(2):
            for b in range(1, width):
                _expect(lifted.lam.diff(flat_index(j, b, width)).is_zero(), cases,
                        law="no fiber dependence")
            proj = [Polynomial.variable(2 * width, flat_index(k, 0, width)) for k in range(2)]
            _expect(lifted.lam.diff(flat_index(j, 0, width))
                    == lam.diff(j).compose(proj) * width, cases, law="base slope scales")
        cases += 1
    return {"cases": cases + 2}


@check("poisson-lift-family",
       "all element lifts of a verified structure verify, pairwise compatibly")
def _poisson_lift_family(ctx: Context) -> dict:
    rng = ctx.rng("poisson-lift-family")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        structure = random_poisson(rng, 2)
        lifts = [a_lift(frob, structure.bivector, a).field
                 for a in range(frob.dim_total)]
        for a, wa in enumerate(lifts):
            for b, wb in enumerate(lifts):
                _expect(schouten(wa, wb).is_zero(), cases, law="pairwise compatible",
                        orders=[a, b])
        eps = random_element(rng, frob)
        lifted = lift_poisson(frob, structure, eps)
        _expect(lifted.jacobi_verified, cases, law="element lift verifies")
        _expect(lift_poisson(frob, structure, frob.algebra.unit()).bivector
                == complete_lift(frob, structure.bivector).field, cases,
                law="unit element gives the complete lift")
        _expect(lift_poisson(frob, structure,
                             frob.algebra.basis_element(frob.dim_total - 1)).bivector
                == vertical_lift(frob, structure.bivector).field, cases,
                law="top element gives the vertical lift")
        cases += 1
    return {"cases": cases}


@check("poisson-lift-chain-map",
       "coboundaries pass through complete lifts; vertical lifts send cocycles "
       "to cocycles and coboundaries to coboundaries")
def _lift_chain_map(ctx: Context) -> dict:
    rng = ctx.rng("poisson-lift-chain-map")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        structure = random_poisson(rng, 2)
        lifted_c = lift_poisson(frob, structure, frob.algebra.unit())
        lifted_v = lift_poisson(frob, structure,
                                frob.algebra.basis_element(frob.dim_total - 1))
        u = random_multivector(rng, 2, rng.randint(0, 2))
        _expect(complete_lift(frob, lichnerowicz(structure, u)).field
                == lichnerowicz(lifted_c, complete_lift(frob, u).field), cases,
                law="complete chain map")
        f = random_polynomial(rng, 2, 2)
        closed = hamiltonian(structure, f)
        _expect(lichnerowicz(lifted_v, vertical_lift(frob, closed).field).is_zero(),
                cases, law="vertical lift of a cocycle is a cocycle")
        v = random_multivector(rng, 2, rng.randint(0, 1))
        exact = lichnerowicz(structure, v)
        _expect(vertical_lift(frob, exact).field
                == lichnerowicz(lifted_v, complete_lift(frob, v).field), cases,
                law="vertical lift of a coboundary is exact with a complete primitive")
        cases += 1
    return {"cases": cases}


@check("poisson-sharp-lift-diagram",
       "raising commutes with complete lifts, and the full raise-differential-"
       "coboundary square commutes")
def _sharp_lift_diagram(ctx: Context) -> dict:
    rng = ctx.rng("poisson-sharp-lift-diagram")
    constant = calibration_constants()["sharp-chain-sign"]
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        structure = random_poisson(rng, 2)
        lifted = lift_poisson(frob, structure, frob.algebra.unit())
        deg = rng.randint(0, 2)
        xi = random_form(rng, 2, deg)
        _expect(complete_lift(frob, sharp(structure, xi)).field
                == sharp(lifted, complete_lift(frob, xi).field), cases,
                law="raise commutes with complete lift", degree=deg)
        xiC = complete_lift(frob, xi).field
        _expect(lichnerowicz(lifted, sharp(lifted, xiC))
                == sharp(lifted, exterior_d(xiC)).scale(constant), cases,
                law="lifted chain rule")
        _expect(lichnerowicz(lifted, sharp(lifted, xiC))
                == complete_lift(frob, lichnerowicz(structure, sharp(structure, xi))).field,
                cases, law="square closes through the base")
        cases += 1
    return {"cases": cases}


@check("poisson-vertical-sharp",
       "vertical structures raise projection pullbacks to zero and treat "
       "complete lifts by degree")
def _vertical_sharp(ctx: Context) -> dict:
    rng = ctx.rng("poisson-vertical-sharp")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        structure = random_poisson(rng, 2)
        top = frob.algebra.basis_element(frob.dim_total - 1)
        lifted_c = lift_poisson(frob, structure, frob.algebra.unit())
        lifted_v = lift_poisson(frob, structure, top)
        deg = rng.randint(1, 2)
        xi = random_form(rng, 2, deg)
        pulled = base_pullback(frob, xi).field
        _expect(sharp(lifted_c, pulled)
                == vertical_lift(frob, sharp(structure, xi)).field, cases,
                law="complete structure on pullbacks", degree=deg)
        _expect(sharp(lifted_v, pulled).is_zero(), cases,
                law="vertical structure kills pullbacks", degree=deg)
        raised = sharp(lifted_v, complete_lift(frob, xi).field)
        if deg == 1:
            _expect(raised == vertical_lift(frob, sharp(structure, xi)).field, cases,
                    law="degree one survives vertically")
        else:
            _expect(raised.is_zero(), cases, law="higher degrees vanish vertically")
        cases += 1
    return {"cases": cases}


@check("poisson-hamiltonian-lifts",
       "Hamiltonian fields lift coherently and Casimirs stay Casimirs")
def _hamiltonian_lifts(ctx: Context) -> dict:
    rng = ctx.rng("poisson-hamiltonian-lifts")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        structure = random_poisson(rng, 2)
        top = frob.algebra.basis_element(frob.dim_total - 1)
        lifted_c = lift_poisson(frob, structure, frob.algebra.unit())
        lifted_v = lift_poisson(frob, structure, top)
        f = random_polynomial(rng, 2, 2)
        fC = complete_lift(frob, MultiVectorField.function(f)).field.scalar()
        fV = vertical_lift(frob, MultiVectorField.function(f)).field.scalar()
        Xf = hamiltonian(structure, f)
        _expect(complete_lift(frob, Xf).field == hamiltonian(lifted_c, fC), cases,
                law="complete lift of the Hamiltonian field")
        _expect(vertical_lift(frob, Xf).field == hamiltonian(lifted_v, fC), cases,
                law="vertical structure with the complete potential")
        _expect(vertical_lift(frob, Xf).field == hamiltonian(lifted_c, fV), cases,
                law="complete structure with the vertical potential")
        cases += 1
    so3 = so3_structure()
    frob = ctx.tangent
    x = [Polynomial.variable(3, i) for i in range(3)]
    casimir = x[0] ** 2 + x[1] ** 2 + x[2] ** 2
    lifted_c = lift_poisson(frob, so3, frob.algebra.unit())
    lifted_v = lift_poisson(frob, so3, frob.algebra.basis_element(1))
    for name, fun in (("complete", complete_lift), ("vertical", vertical_lift)):
        scalar = fun(frob, MultiVectorField.function(casimir)).field.scalar()
        _expect(hamiltonian(lifted_c, scalar).is_zero(), cases,
                law=f"{name} Casimir lift against the complete structure")
        _expect(hamiltonian(lifted_v, scalar).is_zero(), cases,
                law=f"{name} Casimir lift against the vertical structure")
    return {"cases": cases + 1}


@check("poisson-map-lifts",
       "prolonged Poisson isomorphisms relate the lifted structures")
def _poisson_map_lifts(ctx: Context) -> dict:
    rng = ctx.rng("poisson-map-lifts")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        dim = rng.choice([2, 3])
        structure = random_poisson(rng, dim)
        shear = random_shear(rng, dim)
        moved = jacobi_check(pushforward(shear, structure.bivector))
        _expect(isinstance(moved, PoissonStructure), cases, law="transport verifies")
        big = prolong_chart_map(shear, frob.algebra)
        for fun, name in ((complete_lift, "complete"), (vertical_lift, "vertical")):
            _expect(pushforward(big, fun(frob, structure.bivector).field)
                    == fun(frob, moved.bivector).field, cases, law=f"{name} lift transports")
        cases += 1
    return {"cases": cases}


@check("poisson-modular-main-theorem",
       "the modular field of an element lift is the real part times the "
       "algebra dimension times the vertical lift of the base modular field")
def _modular_main(ctx: Context) -> dict:
    rng = ctx.rng("poisson-modular-main-theorem")
    cases = 0
    x2 = [Polynomial.variable(2, i) for i in range(2)]
    structures = [
        jacobi_check(MultiVectorField(2, 2, {(0, 1): x2[0]})),
        so3_structure(),
    ]
    densities = {
        2: [LogDensity(Polynomial.zero(2)), LogDensity(x2[0])],
        3: [LogDensity(Polynomial.zero(3)),
            LogDensity(Polynomial.variable(3, 0))],
    }
    frobs = [ctx.frobs[0], ctx.frobs[1], ctx.frobs[3]]
    for i in range(ctx.cases):
        if i % 3 == 0:
            structure = structures[i // 3 % 2]
        else:
            structure = random_poisson(rng, rng.choice([2, 3]))
        dim = structure.patch_dim
        density = rng.choice(densities[dim] + [LogDensity(random_polynomial(rng, dim, 2))])
        frob = frobs[i % len(frobs)]
        pick = i % 4
        if pick == 0:
            eps = frob.algebra.unit()
        elif pick == 1:
            eps = frob.algebra.basis_element(frob.dim_total - 1)
        elif pick == 2:
            eps = random_element(rng, frob)
        else:
            eps = random_element(rng, frob, nilpotent=True)
        report = verify_modular_theorem(frob, structure, density, eps)
        _expect(report.equal, cases,
                counterexample=[list(report.counterexample[0]),
                                report.counterexample[1].render()]
                if report.counterexample else None,
                algebra_dim=frob.dim_total)
        if eps.is_nilpotent():
            _expect(report.lhs.is_zero(), cases, law="nilpotent elements give a zero field")
        cases += 1
    frob = ctx.tangent
    concrete = verify_modular_theorem(
        frob, structures[0], LogDensity(Polynomial.zero(2)), frob.algebra.unit())
    expected = MultiVectorField(4, 1, {(3,): Polynomial.constant(4, -2)})
    _expect(concrete.equal and concrete.lhs == expected and concrete.rhs == expected,
            cases, law="concrete tangent instance")
    return {"cases": cases + 1}


@check("poisson-modular-nilpotent",
       "nilpotent element lifts have vanishing modular field")
def _modular_nilpotent(ctx: Context) -> dict:
    rng = ctx.rng("poisson-modular-nilpotent")
    cases = 0
    for i in range(ctx.cases):
        frob = ctx.frob_cycle(i)
        if frob.dim_total == 1:
            continue
        structure = random_poisson(rng, 2)
        density = LogDensity(random_polynomial(rng, 2, 2))
        eps = random_element(rng, frob, nilpotent=True)
        report = verify_modular_theorem(frob, structure, density, eps)
        _expect(report.equal and report.lhs.is_zero(), cases)
        cases += 1
    return {"cases": cases}


@check("poisson-modular-exactness",
       "an exact base modular field lifts to an exact modular field with the "
       "pulled-back potential")
def _modular_exactness(ctx: Context) -> dict:
    cases = 0
    x2 = [Polynomial.variable(2, i) for i in range(2)]
    plane = jacobi_check(MultiVectorField(2, 2, {(0, 1): Polynomial.constant(2, 1)}))
    density = LogDensity(x2[0])
    for frob in (ctx.tangent, ctx.frobs[1], ctx.frobs[3]):
        lifted = lift_poisson(frob, plane, frob.algebra.unit())
        delta_bar = modular_field(lifted, lift_density(density, frob))
        potential = vertical_lift(
            frob, MultiVectorField.function(-x2[0])).field.scalar()
        rhs = lichnerowicz(lifted, MultiVectorField.function(potential)).scale(frob.dim_total)
        _expect(delta_bar == rhs, cases, algebra_dim=frob.dim_total)
        cases += 1
    return {"cases": cases}


@check("poisson-euler-witnesses",
       "tangent-fixture exactness witnesses hold with recorded proportionality constants")
def _euler_witnesses(ctx: Context) -> dict:
    rng = ctx.rng("poisson-euler-witnesses")
    frob = ctx.tangent
    cases = 0
    details = {}
    plane = jacobi_check(MultiVectorField(2, 2, {(0, 1): Polynomial.constant(2, 1)}))
    lifted_c = lift_poisson(frob, plane, frob.algebra.unit())
    lifted_v = lift_poisson(frob, plane, frob.algebra.basis_element(1))
    euler = MultiVectorField(4, 1, {
        (flat_index(i, 1, 2),): Polynomial.variable(4, flat_index(i, 1, 2))
        for i in range(2)
    })
    complete_const = _proportionality(lichnerowicz(lifted_c, euler), lifted_c.bivector)
    _expect(complete_const is not None and complete_const != 0, cases,
            law="complete structure is a coboundary of the fiber scaling field")
    details["euler-complete-factor"] = str(complete_const)
    vertical_const = _proportionality(schouten(lifted_v.bivector, euler), lifted_v.bivector)
    _expect(vertical_const is not None and vertical_const != 0, cases,
            law="vertical structure is exact against the fiber scaling field")
    details["euler-vertical-factor"] = str(vertical_const)
    cases += 2

    # symplectic vertical primitives: contract the fiber coordinates with the
    # inverse of the bivector and check exactness degree by degree
    omega = {(0, 1): Fraction(1), (1, 0): Fraction(-1)}
    prims = {}
    for vdeg in (1, 2):
        for _ in range(max(3, ctx.cases // 4)):
            v = random_multivector(rng, 2, vdeg, 2)
            if v.is_zero():
                continue
            vV = vertical_lift(frob, v).field
            proj = [Polynomial.variable(4, flat_index(i, 0, 2)) for i in range(2)]
            comps = {}
            for rest in combinations(range(2), vdeg - 1):
                total = Polynomial.zero(4)
                for j in range(2):
                    yj = Polynomial.variable(4, flat_index(j, 1, 2))
                    for s in range(2):
                        om = omega.get((j, s))
                        if om is None:
                            continue
                        full = v.full((s,) + rest)
                        if full.is_zero():
                            continue
                        total = total + yj * om * full.compose(proj)
                if not total.is_zero():
                    comps[tuple(flat_index(r, 1, 2) for r in rest)] = total
            primitive = MultiVectorField(4, vdeg - 1, comps)
            got = lichnerowicz(lifted_v, primitive)
            const = _proportionality(got, vV)
            _expect(const is not None and const != 0, cases, degree=vdeg,
                    law="vertical lift is exact with the contracted primitive")
            prims.setdefault(vdeg, set()).add(const)
            cases += 1
    for vdeg, consts in sorted(prims.items()):
        _expect(len(consts) == 1, cases, law="per-degree constant is stable", degree=vdeg)
        details[f"vertical-primitive-factor-degree-{vdeg}"] = str(next(iter(consts)))
    return {"cases": cases, **details}


def _proportionality(got: MultiVectorField, want: MultiVectorField):
    """Constant c with got == c * want, or None."""
    if want.is_zero():
        return Fraction(0) if got.is_zero() else None
    if got.is_zero():
        return Fraction(0)
    for key, poly in want.components.items():
        other = got.components.get(key)
        if other is None:
            continue
        for expo, coeff in poly.terms.items():
            ratio = other.terms.get(expo, Fraction(0)) / coeff
            return ratio if got == want.scale(ratio) else None
    return None


@check("poisson-symplectic-lift-rank",
       "complete lifts of constant symplectic structures stay nondegenerate at "
       "rational sample points")
def _symplectic_rank(ctx: Context) -> dict:
    rng = ctx.rng("poisson-symplectic-lift-rank")
    plane = jacobi_check(MultiVectorField(2, 2, {(0, 1): Polynomial.constant(2, 1)}))
    cases = 0
    for frob in ctx.frobs:
        lifted = lift_poisson(frob, plane, frob.algebra.unit())
        patch = 2 * frob.dim_total
        points = [
            [Fraction(0)] * patch,
            [Fraction(1)] * patch,
            [Fraction(k + 1) for k in range(patch)],
            [Fraction(-2, 3)] * patch,
            [Fraction((-1) ** k * (k + 2), 2) for k in range(patch)],
        ]
        points += [[Fraction(rng.randint(-5, 5)) for _ in range(patch)] for _ in range(3)]
        for pt in points:
            matrix = [[lifted.bivector.full((i, j)).evaluate(pt) for j in range(patch)]
                      for i in range(patch)]
            _expect(linalg.det(matrix) != 0, cases, algebra_dim=frob.dim_total)
            cases += 1
    return {"cases": cases}


@check("document-objects",
       "every object named in the input document round-trips and validates")
def _document_objects(ctx: Context) -> dict:
    from .specfile import parse_tensor

    cases = 0
    doc = ctx.doc
    for name, tensor in sorted(doc.tensors.items()):
        rendered = render_tensor(tensor)
        again = parse_tensor(rendered, f"tensors.{name}")
        _expect(again == tensor, cases, tensor=name)
        cases += 1
    for name, poly in sorted(doc.functions.items()):
        from .specfile import parse_polynomial

        _expect(parse_polynomial(render_polynomial(poly), poly.num_vars, name) == poly,
                cases, function=name)
        cases += 1
    bivectors = [
        (name, t) for name, t in sorted(doc.tensors.items())
        if isinstance(t, MultiVectorField) and t.degree == 2
    ]
    for name, w in bivectors:
        result = jacobi_check(w)
        if isinstance(result, PoissonStructure):
            report = verify_modular_theorem(
                doc.frobenius, result,
                doc.density or LogDensity(Polynomial.zero(doc.dim)),
                doc.algebra.unit())
            _expect(report.equal, cases, bivector=name)
        cases += 1
    return {"cases": cases}


def run_checks(doc: SpecDocument, seed: int, cases: int,
               names: list[str] | None = None) -> list[CheckResult]:
    ctx = Context(doc, seed, cases)
    results = []
    for name, law, fn in CHECKS:
        if names is not None and name not in names:
            continue
        try:
            details = fn(ctx)
            ran = details.pop("cases", cases)
            results.append(CheckResult(name, law, "pass", ran, None, details))
        except CheckFailure as failure:
            results.append(CheckResult(name, law, "fail",
                                       failure.counterexample.get("case", 0) + 1,
                                       failure.counterexample, {}))
    results.sort(key=lambda r: r.name)
    return results
