import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from gammakit import poly2
from gammakit.algebra import COMPLEX, AlgebraParams, HNum, conjugate, mul, pow
from gammakit.analytic import (
    APoly,
    ComponentPair,
    apoly_eval,
    cr_residuals,
    expand,
    is_a_differentiable,
    random_apoly,
    zbar_times,
)
from gammakit.errors import AlgebraMismatch
from gammakit.poly2 import BiPoly

import oracles

X, Y = BiPoly.x(), BiPoly.y()
A11 = AlgebraParams(1, 1)
A12 = AlgebraParams(1, 2)


def P(*terms):
    return BiPoly({(i, j): c for i, j, c in terms})


def test_expand_identity():
    pair = expand(APoly(A12, [0, 1]))
    assert pair.u == X and pair.v == Y


@pytest.mark.parametrize("l1, l2", [(0, 1), (1, 1), (1, 2), (-2.5, 0.75), (3, -1)])
def test_expand_z_squared(l1, l2):
    pair = expand(APoly.monomial(AlgebraParams(l1, l2), 2))
    assert pair.u == X * X - l2 * Y * Y
    assert pair.v == 2 * X * Y - l1 * Y * Y


def test_expand_complex_square():
    pair = expand(APoly.monomial(COMPLEX, 2))
    assert pair.u == P((2, 0, 1), (0, 2, -1))
    assert pair.v == P((1, 1, 2))


def test_expand_matches_sympy_reduction(rng):
    for _ in range(20):
        l1, l2 = np.round(rng.uniform(-3, 3, 2), 2)
        coeffs = [tuple(np.round(rng.uniform(-5, 5, 2), 1)) for _ in range(int(rng.integers(1, 6)))]
        pair = expand(APoly(AlgebraParams(l1, l2), coeffs))
        ref_u, ref_v = oracles.expand_sym(coeffs, l1, l2)
        for got, ref in ((pair.u, ref_u), (pair.v, ref_v)):
            diff = oracles.to_sympy(got) - ref
            assert oracles.max_abs_coeff(diff) <= 1e-12 * max(1.0, oracles.max_abs_coeff(ref))


@pytest.mark.parametrize("l1, l2", [(0, 1), (1, 1), (-2, 5)])
def test_cr_residual_examples(l1, l2):
    alg = AlgebraParams(l1, l2)
    ident = ComponentPair(X, Y)
    assert all(r.is_exact_zero() for r in cr_residuals(ident, alg))
    assert is_a_differentiable(ident, alg)
    sq = ComponentPair(X * X - l2 * Y * Y, 2 * X * Y - l1 * Y * Y)
    assert all(r.is_exact_zero() for r in cr_residuals(sq, alg))
    assert is_a_differentiable(sq, alg)
    bad = ComponentPair(X, BiPoly.zero())
    r1, r2 = cr_residuals(bad, alg)
    assert r1 == BiPoly.const(1) and r2.is_exact_zero()
    assert not is_a_differentiable(bad, alg)


def test_is_a_differentiable_requires_positive_tol():
    with pytest.raises(ValueError):
        is_a_differentiable(ComponentPair(X, Y), A11, 0)


def test_wrong_algebra_fails_cr():
    pair = expand(APoly.monomial(A12, 3))
    assert is_a_differentiable(pair, A12)
    assert not is_a_differentiable(pair, COMPLEX)


def test_zbar_times_examples():
    for alg in (COMPLEX, A11, A12):
        one = zbar_times(APoly(alg, [1]))
        assert one.u == X and one.v == -Y
        zz = zbar_times(APoly.monomial(alg, 1))
        assert zz.u == X * X + alg.l2 * Y * Y
        assert zz.v == alg.l1 * Y * Y
    assert zbar_times(APoly.monomial(COMPLEX, 1)).v.is_exact_zero()
    jz = zbar_times(APoly.monomial(COMPLEX, 1, COMPLEX.j()))
    assert jz.v == X * X + Y * Y


def test_apoly_eval_examples():
    F = APoly.monomial(A12, 2)
    assert apoly_eval(F, HNum(1, 1, A12)) == HNum(-1, 1, A12) == pow(HNum(1, 1, A12), 2)
    c = HNum(2.5, -1, A12)
    assert apoly_eval(APoly(A12, [c]), HNum(7, 3, A12)) == c
    z0 = HNum(0.3, -0.7, A12)
    assert apoly_eval(APoly.monomial(A12, 1), z0) == z0
    with pytest.raises(AlgebraMismatch):
        apoly_eval(F, HNum(1, 1, A11))


def test_apoly_trims_and_checks_algebra():
    F = APoly(A11, [(1, 2), (0, 0), (0.0, 0.0)])
    assert F.degree == 0
    assert APoly(A11, []).degree == -1
    with pytest.raises(AlgebraMismatch):
        APoly(A11, [HNum(1, 0, A12)])


def test_json_roundtrip():
    F = APoly(A12, [(1, 2), (0.5, -3)])
    assert F.to_json() == {"l1": 1.0, "l2": 2.0, "coeffs": [[1.0, 2.0], [0.5, -3.0]]}
    assert APoly.from_json(F.to_json()) == F
    with pytest.raises(ValueError):
        APoly.from_json({"l1": 0, "l2": 1, "coeffs": [[1, 2, 3]]})


def _rel(p: BiPoly, ref: float) -> float:
    return p.max_abs_coeff() / max(ref, 1.0)


def test_structural_cr_identity(rng):
    """F_y = j F_x at the component level for random APoly."""
    for _ in range(200):
        alg = AlgebraParams(rng.uniform(-12, 12), rng.uniform(-4, 4))
        F = random_apoly(alg, int(rng.integers(0, 7)), rng)
        pair = expand(F)
        ref = max(pair.u.max_abs_coeff(), pair.v.max_abs_coeff())
        r1, r2 = cr_residuals(pair, alg)
        assert _rel(r1, ref) <= 1e-9 and _rel(r2, ref) <= 1e-9
        assert is_a_differentiable(pair, alg)


def test_evaluation_consistency(rng):
    for _ in range(200):
        alg = AlgebraParams(rng.uniform(-3, 3), rng.uniform(-3, 3))
        F = random_apoly(alg, int(rng.integers(0, 7)), rng)
        x0, y0 = rng.uniform(-1.5, 1.5, 2)
        w = apoly_eval(F, HNum(x0, y0, alg))
        pair = expand(F)
        bound = max(poly2.eval(pair.u.abs(), abs(x0), abs(y0)), poly2.eval(pair.v.abs(), abs(x0), abs(y0)), 1.0)
        assert abs(w.re - poly2.eval(pair.u, x0, y0)) <= 1e-9 * bound
        assert abs(w.im - poly2.eval(pair.v, x0, y0)) <= 1e-9 * bound


def test_zbar_times_pointwise(rng):
    for _ in range(200):
        alg = AlgebraParams(rng.uniform(-3, 3), rng.uniform(-3, 3))
        f = random_apoly(alg, int(rng.integers(0, 6)), rng)
        x0, y0 = rng.uniform(-1.5, 1.5, 2)
        z0 = HNum(x0, y0, alg)
        ref = mul(conjugate(z0), apoly_eval(f, z0))
        got = zbar_times(f)
        bound = max(abs(ref.re), abs(ref.im), poly2.eval(got.u.abs(), abs(x0), abs(y0)), 1.0)
        assert abs(poly2.eval(got.u, x0, y0) - ref.re) <= 1e-9 * bound
        assert abs(poly2.eval(got.v, x0, y0) - ref.im) <= 1e-9 * bound


def test_degree_bookkeeping(rng):
    for _ in range(100):
        alg = AlgebraParams(rng.uniform(-3, 3), rng.uniform(-3, 3))
        F = random_apoly(alg, int(rng.integers(1, 7)), rng)
        pair = expand(F)
        assert pair.u.total_degree <= F.degree and pair.v.total_degree <= F.degree
        assert max(pair.u.total_degree, pair.v.total_degree) == F.degree


@given(st.floats(-5, 5), st.floats(-5, 5), st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), max_size=5))
def test_integer_coefficient_expansion_is_exact_cr(l1, l2, coeffs):
    # integer coefficients and simple algebra parameters: residuals vanish to rounding
    alg = AlgebraParams(round(l1), round(l2))
    pair = expand(APoly(alg, coeffs))
    assert all(r.is_exact_zero() for r in cr_residuals(pair, alg))
