import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gammakit.algebra import OperatorParams
from gammakit.poly2 import (
    BiPoly,
    add,
    compose,
    eval,
    gamma2_apply,
    gamma_apply,
    is_zero,
    mul,
    partial_x,
    partial_y,
    scale,
)

import oracles

X, Y = BiPoly.x(), BiPoly.y()
U, V = BiPoly.x(("u", "v")), BiPoly.y(("u", "v"))


def P(*terms, vars=("x", "y")):
    return BiPoly({(i, j): c for i, j, c in terms}, vars)


int_poly = st.dictionaries(
    st.tuples(st.integers(0, 5), st.integers(0, 5)).filter(lambda e: sum(e) <= 5),
    st.integers(-8, 8),
    max_size=8,
).map(lambda d: BiPoly({e: float(c) for e, c in d.items()}))


def test_arithmetic_examples():
    assert (X + Y) * (X - Y) == P((2, 0, 1), (0, 2, -1))
    p = P((3, 1, 2.5), (0, 0, -1))
    assert add(p, BiPoly.zero()) == p
    assert scale(mul(X, Y), 2) == P((1, 1, 2))


def test_canonical_form():
    p = P((0, 2, 0.0)) + X + (-X)
    assert p.is_exact_zero() and len(p) == 0
    assert p.total_degree == float("-inf")
    assert (X - X).terms == {}
    assert P((2, 3, 1)).total_degree == 5


def test_partials_examples():
    assert partial_x(P((2, 1, 1))) == P((1, 1, 2))
    assert partial_y(P((2, 0, 1))) == BiPoly.zero()


def test_gamma_examples():
    assert gamma_apply(OperatorParams(0, 1), X * X + Y * Y) == BiPoly.const(4)
    op = OperatorParams(-1.75, 3.5)
    assert gamma_apply(op, X * Y) == BiPoly.const(-1.75)
    assert gamma_apply(OperatorParams(1, 1), P((1, 1, 2), (0, 2, -1))).is_exact_zero()


def test_gamma_matches_sympy(rng):
    for _ in range(50):
        terms = {(int(i), int(j)): rng.uniform(-5, 5) for i, j in rng.integers(0, 7, (6, 2))}
        p = BiPoly(terms)
        a, b = rng.uniform(-3, 3, 2)
        got = gamma_apply(OperatorParams(a, b), p)
        ref = oracles.gamma_sym(oracles.to_sympy(p), a, b)
        diff = oracles.to_sympy(got) - ref
        assert oracles.max_abs_coeff(diff) <= 1e-12 * max(1, oracles.max_abs_coeff(ref))


def test_compose_examples():
    p = P((3, 1, 2), (0, 0, 1))
    assert compose(U, p, X * X) == p
    assert compose(U * U, X + Y, BiPoly.zero()) == P((2, 0, 1), (1, 1, 2), (0, 2, 1))
    H = compose(U * V, X * X - Y * Y, 2 * X * Y)
    assert H == P((3, 1, 2), (1, 3, -2))


def test_compose_result_uses_xy_vars():
    assert compose(U * V, X, Y).vars == ("x", "y")


def test_eval_examples():
    assert eval(X * X - Y * Y, 2, 1) == 3.0
    assert eval(BiPoly.zero(), 3.3, -1) == 0.0
    assert eval(P((3, 1, 2), (1, 3, -2)), 1, 1) == 0.0
    np.testing.assert_array_equal(eval(X * Y, [1, 2], [3, 4]), [3.0, 8.0])


def test_is_zero_examples():
    assert is_zero(BiPoly.zero(), 0.0)
    assert is_zero(BiPoly.const(1e-15), 1e-9, 1)
    assert not is_zero(X * X, 1e-9, 1)
    with pytest.raises(ValueError):
        is_zero(X, 1e-9, 0)


def test_json_roundtrip_and_order():
    p = P((0, 2, 1), (2, 0, 3), (0, 0, 5), (1, 1, -2))
    d = p.to_json()
    assert d == {"vars": ["x", "y"], "terms": [[0, 0, 5.0], [2, 0, 3.0], [1, 1, -2.0], [0, 2, 1.0]]}
    assert BiPoly.from_json(d) == p
    with pytest.raises(ValueError):
        BiPoly.from_json({"vars": ["x"], "terms": []})


@given(int_poly, int_poly, int_poly)
def test_ring_axioms_exact(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + BiPoly.zero() == p
    assert p * BiPoly.const(1) == p
    assert (p - p).is_exact_zero()


@given(int_poly)
def test_mixed_partials_commute(p):
    assert partial_x(partial_y(p)) == partial_y(partial_x(p))


@given(int_poly, int_poly, st.integers(-8, 8), st.integers(-8, 8), st.integers(-4, 4), st.integers(-4, 4))
def test_gamma_linear(p, q, a, b, alpha, beta):
    op = OperatorParams(alpha, beta)
    lhs = gamma_apply(op, a * p + b * q)
    rhs = a * gamma_apply(op, p) + b * gamma_apply(op, q)
    assert lhs == rhs


@given(int_poly)
def test_compose_identity(h):
    assert compose(h.with_vars(("u", "v")), X, Y) == h


def test_gamma2_is_gamma_twice():
    op = OperatorParams(1, 2)
    p = P((4, 0, 1), (2, 2, 1), (0, 4, 3), (3, 1, -1))
    assert gamma2_apply(op, p) == gamma_apply(op, gamma_apply(op, p))
    # oracle: expanded fourth-order operator
    ref = oracles.gamma_sym(oracles.gamma_sym(oracles.to_sympy(p), 1, 2), 1, 2)
    assert gamma2_apply(op, p) == oracles.from_sympy(ref)


def test_compose_eval_consistency(rng):
    for _ in range(100):
        def rand_poly(deg, n):
            return BiPoly({(int(i), int(j)): rng.uniform(-2, 2)
                           for i, j in rng.integers(0, deg + 1, (n, 2)) if i + j <= deg})
        h = rand_poly(4, 6).with_vars(("u", "v"))
        pu, pv = rand_poly(3, 5), rand_poly(3, 5)
        x0, y0 = rng.uniform(-2, 2, 2)
        got = eval(compose(h, pu, pv), x0, y0)
        ref = eval(h, eval(pu, x0, y0), eval(pv, x0, y0))
        bound = eval(compose(h.abs(), pu.abs(), pv.abs()), abs(x0), abs(y0))
        assert abs(got - ref) <= 1e-9 * max(abs(ref), bound, 1.0)


def test_compose_matches_sympy():
    h = U**3 - 2 * U * V + V * V
    pu, pv = X * X - Y, 3 * X * Y + 1
    ref = oracles.to_sympy(h, oracles.u, oracles.v).subs(
        {oracles.u: oracles.to_sympy(pu), oracles.v: oracles.to_sympy(pv)}, simultaneous=True
    )
    assert compose(h, pu, pv) == oracles.from_sympy(ref)
