"""Executable checks that algebra-generated polynomials solve
Gamma h = 0 and Gamma^2 h = 0.

Each check has two routes:

* a symbolic route, where the residual is an exact-arithmetic polynomial
  (up to float rounding) tested with :func:`gammakit.poly2.is_zero`;
* a numeric route, :func:`fd_residual`, which knows nothing about
  polynomials and applies a finite-difference stencil to point values.

Relative tolerances are measured against a cancellation-free magnitude
bound: the same computation repeated on coefficient-wise absolute values
(|coefficients|, |alpha|, |beta|, and j^2 = |l2| + |l1| j).  Rounding
error in the residual is a small multiple of eps times that bound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import poly2
from .algebra import AlgebraParams, OperatorParams, algebra_from_operator
from .analytic import APoly, ComponentPair, expand, pair_mul, zbar_times
from .errors import AlgebraMismatch, NotASolution
from .poly2 import BiPoly, compose, gamma_apply

LEMMA1_TOL = 1e-9
THEOREM_TOL = 1e-8


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one residual check.

    Symbolic reports carry ``residual``; numeric reports carry ``max_abs``.
    ``passed`` means every residual coefficient (or the max abs value) is
    at most ``tolerance * scale``.
    """

    passed: bool
    tolerance: float
    scale: float
    residual: BiPoly | None = None
    max_abs: float | None = None
    checks: dict[str, "ResidualReport"] = field(default_factory=dict)

    @classmethod
    def symbolic(cls, residual: BiPoly, tolerance: float, scale: float, **checks):
        return cls(
            passed=poly2.is_zero(residual, tolerance, scale),
            tolerance=tolerance,
            scale=scale,
            residual=residual,
            checks=checks,
        )

    @classmethod
    def numeric(cls, max_abs: float, tolerance: float, scale: float):
        return cls(
            passed=bool(max_abs <= tolerance * scale),
            tolerance=tolerance,
            scale=scale,
            max_abs=max_abs,
        )

    def relative(self) -> float:
        """Largest residual magnitude divided by ``scale``."""
        if self.residual is not None:
            return self.residual.max_abs_coeff() / self.scale
        return self.max_abs / self.scale

    def to_json(self) -> dict:
        out = {
            "passed": self.passed,
            "max_abs_or_residual": (
                self.residual.to_json() if self.residual is not None else self.max_abs
            ),
            "tolerance": self.tolerance,
            "scale": self.scale,
        }
        if self.checks:
            out["checks"] = {k: v.to_json() for k, v in self.checks.items()}
        return out


# -- magnitude bounds ---------------------------------------------------------

def _abs_op(op: OperatorParams) -> OperatorParams:
    return OperatorParams(abs(op.alpha), abs(op.beta))


def _abs_algebra(alg: AlgebraParams) -> AlgebraParams:
    return AlgebraParams(-abs(alg.l1), -abs(alg.l2))


def _abs_apoly(F: APoly) -> APoly:
    return APoly(_abs_algebra(F.algebra), [(abs(c.re), abs(c.im)) for c in F.coeffs])


def _bound_expand(F: APoly) -> ComponentPair:
    return expand(_abs_apoly(F))


def _bound_zbar_times(f: APoly) -> ComponentPair:
    absf = _abs_apoly(f)
    return pair_mul(absf.algebra, ComponentPair(BiPoly.x(), BiPoly.y()), expand(absf))


def _scale(p: BiPoly) -> float:
    m = p.max_abs_coeff()
    return m if m > 0 else 1.0


def gamma_scale(op: OperatorParams, bound: BiPoly) -> float:
    """Scale for a Gamma residual of a polynomial bounded by ``bound``."""
    return _scale(gamma_apply(_abs_op(op), bound))


def gamma2_scale(op: OperatorParams, bound: BiPoly) -> float:
    a = _abs_op(op)
    return _scale(gamma_apply(a, gamma_apply(a, bound)))


# -- preconditions ------------------------------------------------------------

def _check_algebra(F: APoly, op: OperatorParams, name: str = "F") -> AlgebraParams:
    alg = algebra_from_operator(op)
    if F.algebra != alg:
        raise AlgebraMismatch(
            f"{name} is over A({F.algebra.l1}, {F.algebra.l2}) but the operator "
            f"(alpha={op.alpha}, beta={op.beta}) induces A({alg.l1}, {alg.l2})"
        )
    return alg


def is_gamma_solution(op: OperatorParams, h: BiPoly, tol: float = LEMMA1_TOL) -> bool:
    """Symbolic test Gamma h == 0 relative to the magnitude of ``h``."""
    return poly2.is_zero(gamma_apply(op, h), tol, gamma_scale(op, h.abs()))


# -- components are solutions -------------------------------------------------

def lemma1_residuals(
    F: APoly, op: OperatorParams, tol: float = LEMMA1_TOL
) -> tuple[ResidualReport, ResidualReport]:
    """Gamma u and Gamma v for the components of F.

    Both vanish for every polynomial over the algebra induced by ``op``.
    """
    _check_algebra(F, op)
    pair = expand(F)
    bound = _bound_expand(F)
    return (
        ResidualReport.symbolic(gamma_apply(op, pair.u), tol, gamma_scale(op, bound.u)),
        ResidualReport.symbolic(gamma_apply(op, pair.v), tol, gamma_scale(op, bound.v)),
    )


# -- change of variables --------------------------------------------------------

def compose_solution(
    h: BiPoly,
    F: APoly,
    op: OperatorParams,
    check: bool = True,
    tol: float = LEMMA1_TOL,
) -> BiPoly:
    """Return H(x, y) = h(u(x, y), v(x, y)) where (u, v) = expand(F).

    With ``check`` (the default) ``h`` must itself satisfy Gamma h = 0,
    its variables read as (u, v); otherwise :class:`NotASolution` is raised.
    """
    _check_algebra(F, op)
    if check and not is_gamma_solution(op, h, tol):
        raise NotASolution(f"Gamma h != 0 for h = {h}")
    pair = expand(F)
    return compose(h, pair.u, pair.v)


def jacobian(pair: ComponentPair) -> BiPoly:
    """Determinant u_x v_y - u_y v_x."""
    ux, uy = poly2.partial_x(pair.u), poly2.partial_y(pair.u)
    vx, vy = poly2.partial_x(pair.v), poly2.partial_y(pair.v)
    return poly2.add(poly2.mul(ux, vy), poly2.scale(poly2.mul(uy, vx), -1.0))


def _bound_jacobian(bound: ComponentPair) -> BiPoly:
    ux, uy = poly2.partial_x(bound.u), poly2.partial_y(bound.u)
    vx, vy = poly2.partial_x(bound.v), poly2.partial_y(bound.v)
    return poly2.add(poly2.mul(ux, vy), poly2.mul(uy, vx))


def theorem1_residual(
    h: BiPoly, F: APoly, op: OperatorParams, tol: float = THEOREM_TOL
) -> ResidualReport:
    """Gamma(h o F) for arbitrary ``h``.

    The report passes iff the composition is a solution.  Its
    ``checks["factorization"]`` entry verifies the identity

        Gamma(h o F) = J(F) * ((h_uu + alpha h_uv + beta h_vv) o F)

    with J(F) the Jacobian determinant, which holds for every ``h``.
    """
    _check_algebra(F, op)
    pair = expand(F)
    bound = _bound_expand(F)
    H = compose(h, pair.u, pair.v)
    H_bound = compose(h.abs(), bound.u, bound.v)
    lhs = gamma_apply(op, H)
    lhs_scale = gamma_scale(op, H_bound)

    J = jacobian(pair)
    rhs = poly2.mul(J, compose(gamma_apply(op, h), pair.u, pair.v))
    rhs_bound = poly2.mul(
        _bound_jacobian(bound), compose(gamma_apply(_abs_op(op), h.abs()), bound.u, bound.v)
    )
    ident_scale = max(lhs_scale, _scale(rhs_bound))
    factorization = ResidualReport.symbolic(poly2.add(lhs, -rhs), tol, ident_scale)
    return ResidualReport.symbolic(lhs, tol, lhs_scale, factorization=factorization)


# -- Goursat-type representation ------------------------------------------------

def goursat_solution(
    f: APoly, g: APoly, op: OperatorParams, part: str = "im"
) -> BiPoly:
    """h = Im(conj(z) f(z) + g(z)), a solution of Gamma^2 h = 0.

    ``part="re"`` takes the real component instead.  That variant is
    experimental: it is tested empirically, not guaranteed.
    """
    _check_algebra(f, op, "f")
    _check_algebra(g, op, "g")
    zf = zbar_times(f)
    eg = expand(g)
    if part == "im":
        return poly2.add(zf.v, eg.v)
    if part == "re":
        return poly2.add(zf.u, eg.u)
    raise ValueError(f"part must be 'im' or 're', got {part!r}")


def _goursat_bound(f: APoly, g: APoly, part: str) -> BiPoly:
    zf = _bound_zbar_times(f)
    eg = _bound_expand(g)
    if part == "im":
        return poly2.add(zf.v, eg.v)
    return poly2.add(zf.u, eg.u)


def theorem2_residual(
    f: APoly, g: APoly, op: OperatorParams, tol: float = THEOREM_TOL, part: str = "im"
) -> ResidualReport:
    """Gamma(Gamma h) for the h built by :func:`goursat_solution`."""
    h = goursat_solution(f, g, op, part)
    residual = poly2.gamma2_apply(op, h)
    return ResidualReport.symbolic(residual, tol, gamma2_scale(op, _goursat_bound(f, g, part)))


# -- finite-difference oracle ---------------------------------------------------

class Order(enum.IntEnum):
    GAMMA = 1
    GAMMA_SQUARED = 2


DEFAULT_STEP = {Order.GAMMA: 1e-3, Order.GAMMA_SQUARED: 1e-2}
DEFAULT_FD_TOL = {Order.GAMMA: 1e-4, Order.GAMMA_SQUARED: 1e-3}


@dataclass(frozen=True)
class FDScheme:
    step: float
    order: Order = Order.GAMMA

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")
        object.__setattr__(self, "order", Order(self.order))

    @classmethod
    def default(cls, order: Order | int) -> FDScheme:
        order = Order(order)
        return cls(DEFAULT_STEP[order], order)


Field = Callable[[np.ndarray, np.ndarray], np.ndarray]


def gamma_stencil(f: Field, op: OperatorParams, x, y, h: float):
    """Nine-point central approximation of Gamma f at (x, y)."""
    c = f(x, y)
    dxx = (f(x + h, y) - 2.0 * c + f(x - h, y)) / (h * h)
    dyy = (f(x, y + h) - 2.0 * c + f(x, y - h)) / (h * h)
    dxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h)
    return dxx + op.alpha * dxy + op.beta * dyy


def fd_residual(
    field: Field,
    op: OperatorParams,
    scheme: FDScheme,
    points: Iterable[tuple[float, float]],
    tol: float | None = None,
) -> ResidualReport:
    """Finite-difference residual of Gamma (or Gamma applied twice).

    ``field`` must accept numpy arrays.  Reports the max |residual| over
    ``points`` with scale ``1 + max |field|`` over every stencil node touched.
    """
    pts = np.asarray(list(points), dtype=float).reshape(-1, 2)
    x, y = pts[:, 0], pts[:, 1]
    seen = [0.0]

    def tracked(a, b):
        vals = np.asarray(field(a, b), dtype=float)
        if vals.size:
            seen[0] = max(seen[0], float(np.max(np.abs(vals))))
        return vals

    h = scheme.step
    if scheme.order == Order.GAMMA:
        r = gamma_stencil(tracked, op, x, y, h)
    else:
        r = gamma_stencil(lambda a, b: gamma_stencil(tracked, op, a, b, h), op, x, y, h)
    max_abs = float(np.max(np.abs(r))) if r.size else 0.0
    if tol is None:
        tol = DEFAULT_FD_TOL[scheme.order]
    return ResidualReport.numeric(max_abs, tol, 1.0 + seen[0])
