"""Algebra-valued polynomials in z = x + j y and their real components.

Every polynomial F(z) with coefficients in A(l1, l2) satisfies F_y = j F_x,
so its components (u, v) obey the generalized Cauchy-Riemann system

    u_x = v_y + l1 v_x,    u_y = -l2 v_x.

:func:`cr_residuals` checks this for arbitrary pairs; :func:`expand` is the
only place where z-polynomials turn into (u, v).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import poly2
from .algebra import AlgebraParams, HNum, mul
from .errors import AlgebraMismatch
from .poly2 import BiPoly


@dataclass(frozen=True)
class ComponentPair:
    u: BiPoly
    v: BiPoly

    def to_json(self) -> dict:
        return {"u": self.u.to_json(), "v": self.v.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> ComponentPair:
        return cls(BiPoly.from_json(data["u"]), BiPoly.from_json(data["v"]))


def pair_mul(alg: AlgebraParams, a: ComponentPair, b: ComponentPair) -> ComponentPair:
    """Product of two polynomial-valued algebra elements.

    This is the single place where j^2 is reduced for polynomial data.
    """
    bd = poly2.mul(a.v, b.v)
    re = poly2.add(poly2.mul(a.u, b.u), poly2.scale(bd, -alg.l2))
    im = poly2.add(
        poly2.add(poly2.mul(a.u, b.v), poly2.mul(a.v, b.u)),
        poly2.scale(bd, -alg.l1),
    )
    return ComponentPair(re, im)


def _const_pair(c: HNum) -> ComponentPair:
    return ComponentPair(BiPoly.const(c.re), BiPoly.const(c.im))


class APoly:
    """Polynomial ``sum_k coeffs[k] * z**k`` over one algebra.

    Trailing zero coefficients are trimmed, so ``degree`` is canonical
    (-1 for the zero polynomial).
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: AlgebraParams, coeffs: Sequence[HNum | tuple | float] = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, HNum):
                if c.algebra != algebra:
                    raise AlgebraMismatch(
                        f"coefficient in A({c.algebra.l1}, {c.algebra.l2}), "
                        f"polynomial over A({algebra.l1}, {algebra.l2})"
                    )
                cs.append(c)
            elif isinstance(c, (int, float)):
                cs.append(HNum(c, 0.0, algebra))
            else:
                re, im = c
                cs.append(HNum(re, im, algebra))
        while cs and cs[-1].re == 0.0 and cs[-1].im == 0.0:
            cs.pop()
        self.algebra = algebra
        self.coeffs: tuple[HNum, ...] = tuple(cs)

    @classmethod
    def monomial(cls, algebra: AlgebraParams, k: int, coeff: HNum | None = None) -> APoly:
        c = coeff if coeff is not None else algebra.one()
        return cls(algebra, [algebra.zero()] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, APoly):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __repr__(self):
        terms = ", ".join(f"({c.re!r}, {c.im!r})" for c in self.coeffs)
        return f"APoly(A({self.algebra.l1}, {self.algebra.l2}), [{terms}])"

    def __call__(self, z: HNum) -> HNum:
        return apoly_eval(self, z)

    def to_json(self) -> dict:
        return {
            "l1": self.algebra.l1,
            "l2": self.algebra.l2,
            "coeffs": [[c.re, c.im] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> APoly:
        alg = AlgebraParams(data["l1"], data["l2"])
        coeffs = []
        for entry in data["coeffs"]:
            if len(entry) != 2:
                raise ValueError(f"coefficient must be [re, im], got {entry!r}")
            coeffs.append((float(entry[0]), float(entry[1])))
        return cls(alg, coeffs)


def z_powers(alg: AlgebraParams, n: int) -> list[ComponentPair]:
    """Components of z^0 .. z^n, built by repeated multiplication by x + j y."""
    z = ComponentPair(BiPoly.x(), BiPoly.y())
    out = [ComponentPair(BiPoly.const(1.0), BiPoly.zero())]
    for _ in range(n):
        out.append(pair_mul(alg, out[-1], z))
    return out


def expand(F: APoly) -> ComponentPair:
    """Split F(x + j y) into real and imaginary component polynomials."""
    u = BiPoly.zero()
    v = BiPoly.zero()
    for c, zk in zip(F.coeffs, z_powers(F.algebra, F.degree)):
        term = pair_mul(F.algebra, _const_pair(c), zk)
        u = poly2.add(u, term.u)
        v = poly2.add(v, term.v)
    return ComponentPair(u, v)


def cr_residuals(p: ComponentPair, alg: AlgebraParams) -> tuple[BiPoly, BiPoly]:
    """Return ``(u_x - v_y - l1 v_x, u_y + l2 v_x)``."""
    vx = poly2.partial_x(p.v)
    r1 = poly2.add(
        poly2.add(poly2.partial_x(p.u), poly2.scale(poly2.partial_y(p.v), -1.0)),
        poly2.scale(vx, -alg.l1),
    )
    r2 = poly2.add(poly2.partial_y(p.u), poly2.scale(vx, alg.l2))
    return r1, r2


def is_a_differentiable(p: ComponentPair, alg: AlgebraParams, tol: float = 1e-9) -> bool:
    """Check the generalized Cauchy-Riemann system within ``tol`` relative."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    scale = max(p.u.max_abs_coeff(), p.v.max_abs_coeff())
    if scale == 0.0:
        scale = 1.0
    r1, r2 = cr_residuals(p, alg)
    return poly2.is_zero(r1, tol, scale) and poly2.is_zero(r2, tol, scale)


def zbar_times(f: APoly) -> ComponentPair:
    """Components of conj(z) * f(z), with conj(z) = x - j y."""
    zbar = ComponentPair(BiPoly.x(), poly2.scale(BiPoly.y(), -1.0))
    return pair_mul(f.algebra, zbar, expand(f))


def apoly_eval(F: APoly, z: HNum) -> HNum:
    """Horner evaluation of F at ``z`` inside the algebra."""
    if z.algebra != F.algebra:
        raise AlgebraMismatch(
            f"point in A({z.algebra.l1}, {z.algebra.l2}), "
            f"polynomial over A({F.algebra.l1}, {F.algebra.l2})"
        )
    acc = F.algebra.zero()
    for c in reversed(F.coeffs):
        acc = mul(acc, z) + c
    return acc


def random_apoly(alg: AlgebraParams, degree: int, rng, bound: float = 10.0) -> APoly:
    """APoly of the given degree with components drawn from U(-bound, bound).

    ``rng`` is anything with a ``uniform(low, high)`` method (a numpy
    Generator or :class:`gammakit.rng.SplitMix64`).
    """
    coeffs = [
        (float(rng.uniform(-bound, bound)), float(rng.uniform(-bound, bound)))
        for _ in range(degree + 1)
    ]
    return APoly(alg, coeffs)
