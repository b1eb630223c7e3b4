"""Two-parameter commutative algebras A(l1, l2) = {t + s j : j^2 = -l2 - l1 j}."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import AlgebraMismatch, DegenerateOperator, NotInvertible

ZERO_DIVISOR_RTOL = 1e-12


class Kind(str, enum.Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


def _classify(discriminant: float) -> Kind:
    if discriminant < 0:
        return Kind.ELLIPTIC
    if discriminant > 0:
        return Kind.HYPERBOLIC
    return Kind.PARABOLIC


@dataclass(frozen=True)
class AlgebraParams:
    """The pair (l1, l2) fixing the multiplication rule j^2 = -l2 - l1 j."""

    l1: float
    l2: float

    def __post_init__(self):
        object.__setattr__(self, "l1", float(self.l1))
        object.__setattr__(self, "l2", float(self.l2))

    @property
    def discriminant(self) -> float:
        return self.l1 * self.l1 - 4.0 * self.l2

    @property
    def kind(self) -> Kind:
        return _classify(self.discriminant)

    def j(self) -> HNum:
        return HNum(0.0, 1.0, self)

    def one(self) -> HNum:
        return HNum(1.0, 0.0, self)

    def zero(self) -> HNum:
        return HNum(0.0, 0.0, self)

    def to_json(self) -> dict:
        return {
            "l1": self.l1,
            "l2": self.l2,
            "discriminant": self.discriminant,
            "kind": self.kind.value,
        }


COMPLEX = AlgebraParams(0.0, 1.0)


@dataclass(frozen=True)
class OperatorParams:
    """Coefficients of the operator d_xx + alpha d_xy + beta d_yy."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def discriminant(self) -> float:
        return self.alpha * self.alpha - 4.0 * self.beta

    @property
    def kind(self) -> Kind:
        return _classify(self.discriminant)

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta}


def algebra_from_operator(op: OperatorParams) -> AlgebraParams:
    """Return the algebra A(alpha/beta, 1/beta) whose differentiable functions
    have components annihilated by the operator ``op``.

    Raises
    ------
    DegenerateOperator
        If ``op.beta == 0``; the map has no meaning there.
    """
    if op.beta == 0.0:
        raise DegenerateOperator(
            f"beta must be nonzero to form an algebra (alpha={op.alpha}, beta=0)"
        )
    return AlgebraParams(op.alpha / op.beta, 1.0 / op.beta)


@dataclass(frozen=True)
class HNum:
    """An element ``re + im*j`` of the algebra ``algebra``.

    Arithmetic between elements of different algebras raises
    :class:`AlgebraMismatch`; reals are promoted to ``x + 0j``.
    """

    re: float
    im: float
    algebra: AlgebraParams = COMPLEX

    def __post_init__(self):
        object.__setattr__(self, "re", float(self.re))
        object.__setattr__(self, "im", float(self.im))

    def _coerce(self, other) -> HNum:
        if isinstance(other, HNum):
            if other.algebra != self.algebra:
                raise AlgebraMismatch(
                    f"A({self.algebra.l1}, {self.algebra.l2}) vs "
                    f"A({other.algebra.l1}, {other.algebra.l2})"
                )
            return other
        if isinstance(other, (int, float)):
            return HNum(other, 0.0, self.algebra)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return HNum(self.re + other.re, self.im + other.im, self.algebra)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return HNum(self.re - other.re, self.im - other.im, self.algebra)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return HNum(-self.re, -self.im, self.algebra)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return scale(self, other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return HNum(self.re / other, self.im / other, self.algebra)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, inverse(other))

    def __pow__(self, n: int):
        return pow(self, n)

    def conjugate(self) -> HNum:
        return conjugate(self)

    def to_json(self) -> dict:
        return {"re": self.re, "im": self.im, "l1": self.algebra.l1, "l2": self.algebra.l2}

    @classmethod
    def from_json(cls, data: dict) -> HNum:
        return cls(data["re"], data["im"], AlgebraParams(data["l1"], data["l2"]))


def _check_same(a: HNum, b: HNum) -> None:
    if a.algebra != b.algebra:
        raise AlgebraMismatch(
            f"A({a.algebra.l1}, {a.algebra.l2}) vs A({b.algebra.l1}, {b.algebra.l2})"
        )


def add(a: HNum, b: HNum) -> HNum:
    _check_same(a, b)
    return HNum(a.re + b.re, a.im + b.im, a.algebra)


def sub(a: HNum, b: HNum) -> HNum:
    _check_same(a, b)
    return HNum(a.re - b.re, a.im - b.im, a.algebra)


def neg(a: HNum) -> HNum:
    return HNum(-a.re, -a.im, a.algebra)


def scale(a: HNum, c: float) -> HNum:
    return HNum(c * a.re, c * a.im, a.algebra)


def re(a: HNum) -> float:
    return a.re


def im(a: HNum) -> float:
    return a.im


def mul(a: HNum, b: HNum) -> HNum:
    """(t + s j)(p + q j) = (tp - l2 sq) + (tq + sp - l1 sq) j."""
    _check_same(a, b)
    l1, l2 = a.algebra.l1, a.algebra.l2
    bd = a.im * b.im
    return HNum(a.re * b.re - l2 * bd, a.re * b.im + a.im * b.re - l1 * bd, a.algebra)


def conjugate(z: HNum) -> HNum:
    return HNum(z.re, -z.im, z.algebra)


def norm_form(z: HNum) -> float:
    """Determinant of multiplication by ``z``: t^2 - l1 t s + l2 s^2.

    Zero exactly for zero and for zero divisors.
    """
    t, s = z.re, z.im
    return t * t - z.algebra.l1 * t * s + z.algebra.l2 * s * s


def multiplication_matrix(z: HNum) -> list[list[float]]:
    """Matrix of w -> z*w in the basis (1, j)."""
    t, s = z.re, z.im
    return [[t, -z.algebra.l2 * s], [s, t - z.algebra.l1 * s]]


def inverse(z: HNum, rtol: float = ZERO_DIVISOR_RTOL) -> HNum:
    """Multiplicative inverse of ``z``.

    Raises
    ------
    NotInvertible
        If ``|norm_form(z)| <= rtol * max(1, t^2 + s^2)``.
    """
    t, s = z.re, z.im
    n = norm_form(z)
    if abs(n) <= rtol * max(1.0, t * t + s * s):
        raise NotInvertible(f"{t} + {s}j is zero or a zero divisor (norm form {n})")
    # (t + s j)(t - l1 s - s j) = norm_form
    return HNum((t - z.algebra.l1 * s) / n, -s / n, z.algebra)


def pow(z: HNum, n: int) -> HNum:  # noqa: A001
    if n < 0:
        raise ValueError("exponent must be a nonnegative integer")
    result = z.algebra.one()
    for _ in range(n):
        result = mul(result, z)
    return result
