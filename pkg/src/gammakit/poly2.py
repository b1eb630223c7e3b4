"""Sparse bivariate real polynomials.

A :class:`BiPoly` maps exponent pairs ``(i, j)`` to nonzero float
coefficients of ``x**i * y**j``.  The same type is used for polynomials in
``(u, v)``; the ``vars`` attribute only affects display and serialization.

Arithmetic prunes exact zeros only.  Deciding whether a floating-point
result is "zero enough" is the job of :func:`is_zero`.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .algebra import OperatorParams

Exponent = tuple[int, int]


def _sort_key(e: Exponent):
    # graded: total degree ascending, then x-power descending
    return (e[0] + e[1], -e[0])


class BiPoly:
    __slots__ = ("_terms", "vars")

    def __init__(self, terms: Mapping[Exponent, float] | None = None, vars=("x", "y")):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent ({i}, {j})")
                c = float(c)
                if c != 0.0:
                    clean[(int(i), int(j))] = clean.get((int(i), int(j)), 0.0) + c
            clean = {e: c for e, c in clean.items() if c != 0.0}
        self._terms = clean
        self.vars = tuple(vars)

    # constructors

    @classmethod
    def const(cls, c: float, vars=("x", "y")) -> BiPoly:
        return cls({(0, 0): c}, vars)

    @classmethod
    def x(cls, vars=("x", "y")) -> BiPoly:
        return cls({(1, 0): 1.0}, vars)

    @classmethod
    def y(cls, vars=("x", "y")) -> BiPoly:
        return cls({(0, 1): 1.0}, vars)

    @classmethod
    def zero(cls, vars=("x", "y")) -> BiPoly:
        return cls(None, vars)

    @classmethod
    def _raw(cls, terms: dict, vars) -> BiPoly:
        p = cls.__new__(cls)
        p._terms = terms
        p.vars = vars
        return p

    # inspection

    @property
    def terms(self) -> dict[Exponent, float]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def coeff(self, i: int, j: int) -> float:
        return self._terms.get((i, j), 0.0)

    @property
    def total_degree(self) -> float:
        if not self._terms:
            return float("-inf")
        return max(i + j for i, j in self._terms)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def is_exact_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, float)):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        a, b = self.vars
        parts = []
        for (i, j), c in self.items():
            mono = []
            if i:
                mono.append(a if i == 1 else f"{a}^{i}")
            if j:
                mono.append(b if j == 1 else f"{b}^{j}")
            if not mono:
                parts.append(repr(c))
            elif c == 1.0:
                parts.append("*".join(mono))
            elif c == -1.0:
                parts.append("-" + "*".join(mono))
            else:
                parts.append(f"{c!r}*" + "*".join(mono))
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic operators

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = BiPoly.const(other, self.vars)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = BiPoly.const(other, self.vars)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return add(self, scale(other, -1.0))

    def __rsub__(self, other):
        return scale(self, -1.0) + other

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return scale(self, other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BiPoly.const(1.0, self.vars)
        for _ in range(n):
            result = mul(result, self)
        return result

    def __call__(self, x, y):
        return eval(self, x, y)

    def with_vars(self, vars) -> BiPoly:
        return BiPoly._raw(dict(self._terms), tuple(vars))

    def abs(self) -> BiPoly:
        """Coefficient-wise absolute value (a cancellation-free magnitude bound)."""
        return BiPoly._raw({e: abs(c) for e, c in self._terms.items()}, self.vars)

    # serialization

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "terms": [[i, j, c] for (i, j), c in self.items()]}

    @classmethod
    def from_json(cls, data: dict) -> BiPoly:
        vars = tuple(data.get("vars", ("x", "y")))
        if len(vars) != 2:
            raise ValueError("BiPoly needs exactly two variables")
        terms: dict[Exponent, float] = {}
        for entry in data["terms"]:
            i, j, c = entry
            if int(i) != i or int(j) != j:
                raise ValueError(f"non-integer exponent in {entry}")
            terms[(int(i), int(j))] = terms.get((int(i), int(j)), 0.0) + float(c)
        return cls(terms, vars)


def add(p: BiPoly, q: BiPoly) -> BiPoly:
    out = dict(p._terms)
    for e, c in q._terms.items():
        s = out.get(e, 0.0) + c
        if s == 0.0:
            out.pop(e, None)
        else:
            out[e] = s
    return BiPoly._raw(out, p.vars)


def scale(p: BiPoly, c: float) -> BiPoly:
    c = float(c)
    if c == 0.0:
        return BiPoly.zero(p.vars)
    out = {}
    for e, a in p._terms.items():
        v = a * c
        if v != 0.0:
            out[e] = v
    return BiPoly._raw(out, p.vars)


def mul(p: BiPoly, q: BiPoly) -> BiPoly:
    out: dict[Exponent, float] = {}
    for (i1, j1), a in p._terms.items():
        for (i2, j2), b in q._terms.items():
            e = (i1 + i2, j1 + j2)
            out[e] = out.get(e, 0.0) + a * b
    return BiPoly._raw({e: c for e, c in out.items() if c != 0.0}, p.vars)


def linear_combination(pairs: Iterable[tuple[float, BiPoly]], vars=("x", "y")) -> BiPoly:
    out = BiPoly.zero(vars)
    for c, p in pairs:
        out = add(out, scale(p, c))
    return out


def partial_x(p: BiPoly) -> BiPoly:
    return BiPoly._raw({(i - 1, j): i * c for (i, j), c in p._terms.items() if i > 0}, p.vars)


def partial_y(p: BiPoly) -> BiPoly:
    return BiPoly._raw({(i, j - 1): j * c for (i, j), c in p._terms.items() if j > 0}, p.vars)


def gamma_apply(op: OperatorParams, p: BiPoly) -> BiPoly:
    """Return p_xx + alpha p_xy + beta p_yy."""
    px = partial_x(p)
    return add(
        add(partial_x(px), scale(partial_y(px), op.alpha)),
        scale(partial_y(partial_y(p)), op.beta),
    )


def gamma2_apply(op: OperatorParams, p: BiPoly) -> BiPoly:
    """The squared operator, computed as two successive applications."""
    return gamma_apply(op, gamma_apply(op, p))


def compose(h: BiPoly, pu: BiPoly, pv: BiPoly) -> BiPoly:
    """Substitute ``pu`` and ``pv`` for the two variables of ``h``.

    Powers of ``pu`` and ``pv`` are tabulated once; the result is assembled
    as sum_i pu^i * (sum_j c_ij pv^j).
    """
    vars = pu.vars
    if h.is_exact_zero():
        return BiPoly.zero(vars)
    max_i = max(i for i, _ in h._terms)
    max_j = max(j for _, j in h._terms)
    one = BiPoly.const(1.0, vars)
    upow = [one]
    for _ in range(max_i):
        upow.append(mul(upow[-1], pu))
    vpow = [one]
    for _ in range(max_j):
        vpow.append(mul(vpow[-1], pv))

    by_i: dict[int, dict[int, float]] = {}
    for (i, j), c in h._terms.items():
        by_i.setdefault(i, {})[j] = c
    result = BiPoly.zero(vars)
    for i in sorted(by_i):
        inner = BiPoly.zero(vars)
        for j in sorted(by_i[i]):
            inner = add(inner, scale(vpow[j], by_i[i][j]))
        result = add(result, mul(upow[i], inner))
    return result.with_vars(vars)


def eval(p: BiPoly, x, y):  # noqa: A001
    """Evaluate ``p`` at scalar or array coordinates.

    Each term is evaluated separately and the terms are summed with numpy's
    pairwise summation.
    """
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    scalar = xs.ndim == 0 and ys.ndim == 0
    xs, ys = np.broadcast_arrays(np.atleast_1d(xs), np.atleast_1d(ys))
    if not p._terms:
        out = np.zeros(xs.shape)
    else:
        cols = [c * xs**i * ys**j for (i, j), c in p.items()]
        out = np.sum(np.stack(cols, axis=-1), axis=-1)
    return float(out[0]) if scalar else out


def is_zero(p: BiPoly, tol: float, scale: float = 1.0) -> bool:
    """True iff every coefficient satisfies ``|c| <= tol * scale``."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    bound = tol * scale
    return all(abs(c) <= bound for c in p._terms.values())
