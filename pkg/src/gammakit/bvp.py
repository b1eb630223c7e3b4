"""Dirichlet problems for Gamma h = 0 (and Gamma^2 h = 0) by least-squares
collocation on bases of exact polynomial solutions.

The Gamma basis is the set of components of z^k; the Gamma^2 basis adds
Im(conj(z) z^k) and Im(conj(z) j z^k).  Boundary values are fit with a
column-pivoted QR factorization of the collocation matrix.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from . import poly2
from .algebra import Kind, OperatorParams, algebra_from_operator
from .analytic import APoly, z_powers, zbar_times
from .errors import DegenerateBasis, NotASolution, UnderDetermined
from .poly2 import BiPoly
from .theorems import LEMMA1_TOL, gamma2_scale, gamma_scale

log = logging.getLogger(__name__)

RANK_RTOL = 1e-10
OVERDETERMINATION = 2


# -- bases ---------------------------------------------------------------------

def basis_gamma(op: OperatorParams, max_degree: int) -> list[BiPoly]:
    """[u(z^0)] + [u(z^k), v(z^k) for k = 1..max_degree].

    Raises NotASolution if any element fails the symbolic Gamma check
    (which would indicate a bug, not bad input).
    """
    alg = algebra_from_operator(op)
    powers = z_powers(alg, max_degree)
    basis = [powers[0].u]
    for zk in powers[1:]:
        basis.extend([zk.u, zk.v])
    for b in basis:
        if not poly2.is_zero(poly2.gamma_apply(op, b), LEMMA1_TOL, gamma_scale(op, b.abs())):
            raise NotASolution(f"basis element {b} is not annihilated by Gamma")
    return basis


def _coefficient_matrix(polys: Sequence[BiPoly]) -> np.ndarray:
    exps = sorted({e for p in polys for e in p.terms})
    index = {e: i for i, e in enumerate(exps)}
    M = np.zeros((len(exps), len(polys)))
    for col, p in enumerate(polys):
        for e, c in p.terms.items():
            M[index[e], col] = c
    return M


def _independent(polys: Sequence[BiPoly], rtol: float = RANK_RTOL) -> list[int]:
    """Indices of a greedy maximal linearly independent subset, in order."""
    keep: list[int] = []
    rank = 0
    for i in range(len(polys)):
        trial = keep + [i]
        M = _coefficient_matrix([polys[k] for k in trial])
        M = M / np.maximum(np.linalg.norm(M, axis=0), np.finfo(float).tiny)
        s = np.linalg.svd(M, compute_uv=False)
        r = int(np.sum(s > rtol * s[0])) if s.size and s[0] > 0 else 0
        if r > rank:
            keep.append(i)
            rank = r
    return keep


def basis_gamma2(op: OperatorParams, max_degree: int) -> list[BiPoly]:
    """basis_gamma extended by Im(conj(z) z^k), Im(conj(z) j z^k), k = 0..max_degree.

    Candidates linearly dependent on earlier entries are dropped.
    """
    alg = algebra_from_operator(op)
    candidates = basis_gamma(op, max_degree)
    for k in range(max_degree + 1):
        zk = APoly.monomial(alg, k)
        jzk = APoly.monomial(alg, k, alg.j())
        candidates.append(zbar_times(zk).v)
        candidates.append(zbar_times(jzk).v)
    basis = [candidates[i] for i in _independent(candidates)]
    for b in basis:
        residual = poly2.gamma2_apply(op, b)
        if not poly2.is_zero(residual, LEMMA1_TOL, gamma2_scale(op, b.abs())):
            raise NotASolution(f"basis element {b} is not annihilated by Gamma^2")
    return basis


# -- boundary sampling ---------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    center: tuple[float, float] = (0.0, 0.0)
    radius: float = 1.0

    def contains(self, x, y):
        return (x - self.center[0]) ** 2 + (y - self.center[1]) ** 2 < self.radius**2


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle with opposite corners (x0, y0), (x1, y1)."""

    x0: float = -1.0
    y0: float = -1.0
    x1: float = 1.0
    y1: float = 1.0

    def contains(self, x, y):
        lo_x, hi_x = sorted((self.x0, self.x1))
        lo_y, hi_y = sorted((self.y0, self.y1))
        return (x > lo_x) & (x < hi_x) & (y > lo_y) & (y < hi_y)


@dataclass(frozen=True)
class Custom:
    label: str = "custom"


@dataclass(frozen=True)
class BoundarySample:
    points: np.ndarray
    values: np.ndarray
    shape: Circle | Rect | Custom = field(default_factory=Custom)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        vals = np.asarray(self.values, dtype=float).reshape(-1)
        if len(pts) != len(vals):
            raise ValueError(f"{len(pts)} points but {len(vals)} values")
        if len(pts) < 1:
            raise ValueError("a boundary sample needs at least one point")
        if len(np.unique(pts, axis=0)) != len(pts):
            raise ValueError("boundary points must be pairwise distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "y", "value"])
            for (x, y), v in zip(self.points, self.values):
                w.writerow([repr(float(x)), repr(float(y)), repr(float(v))])

    @classmethod
    def from_csv(cls, path) -> BoundarySample:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["x", "y", "value"]:
                raise ValueError(f"{path}: expected header x,y,value")
            rows = [(float(r["x"]), float(r["y"]), float(r["value"])) for r in reader]
        if not rows:
            raise ValueError(f"{path}: no sample rows")
        arr = np.array(rows)
        return cls(arr[:, :2], arr[:, 2], Custom(str(path)))


def _circle_points(c: Circle, m: int) -> np.ndarray:
    theta = 2.0 * np.pi * np.arange(m) / m
    return np.column_stack(
        [c.center[0] + c.radius * np.cos(theta), c.center[1] + c.radius * np.sin(theta)]
    )


def _rect_points(r: Rect, m: int) -> np.ndarray:
    corners = [(r.x0, r.y0), (r.x1, r.y0), (r.x1, r.y1), (r.x0, r.y1)]
    lengths = [math.dist(corners[i], corners[(i + 1) % 4]) for i in range(4)]
    perimeter = sum(lengths)
    out = []
    for k in range(m):
        s = perimeter * k / m
        for i, L in enumerate(lengths):
            if s < L or i == 3:
                t = s / L if L > 0 else 0.0
                (ax, ay), (bx, by) = corners[i], corners[(i + 1) % 4]
                out.append((ax + t * (bx - ax), ay + t * (by - ay)))
                break
            s -= L
    return np.array(out)


def sample_boundary(
    shape: Circle | Rect, m: int, data: Callable[[np.ndarray, np.ndarray], np.ndarray]
) -> BoundarySample:
    """``m`` equally spaced boundary points and the Dirichlet data there.

    Circles are sampled by angle from angle 0; rectangles by arc length from
    the first corner, counter-clockwise through (x1, y0), (x1, y1), (x0, y1).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if isinstance(shape, Circle):
        pts = _circle_points(shape, m)
    elif isinstance(shape, Rect):
        pts = _rect_points(shape, m)
    else:
        raise TypeError(f"cannot sample a {type(shape).__name__} boundary")
    values = np.broadcast_to(np.asarray(data(pts[:, 0], pts[:, 1]), dtype=float), (m,))
    return BoundarySample(pts, np.array(values), shape)


# -- fitting -------------------------------------------------------------------

@dataclass(frozen=True)
class CollocationFit:
    basis: list[BiPoly]
    coefficients: np.ndarray
    boundary_rms: float
    condition_estimate: float
    dropped_columns: list[int] = field(default_factory=list)
    warning: str | None = None

    def __call__(self, x, y):
        return evaluate_fit(self, np.column_stack([np.ravel(x), np.ravel(y)]))

    def solution(self) -> BiPoly:
        """The fitted combination as a single polynomial."""
        return poly2.linear_combination(zip(self.coefficients.tolist(), self.basis))

    def to_json(self) -> dict:
        return {
            "basis_degrees": [int(b.total_degree) if len(b) else -1 for b in self.basis],
            "coefficients": [float(c) for c in self.coefficients],
            "boundary_rms": float(self.boundary_rms),
            "condition_estimate": float(self.condition_estimate),
            "dropped_columns": list(self.dropped_columns),
            "warning": self.warning,
            "basis": [b.to_json() for b in self.basis],
        }

    @classmethod
    def from_json(cls, data: dict) -> CollocationFit:
        return cls(
            basis=[BiPoly.from_json(b) for b in data["basis"]],
            coefficients=np.array(data["coefficients"], dtype=float),
            boundary_rms=data["boundary_rms"],
            condition_estimate=data["condition_estimate"],
            dropped_columns=list(data.get("dropped_columns", [])),
            warning=data.get("warning"),
        )


def collocation_matrix(basis: Sequence[BiPoly], points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    A = np.empty((len(pts), len(basis)))
    for j, b in enumerate(basis):
        A[:, j] = poly2.eval(b, pts[:, 0], pts[:, 1])
    return A


def fit_dirichlet(
    basis: Sequence[BiPoly],
    sample: BoundarySample,
    op: OperatorParams | None = None,
    rtol: float = RANK_RTOL,
) -> CollocationFit:
    """Least-squares fit of boundary values over ``basis``.

    Uses column-pivoted QR; columns whose R diagonal falls below
    ``rtol * |R[0, 0]|`` are dropped (coefficient 0) and reported.  When
    ``op`` is hyperbolic the fit carries a warning: a small boundary RMS
    does not mean the Dirichlet problem is well posed.
    """
    n = len(basis)
    if n == 0:
        raise DegenerateBasis("empty basis")
    if len(sample.points) < OVERDETERMINATION * n:
        raise UnderDetermined(
            f"{len(sample.points)} samples for {n} basis functions; "
            f"need at least {OVERDETERMINATION * n}"
        )
    A = collocation_matrix(basis, sample.points)
    b = sample.values
    Q, R, perm = scipy.linalg.qr(A, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag.size == 0 or diag[0] == 0.0:
        raise DegenerateBasis("collocation matrix is identically zero")
    rank = int(np.sum(diag > rtol * diag[0]))
    kept = perm[:rank]
    dropped = sorted(int(i) for i in perm[rank:])

    R11 = R[:rank, :rank]
    c_kept = scipy.linalg.solve_triangular(R11, Q[:, :rank].T @ b)
    coeffs = np.zeros(n)
    coeffs[kept] = c_kept
    resid = A @ coeffs - b
    rms = float(np.sqrt(np.mean(resid**2)))
    cond = float(np.linalg.cond(R11))

    warning = None
    if op is not None and op.kind is Kind.HYPERBOLIC:
        warning = (
            "hyperbolic operator: the Dirichlet problem is ill-posed; "
            "boundary RMS does not certify the interior solution"
        )
        log.warning(warning)
    if dropped:
        log.info("dropped rank-deficient columns %s", dropped)
    return CollocationFit(list(basis), coeffs, rms, cond, dropped, warning)


def evaluate_fit(fit: CollocationFit, points) -> np.ndarray:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        return np.zeros(0)
    return collocation_matrix(fit.basis, pts) @ fit.coefficients

