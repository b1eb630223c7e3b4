"""gammakit command-line interface.

Results go to stdout as one JSON document; diagnostics go to stderr.
Exit codes: 0 verified / success, 1 verification failed or fit rejected,
2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import poly2
from .algebra import AlgebraParams, OperatorParams, algebra_from_operator
from .analytic import APoly, cr_residuals, expand, is_a_differentiable, random_apoly
from .bvp import (
    BoundarySample,
    Circle,
    Rect,
    basis_gamma,
    basis_gamma2,
    evaluate_fit,
    fit_dirichlet,
    sample_boundary,
)
from .errors import DegenerateBasis, DegenerateOperator, GammakitError, UnderDetermined
from .poly2 import BiPoly
from .rng import ALGORITHM, SplitMix64
from .theorems import (
    FDScheme,
    Order,
    ResidualReport,
    compose_solution,
    fd_residual,
    goursat_solution,
    is_gamma_solution,
    lemma1_residuals,
    theorem1_residual,
    theorem2_residual,
)

log = logging.getLogger("gammakit")

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2


class InvalidInput(Exception):
    pass


# -- I/O helpers ----------------------------------------------------------------

def _emit(doc: dict, out=None) -> None:
    out = out or sys.stdout
    out.write(json.dumps(doc, indent=2, allow_nan=False) + "\n")


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InvalidInput(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InvalidInput(f"{path}: malformed JSON: {e}") from e
    if not isinstance(doc, dict):
        raise InvalidInput(f"{path}: expected a JSON object")
    return doc


def load_apoly(path: str) -> APoly:
    """An APoly document, or any gammakit output that embeds one under "apoly"."""
    doc = _load(path)
    if "apoly" in doc:
        doc = doc["apoly"]
    try:
        return APoly.from_json(doc)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidInput(f"{path}: not an APoly document ({e})") from e


def load_bipoly(path: str, component: str = "u") -> BiPoly:
    """A BiPoly document, or a gammakit output holding one.

    ``generate`` output contributes its expansion component ``component``;
    ``goursat``/``compose`` outputs contribute ``h``/``H``.
    """
    doc = _load(path)
    if "expansion" in doc:
        doc = doc["expansion"][component]
    elif "u" in doc and "v" in doc:
        doc = doc[component]
    elif "h" in doc:
        doc = doc["h"]
    elif "H" in doc:
        doc = doc["H"]
    try:
        return BiPoly.from_json(doc)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidInput(f"{path}: not a BiPoly document ({e})") from e


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GAMMAKIT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as e:
            raise InvalidInput(f"GAMMAKIT_SEED must be an integer, got {env!r}") from e
    return 0


def _has_op(args) -> bool:
    return args.alpha is not None or args.beta is not None


def _has_alg(args) -> bool:
    return args.l1 is not None or args.l2 is not None


def _check_groups(args) -> None:
    if _has_op(args) and _has_alg(args):
        raise InvalidInput("give either --alpha/--beta or --l1/--l2, not both")
    if _has_op(args) and (args.alpha is None or args.beta is None):
        raise InvalidInput("--alpha and --beta must be given together")
    if _has_alg(args) and (args.l1 is None or args.l2 is None):
        raise InvalidInput("--l1 and --l2 must be given together")


def operator_from_args(args) -> OperatorParams:
    _check_groups(args)
    if _has_op(args):
        op = OperatorParams(args.alpha, args.beta)
        algebra_from_operator(op)  # rejects beta == 0
        return op
    if _has_alg(args):
        if args.l2 == 0:
            raise DegenerateOperator("l2 = 0 corresponds to no operator (beta = 1/l2)")
        return OperatorParams(args.l1 / args.l2, 1.0 / args.l2)
    raise InvalidInput("operator required: --alpha A --beta B (or --l1/--l2)")


def algebra_from_args(args) -> AlgebraParams | None:
    _check_groups(args)
    if _has_alg(args):
        return AlgebraParams(args.l1, args.l2)
    if _has_op(args):
        return algebra_from_operator(OperatorParams(args.alpha, args.beta))
    return None


# -- subcommands ----------------------------------------------------------------

def cmd_classify(args) -> int:
    alg = algebra_from_args(args)
    if alg is None:
        raise InvalidInput("classify needs --alpha/--beta or --l1/--l2")
    doc = alg.to_json()
    if _has_op(args):
        doc["operator"] = OperatorParams(args.alpha, args.beta).to_json()
    _emit(doc)
    return EXIT_OK


def cmd_verify_cr(args) -> int:
    F = load_apoly(args.input)
    alg = algebra_from_args(args) or F.algebra
    pair = expand(F)
    r1, r2 = cr_residuals(pair, alg)
    scale = max(pair.u.max_abs_coeff(), pair.v.max_abs_coeff()) or 1.0
    reports = [ResidualReport.symbolic(r, args.tol, scale) for r in (r1, r2)]
    ok = is_a_differentiable(pair, alg, args.tol)
    _emit({
        "algebra": alg.to_json(),
        "a_differentiable": ok,
        "cr_residuals": [r.to_json() for r in reports],
    })
    return EXIT_OK if ok else EXIT_FAILED


def cmd_generate(args) -> int:
    op = operator_from_args(args)
    alg = algebra_from_operator(op)
    seed = _seed(args)
    F = random_apoly(alg, args.degree, SplitMix64(seed), args.bound)
    reports = lemma1_residuals(F, op, args.tol)
    _emit({
        "seed": seed,
        "rng": ALGORITHM,
        "operator": op.to_json(),
        "algebra": alg.to_json(),
        "apoly": F.to_json(),
        "expansion": expand(F).to_json(),
        "lemma1": [r.to_json() for r in reports],
    })
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_compose(args) -> int:
    op = operator_from_args(args)
    h = load_bipoly(args.h, args.component).with_vars(("u", "v"))
    F = load_apoly(args.f)
    h_ok = is_gamma_solution(op, h, args.tol)
    if not h_ok:
        log.warning("h is not a Gamma solution; the composition need not be one")
    H = compose_solution(h, F, op, check=False)
    report = theorem1_residual(h, F, op, args.tol)
    _emit({
        "operator": op.to_json(),
        "h_is_solution": h_ok,
        "H": H.to_json(),
        "theorem1": report.to_json(),
    })
    return EXIT_OK if (h_ok and report.passed) else EXIT_FAILED


def cmd_goursat(args) -> int:
    op = operator_from_args(args)
    f = load_apoly(args.f)
    if args.g:
        g = load_apoly(args.g)
    else:
        g = APoly(algebra_from_operator(op))
    part = "re" if args.experimental_re else "im"
    if part == "re":
        log.warning("experimental: using Re(conj(z) f + g); not a guaranteed solution")
    h = goursat_solution(f, g, op, part)
    report = theorem2_residual(f, g, op, args.tol, part)
    _emit({
        "operator": op.to_json(),
        "part": part,
        "h": h.to_json(),
        "theorem2": report.to_json(),
    })
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_fd_verify(args) -> int:
    op = operator_from_args(args)
    field = load_bipoly(args.field, args.component)
    order = Order(args.order)
    scheme = FDScheme(args.step if args.step is not None else FDScheme.default(order).step, order)
    rng = SplitMix64(_seed(args))
    points = [(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) for _ in range(args.samples)]
    report = fd_residual(lambda x, y: poly2.eval(field, x, y), op, scheme, points, args.tol)
    _emit({
        "operator": op.to_json(),
        "order": int(order),
        "step": scheme.step,
        "samples": args.samples,
        "report": report.to_json(),
    })
    return EXIT_OK if report.passed else EXIT_FAILED


def _shape(name: str):
    return Circle() if name == "circle" else Rect()


def cmd_solve_bvp(args) -> int:
    op = operator_from_args(args)
    basis = basis_gamma(op, args.degree) if args.order == 1 else basis_gamma2(op, args.degree)
    shape = _shape(args.shape)
    if args.boundary:
        sample = BoundarySample.from_csv(args.boundary)
    else:
        if not args.data:
            raise InvalidInput("solve-bvp needs --data g.json or --boundary samples.csv")
        data = load_bipoly(args.data, args.component)
        sample = sample_boundary(shape, args.samples, lambda x, y: poly2.eval(data, x, y))
    if args.boundary_out:
        sample.to_csv(args.boundary_out)
    fit = fit_dirichlet(basis, sample, op)
    doc = fit.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            _emit(doc, fh)
    if args.grid:
        n = args.grid_n
        if isinstance(shape, Circle):
            lo, hi = -shape.radius, shape.radius
            xs = np.linspace(shape.center[0] + lo, shape.center[0] + hi, n)
            ys = np.linspace(shape.center[1] + lo, shape.center[1] + hi, n)
        else:
            xs = np.linspace(min(shape.x0, shape.x1), max(shape.x0, shape.x1), n)
            ys = np.linspace(min(shape.y0, shape.y1), max(shape.y0, shape.y1), n)
        X, Y = np.meshgrid(xs, ys, indexing="xy")
        inside = shape.contains(X, Y)
        pts = np.column_stack([X[inside], Y[inside]])
        vals = evaluate_fit(fit, pts)
        with open(args.grid, "w") as fh:
            fh.write("x,y,value\n")
            for (x, y), v in zip(pts, vals):
                fh.write(f"{float(x)!r},{float(y)!r},{float(v)!r}\n")
    _emit(doc)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def _add_params(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("operator / algebra (use one group)")
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--l1", type=float)
    g.add_argument("--l2", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gammakit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="algebra parameters and type")
    _add_params(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-cr", help="check generalized Cauchy-Riemann equations")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    _add_params(p)
    p.set_defaults(func=cmd_verify_cr)

    p = sub.add_parser("generate", help="random APoly, its expansion and component Gamma residuals")
    _add_params(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--bound", type=float, default=10.0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("compose", help="H = h o F and its Gamma residual")
    _add_params(p)
    p.add_argument("--h", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--component", choices=["u", "v"], default="u")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("goursat", help="h = Im(conj(z) f + g) and its Gamma^2 residual")
    _add_params(p)
    p.add_argument("--f", required=True)
    p.add_argument("--g")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--experimental-re", action="store_true",
                   help="use the real part instead (not a guaranteed solution)")
    p.set_defaults(func=cmd_goursat)

    p = sub.add_parser("fd-verify", help="finite-difference residual oracle")
    _add_params(p)
    p.add_argument("--field", required=True)
    p.add_argument("--component", choices=["u", "v"], default="u")
    p.add_argument("--order", type=int, choices=[1, 2], default=1)
    p.add_argument("--step", type=float)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_fd_verify)

    p = sub.add_parser("solve-bvp", help="Dirichlet collocation fit")
    _add_params(p)
    p.add_argument("--order", type=int, choices=[1, 2], default=1)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--shape", choices=["circle", "rect"], default="circle")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--data")
    p.add_argument("--component", choices=["u", "v"], default="u")
    p.add_argument("--boundary", help="boundary sample CSV (x,y,value) instead of --data")
    p.add_argument("--boundary-out", help="write the boundary samples used as CSV")
    p.add_argument("--out", help="write fit JSON here as well as to stdout")
    p.add_argument("--grid", help="evaluate the fit on a grid inside the domain (CSV)")
    p.add_argument("--grid-n", type=int, default=21)
    p.set_defaults(func=cmd_solve_bvp)
    return parser


def _configure_logging(verbose: bool) -> None:
    # own handler on the package logger so diagnostics reach the current stderr
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("gammakit: %(levelname)s: %(message)s"))
    root = logging.getLogger("gammakit")
    root.handlers[:] = [handler]
    root.propagate = False
    root.setLevel(logging.INFO if verbose else logging.WARNING)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except (UnderDetermined, DegenerateBasis) as e:
        log.error("fit rejected: %s: %s", type(e).__name__, e)
        return EXIT_FAILED
    except (GammakitError, InvalidInput, ValueError, KeyError, TypeError) as e:
        log.error("%s: %s", type(e).__name__, e)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
