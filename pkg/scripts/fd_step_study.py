"""Finite-difference oracle error versus stencil step for generated solutions.

Prints, per step, the worst residual relative to 1 + max|field| over a batch of
Gamma solutions (components of z-polynomials) and Gamma^2 solutions
(Im(conj(z) f + g)), split by the total degree of the field.

    python scripts/fd_step_study.py --solutions 50 --seed 4
"""

import argparse
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from gammakit.algebra import OperatorParams, algebra_from_operator
from gammakit.analytic import expand, random_apoly
from gammakit.theorems import FDScheme, Order, fd_residual, goursat_solution


@dataclass
class StudyConfig:
    solutions: int = 50
    points: int = 25
    seed: int = 4
    steps: list[float] = field(default_factory=lambda: [4e-2, 2e-2, 1e-2, 5e-3, 2.5e-3, 1e-3, 5e-4])


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--solutions", type=int, default=50)
    p.add_argument("--seed", type=int, default=4)
    args = p.parse_args()
    cfg = StudyConfig(solutions=args.solutions, seed=args.seed)
    rng = np.random.default_rng(cfg.seed)

    fields = []
    for _ in range(cfg.solutions):
        beta = rng.uniform(0.25, 4.0) * rng.choice([-1.0, 1.0])
        op = OperatorParams(rng.uniform(-3, 3), beta)
        alg = algebra_from_operator(op)
        pts = rng.uniform(-1, 1, (cfg.points, 2))
        pair = expand(random_apoly(alg, int(rng.integers(1, 7)), rng))
        fields.append((Order.GAMMA, op, pair.u, pts))
        h = goursat_solution(random_apoly(alg, int(rng.integers(0, 6)), rng),
                             random_apoly(alg, int(rng.integers(0, 6)), rng), op)
        fields.append((Order.GAMMA_SQUARED, op, h, pts))

    for order in Order:
        worst = defaultdict(dict)
        for o, op, poly, pts in fields:
            if o != order:
                continue
            deg = int(poly.total_degree)
            for s in cfg.steps:
                rel = fd_residual(poly, op, FDScheme(s, order), pts).relative()
                worst[deg][s] = max(worst[deg].get(s, 0.0), rel)
        print(f"\n{order.name}: worst residual / (1 + max|field|)")
        print("degree " + "".join(f"{s:>10.1e}" for s in cfg.steps))
        for deg in sorted(worst):
            print(f"{deg:>6} " + "".join(f"{worst[deg][s]:>10.1e}" for s in cfg.steps))


if __name__ == "__main__":
    main()
