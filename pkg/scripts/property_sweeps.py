"""Randomized sweeps of the component, change-of-variables and Goursat residual checks.

    python scripts/property_sweeps.py --trials 500 --seed 7
"""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from gammakit.algebra import OperatorParams, algebra_from_operator
from gammakit.analytic import expand, random_apoly
from gammakit.theorems import lemma1_residuals, theorem1_residual, theorem2_residual


@dataclass
class SweepConfig:
    trials: int = 200
    seed: int = 0
    alpha_max: float = 3.0
    beta_min: float = 0.25
    beta_max: float = 4.0
    max_degree: int = 6
    goursat_degree: int = 5


def random_operator(rng, cfg: SweepConfig) -> OperatorParams:
    beta = rng.uniform(cfg.beta_min, cfg.beta_max) * rng.choice([-1.0, 1.0])
    return OperatorParams(rng.uniform(-cfg.alpha_max, cfg.alpha_max), beta)


def sweep(cfg: SweepConfig) -> dict[str, tuple[int, float]]:
    rng = np.random.default_rng(cfg.seed)
    stats = {"lemma1": [0, 0.0], "theorem1": [0, 0.0], "factorization": [0, 0.0], "theorem2": [0, 0.0]}

    def note(name, report):
        stats[name][0] += not report.passed
        stats[name][1] = max(stats[name][1], report.relative())

    for _ in range(cfg.trials):
        op = random_operator(rng, cfg)
        alg = algebra_from_operator(op)
        F = random_apoly(alg, int(rng.integers(0, cfg.max_degree + 1)), rng)
        for r in lemma1_residuals(F, op):
            note("lemma1", r)
        G = expand(random_apoly(alg, int(rng.integers(0, 3)), rng))
        h = (G.u if rng.random() < 0.5 else G.v).with_vars(("u", "v"))
        r = theorem1_residual(h, F, op)
        note("theorem1", r)
        note("factorization", r.checks["factorization"])
        f = random_apoly(alg, int(rng.integers(0, cfg.goursat_degree + 1)), rng)
        g = random_apoly(alg, int(rng.integers(0, cfg.goursat_degree + 1)), rng)
        note("theorem2", theorem2_residual(f, g, op))
    return {k: (v[0], v[1]) for k, v in stats.items()}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    cfg = SweepConfig(trials=args.trials, seed=args.seed)
    t0 = time.perf_counter()
    results = sweep(cfg)
    print(f"{'check':<15}{'failures':>10}{'worst rel.':>14}")
    for name, (fails, worst) in results.items():
        print(f"{name:<15}{fails:>10}{worst:>14.2e}")
    print(f"{cfg.trials} trials in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
