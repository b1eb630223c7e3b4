"""Dirichlet collocation on the unit disc for a few operators.

For each operator, fits boundary data exp(x) cos(y) + x y^2 with the Gamma
basis and the Gamma^2 basis of growing degree and reports boundary RMS,
condition estimate and dropped columns.

    python scripts/bvp_demo.py --max-degree 8 --samples 128
"""

import argparse
from dataclasses import dataclass

import numpy as np

from gammakit.algebra import OperatorParams
from gammakit.bvp import Circle, basis_gamma, basis_gamma2, fit_dirichlet, sample_boundary

OPERATORS = {
    "laplace": OperatorParams(0, 1),
    "gamma(1,1)": OperatorParams(1, 1),
    "gamma(1,3)": OperatorParams(1, 3),
    "parabolic": OperatorParams(2, 1),
    "hyperbolic": OperatorParams(3, 1),
}


@dataclass
class DemoConfig:
    max_degree: int = 8
    samples: int = 128


def data(x, y):
    return np.exp(x) * np.cos(y) + x * y**2


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--samples", type=int, default=128)
    args = p.parse_args()
    cfg = DemoConfig(args.max_degree, args.samples)
    sample = sample_boundary(Circle(), cfg.samples, data)
    print(f"{'operator':<12}{'basis':<8}{'deg':>4}{'size':>6}{'rms':>11}{'cond':>11}{'dropped':>9}")
    for name, op in OPERATORS.items():
        for label, make in (("gamma", basis_gamma), ("gamma2", basis_gamma2)):
            for deg in range(2, cfg.max_degree + 1, 2):
                basis = make(op, deg)
                if 2 * len(basis) > cfg.samples:
                    break
                fit = fit_dirichlet(basis, sample, op)
                print(f"{name:<12}{label:<8}{deg:>4}{len(basis):>6}{fit.boundary_rms:>11.2e}"
                      f"{fit.condition_estimate:>11.2e}{len(fit.dropped_columns):>9}")


if __name__ == "__main__":
    main()
