"""Sweep the step height for a quaternionic and a complex incident wave.

Writes one CSV per case and prints continuity, flux defect and the interior
residuals of both regions, so the region-II mismatch of the j slot can be
read off next to the matching quality.
"""
import argparse
from pathlib import Path

import numpy as np

from quatqm import StepProblem, region_residuals, solve_step, sweep, write_sweep_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--points", type=int, default=21)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    Z = np.array([0.0, 0.0, 1.0])
    cases = {
        "quaternionic": StepProblem.build(1.0, 1.2 * Z, 0.6 * Z, theta=0.6, A_k=0.7, B_k=0.3),
        "complex": StepProblem.build(1.0, 1.2 * Z, np.zeros(3), theta=0.0, A_k=0.7, B_k=0.3),
    }
    ratios = np.linspace(0, 0.95, args.points)
    for name, prob in cases.items():
        rows = sweep(prob, ratios)
        path = args.out / f"sweep_{name}.csv"
        write_sweep_csv(rows, path)
        print(f"{name}: wrote {path}")
        print(f"  {'V0/E':>6} {'p2/k2':>6} {'|R|^2':>10} {'|T|^2':>10} {'flux':>10} {'match':>10} {'res I':>10} {'res II':>10}")
        for r, row in zip(ratios, rows):
            pr = prob.with_ratio(r)
            rI, rII = region_residuals(solve_step(pr), pr)
            print(f"  {r:6.3f} {row['|p|^2/|k|^2']:6.3f} {row['|R|^2']:10.3e} {row['|T|^2']:10.3e} "
                  f"{row['flux_defect']:10.1e} {row['continuity']:10.1e} {rI:10.1e} {rII:10.1e}")


if __name__ == "__main__":
    main()
