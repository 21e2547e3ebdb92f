"""Observed order of the finite-difference TISE residual for random families."""
import argparse

import numpy as np

from quatqm import FamilyTag, convergence_study, family_kappa, random_family


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--draws", type=int, default=4)
    ap.add_argument("--levels", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"seed {args.seed}")
    for tag in FamilyTag:
        for _ in range(args.draws):
            fam = random_family(rng, tag)
            vecs = [fam.k_vec, fam.alpha_vec, fam.gamma_vec, fam.omega_vec]
            res, orders = convergence_study(fam, family_kappa(fam), vecs, 8, 0.4 / fam.grid_scale(), args.levels,
                                            hbar=fam.hbar, mass=fam.mass)
            print(f"{tag.value:12s} {fam.rho_branch.value:12s} residuals "
                  + " ".join(f"{r:.2e}" for r in res) + "  orders " + " ".join(f"{o:.2f}" for o in orders))


if __name__ == "__main__":
    main()
