"""Write data/example.json: one family of each kind, axis-aligned so grids reduce to 1D or 2D."""
import json
from pathlib import Path

import numpy as np

from quatqm import FamilyTag, LambdaFamily, LambdaKind, RhoBranch, StationaryFamily
from quatqm.documents import to_dict

OUT = Path(__file__).resolve().parents[1] / "data" / "example.json"


def families():
    k = np.array([0.8, 0.0, 0.0])
    g, w = np.array([0.0, 0.0, 1.2]), np.array([0.0, 0.0, 0.6])
    a = np.array([0.0, np.sqrt(k @ k + (g @ g + w @ w) / 2), 0.0])
    general = StationaryFamily(FamilyTag.K1_ZERO, g, w, a, theta=0.7, gamma0=0.3, omega0=1.9,
                               C1=1 + 0.5j, C2=0.2j, C3=-0.4, C4=0.1 + 0.1j, k_vec=k, A1=1.0, A2=0.3j)
    # |alpha| = |gamma| = |omega| with no complex factor: zero energy
    exotic = StationaryFamily(FamilyTag.K1_ZERO, [0, 0, 1.0], [0, 0, -1.0], [0, 1.0, 0],
                              theta=np.pi / 4, C1=1.0)
    g2 = np.array([0.0, 0.0, 0.9])
    gamma0, tau0 = 0.3, 1.1
    mixed = StationaryFamily(FamilyTag.COSW_K0, g2, g2, [0, 0.5, 0], theta=0.4, gamma0=gamma0,
                             omega0=gamma0 + tau0 - np.pi / 2, tau0=tau0, C1=1.0, C2=0.5 - 0.2j,
                             k_vec=[0.7, 0, 0], rho_branch=RhoBranch.TRIG, A_amp=1.0, B_amp=0.3)
    pure_j = StationaryFamily(FamilyTag.COSW_K0ZERO, g2, g2, [0, 0.5, 0], theta=np.pi / 4, gamma0=gamma0,
                              omega0=gamma0 + tau0 + np.pi / 2, tau0=tau0, C1=0.8j,
                              k_vec=[0.7, 0, 0], rho_branch=RhoBranch.LINEAR, A_amp=1.0, B_amp=0.4)
    return [general, exotic, mixed, pure_j]


def main():
    fams = families()
    free = StationaryFamily(FamilyTag.K1_ZERO, [0, 0, 1.2], [0, 0, 0.6], fams[0].alpha_vec, theta=0.7,
                            C1=1 + 0.5j, k_vec=[0.8, 0, 0])
    doc = {
        "lambda_families": [
            to_dict(LambdaFamily(LambdaKind.COMPLEX, 1.3)),
            to_dict(LambdaFamily(LambdaKind.MIXED, 0.9, xi=0.35, tau0=0.8)),
            to_dict(LambdaFamily(LambdaKind.ROTATING, 2.0, X0=0.4, tau0=1.7)),
        ],
        "stationary_families": [to_dict(f) for f in fams],
        "free_particle": to_dict(free),
        "step": {"k": 1.0, "gamma_perp": [0.0, 0.0, 1.2], "omega_perp": [0.0, 0.0, 0.6], "theta": 0.6},
        "ratios": [0.0, 0.25, 0.5, 0.75],
    }
    OUT.parent.mkdir(exist_ok=True)
    OUT.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
