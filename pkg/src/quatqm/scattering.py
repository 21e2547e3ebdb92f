"""Quaternionic free particle hitting the step ``V = 0 (x < 0), V0 (x >= 0)``.

Each of the incident, reflected and transmitted waves has the form
``c rho(x) [cos(Theta) e^{i g.x} + sin(Theta) e^{i w.x} j]`` where the complex
coefficient ``c`` (1, ``R`` or ``T``) acts from the left, ``g = +-a + gamma_perp``
and ``w = -+a + omega_perp`` for the momentum ``a`` along ``x``, and ``rho``
varies only normal to ``x``.  The complex-slot phase moves along ``+a`` while
the ``j``-slot phase moves along ``-a``.

Matching at the origin fixes ``|p|^2/|k|^2 = 1 - V0/E`` and

    R rho_q(0)/rho_k(0) = (|k| - |p|) / (|q| + |p|)
    T rho_p(0)/rho_k(0) = (|k| + |q|) / (|q| + |p|)

with reflected ``gamma_perp``, ``omega_perp`` and ``grad rho / rho`` reversed and
transmitted ones scaled by ``|p|/|k|``.  With that choice every matching row
(value, normal derivative, tangential derivatives, both symplectic slots)
holds exactly.
"""
from __future__ import annotations

import csv
import dataclasses
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .field import Grid, residual_tise, sample
from .quaternion import Quaternion, cexp, conj, lmul_i, mul
from .time_evolution import SeparationConstant

GEOM_TOL = 1e-10
XHAT = np.array([1.0, 0.0, 0.0])


class ScatteringError(ValueError):
    pass


class UndefinedRatioError(ScatteringError):
    pass


class EvanescentError(ScatteringError):
    pass


class DegenerateAmplitudeError(ScatteringError):
    pass


def _vec(v) -> np.ndarray:
    return np.asarray(v, dtype=float).reshape(3)


def _perp_unit(k: np.ndarray, *others: np.ndarray) -> np.ndarray:
    """A unit vector orthogonal to ``k`` and to every non-zero vector in ``others``."""
    for o in others:
        if np.linalg.norm(o) > 0:
            c = np.cross(k, o)
            return c / np.linalg.norm(c)
    trial = np.array([0.0, 0.0, 1.0]) if abs(k[2]) < 0.9 * np.linalg.norm(k) else np.array([0.0, 1.0, 0.0])
    c = np.cross(k, trial)
    return c / np.linalg.norm(c)


@dataclass(frozen=True)
class StepProblem:
    V0: float
    E_q: float
    k_vec: np.ndarray
    gamma_perp: np.ndarray
    omega_perp: np.ndarray
    alpha_k: np.ndarray
    theta_k: float = 0.0
    A_k: float = 0.5
    B_k: float = 0.5
    rho_q0: float = 1.0
    rho_p0: float = 1.0
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        for name in ("k_vec", "gamma_perp", "omega_perp", "alpha_k"):
            object.__setattr__(self, name, _vec(getattr(self, name)))
        for name in ("V0", "E_q", "theta_k", "A_k", "B_k", "rho_q0", "rho_p0", "hbar", "mass"):
            object.__setattr__(self, name, float(getattr(self, name)))
        k, g, w, a = self.k_vec, self.gamma_perp, self.omega_perp, self.alpha_k
        kn = np.linalg.norm(k)
        if self.V0 < 0:
            raise ScatteringError("V0 must be non-negative")
        if kn == 0 or np.linalg.norm(k - kn * XHAT) > GEOM_TOL * kn:
            raise ScatteringError("k must point along +x, the normal of the step")
        for label, v in (("gamma_perp", g), ("omega_perp", w), ("alpha_k", a)):
            if abs(v @ k) > GEOM_TOL * kn * max(np.linalg.norm(v), 1e-300):
                raise ScatteringError(f"{label} must be normal to k")
        for label, v in (("gamma_perp", g), ("omega_perp", w)):
            if abs(v @ a) > GEOM_TOL * max(np.linalg.norm(v) * np.linalg.norm(a), 1e-300):
                raise ScatteringError(f"alpha_k must be normal to {label}")
        e_want = self.hbar ** 2 * (g @ g - w @ w) / (4 * self.mass)
        if abs(self.E_q - e_want) > 1e-9 * max(abs(e_want), 1.0):
            raise ScatteringError(f"E_q = {self.E_q!r} but hbar^2(|gamma_perp|^2 - |omega_perp|^2)/4m = {e_want!r}")
        a_want = k @ k + (g @ g + w @ w) / 2
        if abs(a @ a - a_want) > 1e-9 * max(a_want, 1.0):
            raise ScatteringError(f"|alpha_k|^2 = {a @ a!r}, expected |k|^2 + (|gamma_perp|^2+|omega_perp|^2)/2 = {a_want!r}")

    @classmethod
    def build(cls, k: float, gamma_perp, omega_perp, V0: float = 0.0, theta: float = 0.0,
              alpha_dir=None, A_k: float = 0.5, B_k: float = 0.5, rho_q0: float = 1.0,
              rho_p0: float = 1.0, hbar: float = 1.0, mass: float = 1.0) -> "StepProblem":
        """Derive ``E_q`` and ``alpha_k`` from the incident momentum and transverse phases."""
        kv = float(k) * XHAT
        g, w = _vec(gamma_perp), _vec(omega_perp)
        adir = _perp_unit(kv, g, w) if alpha_dir is None else _vec(alpha_dir) / np.linalg.norm(alpha_dir)
        amag = np.sqrt(kv @ kv + (g @ g + w @ w) / 2)
        E = hbar ** 2 * (g @ g - w @ w) / (4 * mass)
        return cls(V0, E, kv, g, w, amag * adir, theta, A_k, B_k, rho_q0, rho_p0, hbar, mass)

    @property
    def k(self) -> float:
        return float(np.linalg.norm(self.k_vec))

    @property
    def rho_k0(self) -> float:
        return self.A_k + self.B_k

    def with_ratio(self, ratio: float) -> "StepProblem":
        return dataclasses.replace(self, V0=ratio * self.E_q)


@dataclass(frozen=True)
class PartialWave:
    """``rho(x) [cos(theta) e^{i g.x} + sin(theta) e^{i w.x} j]``, before its left coefficient."""

    momentum: np.ndarray    # signed, along x
    gamma_perp: np.ndarray
    omega_perp: np.ndarray
    alpha: np.ndarray
    A: float
    B: float
    theta: float

    @property
    def g(self) -> np.ndarray:
        return self.momentum + self.gamma_perp

    @property
    def w(self) -> np.ndarray:
        return -self.momentum + self.omega_perp

    @property
    def rho0(self) -> float:
        return self.A + self.B

    @property
    def grad_rho0(self) -> np.ndarray:
        return self.alpha * (self.A - self.B)

    def rho(self, x):
        s = np.tensordot(x, self.alpha, axes=([-1], [0]))
        return self.A * np.exp(s) + self.B * np.exp(-s)

    def __call__(self, x) -> Quaternion:
        x = np.asarray(x, dtype=float)
        r = self.rho(x)
        gx = np.tensordot(x, self.g, axes=([-1], [0]))
        wx = np.tensordot(x, self.w, axes=([-1], [0]))
        return Quaternion(r * np.cos(self.theta) * cexp(gx), r * np.sin(self.theta) * cexp(wx))

    def value_and_grad(self, x) -> tuple[Quaternion, list[Quaternion]]:
        """Exact value and the three partial derivatives at a single point."""
        x = _vec(x)
        s = self.alpha @ x
        r = self.A * np.exp(s) + self.B * np.exp(-s)
        dr = self.alpha * (self.A * np.exp(s) - self.B * np.exp(-s))
        ez = np.cos(self.theta) * cexp(self.g @ x)
        ew = np.sin(self.theta) * cexp(self.w @ x)
        val = Quaternion(r * ez, r * ew)
        grads = [Quaternion(dr[a] * ez + r * 1j * self.g[a] * ez, dr[a] * ew + r * 1j * self.w[a] * ew)
                 for a in range(3)]
        return val, grads


@dataclass(frozen=True)
class ScatteringSolution:
    R: complex
    T: complex
    incident: PartialWave
    reflected: PartialWave
    transmitted: PartialWave
    ratio_table: dict
    p_over_k_sq: float

    @property
    def R2(self) -> float:
        return abs(self.R) ** 2

    @property
    def T2(self) -> float:
        return abs(self.T) ** 2

    def region_I(self, x) -> Quaternion:
        return self.incident(x) + self.R * self.reflected(x)

    def region_II(self, x) -> Quaternion:
        return self.T * self.transmitted(x)


def _ratio(num: float, den: float) -> float:
    return num / den if den != 0 else float("nan")


def solve_step(prob: StepProblem) -> ScatteringSolution:
    if prob.E_q == 0:
        raise UndefinedRatioError("quaternionic energy is zero, V0/E is undefined")
    if prob.E_q < prob.V0:
        raise EvanescentError("E_q < V0: transmitted momentum is imaginary, outside the construction")
    if prob.rho_p0 == 0 or prob.rho_q0 == 0 or prob.rho_k0 == 0:
        raise DegenerateAmplitudeError("rho(0) vanishes for one of the waves")
    ratio2 = 1.0 - prob.V0 / prob.E_q
    k = prob.k
    p = k * np.sqrt(ratio2)
    q = k
    s = p / k
    kv = prob.k_vec
    incident = PartialWave(kv, prob.gamma_perp, prob.omega_perp, prob.alpha_k, prob.A_k, prob.B_k, prob.theta_k)
    # grad(rho)/rho flips sign on reflection and scales by |p|/|k| on transmission
    dq = -(prob.rho_q0 / prob.rho_k0) * (prob.A_k - prob.B_k)
    reflected = PartialWave(-kv, -prob.gamma_perp, -prob.omega_perp, prob.alpha_k,
                            (prob.rho_q0 + dq) / 2, (prob.rho_q0 - dq) / 2, prob.theta_k)
    fp = prob.rho_p0 / prob.rho_k0
    transmitted = PartialWave(s * kv, s * prob.gamma_perp, s * prob.omega_perp, s * prob.alpha_k,
                              fp * prob.A_k, fp * prob.B_k, prob.theta_k)
    R = (k - p) / (q + p) * prob.rho_k0 / prob.rho_q0
    T = (k + q) / (q + p) * prob.rho_k0 / prob.rho_p0
    n = np.linalg.norm
    table = {
        "gamma_q/gamma_k": _ratio(n(reflected.g), n(incident.g)),
        "omega_q/omega_k": _ratio(n(reflected.w), n(incident.w)),
        "grad_rho_q/grad_rho_k": _ratio(n(reflected.grad_rho0), n(incident.grad_rho0)),
        "gamma_p/gamma_k": _ratio(n(transmitted.g), n(incident.g)),
        "omega_p/omega_k": _ratio(n(transmitted.w), n(incident.w)),
        "grad_rho_p/grad_rho_k": _ratio(n(transmitted.grad_rho0), n(incident.grad_rho0)),
        "alpha_p^2/alpha_k^2": _ratio(transmitted.alpha @ transmitted.alpha, incident.alpha @ incident.alpha),
        "p/k": s,
    }
    return ScatteringSolution(complex(R), complex(T), incident, reflected, transmitted, table, ratio2)


# -- checks -------------------------------------------------------------------

def _region_at_origin(sol: ScatteringSolution, side: str):
    origin = np.zeros(3)
    if side == "I":
        v1, g1 = sol.incident.value_and_grad(origin)
        v2, g2 = sol.reflected.value_and_grad(origin)
        return v1 + sol.R * v2, [a + sol.R * b for a, b in zip(g1, g2)]
    v, g = sol.transmitted.value_and_grad(origin)
    return sol.T * v, [sol.T * a for a in g]


def _mismatch(a: Quaternion, b: Quaternion) -> float:
    return float(max(abs(a.z - b.z), abs(a.zeta - b.zeta)))


@dataclass(frozen=True)
class ContinuityReport:
    value: float            # Phi_I(0) - Phi_II(0)
    normal_gradient: float  # d/dx, along k
    tangential_gradient: float

    @property
    def max(self) -> float:
        return max(self.value, self.normal_gradient, self.tangential_gradient)


def check_continuity(sol: ScatteringSolution, prob: StepProblem) -> ContinuityReport:
    """Largest slot-wise mismatch of the value and gradient of ``Phi`` across ``x = 0``."""
    vI, gI = _region_at_origin(sol, "I")
    vII, gII = _region_at_origin(sol, "II")
    return ContinuityReport(_mismatch(vI, vII), _mismatch(gI[0], gII[0]),
                            max(_mismatch(gI[a], gII[a]) for a in (1, 2)))


def _normal_current(value: Quaternion, grad_x: Quaternion, hbar: float, mass: float) -> float:
    p_psi = lmul_i(grad_x) * (-hbar)
    prod = mul(p_psi, conj(value))
    return float(np.real((prod + conj(prod)).z) / (2 * mass))


@dataclass(frozen=True)
class FluxReport:
    incident: float
    reflected: float
    transmitted: float
    left: float     # full region-I current at 0-
    right: float    # region-II current at 0+

    @property
    def defect(self) -> float:
        return self.left - self.right


def flux_balance(sol: ScatteringSolution, prob: StepProblem) -> FluxReport:
    """Normal probability currents at the origin on both sides.  Reported, not asserted."""
    if prob.E_q < prob.V0:
        raise EvanescentError("flux balance needs a propagating transmitted wave")
    h, m = prob.hbar, prob.mass
    o = np.zeros(3)
    vi, gi = sol.incident.value_and_grad(o)
    vr, gr = sol.reflected.value_and_grad(o)
    vt, gt = sol.transmitted.value_and_grad(o)
    vI, gI = _region_at_origin(sol, "I")
    vII, gII = _region_at_origin(sol, "II")
    return FluxReport(
        _normal_current(vi, gi[0], h, m),
        _normal_current(sol.R * vr, sol.R * gr[0], h, m),
        _normal_current(sol.T * vt, sol.T * gt[0], h, m),
        _normal_current(vI, gI[0], h, m),
        _normal_current(vII, gII[0], h, m),
    )


def energy_relations(sol: ScatteringSolution, prob: StepProblem) -> dict:
    """Transverse energy and ``|alpha|^2`` bookkeeping per wave.

    ``transverse_energy`` is ``hbar^2 (|gamma|^2 - |omega|^2) / 4m``; ``alpha_excess`` is
    ``|alpha|^2 - |a|^2 - (|gamma_perp|^2 + |omega_perp|^2)/2``.
    """
    out = {}
    c = prob.hbar ** 2 / (4 * prob.mass)
    for name, wv in (("k", sol.incident), ("q", sol.reflected), ("p", sol.transmitted)):
        g, w = wv.g, wv.w
        out[name] = {
            "transverse_energy": float(c * (g @ g - w @ w)),
            "alpha_excess": float(wv.alpha @ wv.alpha - wv.momentum @ wv.momentum
                                  - (wv.gamma_perp @ wv.gamma_perp + wv.omega_perp @ wv.omega_perp) / 2),
        }
    return out


def region_residuals(sol: ScatteringSolution, prob: StepProblem, n: int = 11,
                     h: Optional[float] = None) -> tuple[float, float]:
    """Grid residuals of ``H Phi = i Phi kappa`` inside each region, ``kappa = -i E_q``.

    Region I always solves it.  Region II solves it only when ``V0 = 0`` or the
    ``j`` slot is empty: the potential enters both slots with the same sign while
    ``kappa`` enters them with opposite signs, so the ``j`` slot is off by ``2 V0``.
    """
    scale = max(np.linalg.norm(sol.incident.g), np.linalg.norm(sol.incident.w), np.linalg.norm(prob.alpha_k))
    h = 0.05 / scale if h is None else h
    half = h * (n - 1) / 2
    kappa = SeparationConstant(-1j * prob.E_q, 0j)
    gI = Grid.centered(n, h, center=(-half - h, 0.0, 0.0))
    gII = Grid.centered(n, h, center=(half, 0.0, 0.0))
    rI = residual_tise(sample(sol.region_I, gI), 0.0, kappa, prob.hbar, prob.mass)
    rII = residual_tise(sample(sol.region_II, gII), prob.V0, kappa, prob.hbar, prob.mass)
    return rI, rII


# -- sweeps -------------------------------------------------------------------

SWEEP_COLUMNS = ("V0/E_q", "|p|^2/|k|^2", "|R|^2", "|T|^2", "flux_defect")


def sweep(prob: StepProblem, ratios: Iterable[float]) -> list[dict]:
    rows = []
    for r in ratios:
        pr = prob.with_ratio(float(r))
        sol = solve_step(pr)
        rows.append({
            "V0/E_q": float(r),
            "|p|^2/|k|^2": sol.p_over_k_sq,
            "|R|^2": sol.R2,
            "|T|^2": sol.T2,
            "flux_defect": flux_balance(sol, pr).defect,
            "continuity": check_continuity(sol, pr).max,
        })
    return rows


def write_sweep_csv(rows: list[dict], path) -> None:
    """Write the sweep table to a path or an open text stream."""
    if hasattr(path, "write"):
        _write_rows(rows, path)
        return
    with open(path, "w", newline="") as fh:
        _write_rows(rows, fh)


def _write_rows(rows: list[dict], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for row in rows:
        w.writerow([repr(float(row[c])) for c in SWEEP_COLUMNS])
