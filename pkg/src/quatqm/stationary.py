"""Stationary solutions ``Phi = phi rho K C`` of ``H Phi = i Phi kappa``.

``phi`` is a complex plane-wave factor with energy ``E``, ``rho`` a real
amplitude, and ``K = cos(Theta) e^{i Gamma} + sin(Theta) e^{i Omega} j`` with
constant ``Theta`` and linear phases.  Three families are built:

``K1_ZERO``
    ``kappa = kappa0`` only; ``rho`` is a real exponential and the energy is
    set by ``|gamma|^2 - |omega|^2``.
``COSW_K0``
    ``cos W = 0`` with ``W = Gamma - Omega + tau0``; ``Phi`` is a complex
    solution times a constant unit quaternion, whose mixing angle scales the
    quaternionic energy by ``cos 2 Theta``.
``COSW_K0ZERO``
    as above with ``cos 2 Theta = 0`` so that ``kappa`` is pure ``j``.

All vectors must obey the orthogonality set ``k . alpha = k . gamma = k . omega
= alpha . gamma = alpha . omega = 0``; the constructor checks it.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .quaternion import Quaternion, cexp
from .time_evolution import LambdaFamily, LambdaKind, SeparationConstant

GEOM_TOL = 1e-10
POLE_TOL = 1e-12


class ConstraintViolation(ValueError):
    """A family parameter set breaks one of the solvability constraints."""

    def __init__(self, name: str, detail: str):
        self.name = name
        self.detail = detail
        super().__init__(f"{name} violated: {detail}")


class FamilyTag(str, enum.Enum):
    K1_ZERO = "K1_ZERO"
    COSW_K0 = "COSW_K0"
    COSW_K0ZERO = "COSW_K0ZERO"


class RhoBranch(str, enum.Enum):
    GROWING_EXP = "GROWING_EXP"  # A e^{a.x} + B e^{-a.x}
    TRIG = "TRIG"                # A cos(a.x) + B sin(a.x)
    LINEAR = "LINEAR"            # A + B a.x

    @property
    def curvature_sign(self) -> int:
        """Sign ``s`` in ``lap(rho)/rho = s |alpha|^2``."""
        return {"GROWING_EXP": 1, "TRIG": -1, "LINEAR": 0}[self.value]


def _vec(v) -> np.ndarray:
    a = np.asarray(v, dtype=float).reshape(3)
    return a


def _dot(x: np.ndarray, v: np.ndarray):
    return np.tensordot(np.asarray(x, dtype=float), v, axes=([-1], [0]))


# -- complex factor -----------------------------------------------------------

@dataclass(frozen=True)
class PlaneWave:
    """``phi(x) = A1 e^{i k.x} + A2 e^{-i k.x}`` with ``E = hbar^2 |k|^2 / 2m``."""

    k: np.ndarray
    A1: complex = 1 + 0j
    A2: complex = 0j
    hbar: float = 1.0
    mass: float = 1.0

    @property
    def energy(self) -> float:
        return self.hbar ** 2 * float(self.k @ self.k) / (2 * self.mass)

    def __call__(self, x):
        s = _dot(x, self.k)
        return self.A1 * cexp(s) + self.A2 * cexp(-s)

    def grad(self, x):
        s = _dot(x, self.k)
        return (1j * (self.A1 * cexp(s) - self.A2 * cexp(-s)))[..., None] * self.k


def build_phi(kvec, A1=1 + 0j, A2=0j, hbar=1.0, mass=1.0) -> tuple[PlaneWave, float]:
    """Complex plane-wave factor and its energy."""
    pw = PlaneWave(_vec(kvec), complex(A1), complex(A2), hbar, mass)
    return pw, pw.energy


# -- family -------------------------------------------------------------------

def _as_complex_constant(name: str, c) -> complex:
    if isinstance(c, Quaternion):
        if np.any(np.abs(c.zeta) > 0):
            raise ConstraintViolation("complex constants", f"{name} is quaternionic")
        return complex(c.z)
    return complex(c)


@dataclass(frozen=True)
class StationaryFamily:
    family_tag: FamilyTag
    gamma_vec: np.ndarray
    omega_vec: np.ndarray
    alpha_vec: np.ndarray
    theta: float = 0.0
    gamma0: float = 0.0
    omega0: float = 0.0
    tau0: float = 0.0
    A_amp: float = 0.5
    B_amp: float = 0.5
    C1: complex = 1 + 0j
    C2: complex = 0j
    C3: complex = 0j
    C4: complex = 0j
    k_vec: np.ndarray = field(default_factory=lambda: np.zeros(3))
    A1: complex = 1 + 0j
    A2: complex = 0j
    rho_branch: RhoBranch = RhoBranch.GROWING_EXP
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("family_tag", FamilyTag(self.family_tag))
        set_("rho_branch", RhoBranch(self.rho_branch))
        for name in ("gamma_vec", "omega_vec", "alpha_vec", "k_vec"):
            set_(name, _vec(getattr(self, name)))
        for name in ("C1", "C2", "C3", "C4", "A1", "A2"):
            set_(name, _as_complex_constant(name, getattr(self, name)))
        for name in ("theta", "gamma0", "omega0", "tau0", "A_amp", "B_amp", "hbar", "mass"):
            set_(name, float(getattr(self, name)))
        if self.hbar <= 0 or self.mass <= 0:
            raise ValueError("hbar and mass must be positive")
        self._validate()

    # geometry and constraints
    def _validate(self):
        k, a, g, w = self.k_vec, self.alpha_vec, self.gamma_vec, self.omega_vec
        pairs = {"k.alpha": (k, a), "k.gamma": (k, g), "k.omega": (k, w),
                 "alpha.gamma": (a, g), "alpha.omega": (a, w)}
        for label, (u, v) in pairs.items():
            if abs(u @ v) > GEOM_TOL * max(np.linalg.norm(u) * np.linalg.norm(v), 1e-300):
                raise ConstraintViolation("orthogonality", f"{label} = {u @ v:.3e} is not zero")

        tag = self.family_tag
        if tag is FamilyTag.K1_ZERO:
            g2, w2 = g @ g, w @ w
            if w2 > g2 * (1 + GEOM_TOL):
                raise ConstraintViolation("gamma-omega gap", "|omega| > |gamma|")
            if self.rho_branch is not RhoBranch.GROWING_EXP:
                raise ConstraintViolation("rho branch", "kappa1 = 0 admits only the real-exponential rho")
            want = 2 * self.mass * self.complex_E / self.hbar ** 2 + (g2 + w2) / 2
            if abs(a @ a - want) > GEOM_TOL * max(want, 1.0):
                raise ConstraintViolation(
                    "alpha norm", f"|alpha|^2 = {a @ a:.12g}, expected 2mE/hbar^2 + (|gamma|^2+|omega|^2)/2 = {want:.12g}")
            if k @ k > 0 and np.linalg.norm(np.cross(g, w)) > GEOM_TOL * max(np.linalg.norm(g) * np.linalg.norm(w), 1e-300):
                raise ConstraintViolation("collinear phases", "gamma and omega must be parallel when phi is not constant")
            return

        if np.linalg.norm(g - w) > GEOM_TOL * max(np.linalg.norm(g), 1.0):
            raise ConstraintViolation("equal phase gradients", "cos W = 0 requires gamma == omega")
        if abs(np.cos(self.W)) > GEOM_TOL:
            raise ConstraintViolation("phase lock", f"cos W = {np.cos(self.W):.3e}, W = gamma0 - omega0 + tau0 must be pi/2 mod pi")
        if self.C3 != 0 or self.C4 != 0:
            raise ConstraintViolation("complex constants", "cos W = 0 families carry only C1, C2")
        if tag is FamilyTag.COSW_K0ZERO and abs(np.cos(2 * self.theta)) > GEOM_TOL:
            raise ConstraintViolation("mixing angle", "kappa0 = 0 requires theta = (n + 1/2) pi/2")

    # derived quantities
    @property
    def phi(self) -> PlaneWave:
        return PlaneWave(self.k_vec, self.A1, self.A2, self.hbar, self.mass)

    @property
    def complex_E(self) -> float:
        return self.hbar ** 2 * float(self.k_vec @ self.k_vec) / (2 * self.mass)

    @property
    def W(self) -> float:
        return self.gamma0 - self.omega0 + self.tau0

    @property
    def sinW(self) -> float:
        # exactly +-1 on the cos W = 0 families
        return float(np.sign(np.sin(self.W))) if self.family_tag is not FamilyTag.K1_ZERO else float(np.sin(self.W))

    @property
    def complex_energy(self) -> float:
        """Eigenvalue ``eps`` of ``H`` on the complex part ``phi rho e^{+-i Gamma}`` (cos W = 0 families)."""
        g2, a2 = self.gamma_vec @ self.gamma_vec, self.alpha_vec @ self.alpha_vec
        s = self.rho_branch.curvature_sign
        return self.complex_E + self.hbar ** 2 / (2 * self.mass) * (g2 - s * a2)

    @property
    def mixing_quaternion(self) -> Quaternion:
        """Constant ``cos(Theta) - i sin(W) sin(Theta) e^{i tau0} j`` of the cos W = 0 families."""
        return Quaternion(complex(np.cos(self.theta)),
                          -1j * self.sinW * np.sin(self.theta) * cexp(self.tau0))

    # field closures
    def rho(self, x):
        s = _dot(x, self.alpha_vec)
        if self.rho_branch is RhoBranch.GROWING_EXP:
            return self.A_amp * np.exp(s) + self.B_amp * np.exp(-s)
        if self.rho_branch is RhoBranch.TRIG:
            return self.A_amp * np.cos(s) + self.B_amp * np.sin(s)
        return self.A_amp + self.B_amp * s

    def Gamma(self, x):
        return _dot(x, self.gamma_vec) + self.gamma0

    def Omega(self, x):
        return _dot(x, self.omega_vec) + self.omega0

    def Theta(self, x):
        return np.full(np.shape(x)[:-1], self.theta)

    def wavefunction(self, x) -> Quaternion:
        x = np.asarray(x, dtype=float)
        amp = self.phi(x) * self.rho(x)
        G, O = self.Gamma(x), self.Omega(x)
        c, s = np.cos(self.theta), np.sin(self.theta)
        if self.family_tag is FamilyTag.K1_ZERO:
            z = np.zeros(np.shape(G), dtype=complex)
            zeta = np.zeros(np.shape(G), dtype=complex)
            # (cos e^{+-iG} + sin e^{+-iO} j) C = cos e^{+-iG} C + sin e^{+-iO} conj(C) j
            for C, sg, so in ((self.C1, 1, 1), (self.C2, 1, -1), (self.C3, -1, 1), (self.C4, -1, -1)):
                if C:
                    z = z + c * cexp(sg * G) * C
                    zeta = zeta + s * cexp(so * O) * np.conj(C)
            return Quaternion(amp * z, amp * zeta)
        f = amp * (self.C1 * cexp(G) + self.C2 * cexp(-G))
        Q = self.mixing_quaternion
        return Quaternion(f * Q.z, f * Q.zeta)

    __call__ = wavefunction

    def lambda_fields(self) -> "LambdaFields":
        return LambdaFields(self.rho, self.Theta, self.Gamma, self.Omega)

    def grid_scale(self) -> float:
        """Largest wavenumber carried by the family, for picking a grid spacing."""
        mags = [np.linalg.norm(v) for v in (self.k_vec, self.gamma_vec, self.omega_vec, self.alpha_vec)]
        m = max(mags)
        return m if m > 0 else 1.0


def build_family(fam: StationaryFamily) -> Callable[[np.ndarray], Quaternion]:
    return fam.wavefunction


def energy_of(fam: StationaryFamily) -> float:
    """Quaternionic energy of a family.

    ``K1_ZERO``: ``hbar^2 (|gamma|^2 - |omega|^2) / 4m``.
    ``COSW_K0``: ``cos(2 Theta) [E + hbar^2/2m (|gamma|^2 -+ |alpha|^2)]`` with ``-``
    for the exponential rho, ``+`` for the trigonometric one, none for linear.
    ``COSW_K0ZERO``: ``-(cot Theta / sin W) [E + ...]``, equal to ``kappa1 e^{-i tau0}``.
    """
    if fam.family_tag is FamilyTag.K1_ZERO:
        g, w = fam.gamma_vec, fam.omega_vec
        return fam.hbar ** 2 * float(g @ g - w @ w) / (4 * fam.mass)
    eps = fam.complex_energy
    if fam.family_tag is FamilyTag.COSW_K0:
        return float(np.cos(2 * fam.theta) * eps)
    return float(-eps / (np.tan(fam.theta) * fam.sinW))


def family_kappa(fam: StationaryFamily) -> SeparationConstant:
    """Separation constant the family solves ``H Phi = i Phi kappa`` with.

    For the cos W = 0 families ``kappa = -eps Q* i Q`` where ``Q`` is the
    mixing quaternion, which expands to
    ``kappa0 = -i eps cos 2Theta`` and ``kappa1 = -eps sin 2Theta sin W e^{i tau0}``.
    """
    if fam.family_tag is FamilyTag.K1_ZERO:
        return SeparationConstant(-1j * energy_of(fam), 0j)
    eps = fam.complex_energy
    th = fam.theta
    k0 = -1j * eps * np.cos(2 * th)
    if fam.family_tag is FamilyTag.COSW_K0ZERO:
        k0 = 0j
    return SeparationConstant(k0, -eps * np.sin(2 * th) * fam.sinW * cexp(fam.tau0))


def matching_lambda(fam: StationaryFamily, lambda0: Optional[Quaternion] = None) -> LambdaFamily:
    """Time factor whose ``hbar dLambda/dt Lambda*`` equals :func:`family_kappa`."""
    extra = {} if lambda0 is None else {"lambda0": lambda0}
    if fam.family_tag is FamilyTag.K1_ZERO:
        return LambdaFamily(LambdaKind.COMPLEX, energy_of(fam), hbar=fam.hbar, **extra)
    if fam.family_tag is FamilyTag.COSW_K0:
        # i e^{i tau} = -sin W e^{i tau0}  =>  tau = tau0 + sin W pi/2
        return LambdaFamily(LambdaKind.MIXED, fam.complex_energy, xi=fam.theta,
                            tau0=fam.tau0 + fam.sinW * np.pi / 2, hbar=fam.hbar, **extra)
    return LambdaFamily(LambdaKind.ROTATING, energy_of(fam), tau0=fam.tau0, hbar=fam.hbar, **extra)


_C_SIGNS = {"C1": (1, 1), "C2": (1, -1), "C3": (-1, 1), "C4": (-1, -1)}


def analytic_current(fam: StationaryFamily, x) -> np.ndarray:
    """Closed-form current ``rho^2 [j0 + hbar/m |phi|^2 (cos^2 T grad G + sin^2 T grad O)] |C|^2``.

    ``j0 = hbar/m Im(phi* grad phi)``.  Valid when a single constant ``C`` is
    nonzero; the other constants flip the signs of the phase gradients they carry.
    """
    active = [n for n in ("C1", "C2", "C3", "C4") if getattr(fam, n)]
    if len(active) != 1:
        raise ValueError("closed-form current needs exactly one nonzero constant C")
    name = active[0]
    sg, so = _C_SIGNS[name]
    C2 = abs(getattr(fam, name)) ** 2
    x = np.asarray(x, dtype=float)
    ph = fam.phi(x)
    j0 = np.imag(np.conj(ph)[..., None] * fam.phi.grad(x))
    if fam.family_tag is FamilyTag.K1_ZERO:
        c2, s2 = np.cos(fam.theta) ** 2, np.sin(fam.theta) ** 2
    else:
        # the cos W = 0 families carry C1 e^{i Gamma} + C2 e^{-i Gamma}
        c2, s2, sg = 1.0, 0.0, 1 if name == "C1" else -1
    phase = c2 * sg * fam.gamma_vec + s2 * so * fam.omega_vec
    k = fam.hbar / fam.mass
    return (fam.rho(x) ** 2 * C2)[..., None] * k * (j0 + (np.abs(ph) ** 2)[..., None] * phase)


# -- general separation residuals ---------------------------------------------

@dataclass(frozen=True)
class LambdaFields:
    """Real scalar closures making up ``lambda = rho (cos Theta e^{i Gamma} + sin Theta e^{i Omega} j)``."""

    rho: Callable
    theta: Callable
    gamma: Callable
    omega: Callable


_AXES = np.eye(3)


def _stencil(f: Callable, point: np.ndarray, h: float):
    """Value, 4th-order gradient and Laplacian of a scalar closure at ``point``."""
    offs = np.array([-2, -1, 1, 2], dtype=float)
    pts = point + h * offs[None, :, None] * _AXES[:, None, :]  # (3 axes, 4 offsets, 3)
    vals = np.asarray(f(pts))
    f0 = np.asarray(f(point[None, :]))[0]
    grad = (vals[:, 0] - 8 * vals[:, 1] + 8 * vals[:, 2] - vals[:, 3]) / (12 * h)
    lap = np.sum(-vals[:, 0] + 16 * vals[:, 1] - 30 * f0 + 16 * vals[:, 2] - vals[:, 3]) / (12 * h * h)
    return f0, grad, lap


@dataclass(frozen=True)
class SeparationDiagnostics:
    """Pieces of the separated equations at one point.

    The four residuals are the real and imaginary parts of the complex-slot
    and ``j``-slot equations (each divided by its own ``lambda`` component).
    ``None`` marks a residual sitting on a ``tan``/``cot`` pole of ``Theta``.
    """

    p_vec: np.ndarray
    q_vec: np.ndarray
    u_val: complex
    v_val: complex
    Z0: complex
    Z1: Optional[complex]
    Z2: Optional[complex]
    W: float
    residual_z_re: Optional[float]
    residual_zeta_re: Optional[float]
    residual_z_im: Optional[float]
    residual_zeta_im: Optional[float]

    @property
    def residuals(self) -> tuple:
        return (self.residual_z_re, self.residual_zeta_re, self.residual_z_im, self.residual_zeta_im)

    @property
    def indeterminate(self) -> list[str]:
        names = ("residual_z_re", "residual_zeta_re", "residual_z_im", "residual_zeta_im")
        return [n for n, r in zip(names, self.residuals) if r is None]

    def max_abs(self) -> float:
        vals = [abs(r) for r in self.residuals if r is not None]
        return max(vals) if vals else float("nan")


def _check_kappa(kappa: SeparationConstant) -> float:
    ik0 = 1j * complex(kappa.kappa0)
    if abs(ik0.imag) > 1e-12 * max(1.0, abs(ik0)):
        raise ValueError(f"i kappa0 must be real, got {ik0!r}")
    return ik0.real


def separation_diagnostics(fields: LambdaFields, phi, kappa: SeparationConstant, point, *,
                           E: Optional[float] = None, hbar: float = 1.0, mass: float = 1.0,
                           h: float = 1e-2) -> SeparationDiagnostics:
    """Evaluate the four real separated equations at ``point`` by finite differences.

    ``phi`` is a complex closure; its energy is taken from ``E`` or ``phi.energy``.
    """
    point = _vec(point)
    E = float(phi.energy if E is None else E)
    i_k0 = _check_kappa(kappa)
    k1 = abs(complex(kappa.kappa1))
    tau0 = float(np.angle(kappa.kappa1)) if k1 > 0 else 0.0
    cst = 2 * mass / hbar ** 2

    rho, grho, lrho = _stencil(fields.rho, point, h)
    th, gth, lth = _stencil(fields.theta, point, h)
    G, gG, lG = _stencil(fields.gamma, point, h)
    O, gO, lO = _stencil(fields.omega, point, h)
    ph, gph_re, _ = _stencil(lambda x: np.real(phi(x)), point, h)
    ph_im, gph_im, _ = _stencil(lambda x: np.imag(phi(x)), point, h)
    ph = ph + 1j * ph_im
    gph = gph_re + 1j * gph_im

    c, s = np.cos(th), np.sin(th)
    p = -s * gth + 1j * c * gG
    q = c * gth + 1j * s * gO
    u = -c * (gG @ gG + gth @ gth) - s * lth + 1j * (c * lG - 2 * s * (gG @ gth))
    v = -s * (gO @ gO + gth @ gth) + c * lth + 1j * (s * lO + 2 * c * (gO @ gth))
    Z0 = (lrho + 2 * (gph @ grho) / ph) / rho
    grad_rp = ph * grho + rho * gph
    W = float(G - O + tau0)
    sW, cW = np.sin(W), np.cos(W)

    Z1 = Z2 = None
    r_zr = r_zi = r_wr = r_wi = None
    if abs(c) > POLE_TOL:
        Z1 = complex(2 / (rho * ph) * (grad_rp @ p) / c)
        t = s / c
        r_zr = float(np.real(Z0 + Z1) - gG @ gG - gth @ gth - t * lth - cst * (E - i_k0 + k1 * t * sW))
        r_zi = float(np.imag(Z0 + Z1) + lG - 2 * t * (gth @ gG) - cst * k1 * t * cW)
    if abs(s) > POLE_TOL:
        Z2 = complex(2 / (rho * ph) * (grad_rp @ q) / s)
        ct = c / s
        r_wr = float(np.real(Z0 + Z2) - gO @ gO - gth @ gth + ct * lth - cst * (E + i_k0 + k1 * ct * sW))
        r_wi = float(np.imag(Z0 + Z2) + lO + 2 * ct * (gth @ gO) + cst * k1 * ct * cW)

    return SeparationDiagnostics(p, q, complex(u), complex(v), complex(Z0), Z1, Z2, W,
                                 r_zr, r_wr, r_zi, r_wi)


def family_diagnostics(fam: StationaryFamily, point, h: Optional[float] = None) -> SeparationDiagnostics:
    h = 1e-2 / fam.grid_scale() if h is None else h
    return separation_diagnostics(fam.lambda_fields(), fam.phi, family_kappa(fam), point,
                                  hbar=fam.hbar, mass=fam.mass, h=h)


# -- constant-phase case with varying Theta -----------------------------------

@dataclass(frozen=True)
class StaticPhaseVerdict:
    """Residuals of the reduced pair obtained when ``Gamma`` and ``Omega`` are constant."""

    amplitude_residual: float   # lap(rho)/rho - |grad Theta|^2 - 2m/hbar^2 (E - i k0 cos 2T + |k1| sinW sin 2T)
    mixing_residual: float      # lap(Theta) - 2m/hbar^2 (i k0 sin 2T + |k1| sinW cos 2T)
    lock_residual: float        # |k1| cos W
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.amplitude_residual, self.mixing_residual, self.lock_residual) < self.tol


def check_static_phase(theta_field: Callable, kappa: SeparationConstant, rho_field: Callable, points, *,
                       E: float = 0.0, gamma0: float = 0.0, omega0: float = 0.0,
                       hbar: float = 1.0, mass: float = 1.0, h: float = 1e-2,
                       tol: float = 1e-7) -> StaticPhaseVerdict:
    """Test a varying-``Theta`` candidate with ``grad Gamma = grad Omega = 0``.

    Under mutual orthogonality of ``grad phi``, ``grad rho`` and ``grad Theta``
    only constant ``Theta`` survives, except the zero-energy case ``kappa = 0``
    with linear ``Theta``; the residual maxima over ``points`` show which.
    """
    i_k0 = _check_kappa(kappa)
    k1 = abs(complex(kappa.kappa1))
    tau0 = float(np.angle(kappa.kappa1)) if k1 > 0 else 0.0
    W = gamma0 - omega0 + tau0
    cst = 2 * mass / hbar ** 2
    amp = mix = 0.0
    for pt in np.atleast_2d(np.asarray(points, dtype=float)):
        rho, _, lrho = _stencil(rho_field, pt, h)
        th, gth, lth = _stencil(theta_field, pt, h)
        rhs1 = cst * (E - i_k0 * np.cos(2 * th) + k1 * np.sin(W) * np.sin(2 * th))
        rhs2 = cst * (i_k0 * np.sin(2 * th) + k1 * np.sin(W) * np.cos(2 * th))
        amp = max(amp, abs(lrho / rho - gth @ gth - rhs1))
        mix = max(mix, abs(lth - rhs2))
    return StaticPhaseVerdict(float(amp), float(mix), float(k1 * abs(np.cos(W))), tol)


# -- random draws -------------------------------------------------------------

def random_frame(rng: np.random.Generator) -> np.ndarray:
    """Random orthonormal frame; rows are the axes."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    return (q * np.sign(np.diag(r))).T


def random_family(rng: np.random.Generator, tag: FamilyTag | str, *, with_phi: Optional[bool] = None,
                  frame: Optional[np.ndarray] = None, scale: float = 1.0) -> StationaryFamily:
    """Draw a valid family; ``k``, ``alpha`` and ``gamma`` lie along the frame's rows."""
    tag = FamilyTag(tag)
    e1, e2, e3 = random_frame(rng) if frame is None else frame
    with_phi = bool(rng.integers(2)) if with_phi is None else with_phi
    u = lambda lo, hi: float(rng.uniform(lo, hi)) * scale  # noqa: E731
    cplx = lambda: complex(rng.normal(), rng.normal())  # noqa: E731
    k = u(0.2, 1.0) * e1 if with_phi else np.zeros(3)
    common = dict(k_vec=k, A1=cplx(), A2=cplx() if rng.integers(2) else 0j,
                  A_amp=float(rng.uniform(0.2, 1.0)), B_amp=float(rng.uniform(0.2, 1.0)),
                  gamma0=float(rng.uniform(0, 2 * np.pi)))
    if tag is FamilyTag.K1_ZERO:
        g = u(0.3, 1.5)
        w = float(rng.uniform(0, 1)) * g * (1 if rng.integers(2) else -1)
        a = np.sqrt(k @ k + (g * g + w * w) / 2)
        return StationaryFamily(tag, g * e3, w * e3, a * e2, theta=float(rng.uniform(0, np.pi)),
                                omega0=float(rng.uniform(0, 2 * np.pi)),
                                C1=cplx(), C2=cplx(), C3=cplx(), C4=cplx(), **common)
    branch = RhoBranch(rng.choice([b.value for b in RhoBranch]))
    g = u(0.0, 1.5)
    a = u(0.2, 1.0)
    tau0 = float(rng.uniform(0, 2 * np.pi))
    W = np.pi / 2 if rng.integers(2) else -np.pi / 2
    if tag is FamilyTag.COSW_K0:
        theta = float(rng.uniform(0, np.pi))
    else:
        theta = (int(rng.integers(4)) + 0.5) * np.pi / 2
    return StationaryFamily(tag, g * e3, g * e3, a * e2, theta=theta,
                            omega0=common["gamma0"] + tau0 - W, tau0=tau0,
                            C1=cplx(), C2=cplx() if rng.integers(2) else 0j, rho_branch=branch,
                            **common)
