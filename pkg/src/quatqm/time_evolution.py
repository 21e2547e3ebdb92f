"""Unitary time factors ``Lambda(t)`` with ``dLambda/dt Lambda* = kappa / hbar``.

Three closed-form kinds are provided:

``COMPLEX``
    ``exp(-i E t/hbar) Lambda0``; the ordinary complex phase.
``MIXED``
    ``{cos xi exp(-i E t/hbar) + sin xi exp(i(E t/hbar + tau0)) j} Lambda0``;
    the constant mixing angle ``xi`` feeds into the eigenvalue.
``ROTATING``
    ``[cos(E t/hbar) e^{-iX} + sin(E t/hbar) e^{i(X + tau0)} j] Lambda0``;
    rotates between the complex and the ``j`` slot and has no complex limit.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .quaternion import ONE, Quaternion, cexp, conj, mul, norm

UNIT_TOL = 1e-12


class LambdaKind(str, enum.Enum):
    COMPLEX = "complex"
    MIXED = "mixed"
    ROTATING = "rotating"


@dataclass(frozen=True)
class SeparationConstant:
    """``kappa = kappa0 + kappa1 j`` in energy units."""

    kappa0: complex = 0j
    kappa1: complex = 0j

    def quaternion(self) -> Quaternion:
        return Quaternion(complex(self.kappa0), complex(self.kappa1))

    @property
    def tau0(self) -> float:
        """Phase of ``kappa1``, mapped to ``[0, 2 pi)``."""
        return float(np.angle(self.kappa1)) % (2 * np.pi)

    @property
    def quaternionic_energy(self) -> float:
        """``i kappa0``, real for every stationary family."""
        return float(np.real(1j * self.kappa0))


@dataclass(frozen=True)
class LambdaFamily:
    kind: LambdaKind
    energy_E: float
    xi: float = 0.0
    X0: float = 0.0
    tau0: float = 0.0
    lambda0: Quaternion = field(default=ONE)
    hbar: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", LambdaKind(self.kind))
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        if abs(float(norm(self.lambda0)) - 1.0) > UNIT_TOL:
            raise ValueError(f"lambda0 must be a unit quaternion, |lambda0| = {float(norm(self.lambda0))!r}")

    @property
    def frequency(self) -> float:
        return self.energy_E / self.hbar


def eval_lambda(fam: LambdaFamily, t) -> Quaternion:
    """``Lambda(t)``; ``t`` may be a scalar or an array."""
    w = fam.frequency * np.asarray(t, dtype=float)
    if fam.kind is LambdaKind.COMPLEX:
        core = Quaternion(cexp(-w), np.zeros_like(w, dtype=complex))
    elif fam.kind is LambdaKind.MIXED:
        core = Quaternion(np.cos(fam.xi) * cexp(-w), np.sin(fam.xi) * cexp(w + fam.tau0))
    else:
        core = Quaternion(np.cos(w) * cexp(-fam.X0), np.sin(w) * cexp(fam.X0 + fam.tau0))
    return mul(core, fam.lambda0)


def kappa_of(fam: LambdaFamily) -> SeparationConstant:
    """Closed form of ``hbar dLambda/dt Lambda*``."""
    E = fam.energy_E
    if fam.kind is LambdaKind.COMPLEX:
        return SeparationConstant(-1j * E, 0j)
    if fam.kind is LambdaKind.MIXED:
        return SeparationConstant(-1j * E * np.cos(2 * fam.xi),
                                  1j * E * np.sin(2 * fam.xi) * cexp(fam.tau0))
    return SeparationConstant(0j, E * cexp(fam.tau0))


def default_dt(fam: LambdaFamily) -> float:
    return 1e-5 * (fam.hbar / abs(fam.energy_E)) if fam.energy_E else 1e-5


def verify_separation(fam: LambdaFamily, t_samples: Sequence[float], dt: float | None = None) -> float:
    """Max over ``t_samples`` of ``|D Lambda(t) Lambda*(t) - kappa/hbar|``.

    ``D`` is the second-order central difference with step ``dt``.
    """
    dt = default_dt(fam) if dt is None else dt
    if dt <= 0:
        raise ValueError("dt must be positive")
    t = np.asarray(t_samples, dtype=float)
    if not np.all(np.isfinite(t)):
        raise ValueError("time samples must be finite")
    if t.size == 0:
        return 0.0
    up, down = eval_lambda(fam, t + dt), eval_lambda(fam, t - dt)
    deriv = Quaternion((up.z - down.z) / (2 * dt), (up.zeta - down.zeta) / (2 * dt))
    got = mul(deriv, conj(eval_lambda(fam, t)))
    k = kappa_of(fam)
    err = norm(got - Quaternion(k.kappa0 / fam.hbar, k.kappa1 / fam.hbar))
    return float(np.max(err))


def schematic_prefactor(fam: LambdaFamily) -> Quaternion:
    """Constant ``L1`` with ``Lambda(t) = L1 exp(-i E t/hbar) Lambda0``, solved at ``t = 0``."""
    return mul(eval_lambda(fam, 0.0), conj(fam.lambda0))
