"""Quaternions in symplectic form ``q = z + zeta j`` with complex ``z, zeta``.

The two complex slots may be Python scalars or numpy arrays of a common
shape, so the same type carries single values and sampled fields.  The
only rule needed to multiply is ``j z = conj(z) j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Any

import numpy as np


def _coerce(other: Any) -> "Quaternion | None":
    if isinstance(other, Quaternion):
        return other
    if isinstance(other, np.ndarray):
        return Quaternion(other, np.zeros(other.shape, dtype=complex))
    if isinstance(other, (Number, np.number)):
        return Quaternion(complex(other), 0j)
    return None


def _scalar(x):
    x = np.asarray(x)
    return complex(x) if x.ndim == 0 else x


@dataclass(frozen=True, eq=False)
class Quaternion:
    """Value ``x0 + x1 i + x2 j + x3 k`` stored as ``(z, zeta)``.

    ``z = x0 + x1 i`` and ``zeta = x2 + x3 i``, since ``(x2 + x3 i) j = x2 j + x3 k``.
    """

    z: Any = 0j
    zeta: Any = 0j

    # keeps ndarray.__mul__ from broadcasting over a Quaternion operand
    __array_ufunc__ = None

    @classmethod
    def from_components(cls, x0, x1=0.0, x2=0.0, x3=0.0) -> "Quaternion":
        return cls(_scalar(np.add(x0, 1j * np.asarray(x1))),
                   _scalar(np.add(x2, 1j * np.asarray(x3))))

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        """Build from an array whose last axis holds ``(x0, x1, x2, x3)``."""
        arr = np.asarray(arr, dtype=float)
        return cls(arr[..., 0] + 1j * arr[..., 1], arr[..., 2] + 1j * arr[..., 3])

    def components(self) -> tuple:
        z, w = self.z, self.zeta
        return (np.real(z), np.imag(z), np.real(w), np.imag(w))

    def as_array(self) -> np.ndarray:
        """Four real components stacked on a trailing axis."""
        return np.stack(np.broadcast_arrays(*self.components()), axis=-1).astype(float)

    @property
    def shape(self) -> tuple:
        return np.broadcast(np.asarray(self.z), np.asarray(self.zeta)).shape

    def __getitem__(self, index) -> "Quaternion":
        z, w = np.broadcast_arrays(np.asarray(self.z), np.asarray(self.zeta))
        return Quaternion(z[index], w[index])

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.z + o.z, self.zeta + o.zeta)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.z - o.z, self.zeta - o.zeta)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Quaternion(-self.z, -self.zeta)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return mul(self, o)

    def __rmul__(self, other):
        # other * self: a complex number acting from the LEFT
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return mul(o, self)

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, inverse(other))
        # real divisor only; a complex one would be ambiguous about its side
        if np.iscomplexobj(other):
            raise TypeError("divide by a complex number via explicit left/right multiplication")
        return Quaternion(self.z / other, self.zeta / other)

    def conj(self) -> "Quaternion":
        return conj(self)

    def norm(self):
        return norm(self)

    def norm2(self):
        return np.abs(self.z) ** 2 + np.abs(self.zeta) ** 2

    def inverse(self) -> "Quaternion":
        return inverse(self)

    def lmul_i(self) -> "Quaternion":
        return lmul_i(self)

    def rmul_i(self) -> "Quaternion":
        return rmul_i(self)

    def allclose(self, other, rtol=1e-13, atol=1e-13) -> bool:
        o = _coerce(other)
        return bool(np.allclose(self.z, o.z, rtol=rtol, atol=atol)
                    and np.allclose(self.zeta, o.zeta, rtol=rtol, atol=atol))

    def __repr__(self) -> str:
        if self.shape == ():
            x0, x1, x2, x3 = (float(c) for c in self.components())
            return f"Quaternion({x0:.6g} {x1:+.6g}i {x2:+.6g}j {x3:+.6g}k)"
        return f"Quaternion(shape={self.shape})"


ONE = Quaternion(1 + 0j, 0j)
I = Quaternion(1j, 0j)
J = Quaternion(0j, 1 + 0j)
K = Quaternion(0j, 1j)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``(z1 + w1 j)(z2 + w2 j) = (z1 z2 - w1 w2*) + (z1 w2 + w1 z2*) j``."""
    return Quaternion(a.z * b.z - a.zeta * np.conj(b.zeta),
                      a.z * b.zeta + a.zeta * np.conj(b.z))


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(np.conj(q.z), -q.zeta)


def norm(q: Quaternion):
    return np.sqrt(np.abs(q.z) ** 2 + np.abs(q.zeta) ** 2)


def inverse(q: Quaternion) -> Quaternion:
    n2 = q.norm2()
    if np.any(n2 == 0):
        raise ZeroDivisionError("zero quaternion has no inverse")
    return Quaternion(np.conj(q.z) / n2, -q.zeta / n2)


def lmul_i(q: Quaternion) -> Quaternion:
    """``i q``: both symplectic slots pick up a factor ``i``."""
    return Quaternion(1j * q.z, 1j * q.zeta)


def rmul_i(q: Quaternion) -> Quaternion:
    """``q i``: since ``j i = -i j`` the ``zeta`` slot picks up ``-i``."""
    return Quaternion(1j * q.z, -1j * q.zeta)


def cexp(x) -> complex:
    return np.exp(1j * x)


def build_K(theta, gamma, omega) -> Quaternion:
    """Unit quaternion ``cos(theta) e^{i gamma} + sin(theta) e^{i omega} j``."""
    return Quaternion(np.cos(theta) * cexp(gamma), np.sin(theta) * cexp(omega))


@dataclass(frozen=True)
class UnitQuaternionK:
    theta: float
    gamma_phase: float
    omega_phase: float

    def quaternion(self) -> Quaternion:
        return build_K(self.theta, self.gamma_phase, self.omega_phase)
