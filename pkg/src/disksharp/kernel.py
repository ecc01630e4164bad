"""Poisson kernel of the unit disk, its Wirtinger derivatives, and the
Moebius change of variables that turns kernel integrals into |cos|-weighted
integrals.

Functions are vectorized in the boundary angle. Points of the disk are
accepted either as :class:`DiskPoint` or as plain complex numbers.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError

__all__ = [
    "DiskPoint",
    "Direction",
    "normalize_angle",
    "poisson",
    "d_poisson",
    "dbar_poisson",
    "directional_poisson",
    "mobius_substitution",
    "transported_kernel",
]


def normalize_angle(x):
    """Map angles to [-pi, pi)."""
    return np.mod(np.asarray(x, dtype=float) + math.pi, 2.0 * math.pi) - math.pi


@dataclass(frozen=True)
class DiskPoint:
    r: float
    alpha: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.r < 1.0:
            raise DomainError(f"disk point needs 0 <= r < 1, got r={self.r}")
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "alpha", float(normalize_angle(self.alpha)))

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        return cls(abs(z), cmath.phase(z))

    @property
    def z(self) -> complex:
        return cmath.rect(self.r, self.alpha)


@dataclass(frozen=True)
class Direction:
    """Unit vector e^{i tau}."""

    tau: float

    def __post_init__(self):
        object.__setattr__(self, "tau", float(normalize_angle(self.tau)))

    @classmethod
    def radial(cls, z: DiskPoint) -> "Direction":
        return cls(z.alpha)

    @classmethod
    def tangential(cls, z: DiskPoint) -> "Direction":
        return cls(z.alpha + math.pi / 2)

    @property
    def unit(self) -> complex:
        return cmath.exp(1j * self.tau)


PointLike = Union[DiskPoint, complex, float]


def _as_complex(z: PointLike):
    if isinstance(z, DiskPoint):
        return z.z
    zc = np.asarray(z, dtype=complex)
    if np.any(np.abs(zc) >= 1.0):
        raise DomainError("point outside the open unit disk")
    return zc if zc.ndim else complex(zc)


def poisson(z: PointLike, theta):
    """(1 - |z|^2) / |z - e^{i theta}|^2."""
    z = _as_complex(z)
    e = np.exp(1j * np.asarray(theta, dtype=float))
    return (1.0 - np.abs(z) ** 2) / np.abs(z - e) ** 2


def d_poisson(z: PointLike, theta):
    """z-derivative of the Poisson kernel: e^{i theta} / (z - e^{i theta})^2."""
    z = _as_complex(z)
    e = np.exp(1j * np.asarray(theta, dtype=float))
    return e / (z - e) ** 2


def dbar_poisson(z: PointLike, theta):
    """conj(z)-derivative; the complex conjugate of :func:`d_poisson`."""
    z = _as_complex(z)
    e = np.exp(-1j * np.asarray(theta, dtype=float))
    return e / (np.conj(z) - e) ** 2


def directional_poisson(z: PointLike, theta, tau: float):
    """Derivative of P(., e^{i theta}) at z in the direction e^{i tau}."""
    return 2.0 * np.real(np.exp(1j * tau) * d_poisson(z, theta))


def mobius_substitution(r: float, s):
    """Change of variables e^{i theta} = (r - e^{is}) / (1 - r e^{is}).

    Returns ``(theta, dtheta/ds)`` with theta normalized to [-pi, pi) and
    dtheta/ds = (1 - r^2) / (1 + r^2 - 2 r cos s).
    """
    if not 0.0 <= r < 1.0:
        raise DomainError(f"need 0 <= r < 1, got {r}")
    s = np.asarray(s, dtype=float)
    e = np.exp(1j * s)
    theta = normalize_angle(np.angle((r - e) / (1.0 - r * e)))
    jac = (1.0 - r * r) / (1.0 + r * r - 2.0 * r * np.cos(s))
    return theta, jac


def transported_kernel(r: float, s, shift: float):
    """Re(e^{i(theta + shift)} / (r - e^{i theta})^2) written in the variable s.

    Under the substitution of :func:`mobius_substitution` this equals
    -(1 + r^2 - 2 r cos s) cos(s - shift) / (1 - r^2)^2, where ``shift``
    plays the role of tau - alpha.
    """
    s = np.asarray(s, dtype=float)
    return -(1.0 + r * r - 2.0 * r * np.cos(s)) * np.cos(s - shift) / (1.0 - r * r) ** 2
