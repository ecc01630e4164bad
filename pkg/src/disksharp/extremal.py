"""Extremal boundary families certifying sharpness of the global constants.

Each family lives on the circle through the Moebius reparametrization
e^{it} = (rho - e^{is}) / (1 - rho e^{is}); as rho -> 1 the data
concentrate near t = 0 and the normalized derivative-to-norm ratio at
z = rho tends to the sharp constant. Everything is integrated in the
variable s, where the data are smooth away from a few kinks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .constants import Exponent, global_branch, global_constant, wirtinger_constant_global
from .errors import DomainError
from .hardy import HarmonicExtension, ParametrizedBoundary, lp_norm
from .kernel import d_poisson, dbar_poisson, mobius_substitution

__all__ = [
    "GradientExtremal",
    "WirtingerExtremal",
    "gradient_extremal",
    "wirtinger_extremal",
    "gradient_sharpness_ratio",
    "wirtinger_sharpness_ratio",
    "extremal_norm_power",
    "norm_power_limit",
    "richardson_limit",
    "SharpnessStudy",
    "sharpness_study",
    "norm_limit_study",
    "DEFAULT_RHOS",
]

DEFAULT_RHOS = (0.9, 0.99, 0.999)


def _check_rho(rho: float) -> float:
    rho = float(rho)
    if not 0.0 < rho < 1.0:
        raise DomainError(f"need 0 < rho < 1, got {rho}")
    return rho


class _MoebiusFamily(ParametrizedBoundary):
    def __init__(self, rho: float, e: Exponent):
        self.rho = _check_rho(rho)
        self.exponent = Exponent.parse(e)

    @property
    def scale(self) -> float:
        # (1 - rho^2)^{-1/p}
        p = self.exponent.p
        return 1.0 if math.isinf(p) else (1.0 - self.rho**2) ** (-1.0 / p)

    def theta_of_s(self, s):
        return mobius_substitution(self.rho, s)

    def s_of_theta(self, theta):
        # the substitution is an involution
        return mobius_substitution(self.rho, theta)[0]

    def kinks_s(self):
        return [0.0, math.pi / 2, math.pi, 3 * math.pi / 2]


class GradientExtremal(_MoebiusFamily):
    """f(e^{it}) = (1 - rho^2)^{-1/p} |g(s) (1 - cos s)|^{q-1} sign(g(s)).

    g = cos for the radial family (p < 2) and g = sin for the tangential one
    (p >= 2); the matching derivative direction at z = rho is 1 resp. i.
    """

    tag = "gradient"

    def __init__(self, rho: float, e, branch: str | None = None):
        super().__init__(rho, e)
        self.branch = branch or global_branch(self.exponent)
        if self.branch not in ("cos", "sin"):
            raise DomainError(f"unknown branch {self.branch!r}")

    @property
    def is_real(self):
        return True

    @property
    def direction(self) -> float:
        return 0.0 if self.branch == "cos" else math.pi / 2

    @property
    def params(self):
        return {"rho": self.rho, "p": str(self.exponent), "branch": self.branch}

    def values_at_s(self, s):
        s = np.asarray(s, dtype=float)
        g = np.cos(s) if self.branch == "cos" else np.sin(s)
        q = self.exponent.q
        return self.scale * np.abs(g * (1.0 - np.cos(s))) ** (q - 1.0) * np.sign(g)


class WirtingerExtremal(_MoebiusFamily):
    """f(e^{it}) = (1 - rho^2)^{-1/p} A(s) e^{+-is}.

    ``profile="holder"`` uses A = (1 - cos s)^{q-1}, the Hoelder-extremal
    amplitude for the dw (orientation +1) and dbar w (orientation -1)
    kernels. ``profile="cosine"`` uses A = |cos s (1 - cos s)|^{q-1}, the
    amplitude of the gradient family; its ratio converges to a value strictly
    below the Wirtinger constant (about 0.508 against 0.564 at p = 2).
    """

    tag = "wirtinger"

    def __init__(self, rho: float, e, orientation: int = 1, profile: str = "holder"):
        super().__init__(rho, e)
        if orientation not in (1, -1):
            raise DomainError("orientation must be +1 or -1")
        if profile not in ("holder", "cosine"):
            raise DomainError(f"unknown profile {profile!r}")
        self.orientation = orientation
        self.profile = profile

    @property
    def params(self):
        return {"rho": self.rho, "p": str(self.exponent), "orientation": self.orientation, "profile": self.profile}

    def values_at_s(self, s):
        s = np.asarray(s, dtype=float)
        q = self.exponent.q
        amp = 1.0 - np.cos(s)
        if self.profile == "cosine":
            amp = np.abs(np.cos(s)) * amp
        return self.scale * amp ** (q - 1.0) * np.exp(1j * self.orientation * s)


def gradient_extremal(rho: float, e, branch: str | None = None) -> GradientExtremal:
    return GradientExtremal(rho, e, branch)


def wirtinger_extremal(rho: float, e, orientation: int = 1, profile: str = "holder") -> WirtingerExtremal:
    return WirtingerExtremal(rho, e, orientation, profile)


def _normalizer(rho: float, e: Exponent) -> float:
    # (1 - rho^2)^{1 + 1/p}
    return (1.0 - rho**2) ** (1.0 + (0.0 if e.is_infinite else 1.0 / e.p))


def gradient_sharpness_ratio(e, rho: float, tol: float | None = None, branch: str | None = None) -> float:
    """(1 - rho^2)^{1+1/p} |Dw_rho(rho) l| / ||f_rho||_p, l = 1 (cos) or i (sin)."""
    e = Exponent.parse(e)
    f = GradientExtremal(rho, e, branch)
    d = HarmonicExtension(f, tol).derivative(f.rho)
    num = _normalizer(f.rho, e) * abs(d.apply(f.direction))
    return num / lp_norm(f, e, tol)


def wirtinger_sharpness_ratio(
    e, rho: float, orientation: int = 1, tol: float | None = None, profile: str = "holder"
) -> float:
    """(1 - rho^2)^{1+1/p} |dw(rho)| / ||f||_p (orientation +1), or |dbar w| (-1)."""
    e = Exponent.parse(e)
    f = WirtingerExtremal(rho, e, orientation, profile)
    kernel = d_poisson if orientation == 1 else dbar_poisson
    z = f.rho
    der = f.boundary_integral(lambda th, v: kernel(z, th) * v, tol).value / (2.0 * math.pi)
    return _normalizer(f.rho, e) * abs(der) / lp_norm(f, e, tol)


def extremal_norm_power(e, rho: float, tol: float | None = None, branch: str | None = None) -> float:
    """||f_rho||_p^p for the gradient family."""
    e = Exponent.parse(e)
    if e.is_infinite:
        raise DomainError("norm power is defined for finite p")
    return lp_norm(GradientExtremal(rho, e, branch), e, tol) ** e.p


def norm_power_limit(e) -> float:
    """Limit of ||f_rho||_p^p as rho -> 1: (pi/2)^q C_p^q."""
    e = Exponent.parse(e)
    q = e.q
    return (math.pi / 2.0) ** q * global_constant(e).value ** q


def richardson_limit(xs: Sequence[float], values: Sequence[float], degree: int = 1) -> float:
    """Extrapolate values(x) to x = 0 with a polynomial through the last degree+1 points."""
    xs = np.asarray(xs, dtype=float)[-(degree + 1):]
    ys = np.asarray(values, dtype=float)[-(degree + 1):]
    if xs.size < degree + 1:
        raise DomainError(f"need {degree + 1} points for degree {degree}")
    # Neville's scheme evaluated at 0
    p = ys.copy()
    n = xs.size
    for k in range(1, n):
        for i in range(n - k):
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i])
    return float(p[0])


@dataclass(frozen=True)
class SharpnessStudy:
    kind: str
    p: str
    rhos: tuple[float, ...]
    ratios: tuple[float, ...]
    extrapolated: float
    target: float

    @property
    def relative_error(self) -> float:
        return abs(self.extrapolated - self.target) / self.target

    @property
    def raw_relative_error(self) -> float:
        return abs(self.ratios[-1] - self.target) / self.target

    @property
    def monotone(self) -> bool:
        return bool(np.all(np.diff(self.ratios) >= 0))

    @property
    def bounded(self) -> bool:
        """No ratio exceeds the constant (beyond 1e-8 relative)."""
        return bool(max(self.ratios) <= self.target * (1 + 1e-8))

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "rhos": list(self.rhos),
            "ratios": list(self.ratios),
            "extrapolated": self.extrapolated,
            "target": self.target,
            "relative_error": self.relative_error,
            "raw_relative_error": self.raw_relative_error,
            "monotone": self.monotone,
        }


def sharpness_study(
    e, kind: str = "gradient", rhos: Sequence[float] = DEFAULT_RHOS, degree: int = 1, tol: float | None = None
) -> SharpnessStudy:
    """Ratios along a rho ladder, extrapolated linearly in 1 - rho^2 to rho = 1."""
    e = Exponent.parse(e)
    if kind == "gradient":
        ratios = [gradient_sharpness_ratio(e, r, tol) for r in rhos]
        target = global_constant(e).value
    elif kind == "wirtinger":
        ratios = [wirtinger_sharpness_ratio(e, r, 1, tol) for r in rhos]
        target = wirtinger_constant_global(e).value
    else:
        raise DomainError(f"unknown study kind {kind!r}")
    xs = [1.0 - r * r for r in rhos]
    return SharpnessStudy(kind, str(e), tuple(rhos), tuple(ratios), richardson_limit(xs, ratios, degree), target)


def norm_limit_study(e, rhos: Sequence[float] = DEFAULT_RHOS, degree: int = 1, tol: float | None = None) -> SharpnessStudy:
    """||f_rho||_p^p along the ladder against its limit (pi/2)^q C_p^q."""
    e = Exponent.parse(e)
    vals = [extremal_norm_power(e, r, tol) for r in rhos]
    xs = [1.0 - r * r for r in rhos]
    return SharpnessStudy("norm-power", str(e), tuple(rhos), tuple(vals), richardson_limit(xs, vals, degree), norm_power_limit(e))
