"""Boundary functions on the circle, their Poisson extensions, L^p norms and
Bloch constants.

Norm convention: boundary norms are UNNORMALIZED,

    ||f||_p = (int_0^{2pi} |f(e^{i theta})|^p dtheta)^{1/p},

so that f = cos(theta), p = 2, z = 0 is an equality case of the gradient
estimate with C_2(0) = 1/sqrt(pi). The h^p norm is the supremum over
0 < r < 1 of the same unnormalized means of the dilations w(r e^{i theta}).
"""
from __future__ import annotations

import abc
import functools
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .constants import Exponent
from .errors import DomainError
from .kernel import DiskPoint, d_poisson, dbar_poisson, poisson
from .quadrature import TWO_PI, KinkSet, QuadResult, default_tol, integrate_periodic

__all__ = [
    "BoundaryFunction",
    "TrigPoly",
    "Sampled",
    "ParametrizedBoundary",
    "HarmonicExtension",
    "DerivativePair",
    "HardyNorm",
    "BlochEstimate",
    "lp_norm",
    "hardy_norm",
    "bloch_constant",
    "boundary_to_json",
    "boundary_from_json",
    "DEFAULT_LADDER",
]

DEFAULT_LADDER = (0.5, 0.9, 0.99, 0.999)

BoundaryIntegrand = Callable[[np.ndarray, np.ndarray], np.ndarray]


class BoundaryFunction(abc.ABC):
    """A function on the unit circle, parametrized by the angle theta."""

    @abc.abstractmethod
    def __call__(self, theta) -> np.ndarray:
        ...

    @abc.abstractmethod
    def boundary_integral(self, func: BoundaryIntegrand, tol: float | None = None) -> QuadResult:
        """int_0^{2pi} func(theta, f(theta)) dtheta."""

    @property
    def is_real(self) -> bool:
        return False

    def sup_abs(self, grid: int = 4096) -> float:
        """sup |f| from a dense grid refined around the largest samples."""
        th = np.linspace(0.0, TWO_PI, grid, endpoint=False)
        vals = np.abs(self(th))
        best = float(vals.max())
        h = TWO_PI / grid
        for i in np.argsort(vals)[-4:]:
            res = optimize.minimize_scalar(
                lambda t: -float(np.abs(self(np.array([t])))[0]),
                bounds=(th[i] - h, th[i] + h),
                method="bounded",
                options={"xatol": 1e-12},
            )
            best = max(best, -float(res.fun))
        return best


class TrigPoly(BoundaryFunction):
    """f(theta) = sum_{k=-N}^{N} c_k e^{i k theta}."""

    def __init__(self, coeffs: Sequence[complex], k_min: int | None = None):
        c = np.asarray(coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise DomainError("a trigonometric polynomial needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise DomainError("coefficients must be finite")
        if k_min is None:
            if c.size % 2 == 0:
                raise DomainError("without k_min the coefficient list must have odd length 2N+1")
            k_min = -(c.size // 2)
        k_max = k_min + c.size - 1
        n = max(-k_min, k_max, 0)
        full = np.zeros(2 * n + 1, dtype=complex)
        full[k_min + n : k_max + n + 1] = c
        self.coeffs = full
        self.coeffs.setflags(write=False)
        self._real = bool(np.allclose(full, np.conj(full[::-1]), rtol=0, atol=1e-15))

    @classmethod
    def from_dict(cls, coeffs: dict[int, complex]) -> "TrigPoly":
        n = max((abs(k) for k in coeffs), default=0)
        c = np.zeros(2 * n + 1, dtype=complex)
        for k, v in coeffs.items():
            c[k + n] += v
        return cls(c)

    @property
    def degree(self) -> int:
        return self.coeffs.size // 2

    @property
    def ks(self) -> np.ndarray:
        return np.arange(-self.degree, self.degree + 1)

    def coefficient(self, k: int) -> complex:
        n = self.degree
        return complex(self.coeffs[k + n]) if -n <= k <= n else 0.0j

    @property
    def is_real(self) -> bool:
        return self._real

    def __call__(self, theta):
        th = np.asarray(theta, dtype=float)
        out = np.exp(1j * np.multiply.outer(th, self.ks)) @ self.coeffs
        return out.real if self.is_real else out

    def __repr__(self):
        return f"TrigPoly(degree={self.degree})"

    def dilate(self, r: float) -> "TrigPoly":
        return TrigPoly(self.coeffs * float(r) ** np.abs(self.ks))

    def analytic_part(self) -> "TrigPoly":
        c = self.coeffs.copy()
        c[: self.degree] = 0.0
        return TrigPoly(c)

    def to_samples(self, m: int) -> "Sampled":
        th = np.arange(m) * TWO_PI / m
        return Sampled(self(th))

    def boundary_integral(self, func, tol=None):
        tol = default_tol() if tol is None else tol
        return integrate_periodic(lambda th: func(th, self(th)), KinkSet(), tol, rtol=tol)

    # exact Poisson extension and its Wirtinger derivatives
    def extension(self, z):
        z = np.asarray(z, dtype=complex)
        n = self.degree
        k = np.arange(n + 1)
        pos = self.coeffs[n:]
        neg = self.coeffs[n::-1].copy()
        neg[0] = 0.0
        return np.power.outer(z, k) @ pos + np.power.outer(np.conj(z), k) @ neg

    def extension_derivatives(self, z):
        z = np.asarray(z, dtype=complex)
        n = self.degree
        if n == 0:
            zero = np.zeros(z.shape, dtype=complex)
            return zero, zero
        k = np.arange(1, n + 1)
        dz = np.power.outer(z, k - 1) @ (k * self.coeffs[n + 1 :])
        dzbar = np.power.outer(np.conj(z), k - 1) @ (k * self.coeffs[n - 1 :: -1])
        return dz, dzbar


class Sampled(BoundaryFunction):
    """M uniform samples f(2 pi j / M); M a power of two, at least 16.

    Integrals use the composite trapezoid rule on the sample nodes, which is
    exact for trigonometric polynomials of degree below M/2. Pointwise values
    between nodes come from the trigonometric interpolant.
    """

    def __init__(self, values: Sequence[complex]):
        v = np.asarray(values)
        if not np.iscomplexobj(v):
            v = v.astype(float)
        v = v.ravel()
        m = v.size
        if m < 16 or m & (m - 1):
            raise DomainError(f"need a power-of-two sample count >= 16, got {m}")
        if not np.all(np.isfinite(v)):
            raise DomainError("samples must be finite")
        self.values = v
        self.values.setflags(write=False)

    @property
    def size(self) -> int:
        return self.values.size

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.size) * TWO_PI / self.size

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values) or bool(np.all(self.values.imag == 0))

    def __repr__(self):
        return f"Sampled(M={self.size})"

    @functools.cached_property
    def _interpolant(self) -> TrigPoly:
        return self.to_trigpoly()

    def to_trigpoly(self) -> TrigPoly:
        m = self.size
        c = np.fft.fft(self.values) / m
        n = m // 2
        # split the Nyquist coefficient evenly so real data stay real
        coeffs = np.zeros(2 * n + 1, dtype=complex)
        coeffs[n:] = np.concatenate([c[:n], [0.5 * c[n]]])
        coeffs[:n] = np.concatenate([[0.5 * c[n]], c[n + 1 :]])
        return TrigPoly(coeffs)

    def __call__(self, theta):
        out = self._interpolant(theta)
        return out.real if self.is_real else out

    def boundary_integral(self, func, tol=None):
        th = self.nodes
        vals = np.asarray(func(th, self.values))
        value = vals.sum() * TWO_PI / self.size
        value = complex(value) if np.iscomplexobj(value) else float(value)
        return QuadResult(value, 0.0, self.size)


class ParametrizedBoundary(BoundaryFunction):
    """Boundary data given along a reparametrization theta = theta(s) of the circle.

    Subclasses supply theta(s), dtheta/ds > 0, the data as a function of s and
    the s-locations of kinks. Integrals are computed in s, which resolves data
    that concentrate in a small theta-arc.
    """

    tag: str = "named"

    @abc.abstractmethod
    def theta_of_s(self, s) -> tuple[np.ndarray, np.ndarray]:
        """(theta(s), dtheta/ds)."""

    @abc.abstractmethod
    def s_of_theta(self, theta) -> np.ndarray:
        ...

    @abc.abstractmethod
    def values_at_s(self, s) -> np.ndarray:
        ...

    def kinks_s(self) -> list[float]:
        return []

    @property
    def params(self) -> dict:
        return {}

    def __call__(self, theta):
        return self.values_at_s(self.s_of_theta(theta))

    def boundary_integral(self, func, tol=None):
        tol = default_tol() if tol is None else tol

        def g(s):
            th, jac = self.theta_of_s(s)
            return func(th, self.values_at_s(s)) * jac

        return integrate_periodic(g, KinkSet(self.kinks_s()), tol, rtol=tol)

    def sup_abs(self, grid: int = 4096) -> float:
        s = np.linspace(0.0, TWO_PI, grid, endpoint=False)
        return float(np.abs(self.values_at_s(s)).max())


@dataclass(frozen=True)
class DerivativePair:
    """Wirtinger derivatives (dw/dz, dw/dzbar) at a point."""

    dz: complex
    dzbar: complex

    @property
    def norm(self) -> float:
        """Operator norm of the real differential: |dz| + |dzbar|."""
        return abs(self.dz) + abs(self.dzbar)

    def apply(self, tau: float) -> complex:
        """Dw(z) e^{i tau} = dz e^{i tau} + dzbar e^{-i tau}."""
        e = complex(math.cos(tau), math.sin(tau))
        return self.dz * e + self.dzbar * e.conjugate()

    def maximizing_direction(self) -> float:
        # |dz e^{it} + dzbar e^{-it}| is maximal when both terms share a phase
        return 0.5 * (np.angle(self.dzbar) - np.angle(self.dz))


def _point(z) -> complex:
    if isinstance(z, DiskPoint):
        return z.z
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError("point outside the open unit disk")
    return z


@dataclass(frozen=True)
class HarmonicExtension:
    """Poisson extension w = P[f] of boundary data f."""

    source: BoundaryFunction
    tol: float | None = None

    def _spectral(self) -> TrigPoly | None:
        return self.source if isinstance(self.source, TrigPoly) else None

    def evaluate(self, z) -> complex:
        z = _point(z)
        tp = self._spectral()
        if tp is not None:
            return complex(tp.extension(z))
        res = self.source.boundary_integral(lambda th, f: poisson(z, th) * f, self.tol)
        return complex(res.value) / TWO_PI

    def derivative(self, z) -> DerivativePair:
        z = _point(z)
        tp = self._spectral()
        if tp is not None:
            dz, dzbar = tp.extension_derivatives(z)
            return DerivativePair(complex(dz), complex(dzbar))
        dz = self.source.boundary_integral(lambda th, f: d_poisson(z, th) * f, self.tol)
        dzbar = self.source.boundary_integral(lambda th, f: dbar_poisson(z, th) * f, self.tol)
        return DerivativePair(complex(dz.value) / TWO_PI, complex(dzbar.value) / TWO_PI)


def _exponent_value(p) -> float:
    if isinstance(p, Exponent):
        return p.p
    if isinstance(p, str):
        return Exponent.parse(p).p
    return float(p)


def lp_norm(f: BoundaryFunction, p, tol: float | None = None) -> float:
    """(int_0^{2pi} |f|^p dtheta)^{1/p}; p = inf gives sup |f|."""
    p = _exponent_value(p)
    if p < 1.0:
        raise DomainError(f"need p >= 1, got {p}")
    if math.isinf(p):
        if isinstance(f, Sampled):
            return float(np.abs(f.values).max())
        return f.sup_abs()
    res = f.boundary_integral(lambda th, v: np.abs(v) ** p, tol)
    return float(res.value) ** (1.0 / p)


@dataclass(frozen=True)
class HardyNorm:
    value: float
    radii: tuple[float, ...]
    means: tuple[float, ...]
    boundary_mean: float

    @property
    def nondecreasing(self) -> bool:
        m = np.asarray(self.means + (self.boundary_mean,))
        return bool(np.all(np.diff(m) >= -1e-12 * np.abs(m[1:])))


def hardy_norm(
    wext: HarmonicExtension, e, ladder: Sequence[float] = DEFAULT_LADDER, tol: float | None = None
) -> HardyNorm:
    """sup_{0<r<1} (int_0^{2pi} |w(r e^{i theta})|^p dtheta)^{1/p}.

    The means are taken on the radius ladder; for finite-spectrum data the
    dilations extend continuously to r = 1, and that boundary mean (the
    supremum, since L^p means of dilations increase with r) is included.
    """
    p = _exponent_value(e)
    src = wext.source
    if isinstance(src, Sampled):
        src = src.to_trigpoly()
    if not isinstance(src, TrigPoly):
        raise DomainError("hardy_norm needs a trigonometric polynomial or sampled data")
    radii = tuple(float(r) for r in ladder)
    if any(not 0.0 < r < 1.0 for r in radii):
        raise DomainError("ladder radii must lie in (0, 1)")
    means = tuple(lp_norm(src.dilate(r), p, tol) for r in radii)
    top = lp_norm(src, p, tol)
    return HardyNorm(max(means + (top,)), radii, means, top)


@dataclass(frozen=True)
class BlochEstimate:
    """Grid supremum of (1 - |z|^2) |Dw(z)|; a lower bound for the Bloch constant."""

    value: float
    argmax: complex
    grid: tuple[int, int]
    note: str = field(default="lower bound; accurate to the polar grid resolution after one refinement")


def bloch_constant(wext: HarmonicExtension, n_r: int = 64, n_alpha: int = 128, refine: bool = True) -> BlochEstimate:
    src = wext.source
    if isinstance(src, Sampled):
        src = src.to_trigpoly()
    if not isinstance(src, TrigPoly):
        raise DomainError("bloch_constant needs a trigonometric polynomial or sampled data")
    if not math.isfinite(src.sup_abs(1024)):
        raise DomainError("extension is not bounded")

    def density(z):
        dz, dzbar = src.extension_derivatives(z)
        return (1.0 - np.abs(z) ** 2) * (np.abs(dz) + np.abs(dzbar))

    r = np.arange(n_r) / n_r
    a = np.arange(n_alpha) * TWO_PI / n_alpha
    zz = np.multiply.outer(r, np.exp(1j * a))
    vals = density(zz.ravel())
    i = int(np.argmax(vals))
    best, zbest = float(vals[i]), complex(zz.ravel()[i])
    if refine:
        def neg(xy):
            z = complex(xy[0], xy[1])
            if abs(z) >= 1.0:
                return 0.0
            return -float(density(np.array([z]))[0])

        res = optimize.minimize(
            neg, [zbest.real, zbest.imag], method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-14, "initial_simplex": _simplex(zbest, 1.0 / n_r)},
        )
        if -res.fun > best:
            best, zbest = float(-res.fun), complex(res.x[0], res.x[1])
    return BlochEstimate(best, zbest, (n_r, n_alpha))


def _simplex(z: complex, h: float):
    return np.array([[z.real, z.imag], [z.real + h, z.imag], [z.real, z.imag + h]])


def _encode(v: complex):
    return [float(v.real), float(v.imag)]


def boundary_to_json(f: BoundaryFunction) -> dict:
    if isinstance(f, TrigPoly):
        return {"type": "trigpoly", "coeffs": [_encode(c) for c in f.coeffs], "k_min": -f.degree}
    if isinstance(f, Sampled):
        if f.is_real:
            return {"type": "samples", "values": [float(v) for v in np.real(f.values)]}
        return {"type": "samples", "values": [_encode(v) for v in f.values]}
    raise DomainError(f"{type(f).__name__} has no JSON representation")


def _decode(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise DomainError(f"complex entries are [re, im] pairs, got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(float(v))


def boundary_from_json(doc) -> BoundaryFunction:
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    kind = doc.get("type")
    if kind == "trigpoly":
        coeffs = [_decode(v) for v in doc["coeffs"]]
        return TrigPoly(coeffs, k_min=int(doc.get("k_min", -(len(coeffs) // 2))))
    if kind == "samples":
        vals = doc["values"]
        if any(isinstance(v, (list, tuple)) for v in vals):
            return Sampled(np.array([_decode(v) for v in vals]))
        return Sampled(np.array(vals, dtype=float))
    raise DomainError(f"unknown boundary function type {kind!r}")
