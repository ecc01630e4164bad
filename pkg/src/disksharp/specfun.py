"""Real-parameter Gamma, Beta and Gauss hypergeometric functions.

Everything here is self-contained (no scipy.special) so that the
hypergeometric closed forms of the sharp constants can be checked against
quadrature without sharing code paths with a third-party library.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "HypergeometricParams",
    "SeriesResult",
    "gamma",
    "rgamma",
    "beta",
    "hyp2f1",
    "hyp2f1_series",
    "gauss_sum",
]

# Lanczos approximation, g = 7, nine terms (Godfrey's coefficients).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Integrality tolerance for terminating-series detection.
_INT_TOL = 1e-9
# Parameters this close to an integer are treated as that integer; between
# this and _INT_TOL the full series is summed, since snapping would bias the
# value by (distance) * dF/da.
_SNAP_TOL = 1e-13
# Beyond this argument the Euler transformation is considered.
_X_SWITCH = 0.75
_MAX_TERMS = 200_000_000
_CHUNK = 512


def _nonpositive_integer(x: float, tol: float = 0.0) -> int | None:
    n = round(x)
    if n <= 0 and abs(x - n) <= tol:
        return int(n)
    return None


def _lanczos(x: float) -> float:
    # valid for x >= 0.5
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    try:
        half = t ** ((x + 0.5) / 2.0)
    except OverflowError:
        return math.inf
    return _SQRT_2PI * half * math.exp(-t) * half * acc


def gamma(x: float) -> float:
    """Gamma function for real ``x``; raises DomainError at the poles, overflows to inf."""
    x = float(x)
    if _nonpositive_integer(x) is not None:
        raise DomainError(f"gamma has a pole at x={x}")
    if x < 0.5:
        # reflection; sin(pi x) evaluated on a reduced argument
        return math.pi / (_sin_pi(x) * _lanczos(1.0 - x))
    return _lanczos(x)


def rgamma(x: float) -> float:
    """Reciprocal Gamma, 1/Gamma(x), which is entire (zero at the poles)."""
    if _nonpositive_integer(float(x)) is not None:
        return 0.0
    return 1.0 / gamma(x)


def _sin_pi(x: float) -> float:
    r = math.fmod(x, 2.0)
    return math.sin(math.pi * r)


def beta(u: float, v: float) -> float:
    if u <= 0 or v <= 0:
        raise DomainError(f"beta needs positive arguments, got ({u}, {v})")
    gu, gv, guv = gamma(u), gamma(v), gamma(u + v)
    if math.isfinite(gu) and math.isfinite(gv) and math.isfinite(guv) and guv != 0:
        return gu * gv / guv
    return math.exp(math.lgamma(u) + math.lgamma(v) - math.lgamma(u + v))


@dataclass(frozen=True)
class HypergeometricParams:
    """Parameters of F(a, b; c; x) restricted to a real argument in [0, 1]."""

    a: float
    b: float
    c: float
    x: float

    def __post_init__(self):
        if _nonpositive_integer(self.c, _INT_TOL) is not None:
            raise DomainError(f"c={self.c} is a pole of the hypergeometric series")
        if not 0.0 <= self.x <= 1.0:
            raise DomainError(f"argument x={self.x} outside [0, 1]")
        if self.x == 1.0 and self.c - self.a - self.b <= 0 and self.terminating_degree is None:
            raise ConvergenceError(
                f"series diverges at x=1 for c-a-b={self.c - self.a - self.b:.6g} <= 0"
            )

    @property
    def terminating_degree(self) -> int | None:
        degs = [
            -n
            for n in (_nonpositive_integer(self.a, _INT_TOL), _nonpositive_integer(self.b, _INT_TOL))
            if n is not None
        ]
        return min(degs) if degs else None


@dataclass(frozen=True)
class SeriesResult:
    value: float
    error_estimate: float
    terms: int
    route: str


def _polynomial(a: float, b: float, c: float, x: float, degree: int) -> SeriesResult:
    # exact finite sum; a or b snapped to the integer -degree
    term = 1.0
    total = 1.0
    absum = 1.0
    for n in range(degree):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x
        total += term
        absum += abs(term)
    err = float(4.0 * np.finfo(float).eps * absum * (degree + 1))
    return SeriesResult(total, err, degree + 1, "polynomial")


def _power_series(a: float, b: float, c: float, x: float) -> SeriesResult:
    if x == 0.0:
        return SeriesResult(1.0, 0.0, 1, "series")
    eps = np.finfo(float).eps
    total = 1.0
    absum = 1.0
    last = 1.0
    n0 = 0
    while n0 < _MAX_TERMS:
        n = np.arange(n0, n0 + _CHUNK, dtype=float)
        ratios = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x
        terms = last * np.cumprod(ratios)
        total += float(np.sum(terms))
        absum += float(np.sum(np.abs(terms)))
        last = float(terms[-1])
        n0 += _CHUNK
        # ratio of consecutive terms tends to x from either side
        rho = max(abs(float(ratios[-1])), x)
        if rho < 1.0:
            tail = abs(last) * rho / (1.0 - rho)
        else:
            # x == 1: terms decay like n**(a+b-c-1); bound the tail by the integral
            s = c - a - b
            tail = abs(last) * n0 / s if s > 0 else math.inf
        if tail <= 1e-16 * abs(total) or last == 0.0:
            err = float(tail + 4.0 * eps * absum * math.sqrt(n0))
            return SeriesResult(total, err, n0, "series")
    raise ConvergenceError(f"2F1({a}, {b}; {c}; {x}) did not converge in {_MAX_TERMS} terms")


def gauss_sum(a: float, b: float, c: float) -> float:
    """F(a, b; c; 1) by Gauss's summation theorem (needs c - a - b > 0)."""
    if c - a - b <= 0:
        raise ConvergenceError("Gauss summation needs c - a - b > 0")
    return gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b)


def hyp2f1_series(a: float, b: float, c: float, x: float) -> SeriesResult:
    """Evaluate F(a, b; c; x) on [0, 1] with an error estimate.

    Terminating series are summed exactly. Otherwise the power series is
    summed until the estimated tail drops below 1e-16 of the partial sum.
    For x > 0.75 with c - a - b < 0 the Euler transformation
    F = (1-x)**(c-a-b) F(c-a, c-b; c; x) is used, whose terms decay
    like n**(a+b-c-1) instead of n**(c-a-b-1). At x = 1 the value comes
    from Gauss's summation theorem.
    """
    prm = HypergeometricParams(float(a), float(b), float(c), float(x))
    a, b, c, x = prm.a, prm.b, prm.c, prm.x
    deg = prm.terminating_degree
    if deg is not None:
        near = a if _nonpositive_integer(a, _INT_TOL) == -deg else b
        if abs(near + deg) <= _SNAP_TOL * max(1.0, deg) or (x == 1.0 and c - a - b <= 0):
            # snap to the intended integer so rounding in e.g. 1 - 3q/2 cannot leak
            if near is a:
                a = float(-deg)
            else:
                b = float(-deg)
            return _polynomial(a, b, c, x, deg)
    if x == 1.0:
        val = gauss_sum(a, b, c)
        return SeriesResult(val, 1e-13 * abs(val), 0, "gauss")
    s = c - a - b
    if x > _X_SWITCH and s < 0:
        inner = hyp2f1_series(c - a, c - b, c, x)
        pref = (1.0 - x) ** s
        return SeriesResult(pref * inner.value, pref * inner.error_estimate, inner.terms, "euler")
    return _power_series(a, b, c, x)


def hyp2f1(a: float, b: float, c: float, x: float) -> float:
    return hyp2f1_series(a, b, c, x).value
