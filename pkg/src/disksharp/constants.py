"""Sharp constants in pointwise gradient estimates for h^p functions on the disk.

For w the Poisson extension of boundary data f and z = r e^{i alpha}::

    |Dw(z) e^{i tau}| <= C_p(z, tau) (1 - r^2)^{-1-1/p} ||f||_p
    |Dw(z)|           <= C_p(z)      (1 - r^2)^{-1-1/p} ||f||_p
    |dw(z)|, |dbar w(z)| <= c_p(z)   (1 - r^2)^{-1-1/p} ||f||_p

with the unnormalized boundary norm ||f||_p = (int_0^{2pi} |f|^p dtheta)^{1/p}.
Quadrature and closed-form (hypergeometric / Gamma) routes are both
available and can be cross-checked against each other.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import ConsistencyError, DomainError
from .kernel import DiskPoint, Direction
from .quadrature import KinkSet, default_tol, integrate_periodic

__all__ = [
    "Exponent",
    "Method",
    "ConstantReport",
    "directional_integrand",
    "directional_constant",
    "gradient_constant",
    "gradient_constant_closed",
    "global_constant",
    "wirtinger_constant",
    "wirtinger_constant_global",
    "mr_factor",
]

_PI = math.pi
# closed forms are trusted to this relative accuracy before condition scaling
_CLOSED_REL = 1e-12
# relative disagreement tolerated by the built-in cross-checks
_CROSS_REL = 1e-8


@dataclass(frozen=True)
class Exponent:
    """A Hardy exponent p in (1, inf] together with its conjugate q."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if not p > 1.0:
            raise DomainError(f"exponent must satisfy p > 1, got {self.p}")
        object.__setattr__(self, "p", p)

    @classmethod
    def from_q(cls, q: float) -> "Exponent":
        if q == 1.0:
            return cls(math.inf)
        if not q > 1.0:
            raise DomainError(f"conjugate exponent must be >= 1, got {q}")
        return cls(q / (q - 1.0))

    @classmethod
    def parse(cls, text) -> "Exponent":
        if isinstance(text, Exponent):
            return text
        if isinstance(text, str) and text.strip().lower() in {"inf", "infinity", "oo"}:
            return cls(math.inf)
        try:
            value = float(text)
        except (TypeError, ValueError):
            raise DomainError(f"not an exponent: {text!r}") from None
        return cls(value)

    @property
    def q(self) -> float:
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.p)

    def __str__(self):
        return "inf" if self.is_infinite else f"{self.p:g}"


class Method(str, enum.Enum):
    QUADRATURE = "quadrature"
    CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class ConstantReport:
    value: float
    method: Method
    error_estimate: float

    def __float__(self):
        return self.value

    def agrees_with(self, other: "ConstantReport", rel: float = _CROSS_REL) -> bool:
        slack = self.error_estimate + other.error_estimate + rel * max(abs(self.value), abs(other.value))
        return abs(self.value - other.value) <= slack


def _as_exponent(e) -> Exponent:
    return e if isinstance(e, Exponent) else Exponent.parse(e)


def _power_report(integral, q: float, scale: float) -> ConstantReport:
    # C = scale * I^{1/q}; dC = C dI / (q I)
    value = scale * integral.value ** (1.0 / q)
    err = value * integral.error_estimate / (q * integral.value)
    return ConstantReport(value, Method.QUADRATURE, err)


def _closed_report(value: float, rel_err: float) -> ConstantReport:
    return ConstantReport(value, Method.CLOSED_FORM, abs(value) * (_CLOSED_REL + rel_err))


def directional_integrand(q: float, r: float, shift: float):
    """s -> |cos(s + shift)|^q (1 + r^2 - 2 r cos s)^{q-1}, with shift = tau - alpha."""

    def f(s):
        w = 1.0 + r * r - 2.0 * r * np.cos(s)
        return np.abs(np.cos(s + shift)) ** q * w ** (q - 1.0)

    return f


def _directional_kinks(r: float, shift: float) -> KinkSet:
    pts = [_PI / 2 - shift, 3 * _PI / 2 - shift]
    if r > 0.9:
        pts.append(0.0)
    return KinkSet(pts)


def directional_constant(e, z: DiskPoint, d: Direction, tol: float | None = None) -> ConstantReport:
    """C_p(z, e^{i tau}) by adaptive quadrature over one period."""
    e = _as_exponent(e)
    tol = default_tol() if tol is None else tol
    q = e.q
    shift = d.tau - z.alpha
    res = integrate_periodic(
        directional_integrand(q, z.r, shift), _directional_kinks(z.r, shift), tol, rtol=tol
    )
    return _power_report(res, q, 1.0 / _PI)


def gradient_constant_closed(e, r: float) -> ConstantReport:
    """Closed form of the tangential constant, valid for p >= 2.

    (2^{1/q} / pi) (B((1+q)/2, 1/2) F(1 - 3q/2, 1 - q; 1 + q/2; r^2))^{1/q}
    """
    e = _as_exponent(e)
    if e.p < 2.0:
        raise DomainError("the hypergeometric closed form covers p >= 2 only")
    if not 0.0 <= r < 1.0:
        raise DomainError(f"need 0 <= r < 1, got {r}")
    q = e.q
    b = specfun.beta((1.0 + q) / 2.0, 0.5)
    f = specfun.hyp2f1_series(1.0 - 1.5 * q, 1.0 - q, 1.0 + q / 2.0, r * r)
    value = 2.0 ** (1.0 / q) / _PI * (b * f.value) ** (1.0 / q)
    return _closed_report(value, f.error_estimate / abs(f.value) / q)


def gradient_constant(
    e, z: DiskPoint, tol: float | None = None, *, cross_check: bool = True
) -> ConstantReport:
    """C_p(z): the radial directional constant for p < 2, tangential for p >= 2.

    For p >= 2 the quadrature value is compared with
    :func:`gradient_constant_closed` and a ConsistencyError is raised if they
    disagree beyond their combined error estimates plus 1e-8 relative.
    """
    e = _as_exponent(e)
    if e.p < 2.0:
        return directional_constant(e, z, Direction.radial(z), tol)
    rep = directional_constant(e, z, Direction.tangential(z), tol)
    if cross_check:
        closed = gradient_constant_closed(e, z.r)
        if not rep.agrees_with(closed):
            raise ConsistencyError(
                f"C_p(z) quadrature {rep.value!r} vs closed form {closed.value!r} at p={e}, r={z.r}"
            )
    return rep


def _global_integrand(q: float, branch: str):
    trig = np.cos if branch == "cos" else np.sin

    def f(s):
        return np.abs(trig(s)) ** q * (2.0 - 2.0 * np.cos(s)) ** (q - 1.0)

    return f


def global_branch(e) -> str:
    """Which boundary integrand realizes the supremum: 'cos' for p < 2, 'sin' otherwise."""
    return "cos" if _as_exponent(e).p < 2.0 else "sin"


def global_constant(
    e, tol: float | None = None, *, method: Method | str = Method.QUADRATURE, branch: str | None = None
) -> ConstantReport:
    """C_p = sup_z C_p(z), the boundary (r = 1) value of the gradient constant.

    ``branch`` forces the cos or sin integrand; by default the one matching p
    is used. ``method="closed-form"`` (sin branch only) sums the
    hypergeometric series at x = 1 by Gauss's theorem.
    """
    e = _as_exponent(e)
    q = e.q
    branch = branch or global_branch(e)
    if branch not in ("cos", "sin"):
        raise DomainError(f"unknown branch {branch!r}")
    if Method(method) is Method.CLOSED_FORM:
        if branch != "sin":
            raise DomainError("closed form is available for the sin branch only")
        b = specfun.beta((1.0 + q) / 2.0, 0.5)
        f = specfun.gauss_sum(1.0 - 1.5 * q, 1.0 - q, 1.0 + q / 2.0)
        value = (2.0 * b * f) ** (1.0 / q) / _PI
        return _closed_report(value, 1e-13)
    tol = default_tol() if tol is None else tol
    res = integrate_periodic(
        _global_integrand(q, branch), KinkSet([0.0, _PI / 2, _PI, 3 * _PI / 2]), tol, rtol=tol
    )
    return _power_report(res, q, 1.0 / _PI)


def _wirtinger_integrand(q: float, r: float):
    def f(s):
        return (1.0 + r * r - 2.0 * r * np.cos(s)) ** (q - 1.0)

    return f


def wirtinger_constant(
    e,
    r: float,
    tol: float | None = None,
    *,
    method: Method | str = Method.CLOSED_FORM,
    cross_check: bool = False,
) -> ConstantReport:
    """c_p(z) for |z| = r.

    Closed form: (2 pi)^{1/q - 1} F(1 - q, 1 - q; 1; r^2)^{1/q}.
    Quadrature:  (1 / 2pi) (int_0^{2pi} |1 - r e^{is}|^{2q-2} ds)^{1/q}.
    """
    e = _as_exponent(e)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"need 0 <= r < 1, got {r}")
    q = e.q
    method = Method(method)
    if method is Method.CLOSED_FORM:
        f = specfun.hyp2f1_series(1.0 - q, 1.0 - q, 1.0, r * r)
        value = (2.0 * _PI) ** (1.0 / q - 1.0) * f.value ** (1.0 / q)
        rep = _closed_report(value, f.error_estimate / abs(f.value) / q)
        other = Method.QUADRATURE
    else:
        tol = default_tol() if tol is None else tol
        kinks = KinkSet([0.0]) if r > 0.9 else KinkSet()
        res = integrate_periodic(_wirtinger_integrand(q, r), kinks, tol, rtol=tol)
        rep = _power_report(res, q, 1.0 / (2.0 * _PI))
        other = Method.CLOSED_FORM
    if cross_check:
        alt = wirtinger_constant(e, r, tol, method=other)
        if not rep.agrees_with(alt):
            raise ConsistencyError(f"c_p(z) routes disagree: {rep.value!r} vs {alt.value!r}")
    return rep


def wirtinger_constant_global(e) -> ConstantReport:
    """c_p = sup_z c_p(z) = 2^{(q-1)/q} pi^{-1 + 1/(2q)} (Gamma(q - 1/2) / Gamma(q))^{1/q}."""
    e = _as_exponent(e)
    q = e.q
    if q < 100.0:
        ratio = specfun.gamma(q - 0.5) / specfun.gamma(q)
    else:
        ratio = math.exp(math.lgamma(q - 0.5) - math.lgamma(q))
    value = 2.0 ** ((q - 1.0) / q) * _PI ** (-1.0 + 1.0 / (2.0 * q)) * ratio ** (1.0 / q)
    return _closed_report(value, 0.0)


def mr_factor(e, r: float) -> float:
    """Macintyre-Rogosinski factor (1 + r^2 / (p - 1)^2)^{1/q}."""
    e = _as_exponent(e)
    if e.is_infinite:
        return 1.0
    return (1.0 + r * r / (e.p - 1.0) ** 2) ** (1.0 / e.q)
