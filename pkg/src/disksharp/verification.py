"""Numerical checks of the supporting lemmas and randomized inequality testing.

Every check returns a :class:`LemmaReport`: one cell per parameter
combination with a signed margin (positive means the claim holds with room
to spare) so that failures carry the offending parameters.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy import optimize

from . import specfun
from .constants import (
    Exponent,
    directional_constant,
    directional_integrand,
    global_constant,
    gradient_constant,
    wirtinger_constant,
    wirtinger_constant_global,
)
from .errors import DiskSharpError, DomainError, NumericalError
from .extremal import norm_limit_study, sharpness_study
from .hardy import HarmonicExtension, TrigPoly, lp_norm
from .kernel import DiskPoint, Direction
from .quadrature import KinkSet, integrate, integrate_periodic

__all__ = [
    "Cell",
    "LemmaReport",
    "directional_profile",
    "check_extremal_directions",
    "check_boundary_dominance",
    "DegenerateCrossover",
    "crossover_exponent",
    "check_sine_power_identity",
    "fuzz_inequalities",
    "check_direction_ordering",
    "check_constant_sandwich",
    "check_mr_improvement",
    "check_global_minimum",
    "lemma_suite",
    "crossover_suite",
    "identity_suite",
    "sharpness_suite",
    "DEFAULT_Q_GRID",
    "DEFAULT_R_GRID",
]

DEFAULT_Q_GRID = (1.0, 1.2, 1.5, 2.0, 2.5, 3.0, 5.0)
DEFAULT_R_GRID = (0.0, 0.3, 0.6, 0.9, 0.99)
DOMINANCE_RADII = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)

_PI = math.pi
_LOCATION_TOL = _PI / 64
_FLAT_TOL = 1e-9
_TIGHT = 1e-11


@dataclass
class Cell:
    params: dict
    passed: bool
    margin: float
    detail: str = ""


@dataclass
class LemmaReport:
    claim: str
    grid: dict
    cells: list[Cell] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    @property
    def worst_margin(self) -> float:
        return min((c.margin for c in self.cells), default=math.inf)

    @property
    def failures(self) -> list[Cell]:
        return [c for c in self.cells if not c.passed]

    def extend(self, other: "LemmaReport") -> "LemmaReport":
        self.cells.extend(other.cells)
        return self

    def as_dict(self) -> dict:
        return {
            "claim": self.claim,
            "passed": self.passed,
            "worst_margin": _jsonable(self.worst_margin),
            "grid": self.grid,
            "cells": [
                {**asdict(c), "margin": _jsonable(c.margin)} for c in self.cells
            ],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.as_dict(), **kw)


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


def _merged(claim: str, reports: Iterable[LemmaReport], grid: dict) -> LemmaReport:
    out = LemmaReport(claim, grid)
    for rep in reports:
        out.extend(rep)
    return out


# angular profile of the directional constants


def directional_profile(t: float, r: float, q: float, tol: float = 1e-12) -> float:
    """int_{-pi}^{pi} |cos(s - t)|^q |r - e^{is}|^{2q-2} ds; pi-periodic in t."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"need 0 <= r <= 1, got {r}")
    if q < 1.0:
        raise DomainError(f"need q >= 1, got {q}")
    kinks = [t + _PI / 2, t - _PI / 2]
    if r > 0.9:
        kinks.append(0.0)
    res = integrate_periodic(directional_integrand(q, r, -t), KinkSet(kinks), tol, rtol=tol)
    return res.value


def _angular_distance_mod_pi(a: float, b: float) -> float:
    d = (a - b) % _PI
    return min(d, _PI - d)


def check_extremal_directions(q: float, r: float, n_grid: int = 128, tol: float = 1e-12) -> LemmaReport:
    """Where the profile t -> directional_profile(t, r, q) attains its extrema.

    Expected: maximum at pi/2 and minimum at 0 for q <= 2, the reverse for
    q > 2 (mod pi). For q in {1, 2} or r = 0 the profile is constant and the
    check asserts flatness to 1e-9 relative instead.
    """
    grid = {"q": [q], "r": [r], "n_grid": n_grid}
    rep = LemmaReport("extremal-directions", grid)
    ts = np.arange(n_grid) * 2 * _PI / n_grid
    vals = np.array([directional_profile(t, r, q, tol) for t in ts])
    spread = float(vals.max() - vals.min())
    scale = float(np.abs(vals).max())
    params = {"q": q, "r": r}
    if q == 1.0 or q == 2.0 or r == 0.0:
        margin = _FLAT_TOL - spread / scale
        rep.cells.append(Cell({**params, "kind": "constant"}, margin >= 0, margin, f"relative spread {spread / scale:.3e}"))
        return rep
    h = 2 * _PI / n_grid
    found = {}
    for kind, sign in (("max", -1.0), ("min", 1.0)):
        i = int(np.argmax(-sign * vals))
        res = optimize.minimize_scalar(
            lambda t: sign * directional_profile(t, r, q, tol),
            bounds=(ts[i] - h, ts[i] + h),
            method="bounded",
            options={"xatol": 1e-10},
        )
        t_ref = float(res.x) if sign * res.fun < sign * vals[i] else float(ts[i])
        found[kind] = t_ref % _PI
    expect_max = _PI / 2 if q <= 2.0 else 0.0
    expect_min = 0.0 if q <= 2.0 else _PI / 2
    for kind, expect in (("max", expect_max), ("min", expect_min)):
        dist = _angular_distance_mod_pi(found[kind], expect)
        margin = _LOCATION_TOL - dist
        rep.cells.append(
            Cell({**params, "kind": kind, "expected": expect, "found": found[kind]}, margin >= 0, margin)
        )
    return rep


def check_boundary_dominance(
    lam: float, q: float, t: float, radii: Sequence[float] = DOMINANCE_RADII, tol: float = 1e-12, n_grid: int = 64
) -> LemmaReport:
    """Interior integrals are dominated by the maximal boundary (r = 1) integral.

    For every r in ``radii``:
    int |cos(s - t)|^lam |r - e^{is}|^{2q-2} ds <= max_{t'} int |cos(s - t')|^lam |1 - e^{is}|^{2q-2} ds.
    """
    if lam < 0 or q < 1:
        raise DomainError("need lam >= 0 and q >= 1")

    def integral(r, tt):
        def f(s):
            return np.abs(np.cos(s - tt)) ** lam * (1.0 + r * r - 2.0 * r * np.cos(s)) ** (q - 1.0)

        kinks = [tt + _PI / 2, tt - _PI / 2, 0.0]
        return integrate_periodic(f, KinkSet(kinks), tol, rtol=tol).value

    tps = np.arange(n_grid) * _PI / n_grid
    bvals = np.array([integral(1.0, tp) for tp in tps])
    j = int(np.argmax(bvals))
    h = _PI / n_grid
    res = optimize.minimize_scalar(lambda tp: -integral(1.0, tp), bounds=(tps[j] - h, tps[j] + h), method="bounded")
    top = max(float(bvals[j]), float(-res.fun))
    rep = LemmaReport("boundary-dominance", {"lambda": [lam], "q": [q], "t": [t], "r": list(radii)})
    slack = 10 * tol * top
    for r in radii:
        v = integral(r, t)
        margin = top - v
        rep.cells.append(Cell({"lambda": lam, "q": q, "t": t, "r": r}, margin >= -slack, margin))
    return rep


class DegenerateCrossover(NumericalError):
    """The radial and tangential constants do not change order on the bracket."""


def _radial_minus_tangential(p: float, z: DiskPoint) -> float:
    e = Exponent(p)
    rad = directional_constant(e, z, Direction.radial(z), _TIGHT).value
    tan = directional_constant(e, z, Direction.tangential(z), _TIGHT).value
    return rad - tan


def crossover_exponent(r: float, bracket: tuple[float, float] = (1.1, 10.0), xtol: float = 1e-6) -> float:
    """The p at which the radial and tangential directional constants swap order.

    Bisection on p within ``bracket``. Raises DegenerateCrossover when the
    difference does not change sign (at r = 0 both constants coincide).
    """
    if not 0.0 <= r < 1.0:
        raise DomainError(f"need 0 <= r < 1, got {r}")
    z = DiskPoint(r, 0.0)
    lo, hi = bracket
    flo, fhi = _radial_minus_tangential(lo, z), _radial_minus_tangential(hi, z)
    if max(abs(flo), abs(fhi)) <= 1e-12:
        raise DegenerateCrossover(f"degenerate: directional constants coincide at r={r}")
    if flo * fhi > 0:
        raise DegenerateCrossover(f"no sign change of radial - tangential on [{lo}, {hi}] at r={r}")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fm = _radial_minus_tangential(mid, z)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def check_sine_power_identity(mu: float, nu: float, r: float, rel_tol: float = 1e-8) -> LemmaReport:
    """int_0^pi sin^{mu-1} t (1 + r^2 - 2 r cos t)^{-nu} dt = B(mu/2, 1/2) F(nu, nu + (1-mu)/2; (1+mu)/2; r^2).

    The left side is computed by adaptive quadrature, the right side by the
    hypergeometric series; the two must agree to ``rel_tol``.
    """
    if mu <= 0 or not 0.0 <= r < 1.0:
        raise DomainError("need mu > 0 and 0 <= r < 1")
    params = {"mu": mu, "nu": nu, "r": r}
    rep = LemmaReport("sine-power-identity", {k: [v] for k, v in params.items()})

    def f(t):
        return np.sin(t) ** (mu - 1.0) * (1.0 + r * r - 2.0 * r * np.cos(t)) ** (-nu)

    try:
        lhs = integrate(f, 0.0, _PI, 1e-14, rtol=1e-13).value
        rhs = specfun.beta(mu / 2.0, 0.5) * specfun.hyp2f1(nu, nu + (1.0 - mu) / 2.0, (1.0 + mu) / 2.0, r * r)
    except DiskSharpError as exc:
        rep.cells.append(Cell(params, False, -math.inf, f"evaluation failed: {exc}"))
        return rep
    rel = abs(lhs - rhs) / abs(rhs)
    rep.cells.append(Cell(params, rel <= rel_tol, rel_tol - rel, f"quadrature {lhs!r} vs series {rhs!r}"))
    return rep


# randomized inequality testing

_CHECKS = ("directional", "gradient", "wirtinger-dz", "wirtinger-dzbar", "analytic")


def _random_trigpoly(rng: np.random.Generator, max_degree: int) -> TrigPoly:
    n = int(rng.integers(0, max_degree + 1))
    c = rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)
    return TrigPoly(c)


def _fuzz_trial(p: float, seed: int, index: int, max_degree: int, r_max: float, rel_tol: float) -> list[dict]:
    rng = np.random.default_rng([seed, index])
    e = Exponent(p)
    f = _random_trigpoly(rng, max_degree)
    r = float(rng.uniform(0.0, r_max))
    alpha = float(rng.uniform(-_PI, _PI))
    tau = float(rng.uniform(-_PI, _PI))
    z = DiskPoint(r, alpha)
    factor = (1.0 - r * r) ** (-1.0 - (0.0 if e.is_infinite else 1.0 / e.p))
    norm = lp_norm(f, e)
    d = HarmonicExtension(f).derivative(z)
    c_wirt = wirtinger_constant(e, r).value
    rows = [
        ("directional", abs(d.apply(tau)), directional_constant(e, z, Direction(tau)).value * factor * norm),
        ("gradient", d.norm, gradient_constant(e, z).value * factor * norm),
        ("wirtinger-dz", abs(d.dz), c_wirt * factor * norm),
        ("wirtinger-dzbar", abs(d.dzbar), c_wirt * factor * norm),
    ]
    g = f.analytic_part()
    if g.degree > 0 and np.any(g.coeffs != 0):
        dg = HarmonicExtension(g).derivative(z)
        rows.append(("analytic", abs(dg.dz), c_wirt * factor * lp_norm(g, e)))
    out = []
    for name, lhs, rhs in rows:
        out.append({
            "trial": index,
            "check": name,
            "lhs": float(lhs),
            "rhs": float(rhs),
            "slack": 1.0 - lhs / rhs if rhs > 0 else math.inf,
            "violated": bool(lhs > rhs * (1.0 + rel_tol)),
        })
    return out


def _fuzz_chunk(args):
    p, seed, indices, max_degree, r_max, rel_tol = args
    rows = []
    for i in indices:
        rows.extend(_fuzz_trial(p, seed, i, max_degree, r_max, rel_tol))
    return rows


def fuzz_inequalities(
    e,
    trials: int = 1000,
    seed: int = 0,
    *,
    max_degree: int = 10,
    r_max: float = 0.95,
    rel_tol: float = 1e-8,
    jobs: int = 1,
) -> LemmaReport:
    """Test the pointwise estimates on seeded random trigonometric polynomials.

    Each trial draws a polynomial of degree <= ``max_degree`` with complex
    standard-normal coefficients, a point with |z| <= ``r_max`` and a
    direction, from a generator seeded by (seed, trial index); results do not
    depend on ``jobs`` or on evaluation order. Checked per trial: the
    directional and gradient bounds, both Wirtinger bounds, and the analytic
    bound on the analytic part. Cell margins are relative slacks
    1 - lhs / rhs; the report grid records the minimal slack per check.
    """
    e = Exponent.parse(e)
    p = e.p
    idx = list(range(trials))
    if jobs > 1 and trials > 1:
        chunks = [idx[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = [r for part in ex.map(_fuzz_chunk, [(p, seed, c, max_degree, r_max, rel_tol) for c in chunks]) for r in part]
    else:
        rows = _fuzz_chunk((p, seed, idx, max_degree, r_max, rel_tol))
    rows.sort(key=lambda row: (row["trial"], _CHECKS.index(row["check"])))
    min_slack = {}
    for row in rows:
        min_slack[row["check"]] = min(min_slack.get(row["check"], math.inf), row["slack"])
    grid = {"p": str(e), "trials": trials, "seed": seed, "max_degree": max_degree, "r_max": r_max,
            "rel_tol": rel_tol, "min_slack": min_slack}
    rep = LemmaReport("inequality-fuzz", grid)
    for row in rows:
        params = {"p": str(e), "seed": seed, "trial": row["trial"], "check": row["check"]}
        rep.cells.append(Cell(params, not row["violated"], row["slack"], f"lhs={row['lhs']!r} rhs={row['rhs']!r}"))
    return rep


# comparisons between constants


def check_direction_ordering(e, n_points: int = 20, seed: int = 0, r_max: float = 0.99) -> LemmaReport:
    """Every directional constant is bounded by the gradient constant.

    The gradient constant is the radial one for p < 2 and the tangential one
    for p >= 2, so this checks both the maximizing direction and the bound.
    """
    e = Exponent.parse(e)
    rng = np.random.default_rng([seed, n_points])
    rep = LemmaReport("direction-ordering", {"p": str(e), "n_points": n_points, "seed": seed})
    for _ in range(n_points):
        z = DiskPoint(float(rng.uniform(0.0, r_max)), float(rng.uniform(-_PI, _PI)))
        tau = float(rng.uniform(-_PI, _PI))
        d = directional_constant(e, z, Direction(tau), 1e-12).value
        best = Direction.radial(z) if e.p < 2 else Direction.tangential(z)
        top = directional_constant(e, z, best, 1e-12).value
        margin = top - d
        rep.cells.append(Cell({"p": str(e), "r": z.r, "alpha": z.alpha, "tau": tau}, margin >= -1e-10 * top, margin))
    return rep



def check_constant_sandwich(ps: Sequence = (1.1, 1.5, 2, 3, 5, 10, 20, math.inf)) -> LemmaReport:
    """c_p < C_p < 2 c_p for the global constants."""
    rep = LemmaReport("constant-sandwich", {"p": [str(p) for p in ps]})
    for p in ps:
        e = Exponent.parse(p)
        small = wirtinger_constant_global(e).value
        big = global_constant(e).value
        margin = min(big - small, 2 * small - big)
        rep.cells.append(Cell({"p": str(e), "c_p": small, "C_p": big}, margin > 0, margin))
    return rep


def check_mr_improvement(ps: Sequence = (1.2, 1.5, 2, 3, 10), rs: Sequence = (0.0, 0.5, 0.9, 0.99)) -> LemmaReport:
    """(2 pi)^{1-q} F(1-q, 1-q; 1; r^2) < 1 + r^2 / (p - 1)^2."""
    rep = LemmaReport("mr-improvement", {"p": list(ps), "r": list(rs)})
    for p in ps:
        q = Exponent(p).q
        for r in rs:
            lhs = (2 * _PI) ** (1 - q) * specfun.hyp2f1(1 - q, 1 - q, 1.0, r * r)
            rhs = 1.0 + r * r / (p - 1.0) ** 2
            rep.cells.append(Cell({"p": p, "r": r, "lhs": lhs, "rhs": rhs}, lhs < rhs, rhs - lhs))
    return rep


def check_global_minimum(p_min: float = 1.05, p_max: float = 20.0, steps: int = 400) -> LemmaReport:
    """The global constant over a p-grid is smallest at the grid point nearest 2."""
    ps = np.linspace(p_min, p_max, steps)
    vals = np.array([global_constant(p).value for p in ps])
    i = int(np.argmin(vals))
    nearest = int(np.argmin(np.abs(ps - 2.0)))
    h = float(ps[1] - ps[0])
    margin = h - abs(float(ps[i]) - 2.0)
    rep = LemmaReport("global-minimum", {"p_min": p_min, "p_max": p_max, "steps": steps})
    rep.cells.append(Cell({"argmin": float(ps[i]), "min": float(vals[i]), "nearest_to_2": float(ps[nearest])},
                          i == nearest, margin))
    return rep


# suites used by the CLI


def lemma_suite(qs: Sequence[float] = DEFAULT_Q_GRID, rs: Sequence[float] = DEFAULT_R_GRID) -> LemmaReport:
    reports = [check_extremal_directions(q, r) for q in qs for r in rs]
    t = 0.3
    for q in qs:
        for lam in sorted({0.0, 1.0, q}):
            reports.append(check_boundary_dominance(lam, q, t))
    reports.extend(check_direction_ordering(p) for p in (1.2, 1.5, 2, 3, 5))
    reports.append(check_constant_sandwich())
    reports.append(check_mr_improvement())
    return _merged("lemmas", reports, {"q": list(qs), "r": list(rs), "lambda": ["0", "1", "q"]})


def crossover_suite(rs: Sequence[float] = (0.3, 0.5, 0.9), tol: float = 1e-3) -> LemmaReport:
    rep = LemmaReport("crossover", {"r": list(rs), "tol": tol})
    for r in rs:
        try:
            p = crossover_exponent(r)
        except DegenerateCrossover as exc:
            rep.cells.append(Cell({"r": r}, False, -math.inf, str(exc)))
            continue
        margin = tol - abs(p - 2.0)
        rep.cells.append(Cell({"r": r, "crossover": p}, margin >= 0, margin))
    return rep


def identity_suite(seed: int = 0, n_random: int = 50) -> LemmaReport:
    """Fixed cases feeding the closed forms plus random (mu, nu, r) triples."""
    cases = [(1.0, 0.0, 0.5), (3.0, -1.0, 0.5), (1.0, -0.7, 0.8)]
    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        cases.append((float(rng.uniform(1.0, 6.0)), float(rng.uniform(-3.0, 2.0)), float(rng.uniform(0.0, 0.9))))
    return _merged("sine-power-identity", (check_sine_power_identity(*c) for c in cases),
                   {"seed": seed, "n_random": n_random})


def sharpness_suite(ps: Sequence = (1.5, 2, 3, 5), extrapolated_tol: float = 2e-3, raw_tol: float = 1e-2) -> LemmaReport:
    rep = LemmaReport("sharpness", {"p": [str(p) for p in ps], "extrapolated_tol": extrapolated_tol, "raw_tol": raw_tol})
    for p in ps:
        studies = [sharpness_study(p, "gradient"), sharpness_study(p, "wirtinger")]
        for st in studies:
            margin = min(extrapolated_tol - st.relative_error, raw_tol - st.raw_relative_error)
            rep.cells.append(Cell({"p": st.p, "kind": st.kind, "extrapolated": st.extrapolated, "target": st.target,
                                   "raw": st.ratios[-1], "monotone": st.monotone}, margin >= 0, margin))
        nl = norm_limit_study(p)
        margin = 5e-3 - nl.relative_error
        rep.cells.append(Cell({"p": nl.p, "kind": nl.kind, "extrapolated": nl.extrapolated, "target": nl.target},
                              margin >= 0, margin))
    return rep
