"""Acceptance gate: one test per criterion, at the stated tolerances.

A PASS/FAIL line per criterion is printed in the terminal summary. Run
directly with ``python tests/test_acceptance.py`` or through pytest.
"""
import math
import sys

import numpy as np
import pytest

from disksharp import specfun
from disksharp.constants import (
    directional_constant,
    global_constant,
    gradient_constant,
    gradient_constant_closed,
    wirtinger_constant,
    wirtinger_constant_global,
)
from disksharp.extremal import norm_limit_study, sharpness_study
from disksharp.hardy import HarmonicExtension, Sampled, TrigPoly, bloch_constant, lp_norm
from disksharp.kernel import DiskPoint, Direction
from disksharp.verification import (
    check_constant_sandwich,
    check_direction_ordering,
    check_extremal_directions,
    check_sine_power_identity,
    crossover_exponent,
    directional_profile,
    fuzz_inequalities,
)

FOUR_OVER_PI = 4 / math.pi
R_GRID = (0.0, 0.3, 0.6, 0.9, 0.99)


@pytest.fixture
def label(record_property):
    def set_label(text):
        record_property("criterion", text)

    return set_label


def test_c01_endpoint_values(label):
    label("01 endpoint values: C_2 = sqrt(2/pi), C_inf = 4/pi at 10 random z, c_inf = 1")
    c2 = global_constant(2)
    assert c2.method.value == "quadrature"
    assert abs(c2.value - math.sqrt(2 / math.pi)) <= 1e-9
    rng = np.random.default_rng(2024)
    for _ in range(10):
        z = DiskPoint(rng.uniform(0, 0.99), rng.uniform(-math.pi, math.pi))
        tau = rng.uniform(-math.pi, math.pi)
        assert abs(directional_constant("inf", z, Direction(tau)).value - FOUR_OVER_PI) <= 1e-9
        assert abs(gradient_constant("inf", z).value - FOUR_OVER_PI) <= 1e-9
    assert abs(wirtinger_constant_global("inf").value - 1.0) <= 1e-12


def test_c02_closed_form_vs_quadrature(label):
    label("02 closed form vs quadrature for the gradient and Wirtinger constants, 1e-8")
    worst = 0.0
    for p in (2, 2.5, 3, 5, 10):
        for r in R_GRID:
            quad = gradient_constant(p, DiskPoint(r, 0.4), 1e-12, cross_check=False).value
            closed = gradient_constant_closed(p, r).value
            worst = max(worst, abs(quad - closed) / closed)
    for p in (1.2, 1.5, 2, 4):
        for r in R_GRID:
            closed = wirtinger_constant(p, r).value
            quad = wirtinger_constant(p, r, 1e-12, method="quadrature").value
            worst = max(worst, abs(quad - closed) / closed)
    assert worst <= 1e-8


def test_c03_p2_closed_forms(label):
    label("03 p = 2 closed forms of the gradient and Wirtinger constants, 1e-10")
    for r in R_GRID + (0.1, 0.5, 0.75):
        assert abs(gradient_constant(2, DiskPoint(r, 1.1)).value - math.sqrt(1 + r * r) / math.sqrt(math.pi)) <= 1e-10
        assert abs(wirtinger_constant(2, r).value - math.sqrt(1 + r * r) / math.sqrt(2 * math.pi)) <= 1e-10


def test_c04_equality_cases(label):
    label("04 equality cases at the center pin the unnormalized norm")
    cos = TrigPoly([0.5, 0.0, 0.5])
    lhs = HarmonicExtension(cos).derivative(0.0).norm
    rhs = gradient_constant(2, DiskPoint(0.0)).value * lp_norm(cos, 2)
    assert abs(lhs - 1.0) <= 1e-10 and abs(rhs - 1.0) <= 1e-10
    exp = TrigPoly.from_dict({1: 1.0})
    lhs = abs(HarmonicExtension(exp).derivative(0.0).dz)
    rhs = wirtinger_constant(2, 0.0).value * lp_norm(exp, 2)
    assert abs(lhs - rhs) <= 1e-10


def test_c05_sharpness(label):
    label("05 sharpness: extrapolated ratios within 0.2%, raw within 1%, norm power within 0.5%")
    for p in (1.5, 2, 3, 5):
        for kind in ("gradient", "wirtinger"):
            st = sharpness_study(p, kind)
            assert st.relative_error <= 2e-3, st.as_dict()
            assert st.raw_relative_error <= 1e-2, st.as_dict()
        nl = norm_limit_study(p)
        assert nl.relative_error <= 5e-3, nl.as_dict()


def test_c06_extremal_directions(label):
    label("06 direction profile: constant at q = 2, extrema within pi/64")
    ts = np.linspace(0, 2 * math.pi, 32, endpoint=False)
    for r in (0.3, 0.7, 0.95):
        vals = [directional_profile(t, r, 2.0) for t in ts]
        assert max(vals) - min(vals) <= 1e-9
    for q in (1.2, 1.5, 2.5, 3, 5):
        for r in (0.3, 0.7, 0.95):
            rep = check_extremal_directions(q, r)
            assert rep.passed, rep.failures


def test_c07_crossover(label):
    label("07 radial/tangential crossover at p = 2 +- 1e-3")
    for r in (0.3, 0.5, 0.9):
        assert abs(crossover_exponent(r) - 2.0) <= 1e-3


def test_c08_mr_improvement(label):
    label("08 improvement over the Macintyre-Rogosinski factor, strict")
    for p in (1.2, 1.5, 2, 3, 10):
        q = p / (p - 1)
        for r in (0.0, 0.5, 0.9, 0.99):
            lhs = (2 * math.pi) ** (1 - q) * specfun.hyp2f1(1 - q, 1 - q, 1, r * r)
            assert 1 + r * r / (p - 1) ** 2 - lhs > 0


def test_c09_ordering_and_sandwich(label):
    label("09 direction ordering, c_p < C_p < 2 c_p, minimum of C_p at p = 2")
    for p in (1.2, 1.5, 2, 3, 5, 10):
        rep = check_direction_ordering(p, n_points=20, seed=9)
        assert rep.passed, rep.failures
    assert check_constant_sandwich((1.1, 1.5, 2, 3, 5, 10, 20)).passed
    ps = np.linspace(1.05, 20, 200)
    vals = [global_constant(p).value for p in ps]
    assert abs(ps[int(np.argmin(vals))] - 2.0) <= ps[1] - ps[0]


def test_c10_sine_power_identity(label):
    label("10 sine-power integral identity: quadrature vs hypergeometric on 50 random triples, 1e-8")
    rng = np.random.default_rng(10)
    for _ in range(50):
        mu, nu, r = rng.uniform(1.0, 6.0), rng.uniform(-3.0, 2.0), rng.uniform(0.0, 0.95)
        rep = check_sine_power_identity(mu, nu, r, rel_tol=1e-8)
        assert rep.passed, rep.cells


def test_c11_inequality_fuzz(label):
    label("11 inequality fuzz: 1000 seeded trials per p in {1.5, 2, 4}, zero violations")
    for p in (1.5, 2, 4):
        rep = fuzz_inequalities(p, trials=1000, seed=20240601, rel_tol=1e-8)
        assert rep.passed, [c.params for c in rep.failures][:5]


def _clamped_boundary(rng: np.random.Generator, kind: int):
    if kind == 0:
        n = int(rng.integers(1, 11))
        f = TrigPoly(rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1))
    elif kind == 1:
        n = int(rng.integers(1, 11))
        c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        f = TrigPoly(np.concatenate([np.conj(c[::-1]), [rng.standard_normal()], c]))
    else:
        th = np.arange(1024) * 2 * math.pi / 1024
        return Sampled(np.tanh(rng.uniform(2, 30) * np.cos(th - rng.uniform(0, 2 * math.pi))))
    return TrigPoly(f.coeffs / max(1.0, f.sup_abs()))


def test_c12_bloch_bound(label):
    label("12 Bloch constant of 20 random functions with |f| <= 1 is at most 4/pi + 1e-3")
    rng = np.random.default_rng(12)
    for i in range(20):
        f = _clamped_boundary(rng, i % 3)
        est = bloch_constant(HarmonicExtension(f))
        assert est.value <= FOUR_OVER_PI + 1e-3, (i, est)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
