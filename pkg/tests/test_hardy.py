import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from disksharp.constants import Exponent, gradient_constant, wirtinger_constant
from disksharp.errors import DomainError
from disksharp.hardy import (
    DerivativePair,
    HarmonicExtension,
    Sampled,
    TrigPoly,
    bloch_constant,
    boundary_from_json,
    boundary_to_json,
    hardy_norm,
    lp_norm,
)
from disksharp.kernel import DiskPoint

ONE = TrigPoly([1.0])
COS = TrigPoly([0.5, 0.0, 0.5])
EXP = TrigPoly.from_dict({1: 1.0})


def random_poly(seed, degree):
    rng = np.random.default_rng(seed)
    return TrigPoly(rng.standard_normal(2 * degree + 1) + 1j * rng.standard_normal(2 * degree + 1))


def test_trigpoly_construction():
    assert COS.is_real and not EXP.is_real
    assert EXP.degree == 1 and EXP.coefficient(1) == 1 and EXP.coefficient(5) == 0
    assert TrigPoly([1, 2], k_min=0).coefficient(1) == 2
    with pytest.raises(DomainError):
        TrigPoly([1, 2])
    with pytest.raises(DomainError):
        TrigPoly([math.nan])
    assert np.allclose(COS(np.array([0.0, math.pi])), [1.0, -1.0])


def test_sampled_validation():
    with pytest.raises(DomainError):
        Sampled(np.ones(8))
    with pytest.raises(DomainError):
        Sampled(np.ones(48))
    s = COS.to_samples(32)
    assert s.is_real and s.size == 32
    assert s(0.3) == pytest.approx(math.cos(0.3))


def test_sampled_roundtrip_to_trigpoly():
    f = random_poly(0, 5)
    back = f.to_samples(64).to_trigpoly()
    for k in range(-5, 6):
        assert back.coefficient(k) == pytest.approx(f.coefficient(k), abs=1e-13)


@pytest.mark.parametrize(
    "f, p, expected",
    [
        (ONE, 2, math.sqrt(2 * math.pi)),
        (COS, 2, math.sqrt(math.pi)),
        (COS, "inf", 1.0),
        (COS, 1, 4.0),
    ],
)
def test_lp_norm_examples(f, p, expected):
    assert lp_norm(f, p) == pytest.approx(expected, abs=1e-10)
    assert lp_norm(f.to_samples(64), p) == pytest.approx(expected, abs=1e-10 if p != 1 else 5e-3)


def test_lp_norm_rejects_small_p():
    with pytest.raises(DomainError):
        lp_norm(COS, 0.5)


def test_extension_examples():
    z = cmath.rect(0.5, 0.2)
    assert HarmonicExtension(ONE).evaluate(z) == pytest.approx(1.0)
    assert HarmonicExtension(COS).evaluate(z) == pytest.approx(z.real)
    assert HarmonicExtension(TrigPoly.from_dict({3: 1.0})).evaluate(DiskPoint(0.5, 0.2)) == pytest.approx(0.125 * cmath.exp(0.6j))


def test_derivative_examples():
    for z in (0.0, 0.3 + 0.4j, -0.9j):
        d = HarmonicExtension(COS).derivative(z)
        assert d.dz == pytest.approx(0.5) and d.dzbar == pytest.approx(0.5) and d.norm == pytest.approx(1.0)
        d = HarmonicExtension(EXP).derivative(z)
        assert d.dz == pytest.approx(1.0) and d.dzbar == pytest.approx(0.0)


def test_point_outside_disk():
    with pytest.raises(DomainError):
        HarmonicExtension(COS).evaluate(1.0)


@given(st.integers(0, 10_000), st.floats(0, 0.9), st.floats(-math.pi, math.pi))
def test_spectral_and_sampled_paths_agree(seed, r, a):
    f = random_poly(seed, 8)
    z = DiskPoint(r, a)
    exact, samp = HarmonicExtension(f), HarmonicExtension(f.to_samples(256))
    assert samp.evaluate(z) == pytest.approx(exact.evaluate(z), abs=1e-8)
    d1, d2 = exact.derivative(z), samp.derivative(z)
    assert abs(d1.dz - d2.dz) < 1e-8 and abs(d1.dzbar - d2.dzbar) < 1e-8


@given(st.integers(0, 10_000))
def test_mean_value_property(seed):
    f = random_poly(seed, 6)
    samples = f.to_samples(64)
    assert HarmonicExtension(samples).evaluate(0.0) == pytest.approx(samples.values.mean(), abs=1e-10)
    assert HarmonicExtension(f).evaluate(0.0) == pytest.approx(samples.values.mean(), abs=1e-10)


@given(st.integers(0, 10_000), st.floats(0, 0.9), st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi))
def test_derivative_finite_difference(seed, r, a, tau):
    f = random_poly(seed, 5)
    w = HarmonicExtension(f)
    z = cmath.rect(r, a)
    u, h = cmath.exp(1j * tau), 1e-6
    fd = (w.evaluate(z + h * u) - w.evaluate(z - h * u)) / (2 * h)
    assert abs(fd - w.derivative(z).apply(tau)) < 1e-5 * max(1.0, abs(fd))


@given(st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10))
def test_directional_image_bounded_by_norm(dz, dzbar):
    d = DerivativePair(dz, dzbar)
    taus = np.linspace(-math.pi, math.pi, 20)
    assert all(abs(d.apply(t)) <= d.norm * (1 + 1e-12) + 1e-12 for t in taus)
    assert abs(d.apply(d.maximizing_direction())) == pytest.approx(d.norm, rel=1e-12, abs=1e-12)


def test_center_equality_cases():
    d = HarmonicExtension(COS).derivative(0.0)
    assert d.norm == pytest.approx(gradient_constant(2, DiskPoint(0.0)).value * lp_norm(COS, 2), abs=1e-10)
    d = HarmonicExtension(EXP).derivative(0.0)
    assert abs(d.dz) == pytest.approx(wirtinger_constant(2, 0.0).value * lp_norm(EXP, 2), abs=1e-10)


def test_hardy_norm_examples():
    assert hardy_norm(HarmonicExtension(ONE), 2).value == pytest.approx(math.sqrt(2 * math.pi), abs=1e-10)
    hn = hardy_norm(HarmonicExtension(COS), 2)
    assert hn.value == pytest.approx(math.sqrt(math.pi), abs=1e-10)
    assert hn.nondecreasing and hn.radii == (0.5, 0.9, 0.99, 0.999)


def test_hardy_norm_matches_boundary_norm():
    f = random_poly(7, 6)
    hn = hardy_norm(HarmonicExtension(f), Exponent(3))
    assert hn.value == pytest.approx(lp_norm(f, 3), rel=1e-6)
    assert hn.nondecreasing
    assert hardy_norm(HarmonicExtension(f.to_samples(64)), 3).value == pytest.approx(hn.value, rel=1e-6)


def test_hardy_norm_validation():
    with pytest.raises(DomainError):
        hardy_norm(HarmonicExtension(COS), 2, ladder=(0.5, 1.0))


def test_bloch_examples():
    assert bloch_constant(HarmonicExtension(COS)).value == pytest.approx(1.0, abs=1e-9)
    est = bloch_constant(HarmonicExtension(EXP))
    assert est.value == pytest.approx(1.0, abs=1e-9) and abs(est.argmax) < 1e-3


def test_bloch_smoothed_step_below_four_over_pi():
    th = np.arange(1024) * 2 * math.pi / 1024
    est = bloch_constant(HarmonicExtension(Sampled(np.tanh(20 * np.cos(th)))))
    assert 1.2 < est.value <= 4 / math.pi + 1e-3


def test_json_roundtrip():
    f = random_poly(1, 3)
    g = boundary_from_json(json.dumps(boundary_to_json(f)))
    assert np.allclose(g.coeffs, f.coeffs)
    s = COS.to_samples(16)
    assert np.allclose(boundary_from_json(boundary_to_json(s)).values, s.values)
    c = f.to_samples(16)
    assert np.allclose(boundary_from_json(boundary_to_json(c)).values, c.values)
    with pytest.raises(DomainError):
        boundary_from_json({"type": "trigpoly", "coeffs": [[1, 2, 3]]})
