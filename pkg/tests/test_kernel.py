import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from disksharp.errors import DomainError
from disksharp.kernel import (
    DiskPoint,
    Direction,
    d_poisson,
    dbar_poisson,
    directional_poisson,
    mobius_substitution,
    normalize_angle,
    poisson,
    transported_kernel,
)
from disksharp.quadrature import TWO_PI, integrate_periodic

radii = st.floats(0.0, 0.95)
angles = st.floats(-10.0, 10.0)


def test_diskpoint_validation():
    with pytest.raises(DomainError):
        DiskPoint(1.0)
    with pytest.raises(DomainError):
        DiskPoint(-0.1)
    z = DiskPoint(0.5, 3 * math.pi)
    assert -math.pi <= z.alpha < math.pi
    assert DiskPoint.from_complex(z.z) == pytest.approx(z)


def test_directions():
    z = DiskPoint(0.4, 0.3)
    assert Direction.radial(z).unit == pytest.approx(z.z / abs(z.z))
    assert Direction.tangential(z).unit == pytest.approx(1j * z.z / abs(z.z))


def test_normalize_angle_range():
    x = normalize_angle(np.linspace(-20, 20, 1001))
    assert np.all(x >= -math.pi) and np.all(x < math.pi)


def test_poisson_examples():
    assert np.allclose(poisson(0.0, np.linspace(0, 6, 7)), 1.0)
    assert poisson(DiskPoint(0.5, 0.0), math.pi) == pytest.approx(1 / 3, rel=1e-15)


def test_poisson_mean_and_positivity_on_grid():
    for r in np.linspace(0, 0.95, 5):
        for a in np.linspace(-math.pi, math.pi, 4, endpoint=False):
            z = DiskPoint(r, a)
            assert np.all(poisson(z, np.linspace(0, TWO_PI, 257)) > 0)
            mean = integrate_periodic(lambda t: poisson(z, t), [z.alpha], 1e-12).value / TWO_PI
            assert mean == pytest.approx(1.0, abs=1e-11)


def test_d_poisson_at_center():
    th = np.linspace(0, TWO_PI, 9)
    assert np.allclose(d_poisson(0.0, th), np.exp(-1j * th))


@given(radii, angles, angles)
def test_dbar_is_conjugate(r, a, th):
    z = DiskPoint(r, a)
    assert dbar_poisson(z, th) == pytest.approx(np.conj(d_poisson(z, th)), rel=1e-12, abs=1e-12)


def test_finite_difference_fixed_point():
    r, a, th, h = 0.4, 0.7, 1.1, 1e-6
    z = cmath.rect(r, a)
    fd = (poisson(z + h, th) - poisson(z - h, th)) / (2 * h)
    assert abs(fd - 2 * np.real(d_poisson(z, th))) < 1e-6


@given(st.floats(0.0, 0.9), angles, angles, angles)
def test_directional_derivative_finite_difference(r, a, th, tau):
    z = cmath.rect(r, a)
    h = 1e-6
    u = cmath.exp(1j * tau)
    fd = (poisson(z + h * u, th) - poisson(z - h * u, th)) / (2 * h)
    assert abs(fd - directional_poisson(z, th, tau)) < 1e-5 * max(1.0, abs(fd))


def test_mobius_at_zero():
    s = np.linspace(-3, 3, 13)
    th, jac = mobius_substitution(0.0, s)
    assert np.allclose(np.exp(1j * th), np.exp(1j * (s + math.pi)))
    assert np.allclose(jac, 1.0)


@given(st.floats(0.0, 0.99))
def test_mobius_jacobian_total(r):
    val = integrate_periodic(lambda s: mobius_substitution(r, s)[1], [0.0], 1e-12).value
    assert val == pytest.approx(TWO_PI, abs=1e-10)


@given(st.floats(0.0, 0.99))
def test_mobius_is_monotone_bijection(r):
    s = np.linspace(0, TWO_PI, 2001)
    th, jac = mobius_substitution(r, s)
    un = np.unwrap(th)
    assert np.all(np.diff(un) > 0)
    assert un[-1] - un[0] == pytest.approx(TWO_PI, abs=1e-9)
    # finite differences of theta(s) match the returned Jacobian
    mid = 0.5 * (jac[1:] + jac[:-1])
    assert np.allclose(np.diff(un) / np.diff(s), mid, rtol=1e-3 + 1e-3 * r / (1 - r) ** 2)


def test_mobius_is_involution():
    s = np.linspace(-3, 3, 41)
    for r in (0.2, 0.9):
        th, _ = mobius_substitution(r, s)
        back, _ = mobius_substitution(r, th)
        assert np.allclose(np.exp(1j * back), np.exp(1j * s), atol=1e-12)


@given(st.floats(0.0, 0.99), angles, angles)
def test_transported_kernel_identity(r, s, shift):
    th, _ = mobius_substitution(r, s)
    lhs = np.real(np.exp(1j * (th + shift)) / (r - np.exp(1j * th)) ** 2)
    rhs = transported_kernel(r, s, shift)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_transported_kernel_sign_and_shift():
    # the variant with cos(s + shift) and a positive sign does not hold
    r, s, shift = 0.5, 0.8, 0.6
    th, _ = mobius_substitution(r, s)
    lhs = np.real(np.exp(1j * (th + shift)) / (r - np.exp(1j * th)) ** 2)
    variant = (1 + r * r - 2 * r * np.cos(s)) * np.cos(s + shift) / (1 - r * r) ** 2
    assert abs(lhs - variant) > 0.1
