import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmc_forge.delaunay import (
    DelaunaySpec,
    delaunay_field,
    delaunay_first_integral,
    delaunay_gauss_curvature,
    delaunay_gauss_extrema,
    delaunay_period,
    delaunay_profile,
    rs,
)
from cmc_forge.errors import AxisCollision, OutOfDomain
from cmc_forge.numerics import derivative

# Arc-length period and x-translation per period from scipy DOP853
# (rtol = atol = 1e-13), started at the top of the profile with theta = pi and
# stopped at the next maximum of z.
PERIOD_ORACLE = {
    0.5: (3.141592653589656, -0.9504478707016786),
    -0.1: (3.1415926535905156, -2.5968560700949044),
    2.0: (3.141592653589836, -0.5311928152746557),
    -2.0 / 9.0: (3.141592653590999, -3.052418468425295),
}


def test_spec_domain_and_kind():
    for M in (0.0, -0.25, -0.3, float("inf")):
        with pytest.raises(OutOfDomain):
            DelaunaySpec(M)
    assert DelaunaySpec(-0.1).kind == "Unduloid"
    assert DelaunaySpec(0.3).kind == "Nodoid"


def test_axis_collision():
    with pytest.raises(AxisCollision):
        delaunay_field(0.0, 1.0)


@pytest.mark.parametrize("M", sorted(PERIOD_ORACLE))
def test_period_and_translation(M):
    spec = DelaunaySpec(M)
    period, shift = PERIOD_ORACLE[M]
    assert delaunay_period(spec) == pytest.approx(period, abs=1e-9)
    prof = delaunay_profile(spec, 1)
    assert prof.x[-1] - prof.x[0] == pytest.approx(shift, abs=1e-8)
    assert prof.z[-1] == pytest.approx(prof.z[0], abs=1e-8)


def test_starting_angle_matters():
    """At the top of the profile only theta = pi lies on the level h = M."""
    spec = DelaunaySpec(2.0)
    z = spec.z_range[1]
    assert delaunay_first_integral(z, math.pi) == pytest.approx(2.0, abs=1e-14)
    assert abs(delaunay_first_integral(z, 0.0) - 2.0) > 1.0


def test_z_range_closed_form():
    assert DelaunaySpec(2.0).z_range == pytest.approx((1.0, 2.0))
    assert DelaunaySpec(-2.0 / 9.0).z_range == pytest.approx((1.0 / 3.0, 2.0 / 3.0))


@settings(max_examples=15)
@given(st.floats(-0.24, 4.0).filter(lambda m: abs(m) > 1e-3))
def test_first_integral_and_extrema(M):
    spec = DelaunaySpec(M)
    prof = delaunay_profile(spec, 2)
    assert np.max(np.abs(delaunay_first_integral(prof.z, prof.theta) - M)) < 1e-8
    zmin, zmax = spec.z_range
    assert prof.z.max() == pytest.approx(zmax, abs=1e-6)
    assert prof.z.min() == pytest.approx(zmin, abs=1e-6)


@pytest.mark.parametrize("M", [-0.2, 0.6, 3.0])
def test_gauss_curvature_from_profile(M):
    """K = -z''/z from differences matches the closed-form K and its extrema."""
    prof = delaunay_profile(DelaunaySpec(M), 1, samples_per_period=4096)
    h = prof.s[1] - prof.s[0]
    zpp = derivative(derivative(prof.z, h), h)
    K_fd = -zpp / prof.z
    K = delaunay_gauss_curvature(prof.z, prof.theta)
    assert np.max(np.abs(K_fd[4:-4] - K[4:-4])) < 1e-6
    kmax, kmin = delaunay_gauss_extrema(M)
    assert K.max() == pytest.approx(kmax, abs=1e-6)
    assert K.min() == pytest.approx(kmin, abs=1e-6)


def test_rs_anchor_values():
    assert rs(2.0) == pytest.approx(-0.25, abs=1e-12)
    assert rs(-2.0 / 9.0) == pytest.approx(rs(2.0), abs=1e-12)
    assert rs(-0.25) == -1.0
    assert rs(0.0) == 0.0


@given(st.floats(0.01, 0.99))
def test_unduloid_nodoid_pairs_share_ratio(c):
    r = math.sqrt(c)
    assert rs(-r / (1 + r) ** 2) == pytest.approx(-c, abs=1e-12)
    assert rs(r / (1 - r) ** 2) == pytest.approx(-c, abs=1e-12)


def test_field_and_integral_examples():
    assert delaunay_field(0.5, math.pi) == pytest.approx((0.0, 0.0), abs=1e-15)
    assert delaunay_field(1.0, math.pi / 2) == pytest.approx((2.0, 1.0))
    assert delaunay_first_integral(0.5, math.pi) == pytest.approx(-0.25)
    assert delaunay_first_integral(1.0, math.pi / 2) == pytest.approx(1.0)
    with pytest.raises(AxisCollision):
        delaunay_field(1e-11, math.pi)


def test_gauss_extrema_examples_and_limits():
    assert delaunay_gauss_extrema(2.0) == pytest.approx((0.75, -3.0))
    kmax, kmin = delaunay_gauss_extrema(1e-8)
    assert kmax == pytest.approx(1.0, abs=1e-6) and kmin < -1e6
    for M in (-0.2, -0.05, 0.3, 7.0):
        kmax, kmin = delaunay_gauss_extrema(M)
        assert rs(M) == pytest.approx(kmax / kmin, abs=1e-12)
    with pytest.raises(OutOfDomain):
        delaunay_gauss_extrema(0.0)


@pytest.mark.parametrize("M", [-0.2, 0.4, 2.5])
def test_mean_curvature_along_profile(M):
    """(theta' - cos(theta)/z)/2 = 1 with theta' from differences of the samples."""
    prof = delaunay_profile(DelaunaySpec(M), 1, samples_per_period=4096)
    dtheta = derivative(prof.theta, prof.s[1] - prof.s[0])
    H = 0.5 * (dtheta - np.cos(prof.theta) / prof.z)
    assert np.max(np.abs(H - 1.0)) < 1e-8


def test_pair_identity_dense():
    for u in np.linspace(0.005, 0.995, 100):
        r = math.sqrt(u)
        assert rs(-r / (1 + r) ** 2) == pytest.approx(-u, abs=1e-12)
        assert rs(r / (1 - r) ** 2) == pytest.approx(-u, abs=1e-12)


def test_rs_monotone_on_each_branch():
    neg = -np.logspace(np.log10(0.2499), -8, 200)
    pos = np.logspace(-8, 4, 200)
    assert np.all(np.diff([rs(m) for m in neg]) > 0)
    assert np.all(np.diff([rs(m) for m in pos]) < 0)
