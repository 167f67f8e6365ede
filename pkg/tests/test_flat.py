import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmc_forge.curves import treadmill_sled, xi_coordinates
from cmc_forge.errors import OutOfDomain
from cmc_forge.flat import FlatSpec, flat_gauss_check, flat_profile


def test_domain():
    with pytest.raises(OutOfDomain):
        FlatSpec(0.0, 1.0)
    with pytest.raises(OutOfDomain):
        FlatSpec(-1.0, 1.0, (0.0, 4.0))  # a s + b hits zero at s = 1
    with pytest.raises(OutOfDomain):
        FlatSpec(1.0, 1.0, (2.0, 2.0))


@pytest.mark.parametrize("mirror", [False, True])
def test_profile_is_unit_speed(mirror):
    prof = flat_profile(FlatSpec(2.0, 0.5, mirror=mirror), 8192)
    assert prof.chord_speed_error() < 1e-6


def test_closed_form_at_a_one():
    """At a = 1 the profile is ((1/2) cos 2r + r sin 2r, r cos 2r - (1/2) sin 2r)."""
    prof = flat_profile(FlatSpec(1.0, 1.0), 64)
    r = np.sqrt(prof.s + 1.0)
    assert np.allclose(prof.x, 0.5 * np.cos(2 * r) + r * np.sin(2 * r), atol=1e-14)
    assert np.allclose(prof.z, r * np.cos(2 * r) - 0.5 * np.sin(2 * r), atol=1e-14)


@settings(max_examples=15)
@given(st.floats(0.2, 3.0), st.floats(0.2, 4.0), st.booleans())
def test_sled_is_vertical_line(a, b, mirror):
    prof = flat_profile(FlatSpec(a, b, mirror=mirror), 4096)
    xi = xi_coordinates(prof)
    assert np.max(np.abs(xi.u1 - a / 2)) < 1e-6
    sled = treadmill_sled(prof)
    assert np.ptp(sled.u1) < 2e-6
    expected = -np.sqrt(a * prof.s + b) * (-1 if mirror else 1)
    assert np.max(np.abs(sled.u2 - expected)) < 1e-6


@pytest.mark.parametrize("a, b, w", [(1.0, 1.0, 1.0), (2.0, 0.5, 0.7), (-1.0, 6.0, 2.0)])
def test_immersion_is_flat(a, b, w):
    assert flat_gauss_check(FlatSpec(a, b), w, 4096) < 1e-5


def test_frame_coordinates_closed_forms():
    spec = FlatSpec(1.5, 0.8)
    prof = flat_profile(spec, 4096)
    xi = xi_coordinates(prof)
    assert np.max(np.abs(xi.u2**2 - (1.5 * prof.s + 0.8))) < 1e-6
    # theta' xi2 = -1 with theta' from differences of the sampled profile
    from cmc_forge.curves import turning_angle
    from cmc_forge.numerics import derivative

    s, th = turning_angle(prof)
    assert np.max(np.abs(derivative(th, s[1] - s[0]) * xi.u2 + 1.0)) < 1e-6


def test_full_pipeline_from_resampled_points():
    """Reparametrize raw closed-form points, then the sled still lies on u1 = -a/2."""
    from cmc_forge.curves import SampledCurve, reparametrize_arclength

    prof = flat_profile(FlatSpec(1.0, 1.0), 3000)
    u = np.arange(len(prof), dtype=float)
    raw = SampledCurve(u, prof.x, prof.z, unit_speed=False)
    sled = treadmill_sled(reparametrize_arclength(raw))
    assert np.max(np.abs(sled.u1 + 0.5)[3:-3]) < 1e-6
