import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmc_forge import dynamics
from cmc_forge.errors import BelowMinimumEnergy, DegenerateLevel, OutOfDomain
from cmc_forge.heart import (
    HeartCurve,
    TwizzlerSpec,
    extremal_radii,
    h_w_eval,
    heart_point,
    sample_heart,
)

specs = st.builds(
    TwizzlerSpec.from_w, st.floats(-0.24, 5.0), st.floats(0.2, 5.0)
)


def test_spec_domain():
    with pytest.raises(BelowMinimumEnergy):
        TwizzlerSpec(-0.3, 0.5)
    for v in (0.0, 1.0, -0.1, float("nan")):
        with pytest.raises(OutOfDomain):
            TwizzlerSpec(0.0, v)
    with pytest.raises(OutOfDomain):
        TwizzlerSpec.from_w(0.0, 0.0)
    s = TwizzlerSpec.from_w(1.0, 2.0)
    assert s.v == pytest.approx(0.2) and s.w == pytest.approx(2.0)


def test_extremal_radii_values():
    assert extremal_radii(0.0) == (0.0, 1.0)
    assert extremal_radii(2.0) == pytest.approx((1.0, 2.0))
    assert extremal_radii(-0.25) == (0.5, 0.5)
    with pytest.raises(BelowMinimumEnergy):
        extremal_radii(-0.26)


def test_degenerate_level_is_fixed_point():
    hc = HeartCurve.from_spec(TwizzlerSpec(-0.25, 0.5))
    assert heart_point(hc, 1.3) == (0.0, -0.5)
    with pytest.raises(DegenerateLevel):
        hc.tangent(0.0)


def test_fixed_point_of_vector_field():
    f1, f2 = dynamics.vector_field(TwizzlerSpec(0.3, 0.4), 0.0, -0.5)
    assert abs(f1) < 1e-15 and abs(f2) < 1e-15


def test_sample_heart_is_closed_and_parametrized_by_u():
    c = sample_heart(HeartCurve.from_spec(TwizzlerSpec(1.0, 0.5)), 64)
    assert len(c) == 65 and c.closed and not c.unit_speed
    with pytest.raises(ValueError):
        sample_heart(HeartCurve.from_spec(TwizzlerSpec(1.0, 0.5)), 8)


@given(specs)
def test_heart_points_lie_on_level_set(spec):
    hc = HeartCurve.from_spec(spec)
    u = np.linspace(0, 2 * np.pi, 257)
    assert np.max(np.abs(h_w_eval(spec, *hc.point(u)) - spec.M)) < 1e-10


@given(specs)
def test_heart_radii_span_the_annulus(spec):
    hc = HeartCurve.from_spec(spec)
    # |rho| is extremal where rho1 = 0: the min at u = pi/2, the max at 3pi/2
    r1, r2 = extremal_radii(spec.M)
    assert abs(abs(hc.point(0.5 * np.pi)[1]) - r1) < 1e-12 * max(1, r2)
    assert abs(abs(hc.point(1.5 * np.pi)[1]) - r2) < 1e-12 * max(1, r2)
    u = np.linspace(0, 2 * np.pi, 2001)
    r = np.hypot(*hc.point(u))
    assert r.min() >= r1 - 1e-12 and r.max() <= r2 + 1e-12


@given(specs, st.floats(0, 2 * math.pi))
def test_analytic_tangent_matches_difference(spec, u):
    hc = HeartCurve.from_spec(spec)
    h = 1e-5
    p, m = np.array(hc.point(u + h)), np.array(hc.point(u - h))
    fd = (p - m) / (2 * h)
    assert np.allclose(hc.tangent(u), fd, atol=1e-6 * (1 + np.abs(fd).max()))


@given(specs, st.floats(0, 2 * math.pi))
def test_flow_is_tangent_to_heart(spec, u):
    """The sled field is parallel to the heart curve (h_w is a first integral)."""
    hc = HeartCurve.from_spec(spec)
    d1, d2 = hc.tangent(u)
    f1, f2 = dynamics.vector_field(spec, *hc.point(u))
    scale = math.hypot(d1, d2) * math.hypot(f1, f2)
    assert abs(d1 * f2 - d2 * f1) <= 1e-9 * scale


def test_square_root_free_variant_is_not_conserved():
    """x2/(1 + w^2 x1^2) + |x|^2 drifts along the flow; the square-root form does not."""
    spec = TwizzlerSpec.from_w(1.0, 2.0)
    hc = HeartCurve.from_spec(spec)
    tr = dynamics.integrate_sled(spec, dynamics.start_point(spec), dynamics.fundamental_length(hc), 1e-10)
    w2 = spec.w ** 2
    plain = tr.xi2 / (1 + w2 * tr.xi1**2) + tr.xi1**2 + tr.xi2**2
    assert np.ptp(plain) > 1e-2
    assert np.max(np.abs(h_w_eval(spec, tr.xi1, tr.xi2) - spec.M)) < 1e-9


def test_h_w_examples():
    for w in (0.3, 1.0, 4.0):
        spec = TwizzlerSpec.from_w(0.0, w)
        assert h_w_eval(spec, 0.0, -0.5) == -0.25
        assert h_w_eval(spec, 0.0, 0.7) == pytest.approx(0.7 + 0.49)
    assert h_w_eval(TwizzlerSpec.from_w(0.0, 1.0), 1.0, 0.0) == 1.0


def test_heart_point_examples():
    hc = HeartCurve.from_spec(TwizzlerSpec.from_w(0.0, 1.0))
    A = math.sqrt((-1 + math.sqrt(2)) / 2)
    assert hc.A == pytest.approx(A, abs=1e-15)
    x1, x2 = heart_point(hc, 0.0)
    assert x1 == pytest.approx(A, abs=1e-15)
    assert x2 == pytest.approx(-1 / (2 * math.sqrt(1 + A * A)), abs=1e-15)


def test_sampled_heart_radii():
    c = sample_heart(HeartCurve.from_spec(TwizzlerSpec.from_w(1.0, 1.0)), 256)
    assert c.radius.min() == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-8)
    assert c.radius.max() == pytest.approx((math.sqrt(5) + 1) / 2, abs=1e-8)
    c0 = sample_heart(HeartCurve.from_spec(TwizzlerSpec.from_w(0.0, 2.0)), 512)
    assert c0.radius.min() < 1e-6
    deg = sample_heart(HeartCurve.from_spec(TwizzlerSpec(-0.25, 0.5)), 16)
    assert np.all(deg.x == 0.0) and np.all(deg.z == -0.5)


def test_extremal_radii_independent_of_w():
    u = np.linspace(0, 2 * np.pi, 4000, endpoint=False)
    for M in (-0.2, 0.5, 3.0):
        r = [np.hypot(*HeartCurve.from_spec(TwizzlerSpec.from_w(M, w)).point(u)) for w in (0.5, 1, 2, 5)]
        assert max(x.min() for x in r) - min(x.min() for x in r) < 1e-8
        assert max(x.max() for x in r) - min(x.max() for x in r) < 1e-8


@given(specs)
def test_heart_is_regular(spec):
    hc = HeartCurve.from_spec(spec)
    d1, d2 = hc.tangent(np.linspace(0, 2 * np.pi, 1024))
    assert np.min(np.hypot(d1, d2)) > 0
