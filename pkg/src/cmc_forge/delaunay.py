"""Delaunay surfaces (unduloids M < 0, nodoids M > 0) with mean curvature 1.

The profile is integrated from the tangent-angle system
theta' = 2 + cos(theta)/z, z' = sin(theta), x' = cos(theta), whose first
integral is z (cos(theta) + z) = M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import SampledCurve
from .errors import AxisCollision, OutOfDomain, ToleranceNotMet
from .numerics import find_root, integrate

Z_FLOOR = 1e-10


@dataclass(frozen=True)
class DelaunaySpec:
    M: float

    def __post_init__(self):
        if not math.isfinite(self.M) or self.M <= -0.25 or self.M == 0.0:
            raise OutOfDomain(f"Delaunay needs M > -1/4 and M != 0, got {self.M!r}")

    @property
    def kind(self) -> str:
        return "Unduloid" if self.M < 0 else "Nodoid"

    @property
    def z_range(self) -> tuple[float, float]:
        q = math.sqrt(1.0 + 4.0 * self.M)
        return abs(1.0 - q) / 2.0, (1.0 + q) / 2.0


def delaunay_field(z: float, theta: float) -> tuple[float, float]:
    """(theta', z') of the H = 1 surface of revolution."""
    if z <= Z_FLOOR:
        raise AxisCollision(f"profile reached the axis (z={z!r})")
    return 2.0 + math.cos(theta) / z, math.sin(theta)


def delaunay_first_integral(z, theta):
    return z * (np.cos(theta) + z)


def _rhs(s, y):
    _, z, th = y
    if z <= Z_FLOOR:
        raise AxisCollision(f"profile reached the axis at s={s:.6g}")
    c = math.cos(th)
    return (c, math.sin(th), 2.0 + c / z)


def _invariant(y):
    return y[1] * (math.cos(y[2]) + y[1])


def _start(spec: DelaunaySpec) -> tuple[float, float, float]:
    # z is maximal with theta = pi: z(z - 1) = M there
    return 0.0, spec.z_range[1], math.pi


def delaunay_period(spec: DelaunaySpec, tol: float = 1e-10) -> float:
    """Arc length between successive maxima of z.

    Maxima are where z' = sin(theta) crosses zero from above; a coarse pass
    brackets the crossing and Brent refines it on re-integrated states.
    """
    y0 = _start(spec)
    ds = 0.02
    s_grid = np.arange(0.0, 200.0, ds)
    Y, _ = integrate(_rhs, y0, s_grid, min(tol, 1e-9), invariant=_invariant, drift_tol=1e-8)
    dz = np.sin(Y[:, 2])
    # skip the starting maximum itself
    start = int(np.argmax(dz < 0))
    idx = start + np.nonzero((dz[start:-1] > 0) & (dz[start + 1 :] <= 0))[0]
    if len(idx) == 0:
        raise ToleranceNotMet("no second maximum of z within s < 200")
    k = int(idx[0])

    def dz_at(s):
        Ys, _ = integrate(_rhs, Y[k], [s_grid[k], s], 1e-12)
        return math.sin(Ys[-1, 2])

    return find_root(dz_at, float(s_grid[k]), float(s_grid[k + 1]), tol)


def delaunay_profile(
    spec: DelaunaySpec,
    periods: int = 1,
    tol: float = 1e-9,
    samples_per_period: int = 512,
) -> SampledCurve:
    """Unit-speed profile over ``periods`` periods starting at a maximum of z."""
    if periods < 1:
        raise OutOfDomain("periods must be >= 1")
    P = delaunay_period(spec)
    s = np.linspace(0.0, periods * P, periods * samples_per_period + 1)
    Y, stats = integrate(_rhs, _start(spec), s, tol * 0.1, invariant=_invariant, drift_tol=tol)
    if stats.max_drift >= 10 * tol:
        raise ToleranceNotMet(f"first-integral drift {stats.max_drift:.3g}")
    return SampledCurve(s, Y[:, 0], Y[:, 1], closed=False, unit_speed=True, theta=Y[:, 2])


def _q(M: float) -> float:
    if not math.isfinite(M) or M < -0.25:
        raise OutOfDomain(f"M={M!r} < -1/4")
    return math.sqrt(max(1.0 + 4.0 * M, 0.0))


def delaunay_gauss_extrema(M: float) -> tuple[float, float]:
    """(K_max, K_min) of the Delaunay surface D(M)."""
    if M <= -0.25 or M == 0.0:
        raise OutOfDomain(f"Gauss extrema need M > -1/4, M != 0 (got {M!r})")
    q = _q(M)
    return 4.0 * q / (1.0 + q) ** 2, -4.0 * q / (q - 1.0) ** 2


def delaunay_gauss_curvature(z, theta):
    """Gauss curvature at a profile point, using theta' = 2 + cos(theta)/z."""
    c = np.cos(theta)
    return -c * (2.0 * z + c) / z**2


def rs(M: float) -> float:
    """K_max / K_min of D(M); -1 at M = -1/4 and 0 at M = 0."""
    q = _q(M)
    return -(((1.0 - q) / (1.0 + q)) ** 2)
