"""Planar curve utilities: arc-length resampling, turning angle, the frame
coordinates (xi1, xi2) of the position vector and the treadmill sled.

Orientation is never normalized. A clockwise circle and a counterclockwise
circle have sleds that differ in the sign of the second coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DegenerateCurve
from .numerics import derivative, refined_extrema

CLOSURE_RTOL = 1e-6
MIN_CLOSED_SAMPLES = 512


@dataclass
class SampledCurve:
    """Ordered samples ``(s, x, z)`` of a planar curve.

    ``s`` is arc length when ``unit_speed`` is true, otherwise just the
    sampling parameter. Closed curves repeat the first point as the last
    sample. ``theta`` optionally carries an exactly known turning angle.
    """

    s: np.ndarray
    x: np.ndarray
    z: np.ndarray
    closed: bool = False
    unit_speed: bool = True
    theta: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        self.x = np.asarray(self.x, dtype=float)
        self.z = np.asarray(self.z, dtype=float)
        if self.theta is not None:
            self.theta = np.asarray(self.theta, dtype=float)
        if not (len(self.s) == len(self.x) == len(self.z)):
            raise DegenerateCurve("s, x, z must have equal length")
        if len(self.s) < 4:
            raise DegenerateCurve(f"need at least 4 samples, got {len(self.s)}")
        if np.any(np.diff(self.s) <= 0):
            raise DegenerateCurve("s must be strictly increasing")

    def __len__(self):
        return len(self.s)

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.x, self.z])

    @property
    def length(self) -> float:
        return float(self.s[-1] - self.s[0])

    @property
    def radius(self) -> np.ndarray:
        return np.hypot(self.x, self.z)

    def chord_speed_error(self) -> float:
        """Largest relative mismatch between chord length and parameter step."""
        chords = np.hypot(np.diff(self.x), np.diff(self.z))
        return float(np.max(np.abs(chords / np.diff(self.s) - 1.0)))

    def is_unit_speed(self, rtol: float = 0.01) -> bool:
        return self.chord_speed_error() < rtol


@dataclass
class SledCurve:
    """Samples ``(s, u1, u2)`` of a sled-plane curve.

    ``raw`` marks the frame coordinates (xi1, xi2) rather than the sled
    -(xi1, xi2).
    """

    s: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    raw: bool = False

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        self.u1 = np.asarray(self.u1, dtype=float)
        self.u2 = np.asarray(self.u2, dtype=float)
        if np.any(np.diff(self.s) <= 0):
            raise DegenerateCurve("s must be strictly increasing")

    def __len__(self):
        return len(self.s)

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.u1, self.u2])

    def negated(self) -> "SledCurve":
        return SledCurve(self.s, -self.u1, -self.u2, raw=not self.raw)


def is_closed(x: np.ndarray, z: np.ndarray) -> bool:
    length = float(np.sum(np.hypot(np.diff(x), np.diff(z))))
    return math.hypot(x[-1] - x[0], z[-1] - z[0]) <= CLOSURE_RTOL * max(length, 1e-300)


def _gauss_legendre_lengths(spline: CubicSpline, knots: np.ndarray, order: int = 8) -> np.ndarray:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    a, b = knots[:-1, None], knots[1:, None]
    t = 0.5 * (b - a) * nodes[None, :] + 0.5 * (a + b)
    d = spline(t, 1)
    speed = np.hypot(d[..., 0], d[..., 1])
    return 0.5 * (knots[1:] - knots[:-1]) * (speed @ weights)


def reparametrize_arclength(curve: SampledCurve, target_ds: float | None = None) -> SampledCurve:
    """Resample a curve uniformly in arc length.

    The samples are interpolated by a cubic spline in chord-length
    parameter (periodic when the curve is closed); arc length of the spline
    is integrated with Gauss-Legendre per knot interval and inverted with
    Newton steps. With ``target_ds`` omitted, closed curves get 512 samples
    and open curves keep their sample count.
    """
    pts = curve.points
    closed = curve.closed or is_closed(curve.x, curve.z)
    if closed and not is_closed(curve.x, curve.z):
        pts = np.vstack([pts, pts[:1]])
    chords = np.hypot(*np.diff(pts, axis=0).T)
    if np.any(chords <= 0.0):
        raise DegenerateCurve("consecutive duplicate points")
    if closed:
        pts = pts.copy()
        pts[-1] = pts[0]
    t = np.concatenate([[0.0], np.cumsum(chords)])
    spline = CubicSpline(t, pts, bc_type="periodic" if closed else "not-a-knot")
    seg = _gauss_legendre_lengths(spline, t)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = float(cum[-1])
    if target_ds is None:
        n = MIN_CLOSED_SAMPLES if closed else len(curve) - 1
    else:
        n = max(3, int(math.ceil(total / target_ds)))
        if closed:
            n = max(n, MIN_CLOSED_SAMPLES)
    s_new = np.linspace(0.0, total, n + 1)
    # invert S(t) = s by interpolation then Newton on the spline
    t_new = np.interp(s_new, cum, t)
    for _ in range(6):
        k = np.clip(np.searchsorted(t, t_new, side="right") - 1, 0, len(t) - 2)
        nodes, weights = np.polynomial.legendre.leggauss(8)
        a = t[k][:, None]
        b = t_new[:, None]
        tt = 0.5 * (b - a) * nodes[None, :] + 0.5 * (a + b)
        d = spline(tt, 1)
        partial = 0.5 * (t_new - t[k]) * (np.hypot(d[..., 0], d[..., 1]) @ weights)
        S = cum[k] + partial
        dt = spline(t_new, 1)
        speed = np.hypot(dt[:, 0], dt[:, 1])
        t_new = t_new - (S - s_new) / speed
    t_new[0], t_new[-1] = t[0], t[-1]
    out = spline(t_new)
    if closed:
        out[-1] = out[0]
    return SampledCurve(s_new, out[:, 0], out[:, 1], closed=closed, unit_speed=True)


def _require_unit_speed(curve: SampledCurve):
    if not curve.unit_speed:
        raise DegenerateCurve("curve is not parametrized by arc length; reparametrize first")


def unit_tangent(curve: SampledCurve) -> tuple[np.ndarray, np.ndarray]:
    """Unit tangent from 4th-order centered differences, normalized.

    Normalizing removes the O(h^4) speed error so identities such as
    xi1^2 + xi2^2 = x^2 + z^2 hold to rounding.
    """
    _require_unit_speed(curve)
    h = float(np.mean(np.diff(curve.s)))
    if len(curve) < 5:
        raise DegenerateCurve("need at least 5 samples for differentiation")
    if curve.closed:
        dx = derivative(curve.x[:-1], h, periodic=True)
        dz = derivative(curve.z[:-1], h, periodic=True)
        dx, dz = np.append(dx, dx[0]), np.append(dz, dz[0])
    else:
        dx = derivative(curve.x, h)
        dz = derivative(curve.z, h)
    speed = np.hypot(dx, dz)
    if np.any(speed == 0):
        raise DegenerateCurve("zero tangent")
    return dx / speed, dz / speed


def xi_coordinates(curve: SampledCurve) -> SledCurve:
    """Coordinates of the position vector in the moving frame {T, J T}."""
    tx, tz = unit_tangent(curve)
    xi1 = curve.x * tx + curve.z * tz
    xi2 = -curve.x * tz + curve.z * tx
    return SledCurve(curve.s, xi1, xi2, raw=True)


def treadmill_sled(curve: SampledCurve) -> SledCurve:
    """Trace of the origin when the curve rolls on a treadmill: -(xi1, xi2)."""
    return xi_coordinates(curve).negated()


def turning_angle(curve: SampledCurve) -> tuple[np.ndarray, np.ndarray]:
    """Continuous lift ``theta(s)`` with ``(x', z') = (cos theta, sin theta)``."""
    tx, tz = unit_tangent(curve)
    return curve.s.copy(), np.unwrap(np.arctan2(tz, tx))


def radius_extrema(curve: SampledCurve) -> tuple[float, float]:
    """Min and max distance to the origin, refined between samples.

    Uses d|p|^2/ds = 2 xi1; xi1 comes from the exact turning angle when the
    curve carries one, else from differences.
    """
    if curve.theta is not None:
        xi1 = curve.x * np.cos(curve.theta) + curve.z * np.sin(curve.theta)
    else:
        xi1 = xi_coordinates(curve).u1
    lo, hi = refined_extrema(curve.s, curve.x**2 + curve.z**2, 2 * xi1)
    return math.sqrt(max(lo, 0.0)), math.sqrt(hi)


def rotate(points: np.ndarray, angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return points @ np.array([[c, s], [-s, c]])
