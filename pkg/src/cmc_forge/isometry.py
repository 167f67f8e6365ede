"""Isometry invariants across the moduli space.

Helicoidal CMC surfaces are classified up to isometry by the ratio of the
extreme Gauss curvatures; these functions evaluate that ratio for Twizzlers
and Delaunays and trace the curves of constant ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .delaunay import rs
from .errors import OutOfDomain
from .heart import TwizzlerSpec

SAME_CLASS_TOL = 1e-9


def _q(M: float) -> float:
    if not math.isfinite(M) or M < -0.25:
        raise OutOfDomain(f"M={M!r} < -1/4")
    return math.sqrt(max(1.0 + 4.0 * M, 0.0))


def twizzler_gauss_extrema(spec: TwizzlerSpec) -> tuple[float, float]:
    """(K_max, K_min), attained at u = 3pi/2 and u = pi/2 of the heart curve."""
    q = _q(spec.M)
    w2 = spec.w ** 2
    kmax = 2.0 * w2 * q / (2.0 + (1.0 + 2.0 * spec.M + q) * w2)
    kmin = -2.0 * w2 * q / (2.0 + (1.0 + 2.0 * spec.M - q) * w2)
    return kmax, kmin


def twizzler_gauss_curvature(spec: TwizzlerSpec, xi1, xi2):
    """K = (eg - f^2)/(EG - F^2) on the orbit, with theta' from H = 1."""
    w2 = spec.w ** 2
    a = 1.0 + w2 * xi1 * xi1
    tp = (-w2 * xi2 + 2.0 * a**1.5) / (1.0 + w2 * (xi1 * xi1 + xi2 * xi2))
    return -w2 * (1.0 + tp * xi2) / a**2


def curvature_ratio(spec: TwizzlerSpec) -> float:
    """K_max / K_min of the Twizzler; lies in (-1, 0)."""
    q = _q(spec.M)
    w2 = spec.w ** 2
    return -(2.0 + (1.0 + 2.0 * spec.M - q) * w2) / (2.0 + (1.0 + 2.0 * spec.M + q) * w2)


def alpha_interval(c: float) -> tuple[float, float]:
    if not (0.0 < c < 1.0):
        raise OutOfDomain(f"c={c!r} must lie in (0, 1)")
    r = math.sqrt(c)
    return -r / (1.0 + r) ** 2, r / (1.0 - r) ** 2


def alpha_c(c: float, M: float) -> float:
    """v on the curve of Twizzlers whose curvature ratio is -c."""
    lo, hi = alpha_interval(c)
    if not (lo <= M <= hi):
        raise OutOfDomain(f"M={M!r} outside ({lo:.6g}, {hi:.6g}) for c={c!r}")
    q = _q(M)
    num = q - 1.0 - 2.0 * M + c * (q + 1.0 + 2.0 * M)
    den = q + 1.0 - 2.0 * M + c * (q - 1.0 + 2.0 * M)
    return num / den


@dataclass
class IsometryClass:
    """Unduloid, nodoid and special Twizzler sharing curvature ratio -c."""

    c: float
    unduloid_M: float
    nodoid_M: float
    special_twizzler_v: float
    alpha_samples: list[tuple[float, float]] = field(default_factory=list)

    @property
    def ratio(self) -> float:
        return -self.c

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "unduloid_M": self.unduloid_M,
            "nodoid_M": self.nodoid_M,
            "special_twizzler_v": self.special_twizzler_v,
            "alpha_samples": [{"M": M, "v": v} for M, v in self.alpha_samples],
        }


def isometry_class(c: float, n_alpha: int = 0) -> IsometryClass:
    """The class with ratio -c; optionally sample ``n_alpha`` interior points of alpha_c."""
    lo, hi = alpha_interval(c)
    samples = []
    if n_alpha > 0:
        # open interval; stay clear of the Delaunay endpoints where v = 0
        for M in np.linspace(lo, hi, n_alpha + 2)[1:-1]:
            samples.append((float(M), alpha_c(c, float(M))))
    return IsometryClass(c, lo, hi, c, samples)


def same_class(ratio_a: float, ratio_b: float, tol: float = SAME_CLASS_TOL) -> bool:
    return abs(ratio_a - ratio_b) < tol


@dataclass(frozen=True)
class SurfaceDescriptor:
    kind: str
    M: float
    v: float = 0.0
    radius: float | None = None

    def __str__(self):
        if self.kind == "Cylinder":
            return f"Cylinder(radius={self.radius})"
        if self.kind == "Delaunay":
            return f"Delaunay({'nodoid' if self.M > 0 else 'unduloid'}, M={self.M})"
        return f"Twizzler(M={self.M}, v={self.v})"


def moduli_lookup(M: float, v: float) -> SurfaceDescriptor:
    """Surface named by a point of the moduli space."""
    if not (math.isfinite(M) and math.isfinite(v)) or M < -0.25 or not (0.0 <= v < 1.0):
        raise OutOfDomain(f"({M!r}, {v!r}) is outside the moduli space")
    if M == 0.0 and v == 0.0:
        raise OutOfDomain("(0, 0) is excluded from the moduli space")
    if M == -0.25:
        return SurfaceDescriptor("Cylinder", M, v, radius=0.5)
    if v == 0.0:
        return SurfaceDescriptor("Delaunay", M)
    return SurfaceDescriptor("Twizzler", M, v)


def invariant_ratio(desc: SurfaceDescriptor) -> float:
    """Curvature ratio of any surface in the moduli space (-1 for the cylinder limit)."""
    if desc.kind == "Cylinder":
        return -1.0
    if desc.kind == "Delaunay":
        return rs(desc.M)
    return curvature_ratio(TwizzlerSpec(desc.M, desc.v))
