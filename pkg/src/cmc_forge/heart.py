"""The first integral h_w of the Twizzler sled system and its level sets.

Level sets ``h_w = M`` are closed heart-shaped curves for every M > -1/4;
``M = -1/4`` collapses to the point (0, -1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import SampledCurve
from .errors import BelowMinimumEnergy, DegenerateLevel, OutOfDomain

M_MIN = -0.25
_CLAMP = 1e-14


def _sqrt_clamped(a):
    """sqrt that forgives floating-point dust just below zero."""
    a = np.asarray(a, dtype=float)
    if np.any(a < -_CLAMP):
        raise ValueError(f"negative radicand {float(np.min(a))!r}")
    return np.sqrt(np.maximum(a, 0.0))


@dataclass(frozen=True)
class TwizzlerSpec:
    """A point (M, v) of the moduli space; ``w = sqrt((1 - v) / v)``."""

    M: float
    v: float

    def __post_init__(self):
        if not math.isfinite(self.M) or self.M < M_MIN:
            raise BelowMinimumEnergy(f"M={self.M!r} is below the minimum energy -1/4")
        if not (0.0 < self.v < 1.0):
            raise OutOfDomain(f"v={self.v!r} must lie in (0, 1)")

    @classmethod
    def from_w(cls, M: float, w: float) -> "TwizzlerSpec":
        if not w > 0:
            raise OutOfDomain(f"w={w!r} must be positive")
        return cls(M, 1.0 / (1.0 + w * w))

    @property
    def w(self) -> float:
        return math.sqrt((1.0 - self.v) / self.v)

    @property
    def degenerate(self) -> bool:
        return self.M == M_MIN


def h_w_eval(spec: TwizzlerSpec, x1, x2):
    """h_w(x1, x2) = x2 / sqrt(1 + w^2 x1^2) + x1^2 + x2^2."""
    w = spec.w
    return x2 / np.sqrt(1.0 + w * w * x1 * x1) + x1 * x1 + x2 * x2


def extremal_radii(M: float) -> tuple[float, float]:
    """Min and max distance from the origin to the level set h_w = M."""
    if M < M_MIN:
        raise BelowMinimumEnergy(f"M={M!r} < -1/4")
    q = float(_sqrt_clamped(1.0 + 4.0 * M))
    return abs(q - 1.0) / 2.0, (q + 1.0) / 2.0


@dataclass(frozen=True)
class HeartCurve:
    """Closed-form parametrization u -> (rho1(u), rho2(u)) of h_w^{-1}(M)."""

    spec: TwizzlerSpec
    A: float
    B: float

    @classmethod
    def from_spec(cls, spec: TwizzlerSpec) -> "HeartCurve":
        M, w = spec.M, spec.w
        w2 = w * w
        root = math.sqrt(1.0 + (1.0 + 2.0 * M) * w2 + M * M * w2 * w2)
        A = float(_sqrt_clamped(-1.0 + M * w2 + root)) / (math.sqrt(2.0) * w)
        B = (2.0 + 2.0 * M * M * w2 * w2 + w2 + 2.0 * (M * w2 - 1.0) * root) / w2
        return cls(spec, A, B)

    def _radicand(self, c2):
        return _sqrt_clamped(1.0 + 4.0 * self.spec.M + self.B * c2)

    def point(self, u):
        """(rho1, rho2) at angle(s) ``u``; vectorized."""
        u = np.asarray(u, dtype=float)
        if self.spec.degenerate:
            return np.zeros_like(u), np.full_like(u, -0.5)
        w = self.spec.w
        c, s = np.cos(u), np.sin(u)
        rho1 = self.A * c
        rho2 = (-1.0 + self._radicand(c * c) * s) / (2.0 * np.sqrt(1.0 + w * w * rho1 * rho1))
        return rho1, rho2

    def tangent(self, u):
        """(d rho1/du, d rho2/du), vectorized."""
        u = np.asarray(u, dtype=float)
        if self.spec.degenerate:
            raise DegenerateLevel("the level set M = -1/4 is a single point")
        w2 = self.spec.w ** 2
        A, B = self.A, self.B
        c, s = np.cos(u), np.sin(u)
        S = self._radicand(c * c)
        D = np.sqrt(1.0 + w2 * A * A * c * c)
        dS = -B * c * s / S
        dD = -w2 * A * A * c * s / D
        N = -1.0 + S * s
        dN = dS * s + S * c
        return -A * s, (dN * D - N * dD) / (2.0 * D * D)


def heart_point(hc: HeartCurve, u: float) -> tuple[float, float]:
    if hc.spec.M < M_MIN:
        raise BelowMinimumEnergy(f"M={hc.spec.M!r} < -1/4")
    r1, r2 = hc.point(u)
    return float(r1), float(r2)


def sample_heart(hc: HeartCurve, n: int) -> SampledCurve:
    """``n`` uniform-u samples of the heart curve plus the closing sample.

    The parameter is u, not arc length, so the curve is flagged
    ``unit_speed=False``.
    """
    if n < 16:
        raise ValueError("n must be at least 16")
    u = np.linspace(0.0, 2.0 * np.pi, n + 1)
    r1, r2 = hc.point(u)
    r1[-1], r2[-1] = r1[0], r2[0]
    return SampledCurve(u, r1, r2, closed=True, unit_speed=False)
