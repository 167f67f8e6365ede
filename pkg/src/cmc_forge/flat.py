"""Flat helicoidal surfaces in closed form, used as an analytic oracle.

With r = sqrt(a s + b) the frame coordinates are xi1 = a/2, xi2 = r and the
turning angle is theta = -2 r / a, so the sled is the vertical half-line
u1 = -a/2, u2 <= 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import SampledCurve
from .errors import OutOfDomain
from .forms import profile_forms


@dataclass(frozen=True)
class FlatSpec:
    a: float
    b: float
    s_range: tuple[float, float] = (0.0, 4.0)
    mirror: bool = False

    def __post_init__(self):
        if self.a == 0.0:
            raise OutOfDomain("a = 0 is the cylinder; use the moduli lookup instead")
        s0, s1 = self.s_range
        if not s1 > s0:
            raise OutOfDomain("empty s_range")
        if min(self.a * s0 + self.b, self.a * s1 + self.b) <= 0.0:
            raise OutOfDomain("a*s + b must stay positive on s_range")


def flat_profile(spec: FlatSpec, n: int = 2048) -> SampledCurve:
    """Closed-form unit-speed profile sampled at ``n + 1`` points.

    ``mirror`` selects the branch xi2 = -r, theta = +2 r / a.
    """
    s = np.linspace(spec.s_range[0], spec.s_range[1], n + 1)
    r = np.sqrt(spec.a * s + spec.b)
    xi1 = 0.5 * spec.a
    xi2 = -r if spec.mirror else r
    theta = 2.0 * r / spec.a if spec.mirror else -2.0 * r / spec.a
    c, sn = np.cos(theta), np.sin(theta)
    x = xi1 * c - xi2 * sn
    z = xi1 * sn + xi2 * c
    return SampledCurve(s, x, z, closed=False, unit_speed=True, theta=theta)


def flat_gauss_check(spec: FlatSpec, w: float, n: int = 2048) -> float:
    """Largest |K| of the immersed flat surface, from sampled fundamental forms."""
    forms = profile_forms(flat_profile(spec, n), w)
    return float(np.max(np.abs(forms.gauss_curvature)))
