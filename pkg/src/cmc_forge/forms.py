"""Fundamental forms of the helicoidal immersion evaluated from a sampled
profile.

Everything here is computed from the samples alone (finite differences of
position and turning angle), never from the ODE right-hand side, so these
functions serve as independent checks on reconstructed profiles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import SampledCurve, turning_angle, xi_coordinates
from .numerics import derivative


@dataclass
class Forms:
    s: np.ndarray
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    e: np.ndarray
    f: np.ndarray
    g: np.ndarray
    xi1: np.ndarray
    xi2: np.ndarray
    dtheta: np.ndarray

    @property
    def det_first(self) -> np.ndarray:
        return self.E * self.G - self.F**2

    @property
    def mean_curvature(self) -> np.ndarray:
        return (self.e * self.G - 2 * self.f * self.F + self.g * self.E) / (2 * self.det_first)

    @property
    def gauss_curvature(self) -> np.ndarray:
        return (self.e * self.g - self.f**2) / self.det_first


def _raw_derivatives(curve: SampledCurve):
    h = float(np.mean(np.diff(curve.s)))
    if curve.closed:
        dx = np.append(d := derivative(curve.x[:-1], h, periodic=True), d[0])
        dz = np.append(d := derivative(curve.z[:-1], h, periodic=True), d[0])
    else:
        dx, dz = derivative(curve.x, h), derivative(curve.z, h)
    return h, dx, dz


def profile_forms(profile: SampledCurve, w: float) -> Forms:
    """First and second fundamental forms of phi(s, t) along the profile.

    E, F, G use the raw (unnormalized) difference derivatives, so a profile
    that is not unit speed shows up as E != 1. The second form is written for
    a general speed: with speed sigma, EG - F^2 = sigma^2 (1 + w^2 xi1^2).
    """
    h, dx, dz = _raw_derivatives(profile)
    x, z = profile.x, profile.z
    xi = xi_coordinates(profile)
    _, theta = turning_angle(profile)
    dtheta = derivative(theta, h)
    E = dx * dx + dz * dz
    F = w * (z * dx - x * dz)
    G = 1.0 + w * w * (x * x + z * z)
    root = np.sqrt(E * G - F * F)
    return Forms(
        s=profile.s,
        E=E,
        F=F,
        G=G,
        e=dtheta * E / root,
        f=-w * E / root,
        g=-(w * w) * xi.u2 * np.sqrt(E) / root,
        xi1=xi.u1,
        xi2=xi.u2,
        dtheta=dtheta,
    )


def twizzler_mean_curvature(profile: SampledCurve, w: float) -> np.ndarray:
    return profile_forms(profile, w).mean_curvature


def twizzler_gauss_curvature(profile: SampledCurve, w: float) -> np.ndarray:
    return profile_forms(profile, w).gauss_curvature
