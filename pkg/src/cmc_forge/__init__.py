"""Constant-mean-curvature Twizzlers and Delaunay surfaces from the sled dynamics."""

from .curves import SampledCurve, SledCurve, reparametrize_arclength, treadmill_sled, turning_angle, xi_coordinates
from .delaunay import DelaunaySpec, delaunay_gauss_extrema, delaunay_profile, rs
from .dynamics import (
    ClassificationReport,
    classify,
    fundamental_length,
    integrate_sled,
    reconstruct_profile,
    rotation_angle,
    solve_rotation,
    vector_field,
)
from .heart import HeartCurve, TwizzlerSpec, extremal_radii, h_w_eval, heart_point, sample_heart
from .isometry import alpha_c, curvature_ratio, isometry_class, moduli_lookup, twizzler_gauss_extrema

__version__ = "0.1.0"
