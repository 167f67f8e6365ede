"""Sled dynamics of mean-curvature-1 Twizzlers.

The frame coordinates (xi1, xi2) of a Twizzler profile obey an autonomous
planar system whose orbits are the heart curves. Reparametrizing an orbit by
the heart-curve angle u turns the arc length and the turning angle of one
fundamental piece into periodic quadratures, and the whole profile is the
orbit of that piece under rotation by ``theta0``.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .curves import SampledCurve
from .errors import DegenerateLevel, NoSignChange, OutOfDomain, ToleranceNotMet
from .heart import HeartCurve, TwizzlerSpec, extremal_radii, h_w_eval
from .numerics import IntegrationStats, convergents, find_root, integrate, periodic_trapezoid

log = logging.getLogger(__name__)

FIXED_POINT = (0.0, -0.5)
DEFAULT_ODE_TOL = 1e-9
DEFAULT_QUAD_TOL = 1e-10
DEFAULT_ROOT_TOL = 1e-10
DEFAULT_CLASSIFY_TOL = 1e-8
DEFAULT_MAX_DENOMINATOR = 64


def theta_prime(spec: TwizzlerSpec, x1, x2):
    """Turning-angle speed forced by H = 1 at frame coordinates (x1, x2)."""
    w2 = spec.w ** 2
    return (-w2 * x2 + 2.0 * (1.0 + w2 * x1 * x1) ** 1.5) / (1.0 + w2 * (x1 * x1 + x2 * x2))


def vector_field(spec: TwizzlerSpec, x1, x2):
    """Right-hand side (f1, f2) of the sled system."""
    tp = theta_prime(spec, x1, x2)
    return tp * x2 + 1.0, -tp * x1


def _rhs(w: float):
    w2 = w * w

    def rhs(s, y):
        x1, x2 = y[0], y[1]
        a = x1 * x1
        tp = (-w2 * x2 + 2.0 * (1.0 + w2 * a) ** 1.5) / (1.0 + w2 * (a + x2 * x2))
        return (tp * x2 + 1.0, -tp * x1, tp)

    return rhs


def _invariant(w: float):
    w2 = w * w

    def h(y):
        return y[1] / math.sqrt(1.0 + w2 * y[0] * y[0]) + y[0] * y[0] + y[1] * y[1]

    return h


@dataclass
class Trajectory:
    """Solution samples of the sled system with the lifted turning angle."""

    s: np.ndarray
    xi1: np.ndarray
    xi2: np.ndarray
    theta: np.ndarray
    level: float
    stats: IntegrationStats = field(repr=False)

    @property
    def max_drift(self) -> float:
        return self.stats.max_drift


def integrate_sled(
    spec: TwizzlerSpec,
    start: tuple[float, float],
    arc_span: float,
    tol: float = DEFAULT_ODE_TOL,
    n_out: int = 1024,
    theta_start: float = 0.0,
) -> Trajectory:
    """Integrate (xi1, xi2, theta) over ``[0, arc_span]``.

    Steps are rejected whenever h_w moves more than ``tol`` from its starting
    value, so the level set is held to within ``10 * tol`` over the span.
    """
    if not (1e-12 <= tol <= 1e-4):
        raise OutOfDomain(f"tol={tol!r} outside [1e-12, 1e-4]")
    if arc_span < 0:
        raise OutOfDomain("arc_span must be non-negative")
    w = spec.w
    h = _invariant(w)
    s_out = np.linspace(0.0, arc_span, max(n_out, 2))
    y0 = (float(start[0]), float(start[1]), float(theta_start))
    # the local error target is tighter than the drift budget so that drift
    # rejections stay rare
    Y, stats = integrate(_rhs(w), y0, s_out, tol * 0.1, invariant=h, drift_tol=tol)
    if stats.max_drift >= 10 * tol:
        raise ToleranceNotMet(f"first-integral drift {stats.max_drift:.3g} exceeds {10 * tol:.3g}")
    return Trajectory(s_out, Y[:, 0], Y[:, 1], Y[:, 2], h(y0), stats)


def lambda_mu(hc: HeartCurve, u):
    """Squared speeds of the heart parametrization (lambda) and of the flow (mu)."""
    if hc.spec.degenerate:
        raise DegenerateLevel("M = -1/4: the level set is a fixed point")
    d1, d2 = hc.tangent(u)
    r1, r2 = hc.point(u)
    f1, f2 = vector_field(hc.spec, r1, r2)
    return d1 * d1 + d2 * d2, f1 * f1 + f2 * f2


def length_density(hc: HeartCurve, u):
    """Arc length per unit u along the orbit: sqrt(lambda / mu)."""
    lam, mu = lambda_mu(hc, u)
    return np.sqrt(lam / mu)


def psi(hc: HeartCurve, u):
    """Turning angle per unit u along the orbit."""
    r1, r2 = hc.point(u)
    return theta_prime(hc.spec, r1, r2) * length_density(hc, u)


def fundamental_length(hc: HeartCurve, tol: float = DEFAULT_QUAD_TOL) -> float:
    """Arc length of one fundamental piece, by periodic quadrature in u."""
    value, _ = periodic_trapezoid(lambda u: length_density(hc, u), tol)
    return value


def rotation_angle(hc: HeartCurve, tol: float = DEFAULT_QUAD_TOL) -> float:
    """theta0: the rotation carrying a fundamental piece onto the next one."""
    nodes = []

    def f(u):
        vals = psi(hc, u)
        nodes.append(float(np.min(vals)))
        return vals

    value, _ = periodic_trapezoid(f, tol)
    if min(nodes) <= 0.0:
        warnings.warn(
            f"psi is not positive on the heart curve of {hc.spec} "
            f"(min {min(nodes):.3g}); theta0 = {value:.6g}",
            RuntimeWarning,
            stacklevel=2,
        )
    return value


@dataclass
class FundamentalPiece:
    spec: TwizzlerSpec
    length: float
    theta0: float
    profile: SampledCurve


def start_point(spec: TwizzlerSpec) -> tuple[float, float]:
    """Orbit start: u = 0 on the heart curve (the point of largest xi1)."""
    hc = HeartCurve.from_spec(spec)
    r1, r2 = hc.point(0.0)
    return float(r1), float(r2)


def reconstruct_profile(
    spec: TwizzlerSpec,
    pieces: int = 1,
    tol: float = DEFAULT_ODE_TOL,
    samples_per_piece: int = 512,
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> SampledCurve:
    """Unit-speed profile curve made of ``pieces`` fundamental pieces.

    The sled system is integrated together with theta from the heart point at
    u = 0 with theta(0) = 0; the profile is then rebuilt as
    x = xi1 cos(theta) - xi2 sin(theta), z = xi1 sin(theta) + xi2 cos(theta).
    Sample ``k + j * samples_per_piece`` sits exactly one arc length ``j * L``
    after sample ``k``.
    """
    if pieces < 1:
        raise OutOfDomain("pieces must be >= 1")
    if spec.degenerate:
        raise DegenerateLevel("M = -1/4 is the cylinder of radius 1/2; no fundamental piece")
    hc = HeartCurve.from_spec(spec)
    L = fundamental_length(hc, quad_tol)
    traj = integrate_sled(
        spec, start_point(spec), pieces * L, tol, n_out=pieces * samples_per_piece + 1
    )
    c, s = np.cos(traj.theta), np.sin(traj.theta)
    x = traj.xi1 * c - traj.xi2 * s
    z = traj.xi1 * s + traj.xi2 * c
    closed = bool(math.hypot(x[-1] - x[0], z[-1] - z[0]) <= 1e-6 * pieces * L)
    return SampledCurve(traj.s, x, z, closed=closed, unit_speed=True, theta=traj.theta)


def fundamental_piece(
    spec: TwizzlerSpec,
    tol: float = DEFAULT_ODE_TOL,
    samples: int = 512,
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> FundamentalPiece:
    hc = HeartCurve.from_spec(spec)
    profile = reconstruct_profile(spec, 1, tol, samples, quad_tol)
    return FundamentalPiece(spec, fundamental_length(hc, quad_tol), rotation_angle(hc, quad_tol), profile)


def rotation_number(spec: TwizzlerSpec, tol: float = DEFAULT_QUAD_TOL) -> float:
    return rotation_angle(HeartCurve.from_spec(spec), tol) / (2.0 * math.pi)


UNDECIDABLE_NOTE = (
    "Exact irrationality of the rotation number cannot be decided numerically; "
    "the verdict is relative to max_denominator and tol."
)


@dataclass
class ClassificationReport:
    spec: TwizzlerSpec
    rotation_number: float
    best_rationals: list[tuple[int, int, float]]
    verdict: str
    pieces: int | None
    annulus: tuple[float, float]
    fundamental_length: float
    theta0: float
    note: str = UNDECIDABLE_NOTE

    @property
    def properly_immersed(self) -> bool:
        return self.verdict == "ProperlyImmersed"

    def to_dict(self) -> dict:
        return {
            "M": self.spec.M,
            "v": self.spec.v,
            "w": self.spec.w,
            "rotation_number": self.rotation_number,
            "best_rationals": [{"a": a, "b": b, "error": e} for a, b, e in self.best_rationals],
            "verdict": self.verdict,
            "pieces": self.pieces,
            "r1": self.annulus[0],
            "r2": self.annulus[1],
            "fundamental_length": self.fundamental_length,
            "theta0": self.theta0,
        }

    def __str__(self):
        head = f"T(M={self.spec.M:.12g}, v={self.spec.v:.12g}): rotation number {self.rotation_number:.15g}"
        if self.properly_immersed:
            body = f"properly immersed, {self.pieces} fundamental pieces"
        else:
            body = "presumed dense"
        return f"{head}; {body}. {self.note}"


def classify(
    spec: TwizzlerSpec,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    tol: float = DEFAULT_CLASSIFY_TOL,
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> ClassificationReport:
    """Rotation-number report with continued-fraction rational candidates."""
    if spec.degenerate:
        raise DegenerateLevel("M = -1/4 has no fundamental piece")
    hc = HeartCurve.from_spec(spec)
    theta0 = rotation_angle(hc, quad_tol)
    rn = theta0 / (2.0 * math.pi)
    rationals = [(p, q, abs(rn - p / q)) for p, q in convergents(rn, max_denominator)]
    verdict, pieces = "PresumedDense", None
    for p, q, err in rationals:
        if p > 0 and err < tol:
            verdict, pieces = "ProperlyImmersed", q
            break
    return ClassificationReport(
        spec=spec,
        rotation_number=rn,
        best_rationals=rationals,
        verdict=verdict,
        pieces=pieces,
        annulus=extremal_radii(spec.M),
        fundamental_length=fundamental_length(hc, quad_tol),
        theta0=theta0,
    )


def solve_rotation(
    a: int,
    b: int,
    M: float | None = None,
    v: float | None = None,
    bracket: tuple[float, float] | None = None,
    tol: float = DEFAULT_ROOT_TOL,
) -> TwizzlerSpec:
    """Find the Twizzler whose rotation number is ``a / b``.

    Exactly one of ``M`` and ``v`` is held fixed; the other is located by
    bracketing root finding on ``rotation_number - a / b``. Default brackets
    are v in (0.01, 0.99) and M in (-0.2499, 10).
    """
    if a <= 0 or b <= 0 or math.gcd(a, b) != 1:
        raise OutOfDomain(f"a={a}, b={b} must be positive and coprime")
    if (M is None) == (v is None):
        raise OutOfDomain("fix exactly one of M and v")
    target = a / b
    quad_tol = min(DEFAULT_QUAD_TOL, tol * 0.01)
    if M is not None:
        make = lambda p: TwizzlerSpec(M, p)  # noqa: E731
        lo, hi = bracket or (0.01, 0.99)
    else:
        make = lambda p: TwizzlerSpec(p, v)  # noqa: E731
        lo, hi = bracket or (-0.2499, 10.0)

    def g(p):
        return rotation_number(make(p), quad_tol) - target

    try:
        root = find_root(g, lo, hi, tol * 1e-2)
    except NoSignChange as exc:
        raise NoSignChange(f"rotation number does not cross {a}/{b} on [{lo}, {hi}]") from exc
    spec = make(root)
    err = abs(g(root))
    if err >= tol:
        raise ToleranceNotMet(f"|rotation number - {a}/{b}| = {err:.3g} >= {tol:.3g}")
    log.info("solved %d/%d: %s (residual %.3g)", a, b, spec, err)
    return spec


def rotation_brackets(a: int, b: int, M: float | None = None, v: float | None = None,
                      lo: float | None = None, hi: float | None = None, n: int = 24):
    """Scan the free parameter for sign changes of ``rotation_number - a/b``."""
    from .numerics import scan_brackets

    target = a / b
    if M is not None:
        lo = 0.01 if lo is None else lo
        hi = 0.99 if hi is None else hi
        return scan_brackets(lambda p: rotation_number(TwizzlerSpec(M, p)) - target, lo, hi, n)
    lo = -0.2499 if lo is None else lo
    hi = 10.0 if hi is None else hi
    return scan_brackets(lambda p: rotation_number(TwizzlerSpec(p, v)) - target, lo, hi, n)
