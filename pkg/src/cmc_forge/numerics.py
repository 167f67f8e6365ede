"""Numerical kernels: adaptive Runge-Kutta with invariant drift control,
periodic quadrature, bracketing root finding, finite differences and
continued fractions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import NoSignChange, ToleranceNotMet

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_E = (
    71 / 57600,
    0.0,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)


@dataclass
class IntegrationStats:
    steps: int = 0
    rejected: int = 0
    drift_rejected: int = 0
    max_drift: float = 0.0


def _dopri_step(rhs, s, y, k1, h):
    n = len(y)
    ks = [k1]
    for i in range(1, 7):
        a = _A[i]
        yi = [y[j] + h * sum(a[m] * ks[m][j] for m in range(i)) for j in range(n)]
        ks.append(rhs(s + _C[i] * h, yi))
    # stage 7 is evaluated at the 5th order solution (FSAL)
    y_new = yi
    err = [h * sum(_E[m] * ks[m][j] for m in range(7)) for j in range(n)]
    return y_new, err, ks[6]


def integrate(
    rhs: Callable[[float, Sequence[float]], Sequence[float]],
    y0: Sequence[float],
    s_out: Sequence[float],
    tol: float,
    invariant: Callable[[Sequence[float]], float] | None = None,
    drift_tol: float | None = None,
    h_init: float | None = None,
    max_steps: int = 2_000_000,
) -> tuple[np.ndarray, IntegrationStats]:
    """Integrate ``y' = rhs(s, y)`` and return the states at ``s_out``.

    The output grid is hit exactly: each step is clipped so that it never
    overshoots the next output abscissa. When ``invariant`` is given, a step
    is rejected if it moves the invariant more than ``drift_tol`` away from
    its initial value, which keeps a first integral pinned over long spans.
    """
    s_out = np.asarray(s_out, dtype=float)
    if s_out.ndim != 1 or len(s_out) == 0:
        raise ValueError("s_out must be a non-empty 1-d grid")
    if np.any(np.diff(s_out) < 0):
        raise ValueError("s_out must be non-decreasing")
    if drift_tol is None:
        drift_tol = tol
    y = [float(c) for c in y0]
    n = len(y)
    out = np.empty((len(s_out), n))
    out[0] = y
    stats = IntegrationStats()
    i0 = invariant(y) if invariant is not None else 0.0

    s = float(s_out[0])
    span = float(s_out[-1] - s_out[0])
    if span == 0.0:
        out[:] = y
        return out, stats
    h = h_init if h_init is not None else min(0.01, span)
    h_min = 1e-14 * max(1.0, span)
    k1 = list(rhs(s, y))
    idx = 1
    while idx < len(s_out):
        target = float(s_out[idx])
        if target <= s:
            out[idx] = y
            idx += 1
            continue
        last = False
        step = h
        if s + step >= target:
            step = target - s
            last = True
        y_new, err, k_new = _dopri_step(rhs, s, y, k1, step)
        scale = [tol + tol * max(abs(a), abs(b)) for a, b in zip(y, y_new)]
        enorm = math.sqrt(sum((e / sc) ** 2 for e, sc in zip(err, scale)) / n)
        ok = enorm <= 1.0 and all(math.isfinite(c) for c in y_new)
        drift = 0.0
        if ok and invariant is not None:
            drift = abs(invariant(y_new) - i0)
            if drift > drift_tol:
                ok = False
                stats.drift_rejected += 1
        if ok:
            s = target if last else s + step
            y, k1 = y_new, k_new
            stats.steps += 1
            stats.max_drift = max(stats.max_drift, drift)
            if last:
                out[idx] = y
                idx += 1
            fac = 5.0 if enorm == 0.0 else min(5.0, max(0.2, 0.9 * enorm ** -0.2))
            if not last:
                h = step * fac
            else:
                h = max(h, step * fac) if step < h else step * fac
        else:
            stats.rejected += 1
            if enorm > 1.0 and math.isfinite(enorm):
                h = step * max(0.1, 0.9 * enorm ** -0.2)
            else:
                h = step * 0.5
            if h < h_min:
                raise ToleranceNotMet(
                    f"step size underflow at s={s:.6g} (drift {drift:.3g}, tol {tol:.3g})"
                )
        if stats.steps + stats.rejected > max_steps:
            raise ToleranceNotMet(f"exceeded {max_steps} integration steps")
    return out, stats


def periodic_trapezoid(
    f: Callable[[np.ndarray], np.ndarray],
    tol: float,
    n0: int = 64,
    n_max: int = 1 << 20,
) -> tuple[float, int]:
    """Integrate a smooth 2*pi-periodic ``f`` over one period.

    The trapezoid rule converges geometrically on smooth periodic integrands,
    so nodes are doubled until two successive estimates agree within ``tol``.
    Returns ``(value, nodes)``.
    """
    n = n0
    u = np.arange(n) * (2 * np.pi / n)
    prev = 2 * np.pi / n * float(np.sum(f(u)))
    while n < n_max:
        # reuse the previous nodes: only the midpoints are new
        mid = (np.arange(n) + 0.5) * (2 * np.pi / n)
        val = 0.5 * prev + np.pi / n * float(np.sum(f(mid)))
        n *= 2
        if abs(val - prev) < tol:
            return val, n
        prev = val
    raise ToleranceNotMet(f"periodic quadrature did not converge with {n_max} nodes")


def find_root(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Bracketing root finder (Brent) with a uniform error contract."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise NoSignChange(f"no sign change on [{lo:.6g}, {hi:.6g}] ({flo:.3g}, {fhi:.3g})")
    return brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200)


def scan_brackets(
    f: Callable[[float], float], lo: float, hi: float, n: int = 24
) -> list[tuple[float, float]]:
    """Coarse grid scan returning every subinterval where ``f`` changes sign."""
    xs = np.linspace(lo, hi, n + 1)
    vals = [f(float(x)) for x in xs]
    found = []
    for a, b, fa, fb in zip(xs[:-1], xs[1:], vals[:-1], vals[1:]):
        if fa == 0.0 or np.sign(fa) != np.sign(fb):
            found.append((float(a), float(b)))
    return found


# 4th order first-derivative stencils on a uniform grid
_CENTRAL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_FORWARD = np.array(
    [
        [-25.0, 48.0, -36.0, 16.0, -3.0],
        [-3.0, -10.0, 18.0, -6.0, 1.0],
    ]
) / 12.0


def derivative(y: np.ndarray, h: float, periodic: bool = False) -> np.ndarray:
    """Fourth-order centered first derivative of samples on a uniform grid.

    ``periodic`` treats the samples as one period *without* the duplicated
    endpoint. Otherwise the first and last two samples use one-sided stencils.
    """
    y = np.asarray(y, dtype=float)
    n = len(y)
    if n < 5:
        raise ValueError("need at least 5 samples for 4th-order differences")
    if periodic:
        d = sum(c * np.roll(y, 2 - k) for k, c in enumerate(_CENTRAL))
        return d / h
    d = np.empty(n)
    d[2:-2] = (y[:-4] - 8 * y[1:-3] + 8 * y[3:-1] - y[4:]) / 12.0
    d[0] = _FORWARD[0] @ y[:5]
    d[1] = _FORWARD[1] @ y[:5]
    d[-1] = -(_FORWARD[0] @ y[::-1][:5])
    d[-2] = -(_FORWARD[1] @ y[::-1][:5])
    return d / h


def hermite_extremum(s0: float, h: float, y0: float, y1: float, d0: float, d1: float):
    """Critical points of the cubic Hermite interpolant on ``[s0, s0 + h]``.

    Returns a list of ``(s, value)`` for roots of the interpolant's derivative
    inside the interval.
    """
    # p(t) = y0 h00 + h d0 h10 + y1 h01 + h d1 h11, t in [0, 1]
    a = 6 * (y0 - y1) + 3 * h * (d0 + d1)
    b = -6 * (y0 - y1) - h * (4 * d0 + 2 * d1)
    c = h * d0
    roots = []
    if abs(a) > 1e-300:
        disc = b * b - 4 * a * c
        if disc >= 0:
            sq = math.sqrt(disc)
            q = -0.5 * (b + math.copysign(sq, b))
            cand = [q / a] + ([c / q] if q != 0 else [])
            roots = cand
    elif abs(b) > 1e-300:
        roots = [-c / b]
    res = []
    for t in roots:
        if -1e-12 <= t <= 1 + 1e-12:
            t = min(max(t, 0.0), 1.0)
            h00 = 2 * t**3 - 3 * t**2 + 1
            h10 = t**3 - 2 * t**2 + t
            h01 = -2 * t**3 + 3 * t**2
            h11 = t**3 - t**2
            res.append((s0 + t * h, y0 * h00 + h * d0 * h10 + y1 * h01 + h * d1 * h11))
    return res


def refined_extrema(s: np.ndarray, y: np.ndarray, dy: np.ndarray) -> tuple[float, float]:
    """Min and max of a sampled function, refined with its exact derivative.

    Each interval whose endpoint derivatives change sign (or vanish) is
    replaced by the extremum of its cubic Hermite interpolant, giving
    fourth-order accuracy instead of the O(h^2) error of raw sample extrema.
    """
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    dy = np.asarray(dy, dtype=float)
    lo, hi = float(y.min()), float(y.max())
    flips = np.nonzero(np.sign(dy[:-1]) != np.sign(dy[1:]))[0]
    for i in flips:
        for _, val in hermite_extremum(s[i], s[i + 1] - s[i], y[i], y[i + 1], dy[i], dy[i + 1]):
            lo = min(lo, val)
            hi = max(hi, val)
    return lo, hi


def convergents(x: float, max_denominator: int) -> list[tuple[int, int]]:
    """Continued-fraction convergents ``p/q`` of ``x`` with ``0 < q <= max_denominator``.

    The expansion runs on the exact binary value of ``x`` so no rounding
    creeps into the partial quotients.
    """
    if max_denominator < 1:
        return []
    frac = Fraction(x)
    num, den = frac.numerator, frac.denominator
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    out = []
    while den:
        a, rem = divmod(num, den)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        if q > max_denominator:
            break
        out.append((p, q))
        num, den = den, rem
    return out
