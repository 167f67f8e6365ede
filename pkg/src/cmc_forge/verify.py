"""Self-test suites behind ``cmc-forge verify``.

Each suite evaluates one family of invariants on a deterministic sample of
parameters and reports the worst error against its tolerance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import curves, delaunay, dynamics, flat, heart, isometry, mesh
from .forms import profile_forms


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failed: int = 0
    max_error: float = 0.0
    tolerance: float = 0.0

    @property
    def passed(self) -> bool:
        return self.checks > 0 and self.failed == 0

    def record(self, err: float):
        self.checks += 1
        self.max_error = max(self.max_error, float(err))
        if not err < self.tolerance:
            self.failed += 1


def _specs(n: int, seed: int, m_lo=-0.24, m_hi=5.0, w_lo=0.2, w_hi=5.0):
    rng = np.random.default_rng(seed)
    return [
        heart.TwizzlerSpec.from_w(float(rng.uniform(m_lo, m_hi)), float(rng.uniform(w_lo, w_hi)))
        for _ in range(n)
    ]


def suite_heart_membership(n):
    r = SuiteResult("heart_membership", tolerance=1e-10)
    u = np.linspace(0, 2 * np.pi, 1024, endpoint=False)
    for spec in _specs(n, 11):
        hc = heart.HeartCurve.from_spec(spec)
        x1, x2 = hc.point(u)
        r.record(np.max(np.abs(heart.h_w_eval(spec, x1, x2) - spec.M)))
    return r


def suite_first_integral(n):
    r = SuiteResult("first_integral", tolerance=1e-8)
    for spec in _specs(n, 12):
        hc = heart.HeartCurve.from_spec(spec)
        L = dynamics.fundamental_length(hc)
        tr = dynamics.integrate_sled(spec, dynamics.start_point(spec), L, 1e-9)
        r.record(np.max(np.abs(heart.h_w_eval(spec, tr.xi1, tr.xi2) - spec.M)))
    return r


def suite_profile(n):
    """Annulus radii, piece equivariance and the two theta0 routes."""
    ann = SuiteResult("annulus", tolerance=1e-6)
    eq = SuiteResult("equivariance", tolerance=1e-6)
    th = SuiteResult("theta0_two_routes", tolerance=1e-6)
    per = 256
    for spec in _specs(n, 13):
        hc = heart.HeartCurve.from_spec(spec)
        theta0 = dynamics.rotation_angle(hc)
        prof = dynamics.reconstruct_profile(spec, 4, samples_per_piece=per)
        r1, r2 = heart.extremal_radii(spec.M)
        lo, hi = curves.radius_extrema(prof)
        ann.record(max(abs(lo - r1), abs(hi - r2)))
        P = prof.points
        dev = max(
            np.max(np.abs(P[j * per : (j + 1) * per + 1] - curves.rotate(P[: per + 1], j * theta0)))
            for j in range(1, 4)
        )
        eq.record(dev)
        th.record(abs(prof.theta[per] - prof.theta[0] - theta0))
    return [ann, eq, th]


def suite_mean_curvature(n, quick):
    """H from differences of the sampled profile; the error is O(h^4), so the
    full run needs 32768 samples per piece once w reaches 5."""
    r = SuiteResult("mean_curvature_forms", tolerance=1e-6)
    specs = _specs(n, 14, m_hi=2.0, w_hi=2.0) if quick else _specs(n, 14)
    for spec in specs:
        prof = dynamics.reconstruct_profile(spec, 1, samples_per_piece=4096 if quick else 32768)
        H = profile_forms(prof, spec.w).mean_curvature
        idx = np.linspace(4, len(H) - 5, 1024).astype(int)
        r.record(np.max(np.abs(H[idx] - 1.0)))
    return r


def suite_delaunay(n):
    fi = SuiteResult("delaunay_first_integral", tolerance=1e-8)
    ext = SuiteResult("delaunay_z_extrema", tolerance=1e-6)
    pair = SuiteResult("delaunay_rs", tolerance=1e-12)
    for M in np.linspace(-0.24, 4.0, n + 1):
        if abs(M) < 1e-9:
            continue
        spec = delaunay.DelaunaySpec(float(M))
        prof = delaunay.delaunay_profile(spec, 1)
        zmin, zmax = spec.z_range
        fi.record(np.max(np.abs(delaunay.delaunay_first_integral(prof.z, prof.theta) - M)))
        ext.record(max(abs(prof.z.min() - zmin), abs(prof.z.max() - zmax)))
    pair.record(abs(delaunay.rs(2.0) + 0.25))
    pair.record(abs(delaunay.rs(-2.0 / 9.0) - delaunay.rs(2.0)))
    return [fi, ext, pair]


def suite_isometry(n):
    r = SuiteResult("isometry", tolerance=1e-10)
    for v in np.linspace(0.1, 0.9, 9):
        rt = isometry.curvature_ratio(heart.TwizzlerSpec(0.0, float(v)))
        sv = math.sqrt(v)
        r.record(max(abs(rt + v), abs(rt - delaunay.rs(-sv / (1 + sv) ** 2)), abs(rt - delaunay.rs(sv / (1 - sv) ** 2))))
    cls = isometry.isometry_class(0.25, n_alpha=max(n, 10))
    for M, v in cls.alpha_samples:
        r.record(abs(isometry.curvature_ratio(heart.TwizzlerSpec(M, v)) + 0.25))
    return r


def suite_gauss_extrema(n):
    r = SuiteResult("twizzler_gauss_extrema", tolerance=1e-8)
    # the grid avoids pi/2 and 3pi/2; extrema are refined by bounded search
    u = np.linspace(0, 2 * np.pi, 4096, endpoint=False) + 1e-3
    h = u[1] - u[0]
    for spec in _specs(n, 15):
        hc = heart.HeartCurve.from_spec(spec)
        K = lambda t: float(isometry.twizzler_gauss_curvature(spec, *hc.point(t)))  # noqa: E731
        Ku = isometry.twizzler_gauss_curvature(spec, *hc.point(u))
        i, j = int(np.argmax(Ku)), int(np.argmin(Ku))
        opts = {"xatol": 1e-12}
        top = minimize_scalar(lambda t: -K(t), bounds=(u[i] - h, u[i] + h), method="bounded", options=opts)
        bot = minimize_scalar(K, bounds=(u[j] - h, u[j] + h), method="bounded", options=opts)
        kmax, kmin = isometry.twizzler_gauss_extrema(spec)
        r.record(max(abs(-top.fun - kmax), abs(bot.fun - kmin)))
    return r


def suite_flat(n):
    xi = SuiteResult("flat_sled_line", tolerance=1e-6)
    gk = SuiteResult("flat_gauss", tolerance=1e-5)
    for a, b in [(1.0, 1.0), (2.0, 0.5), (-1.0, 6.0), (0.5, 2.0)][: max(1, n)]:
        spec = flat.FlatSpec(a, b, (0.0, 4.0))
        sled = curves.treadmill_sled(flat.flat_profile(spec, 4096))
        xi.record(np.max(np.abs(sled.u1 + a / 2)))
        gk.record(flat.flat_gauss_check(spec, 1.0, 4096))
    return [xi, gk]


def suite_sled(n):
    r = SuiteResult("treadmill_sled", tolerance=1e-6)
    s = np.linspace(0, 2 * np.pi * 1.5, 1025)
    for R, d in [(1.5, 0.0), (1.5, 0.4), (2.0, 0.7)][: max(2, n)]:
        c = curves.SampledCurve(s, d + R * np.cos(s / R), R * np.sin(s / R))
        sled = curves.treadmill_sled(c)
        r.record(np.max(np.abs(np.hypot(sled.u1, sled.u2 - R) - d)))
    return r


def suite_mesh(quick):
    r = SuiteResult("mesh_mean_curvature", tolerance=0.02)
    spec = heart.TwizzlerSpec(0.5, 0.5)
    nu, nt = (256, 128) if quick else (512, 256)
    prof = dynamics.reconstruct_profile(spec, 1, samples_per_piece=nu - 1)
    m = mesh.immerse_twizzler(prof, spec.w, (0.0, prof.length / 2), nt)
    H = mesh.discrete_mean_curvature(m)
    r.record(np.nanmax(np.abs(H - 1.0)))
    return r


def run_all(quick: bool = False) -> dict:
    n = 4 if quick else 20
    jobs = [
        lambda: suite_sled(n),
        lambda: suite_heart_membership(n),
        lambda: suite_first_integral(n),
        lambda: suite_profile(max(2, n // 4)),
        lambda: suite_mean_curvature(2 if quick else 20, quick),
        lambda: suite_delaunay(n),
        lambda: suite_isometry(n),
        lambda: suite_gauss_extrema(n),
        lambda: suite_flat(n),
        lambda: suite_mesh(quick),
    ]
    results = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for job in jobs:
            out = job()
            results.extend(out if isinstance(out, list) else [out])
    suites = {}
    for res in results:
        d = asdict(res)
        d.pop("name")
        d["passed"] = res.passed
        suites[res.name] = d
    return {"quick": quick, "all_passed": all(r.passed for r in results), "suites": suites}
