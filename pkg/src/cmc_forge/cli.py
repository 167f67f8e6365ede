"""Command-line entry point: ``cmc-forge <subcommand> [flags]``.

Exit codes: 0 success, 1 domain error, 2 tolerance failure, 64 usage error.
A ``--config`` file of ``key = value`` lines supplies defaults; flags given on
the command line win.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import curves, delaunay, dynamics, flat, heart, io, isometry, mesh, verify
from .errors import DomainError, IoFailure, ToleranceNotMet

log = logging.getLogger("cmc_forge")

EXIT_OK, EXIT_DOMAIN, EXIT_TOLERANCE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    out_dir: Path
    ode_tol: float
    quad_tol: float
    root_tol: float
    classify_tol: float
    max_denominator: int
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("ode_tol", "quad_tol", "root_tol", "classify_tol"):
            if not getattr(self, name) > 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")

    def path(self, name: str | None) -> Path | None:
        if not name:
            return None
        p = Path(name)
        return p if p.is_absolute() else self.out_dir / p


def read_config(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected 'key = value'")
        key, value = (p.strip() for p in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _add_common(p):
    p.add_argument("--out-dir", default=".", help="directory for relative output paths")
    p.add_argument("--config", help="key = value defaults file")
    p.add_argument("--ode-tol", type=float, default=dynamics.DEFAULT_ODE_TOL)
    p.add_argument("--quad-tol", type=float, default=dynamics.DEFAULT_QUAD_TOL)
    p.add_argument("--root-tol", type=float, default=dynamics.DEFAULT_ROOT_TOL)
    p.add_argument("--classify-tol", type=float, default=dynamics.DEFAULT_CLASSIFY_TOL)
    p.add_argument("--max-denominator", type=int, default=dynamics.DEFAULT_MAX_DENOMINATOR)
    p.add_argument("--json", help="also write the printed JSON summary here")


def _add_spec(p, need_v=True):
    p.add_argument("--M", type=float, required=False)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--v", type=float)
    g.add_argument("--w", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cmc-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("heart", help="sample a heart-shaped level set of h_w")
    _add_common(p)
    _add_spec(p)
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--csv", default="heart.csv")
    p.add_argument("--svg")

    p = sub.add_parser("sled", help="treadmill sled of a CSV curve")
    _add_common(p)
    p.add_argument("--input", required=False)
    p.add_argument("--raw", action="store_true", help="write (xi1, xi2) instead of the sled")
    p.add_argument("--ds", type=float, help="arc-length step when resampling")
    p.add_argument("--csv", default="sled.csv")
    p.add_argument("--svg")

    p = sub.add_parser("twizzler", help="profile curve and mesh of T(M, v)")
    _add_common(p)
    _add_spec(p)
    p.add_argument("--pieces", type=int, default=1)
    p.add_argument("--samples", type=int, default=512, help="samples per fundamental piece")
    p.add_argument("--csv", help="profile CSV")
    p.add_argument("--svg", help="profile SVG")
    p.add_argument("--mesh", help="OBJ mesh path")
    p.add_argument("--nu", type=int, help="profile samples across the mesh")
    p.add_argument("--nt", type=int, default=64)
    p.add_argument("--turns", type=float, default=1.0, help="screw turns covered by the mesh")

    p = sub.add_parser("classify", help="rotation-number report for T(M, v)")
    _add_common(p)
    _add_spec(p)

    p = sub.add_parser("solve", help="find T(M, v) with rotation number a/b")
    _add_common(p)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--fix-M", type=float)
    g.add_argument("--fix-v", type=float)
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--csv", help="write the b-piece profile here")
    p.add_argument("--svg")

    p = sub.add_parser("delaunay", help="profile curve and mesh of D(M)")
    _add_common(p)
    p.add_argument("--M", type=float)
    p.add_argument("--periods", type=int, default=2)
    p.add_argument("--samples", type=int, default=512, help="samples per period")
    p.add_argument("--csv")
    p.add_argument("--svg")
    p.add_argument("--mesh")
    p.add_argument("--nt", type=int, default=64)

    p = sub.add_parser("isometry", help="isometry class with curvature ratio -c")
    _add_common(p)
    p.add_argument("--c", type=float)
    p.add_argument("--alpha-samples", type=int, default=9)
    p.add_argument("--svg", help="plot alpha_c in the (M, v) plane")

    p = sub.add_parser("flat", help="closed-form flat helicoidal profile")
    _add_common(p)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--s0", type=float, default=0.0)
    p.add_argument("--s1", type=float, default=4.0)
    p.add_argument("--w", type=float, default=1.0)
    p.add_argument("--n", type=int, default=2048)
    p.add_argument("--mirror", action="store_true")
    p.add_argument("--csv", default="flat.csv")
    p.add_argument("--svg")

    p = sub.add_parser("verify", help="run the invariant suites")
    _add_common(p)
    p.add_argument("--quick", action="store_true")
    return parser


_BOOL = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def parse_args(argv) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        raise UsageError("missing subcommand")
    if getattr(args, "config", None):
        cfg = read_config(args.config)
        sub = parser._subparsers._group_actions[0].choices[args.command]
        dests = {a.dest: a for a in sub._actions}
        defaults = {}
        for key, value in cfg.items():
            if key not in dests:
                raise UsageError(f"unknown config key {key!r} for {args.command}")
            action = dests[key]
            if isinstance(action, argparse._StoreTrueAction):
                if value.lower() not in _BOOL:
                    raise UsageError(f"config key {key!r} expects a boolean")
                defaults[key] = _BOOL[value.lower()]
            elif action.nargs is not None and action.nargs not in ("?",):
                defaults[key] = [action.type(v) if action.type else v for v in value.split()]
            else:
                defaults[key] = value
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def _spec_from(args) -> heart.TwizzlerSpec:
    if args.M is None or (args.v is None and args.w is None):
        raise UsageError("--M and one of --v/--w are required")
    if args.w is not None:
        return heart.TwizzlerSpec.from_w(args.M, args.w)
    return heart.TwizzlerSpec(args.M, args.v)


def _emit(cfg: RunConfig, args, payload: dict):
    text = io.dumps_json(payload)
    sys.stdout.write(text)
    if getattr(args, "json", None):
        io.write_json(payload, cfg.path(args.json))


def cmd_heart(cfg, args):
    spec = _spec_from(args)
    hc = heart.HeartCurve.from_spec(spec)
    curve = heart.sample_heart(hc, args.n)
    io.export(curve, cfg.path(args.csv), "CSV")
    if args.svg:
        io.export(curve, cfg.path(args.svg), "SVG")
    r1, r2 = heart.extremal_radii(spec.M)
    residual = float(np.max(np.abs(heart.h_w_eval(spec, curve.x, curve.z) - spec.M)))
    _emit(cfg, args, {"M": spec.M, "v": spec.v, "w": spec.w, "A": hc.A, "B": hc.B,
                      "r1": r1, "r2": r2, "max_residual": residual, "samples": args.n})


def cmd_sled(cfg, args):
    if not args.input:
        raise UsageError("--input is required")
    curve = io.read_curve_csv(args.input)
    if not curve.unit_speed or args.ds:
        curve = curves.reparametrize_arclength(curve, args.ds)
    sled = curves.xi_coordinates(curve) if args.raw else curves.treadmill_sled(curve)
    io.export(sled, cfg.path(args.csv), "CSV")
    if args.svg:
        io.write_svg([curve.points, sled.points], cfg.path(args.svg))
    gap = math.hypot(sled.u1[-1] - sled.u1[0], sled.u2[-1] - sled.u2[0])
    _emit(cfg, args, {"samples": len(sled), "length": curve.length, "closed": curve.closed,
                      "raw": bool(args.raw), "closure_gap": gap})


def cmd_twizzler(cfg, args):
    spec = _spec_from(args)
    per = args.samples
    if args.nu:
        per = max(8, math.ceil((args.nu - 1) / args.pieces))
    prof = dynamics.reconstruct_profile(spec, args.pieces, cfg.ode_tol, per, cfg.quad_tol)
    if args.csv:
        io.export(prof, cfg.path(args.csv), "CSV")
    if args.svg:
        io.export(prof, cfg.path(args.svg), "SVG")
    if args.mesh:
        m = mesh.immerse_twizzler(prof, spec.w, (0.0, args.turns * 2 * math.pi / spec.w), args.nt)
        m.provenance.update({"M": spec.M, "v": spec.v, "pieces": args.pieces})
        io.export(m, cfg.path(args.mesh), "OBJ")
    lo, hi = curves.radius_extrema(prof)
    r1, r2 = heart.extremal_radii(spec.M)
    _emit(cfg, args, {"M": spec.M, "v": spec.v, "w": spec.w, "pieces": args.pieces,
                      "length": prof.length, "min_radius": lo, "max_radius": hi,
                      "r1": r1, "r2": r2, "closed": prof.closed,
                      "closure_gap": float(np.hypot(prof.x[-1] - prof.x[0], prof.z[-1] - prof.z[0]))})


def cmd_classify(cfg, args):
    spec = _spec_from(args)
    rep = dynamics.classify(spec, cfg.max_denominator, cfg.classify_tol, cfg.quad_tol)
    log.info("%s", rep)
    _emit(cfg, args, rep.to_dict())


def cmd_solve(cfg, args):
    if args.a is None or args.b is None:
        raise UsageError("--a and --b are required")
    if args.fix_M is None and args.fix_v is None:
        raise UsageError("one of --fix-M/--fix-v is required")
    spec = dynamics.solve_rotation(args.a, args.b, M=args.fix_M, v=args.fix_v,
                                   bracket=tuple(args.bracket) if args.bracket else None,
                                   tol=cfg.root_tol)
    rn = dynamics.rotation_number(spec, cfg.quad_tol)
    payload = {"a": args.a, "b": args.b, "M": spec.M, "v": spec.v, "w": spec.w,
               "rotation_number": rn, "residual": abs(rn - args.a / args.b)}
    if args.csv or args.svg:
        prof = dynamics.reconstruct_profile(spec, args.b, cfg.ode_tol, 512, cfg.quad_tol)
        payload["closure_gap"] = float(np.hypot(prof.x[-1] - prof.x[0], prof.z[-1] - prof.z[0]))
        if args.csv:
            io.export(prof, cfg.path(args.csv), "CSV")
        if args.svg:
            io.export(prof, cfg.path(args.svg), "SVG")
    _emit(cfg, args, payload)


def cmd_delaunay(cfg, args):
    if args.M is None:
        raise UsageError("--M is required")
    spec = delaunay.DelaunaySpec(args.M)
    prof = delaunay.delaunay_profile(spec, args.periods, cfg.ode_tol, args.samples)
    if args.csv:
        io.export(prof, cfg.path(args.csv), "CSV")
    if args.svg:
        io.export(prof, cfg.path(args.svg), "SVG")
    if args.mesh:
        m = mesh.immerse_revolution(prof, (0.0, 2 * math.pi), args.nt)
        m.provenance.update({"M": spec.M})
        io.export(m, cfg.path(args.mesh), "OBJ")
    kmax, kmin = delaunay.delaunay_gauss_extrema(spec.M)
    zmin, zmax = spec.z_range
    _emit(cfg, args, {"M": spec.M, "kind": spec.kind, "period": prof.length / args.periods,
                      "z_min": zmin, "z_max": zmax, "K_max": kmax, "K_min": kmin,
                      "rs": delaunay.rs(spec.M)})


def cmd_isometry(cfg, args):
    if args.c is None:
        raise UsageError("--c is required")
    cls = isometry.isometry_class(args.c, args.alpha_samples)
    if args.svg:
        lo, hi = isometry.alpha_interval(args.c)
        Ms = np.linspace(lo, min(hi, lo + 50.0), 400)
        io.write_svg([np.column_stack([Ms, [isometry.alpha_c(args.c, m) for m in Ms]])], cfg.path(args.svg))
    _emit(cfg, args, cls.to_dict())


def cmd_flat(cfg, args):
    spec = flat.FlatSpec(args.a, args.b, (args.s0, args.s1), args.mirror)
    prof = flat.flat_profile(spec, args.n)
    io.export(prof, cfg.path(args.csv), "CSV")
    sled = curves.treadmill_sled(prof)
    if args.svg:
        io.write_svg([prof.points, sled.points], cfg.path(args.svg))
    _emit(cfg, args, {"a": args.a, "b": args.b, "w": args.w,
                      "sled_line_x": -args.a / 2,
                      "sled_line_error": float(np.max(np.abs(sled.u1 + args.a / 2))),
                      "max_abs_K": flat.flat_gauss_check(spec, args.w, args.n)})


def cmd_verify(cfg, args):
    summary = verify.run_all(quick=args.quick)
    _emit(cfg, args, summary)
    if not summary["all_passed"]:
        raise ToleranceNotMet("invariant suites failed")


COMMANDS = {
    "heart": cmd_heart, "sled": cmd_sled, "twizzler": cmd_twizzler, "classify": cmd_classify,
    "solve": cmd_solve, "delaunay": cmd_delaunay, "isometry": cmd_isometry, "flat": cmd_flat,
    "verify": cmd_verify,
}


def run(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("CMC_FORGE_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parse_args(argv)
        cfg = RunConfig(
            command=args.command,
            out_dir=Path(args.out_dir),
            ode_tol=args.ode_tol,
            quad_tol=args.quad_tol,
            root_tol=args.root_tol,
            classify_tol=args.classify_tol,
            max_denominator=args.max_denominator,
        )
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ToleranceNotMet as exc:
        print(f"tolerance failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (DomainError, IoFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main():
    sys.exit(run())
