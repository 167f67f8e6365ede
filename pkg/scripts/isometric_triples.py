"""Unduloid, nodoid and special Twizzler sharing a curvature ratio -c.

For each c, prints the three surfaces with their independently evaluated
curvature ratios and optionally writes an OBJ mesh of each.
"""

import argparse
import math
from pathlib import Path

from cmc_forge import delaunay, dynamics, isometry, mesh
from cmc_forge.heart import TwizzlerSpec
from cmc_forge.io import write_obj


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--c", type=float, nargs="+", default=[0.1, 0.25, 0.5, 0.75])
    ap.add_argument("--meshes", action="store_true")
    ap.add_argument("--nt", type=int, default=96)
    ap.add_argument("--out-dir", default="isometric_triples")
    args = ap.parse_args()

    out = Path(args.out_dir)
    if args.meshes:
        out.mkdir(parents=True, exist_ok=True)
    for c in args.c:
        cls = isometry.isometry_class(c)
        twz = TwizzlerSpec(0.0, cls.special_twizzler_v)
        rows = [
            ("unduloid", cls.unduloid_M, delaunay.rs(cls.unduloid_M)),
            ("nodoid", cls.nodoid_M, delaunay.rs(cls.nodoid_M)),
            ("twizzler", 0.0, isometry.curvature_ratio(twz)),
        ]
        print(f"c = {c:g}")
        for kind, M, ratio in rows:
            print(f"  {kind:9s} M = {M: .12g}  ratio = {ratio:.15g}")
        if args.meshes:
            for kind, M, _ in rows[:2]:
                prof = delaunay.delaunay_profile(delaunay.DelaunaySpec(M), 2)
                write_obj(mesh.immerse_revolution(prof, nt=args.nt), out / f"{kind}_c{c:g}.obj")
            prof = dynamics.reconstruct_profile(twz, 1)
            m = mesh.immerse_twizzler(prof, twz.w, (0.0, 2 * math.pi / twz.w), args.nt)
            write_obj(m, out / f"twizzler_c{c:g}.obj")


if __name__ == "__main__":
    main()
