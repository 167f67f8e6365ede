"""Closed Twizzler profiles for a list of rotation numbers a/b.

For each target the free parameter is solved for, the b-piece profile is
rebuilt and its closure gap reported; profiles are written as CSV and drawn
together in one SVG.
"""

import argparse
from fractions import Fraction
from pathlib import Path

from cmc_forge import dynamics
from cmc_forge.io import write_curve_csv, write_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("targets", nargs="*", default=["5/4", "9/8", "13/12", "17/16"])
    ap.add_argument("--fix-M", type=float, default=0.0)
    ap.add_argument("--samples", type=int, default=512, help="samples per fundamental piece")
    ap.add_argument("--out-dir", default="rational_family")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    drawn = []
    for t in args.targets:
        r = Fraction(t)
        spec = dynamics.solve_rotation(r.numerator, r.denominator, M=args.fix_M)
        prof = dynamics.reconstruct_profile(spec, r.denominator, samples_per_piece=args.samples)
        gap = ((prof.x[-1] - prof.x[0]) ** 2 + (prof.z[-1] - prof.z[0]) ** 2) ** 0.5
        name = f"profile_{r.numerator}_{r.denominator}"
        write_curve_csv(prof, out / f"{name}.csv")
        drawn.append(prof.points)
        print(f"{r}: M={spec.M:.12g} v={spec.v:.15g} pieces={r.denominator} closure gap {gap:.2e}")
    write_svg(drawn, out / "family.svg")


if __name__ == "__main__":
    main()
