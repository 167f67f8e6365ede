"""Tabulate the rotation number theta0 / 2pi over a (M, v) grid.

Writes a CSV with one row per grid point; rows where psi changes sign on the
heart curve are flagged, since theta0 is then not monotone along the orbit.
"""

import argparse
import csv
import warnings

import numpy as np

from cmc_forge import dynamics
from cmc_forge.heart import HeartCurve, TwizzlerSpec
from cmc_forge.io import fmt


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--M", type=float, nargs="+", default=[-0.2, 0.0, 0.5, 2.0])
    ap.add_argument("--v-min", type=float, default=0.02)
    ap.add_argument("--v-max", type=float, default=0.98)
    ap.add_argument("--n", type=int, default=49)
    ap.add_argument("--out", default="rotation_sweep.csv")
    args = ap.parse_args()

    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["M", "v", "w", "rotation_number", "fundamental_length", "psi_sign_change"])
        for M in args.M:
            for v in np.linspace(args.v_min, args.v_max, args.n):
                spec = TwizzlerSpec(M, float(v))
                hc = HeartCurve.from_spec(spec)
                with warnings.catch_warnings(record=True) as caught:
                    warnings.simplefilter("always", RuntimeWarning)
                    rn = dynamics.rotation_number(spec)
                w.writerow([fmt(M), fmt(v), fmt(spec.w), fmt(rn),
                            fmt(dynamics.fundamental_length(hc)), int(bool(caught))])
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
