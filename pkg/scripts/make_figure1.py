#!/usr/bin/env python3
"""Emit the partial-cotangent-sum profile CSVs for the showcase fractions.

Writes figure1_231_677.csv (676 rows) and figure1_16_215.csv (214 rows) to
--outdir.  The two profiles trace C_ell(h/k) against ell/k; the second
fraction is the two-step Euclid reduction of the first, so plotting both
shows the alternating-reciprocity correspondence.
"""

import argparse
import pathlib
import sys

from cotsums.cli import main as cli_main

FRACTIONS = ["231/677", "16/215"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="out", help="output directory (default ./out)")
    ap.add_argument("--prec", type=int, default=128)
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for frac in FRACTIONS:
        name = "figure1_" + frac.replace("/", "_") + ".csv"
        path = outdir / name
        rc = cli_main(["--prec", str(args.prec), "figure1", frac, "--out", str(path)])
        if rc != 0:
            return rc
        print(f"wrote {path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
