#!/usr/bin/env python3
"""Run every verification sweep at its documented scale and print the reports.

Exits nonzero if any suite fails.  Takes ~3 minutes single-threaded; use
--quick for a fast smoke pass at reduced kmax.
"""

import argparse
import json
import sys

from cotsums.verify import SUITES, SweepConfig

FULL = {
    "dedekind": dict(kmax=300),
    "dft": dict(kmax=500),
    "v1": dict(kmax=50),
    "prop_mp": dict(kmax=200),
    "mcc": dict(kmax=300, lsamples=5),
    "thm_mt": dict(kmax=300),
}

QUICK = {
    "dedekind": dict(kmax=60),
    "dft": dict(kmax=100),
    "v1": dict(kmax=20),
    "prop_mp": dict(kmax=60),
    "mcc": dict(kmax=60, lsamples=5),
    "thm_mt": dict(kmax=60),
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quick", action="store_true", help="reduced kmax smoke pass")
    ap.add_argument("--suite", choices=sorted(SUITES), action="append",
                    help="run only this suite (repeatable)")
    ap.add_argument("--prec", type=int, default=128)
    args = ap.parse_args()

    plans = QUICK if args.quick else FULL
    names = args.suite or list(plans)
    failed = []
    for name in names:
        cfg = SweepConfig(prec=args.prec, **plans[name])
        rep = SUITES[name](cfg)
        print(json.dumps(rep, indent=2, default=str))
        if not rep["pass"]:
            failed.append(name)
    if failed:
        print(f"FAILED: {', '.join(failed)}", file=sys.stderr)
        return 1
    print(f"all {len(names)} suites passed", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
