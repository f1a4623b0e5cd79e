"""Rz(pi/128) benchmark rows for several tolerances, with the lower bounds alongside.

    python3 scripts/reproduce_table.py --runs 20 --out table.csv
"""

import argparse
import csv
import sys
from fractions import Fraction

from ctsynth.approx import Limits
from ctsynth.bench import RECORD_FIELDS, benchmark
from ctsynth.highprec import HighPrecReal
from ctsynth.verify import lower_bound_tcount, typical_lower_bound_tcount


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--exponents", default="10,20,30,40,50,60,70,80,90,100",
                    help="comma-separated e for epsilon = 10^-e")
    ap.add_argument("--runs", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--parallel", type=int, default=1)
    ap.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    args = ap.parse_args()

    eps = [Fraction(1, 10 ** int(e)) for e in args.exponents.split(",")]
    rows = benchmark(lambda p: HighPrecReal.pi(p) / 128, eps, args.runs, args.seed, Limits(workers=args.parallel))

    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow([*RECORD_FIELDS, "median_candidates", "failures", "lower_bound", "typical_lower_bound"])
    for r in rows:
        rec = r.record()
        med = r.median_candidates() if r.per_run else float("nan")
        w.writerow([*(rec[f] for f in RECORD_FIELDS), med, r.failures,
                    round(lower_bound_tcount(r.epsilon), 2), round(typical_lower_bound_tcount(r.epsilon), 2)])
    if fh is not sys.stdout:
        fh.close()
    return 1 if any(r.failures for r in rows) else 0


if __name__ == "__main__":
    sys.exit(main())
