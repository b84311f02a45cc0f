"""Recompute the unique-configuration counts with the (n/2)! and ratio columns.

    python scripts/table1.py --max-n 10 --csv results/table1.csv
"""
import argparse
import csv
import sys
import time
from fractions import Fraction

from subsums.census import TABLE1, count_unique
from subsums.numbers import gamma_half_factorial, one_decimal, truncate


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=1)
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--shards", type=int, default=1)
    ap.add_argument("--csv", help="also write the rows here")
    args = ap.parse_args(argv)

    rows = [["n", "U(n)", "(n/2)!", "ratio", "published", "seconds"]]
    print(f"{'n':>3} {'U(n)':>10} {'(n/2)!':>9} {'ratio':>10} {'published':>10} {'s':>8}")
    mismatches = 0
    for n in range(args.min_n, args.max_n + 1):
        t0 = time.perf_counter()
        rep = count_unique(n, args.shards)
        secs = time.perf_counter() - t0
        g = gamma_half_factorial(n)
        # the published ratio divides by the printed one-decimal value and cuts to 2 places
        ratio = truncate(rep.unique_count / Fraction(one_decimal(g)), 2)
        mismatches += rep.unique_count != TABLE1[n]
        print(f"{n:>3} {rep.unique_count:>10} {one_decimal(g):>9} {ratio:>10} {TABLE1[n]:>10} {secs:>8.1f}")
        rows.append([n, rep.unique_count, one_decimal(g), ratio, TABLE1[n], f"{secs:.1f}"])
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            csv.writer(fh).writerows(rows)
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
