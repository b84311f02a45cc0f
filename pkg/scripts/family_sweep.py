"""Verify the exponential family for every n in a range and print one line per n."""
import argparse
import sys

from subsums.family import verify_family


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min-n", type=int, default=5)
    ap.add_argument("--max-n", type=int, default=12)
    args = ap.parse_args(argv)
    ok = True
    for n in range(args.min_n, args.max_n + 1):
        rep = verify_family(n)
        ok &= rep.ok
        print(f"n={n:<3} {rep.passed}/{rep.instances} verified, {rep.distinct} distinct, "
              f"{rep.elapsed_seconds:.1f}s")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
