"""Random-path estimates and Markov confidences for a range of n.

Each row draws k seeded samples, reports the best X, c_n and both the
single-sample confidence 1 - 1/c_n and the k-sample bound (1 - 1/c_n)^k.

    python scripts/table2.py --n 10 20 30 --samples 1000 --seed 1
"""
import argparse
import sys
import time

from subsums.estimator import estimate, markov_test, verify_samples


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[10, 15, 20])
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--shards", type=int, default=1)
    ap.add_argument("--verify", action="store_true", help="re-check every sample")
    args = ap.parse_args(argv)

    failed = False
    for n in args.n:
        t0 = time.perf_counter()
        est = estimate(n, args.samples, args.seed, shards=args.shards)
        rep = markov_test(est.samples, n)
        line = (f"n={n:<4} k={rep.k} max={rep.max} c_n={rep.c_n} "
                f"single={rep.confidence_single_percent}% joint={rep.confidence_joint_bound} "
                f"({time.perf_counter() - t0:.1f}s)")
        if args.verify:
            check = verify_samples(est.samples, n)
            failed |= not check["ok"]
            line += f" self-check={'ok' if check['ok'] else 'FAILED'}"
        print(line, flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
