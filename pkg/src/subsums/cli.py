"""Command-line front end.

Every report is ``{"manifest": ..., "result": ...}``.  The result part is a
deterministic function of the flags and inputs; timings live in the manifest.
Exit codes: 0 success (including negative verdicts), 1 failed verification or
internal error, 2 usage error, 3 unreadable input.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import sys
import time
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .census import count_unique, lower_bound_from_count
from .configurations import is_unique, parse_configuration
from .estimator import estimate, markov_test, verify_samples
from .family import gen_instance, verify_family
from .kernels import maxplus_conv, mcsp_naive, minplus_conv, read_sequence
from .numbers import gamma_half_factorial, one_decimal, truncate
from .reductions import conv_to_mcsp, decode_conv, decode_mcsp, mcsp_to_conv, verify_equivalence

log = logging.getLogger("subsums")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class InputError(Exception):
    pass


def _q(v: Fraction) -> str:
    return str(v)


class Report:
    """Rendered three ways from the same numbers."""

    def __init__(self, result: dict, table: list[list] | None = None, text: str | None = None,
                 ok: bool = True):
        self.result = result
        self.table = table
        self.text = text
        self.ok = ok


def _read(path: str, digests: dict) -> tuple[Fraction, ...]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    digests[path] = hashlib.sha256(raw).hexdigest()
    try:
        return read_sequence(path)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


# -- subcommands ----------------------------------------------------------------

def cmd_mcsp(args, digests) -> Report:
    a = _read(args.input, digests)
    prof = mcsp_naive(a)
    result = {"n": prof.n, "maxima": [_q(v) for v in prof.maxima], "positions": list(prof.positions)}
    table = [["length", "maximum", "position"]] + [
        [l, _q(m), p] for l, (m, p) in enumerate(zip(prof.maxima, prof.positions), 1)]
    text = "\n".join(f"m_{l} = {_q(m)} at p_{l} = {p}"
                     for l, (m, p) in enumerate(zip(prof.maxima, prof.positions), 1))
    return Report(result, table, text)


def cmd_conv(args, digests) -> Report:
    x, y = _read(args.x, digests), _read(args.y, digests)
    z = (maxplus_conv if args.max else minplus_conv)(x, y)
    result = {"semiring": "max-plus" if args.max else "min-plus", "z": [_q(v) for v in z.z]}
    table = [["k", "z"]] + [[k, _q(v)] for k, v in enumerate(z.z)]
    text = " ".join(_q(v) for v in z.z)
    return Report(result, table, text)


def cmd_reduce(args, digests) -> Report:
    if args.direction == "conv2mcsp":
        x, y = _read(args.x, digests), _read(args.y, digests)
        inst = conv_to_mcsp(x, y)
        z = decode_conv(inst, mcsp_naive(inst.a))
        check = minplus_conv(x, y)
        result = {**inst.to_dict(), "decoded_z": [_q(v) for v in z.z], "matches_naive": z == check}
        table = [["k", "z"]] + [[k, _q(v)] for k, v in enumerate(z.z)]
        text = f"S = {inst.big_constant}\na = {' '.join(map(_q, inst.a))}\nz = {' '.join(map(_q, z.z))}"
        return Report(result, table, text, ok=z == check)
    if args.direction == "mcsp2conv":
        a = _read(args.input, digests)
        inst = mcsp_to_conv(a)
        m = decode_mcsp(inst, minplus_conv(inst.x, inst.y))
        ok = m == mcsp_naive(a).maxima
        result = {**inst.to_dict(), "decoded_maxima": [_q(v) for v in m], "matches_naive": ok}
        table = [["length", "maximum"]] + [[l, _q(v)] for l, v in enumerate(m, 1)]
        text = f"x = {' '.join(map(_q, inst.x))}\ny = {' '.join(map(_q, inst.y))}\nm = {' '.join(map(_q, m))}"
        return Report(result, table, text, ok=ok)
    rep = verify_equivalence(args.trials, args.max_n, args.seed)
    result = rep.to_dict(timing=False)
    table = [["trial", "n_conv", "n_mcsp", "pass"]] + [
        [r.trial, r.n_conv, r.n_mcsp, r.passed] for r in rep.results]
    text = f"{rep.passed}/{rep.trials} trials passed (max_n={rep.max_n}, seed={rep.seed})"
    return Report(result, table, text, ok=not rep.failures)


def cmd_unique(args, digests) -> Report:
    P = parse_configuration(args.config)
    v = is_unique(P)
    result = {"configuration": list(P.p), **v.to_dict()}
    table = [["configuration", "unique", "reason", "witness"],
             [str(P), v.unique, v.reason or "", " ".join(result.get("witness", []))]]
    text = f"{P}: {'unique' if v.unique else 'not unique (' + v.reason + ')'}"
    if v.witness:
        text += f"\nwitness: {' '.join(result['witness'])}"
    return Report(result, table, text)


def cmd_census(args, digests) -> Report:
    def progress(done, total, running):
        log.info("census n=%d: %d/%d units, running count %d", args.n, done, total, running)

    rep = count_unique(args.n, args.shards, checkpoint=args.checkpoint, progress=progress)
    result = rep.to_dict(timing=False)
    result["depth_lower_bound"] = lower_bound_from_count(rep.unique_count)
    g = gamma_half_factorial(args.n)
    table = [["n", "U(n)", "gamma(n/2+1)", "ratio"], [rep.n, rep.unique_count, rep.gamma, rep.ratio]]
    text = (f"n={rep.n}  U(n)={rep.unique_count}  (n/2)!={one_decimal(g)}  "
            f"ratio={truncate(rep.unique_count / Fraction(one_decimal(g)), 2)}x  "
            f"ceil(log3 U)={result['depth_lower_bound']}")
    return Report(result, table, text)


def cmd_estimate(args, digests) -> Report:
    def progress(done, total):
        if done % max(1, total // 10) == 0:
            log.info("estimate n=%d: %d/%d samples", args.n, done, total)

    est = estimate(args.n, args.samples, args.seed, shards=args.shards, progress=progress)
    test = markov_test(est.samples, args.n)
    result = {**test.to_dict(), "seed": args.seed}
    if args.verify:
        result["self_check"] = verify_samples(est.samples, args.n)
    result["samples"] = [s.to_dict() for s in est.samples]
    table = [["n", "c_n", "confidence_single", "confidence_joint_bound"],
             [args.n, test.c_n, test.confidence_single_percent or "", test.confidence_joint_bound or ""]]
    text = (f"n={args.n} k={test.k} mean={float(test.mean):.6g} max={test.max} "
            f"c_n={test.c_n} single={test.confidence_single_percent}% "
            f"joint={test.confidence_joint_bound} rejected={test.rejected}")
    ok = result.get("self_check", {}).get("ok", True)
    return Report(result, table, text, ok=ok)


def cmd_family(args, digests) -> Report:
    if args.subset is not None:
        subset = [int(t) for t in args.subset.split(",") if t.strip()]
        inst = gen_instance(args.n, subset)
        result = inst.to_dict()
        table = [["i", "a_i", "p_i"]] + [[i, _q(a), p] for i, (a, p) in enumerate(zip(inst.a, inst.p.p), 1)]
        text = f"A = {' '.join(map(_q, inst.a))}\nP = {inst.p}"
        return Report(result, table, text)
    rep = verify_family(args.n)
    result = rep.to_dict(timing=False)
    table = [["n", "instances", "passed", "distinct", "expected"],
             [rep.n, rep.instances, rep.passed, rep.distinct, 2 ** (rep.n - 3)]]
    text = f"n={rep.n}: {rep.passed}/{rep.instances} verified, {rep.distinct} distinct"
    return Report(result, table, text, ok=rep.ok)


# -- plumbing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="subsums", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mcsp", parents=[common], help="maximum consecutive subsums")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_mcsp)

    p = sub.add_parser("conv", parents=[common], help="(min,+) convolution")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--max", action="store_true", help="use (max,+) instead")
    p.set_defaults(func=cmd_conv)

    p = sub.add_parser("reduce", parents=[common], help="reductions between the two problems")
    rsub = p.add_subparsers(dest="direction", required=True)
    r = rsub.add_parser("conv2mcsp", parents=[common])
    r.add_argument("--x", required=True)
    r.add_argument("--y", required=True)
    r = rsub.add_parser("mcsp2conv", parents=[common])
    r.add_argument("--input", required=True)
    r = rsub.add_parser("verify", parents=[common])
    r.add_argument("--trials", type=int, default=200)
    r.add_argument("--max-n", type=int, default=40)
    r.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("unique", parents=[common], help="decide whether a configuration is unique")
    p.add_argument("--config", required=True, help='comma-separated 1-based positions, e.g. "2,4,2,1,2,1"')
    p.set_defaults(func=cmd_unique)

    p = sub.add_parser("census", parents=[common], help="count unique configurations exactly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shards", "--threads", type=int, default=1)
    p.add_argument("--checkpoint")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("estimate", parents=[common], help="random-path estimate and Markov test")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shards", "--threads", type=int, default=1)
    p.add_argument("--verify", action="store_true", help="re-check every sample independently")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("family", parents=[common], help="the exponential family of unique configurations")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--verify", action="store_true")
    g.add_argument("--subset", help="comma-separated members of {4..n}")
    p.set_defaults(func=cmd_family)
    return parser


def _render(report: Report, fmt: str, manifest: dict) -> str:
    if fmt == "json":
        return json.dumps({"manifest": manifest, "result": report.result}, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(report.table or [])
        return buf.getvalue()
    return (report.text or "") + "\n"


def _flags(args) -> dict:
    skip = {"func", "format", "output", "verbose"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and not k.startswith("_")}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s", stream=sys.stderr)
    started = datetime.now(timezone.utc)
    t0 = time.perf_counter()
    digests: dict[str, str] = {}
    try:
        report = args.func(args, digests)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    manifest = {
        "subcommand": args.command if args.command != "reduce" else f"reduce {args.direction}",
        "flags": _flags(args),
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "input_digests": digests,
        "started": started.isoformat(),
        "finished": datetime.now(timezone.utc).isoformat(),
        "elapsed_seconds": round(time.perf_counter() - t0, 3),
    }
    out = _render(report, args.format, manifest)
    if args.output:
        try:
            Path(args.output).write_text(out)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(out)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
