"""An explicit family of 2^(n-3) distinct unique configurations.

For ``S`` a subset of {4..n}, the sequence has a huge third element (4n), so
every maximum window of length k <= n-2 starts at 2 or 3; which one wins is
decided by whether ``a_{k+2}`` is 1 (member of S) or 3.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .configurations import (Configuration, is_unique, output_configurations,
                             prefix_system)
from .feasibility import check_witness
from .kernels import window_sums

__all__ = ["FamilyInstance", "gen_instance", "subsets", "FamilyReport", "verify_family"]

MAX_FAMILY_N = 20


@dataclass(frozen=True)
class FamilyInstance:
    n: int
    subset: frozenset[int]
    a: tuple[Fraction, ...]
    p: Configuration

    def to_dict(self) -> dict:
        return {"n": self.n, "subset": sorted(self.subset),
                "sequence": [str(v) for v in self.a], "configuration": list(self.p.p)}


def gen_instance(n: int, subset=()) -> FamilyInstance:
    if n < 5:
        raise ValueError("the construction needs n >= 5")
    S = frozenset(int(i) for i in subset)
    bad = sorted(i for i in S if not 4 <= i <= n)
    if bad:
        raise ValueError(f"subset indices {bad} outside 4..{n}")
    a = [0, 2, 4 * n] + [1 if i in S else 3 for i in range(4, n + 1)]
    p = [2 if j + 2 in S else 3 for j in range(1, n - 1)] + [2, 1]
    return FamilyInstance(n, S, tuple(Fraction(v) for v in a), Configuration(tuple(p)))


def subsets(n: int):
    pool = range(4, n + 1)
    for r in range(len(pool) + 1):
        yield from itertools.combinations(pool, r)


def sign_checks(inst: FamilyInstance) -> bool:
    """Dominance of a_3 and the sign of (window at 2) - (window at 3) for k <= n-2."""
    a, n = inst.a, inst.n
    if not a[2] > sum(a) - a[2]:
        return False
    for k in range(1, n - 1):
        sums = window_sums(a, k)
        diff = sums[1] - sums[2]
        if diff != 2 - a[k + 1]:
            return False
        if (diff > 0) != (k + 2 in inst.subset):
            return False
    return True


@dataclass
class FamilyReport:
    n: int
    instances: int = 0
    passed: int = 0
    distinct: int = 0
    failures: list[dict] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures and self.passed == self.instances == self.distinct == 2 ** (self.n - 3)

    def to_dict(self, *, timing: bool = True) -> dict:
        out = {"n": self.n, "instances": self.instances, "passed": self.passed,
               "distinct": self.distinct, "expected": 2 ** (self.n - 3), "ok": self.ok,
               "failures": self.failures}
        if timing:
            out["elapsed_seconds"] = self.elapsed_seconds
        return out


def verify_family(n: int) -> FamilyReport:
    """Check every subset: exact output configuration, LP uniqueness, distinctness."""
    if not 5 <= n <= MAX_FAMILY_N:
        raise ValueError(f"n must be in 5..{MAX_FAMILY_N}")
    t0 = time.perf_counter()
    report = FamilyReport(n)
    seen = set()
    for S in subsets(n):
        inst = gen_instance(n, S)
        report.instances += 1
        problems = []
        if output_configurations(inst.a) != {inst.p}:
            problems.append("output configuration mismatch")
        if not sign_checks(inst):
            problems.append("sign check failed")
        verdict = is_unique(inst.p)
        if not verdict.unique:
            problems.append(f"not unique ({verdict.reason})")
        elif not (check_witness(prefix_system(n, inst.p.p[:-1]).rows, verdict.witness)
                  and output_configurations(verdict.witness) == {inst.p}):
            problems.append("witness round-trip failed")
        if problems:
            report.failures.append({"subset": list(S), "problems": problems})
        else:
            report.passed += 1
        seen.add(inst.p)
    report.distinct = len(seen)
    report.elapsed_seconds = round(time.perf_counter() - t0, 3)
    return report
