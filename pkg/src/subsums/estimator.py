"""Random-path (Knuth-style) estimate of the number of unique configurations.

One sample walks the pruned backtracking tree from the root, multiplying the
number of feasible children at each level and descending into a uniformly
chosen one.  The product is an unbiased estimate of the number of leaves.
The Markov test then asks how far the best of ``k`` samples sits above the
null bound Gamma(n/2 + 1).
"""
from __future__ import annotations

import math
import multiprocessing
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .census import _Search, _rows_for
from .configurations import Configuration, is_unique, output_configurations
from .numbers import PRECISION, decimal_string, gamma_half_factorial, percent_15g

__all__ = [
    "Sample",
    "Estimate",
    "TestReport",
    "branching_product",
    "sample_rng",
    "estimate",
    "verify_samples",
    "markov_test",
    "confidence_single",
    "confidence_joint",
    "gamma_half_factorial",
]

NULL_HYPOTHESIS = "E[X] <= (n/2)!"


@dataclass(frozen=True)
class Sample:
    x_value: int
    branching_factors: tuple[int, ...]
    path: Configuration | None

    def to_dict(self) -> dict:
        return {"x": str(self.x_value), "branching_factors": list(self.branching_factors),
                "path": list(self.path.p) if self.path else None}


@lru_cache(maxsize=1 << 13)
def _children(n: int, prefix: tuple[int, ...]) -> tuple[tuple[int, tuple], ...]:
    """Feasible (j, witness) pairs for the next level below ``prefix``.

    Memoised on the prefix: the witness carried to a prefix is a deterministic
    function of the prefix, so repeated walks through small trees are cheap.
    """
    witness = dict(_children(n, prefix[:-1]))[prefix[-1]] if prefix else None
    rows = [r for length, start in enumerate(prefix[: n - 1], 1) for r, _ in _rows_for(n, length, start)]
    search = _Search(n)
    # witnesses are integral; plain ints keep the cache small
    return tuple((j, tuple(int(v) for v in w))
                 for j, _, w in search.children(list(prefix), rows, witness))


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for sample ``index`` of a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def branching_product(n: int, rng: np.random.Generator) -> Sample:
    if n < 1:
        raise ValueError("n must be >= 1")
    prefix: tuple[int, ...] = ()
    x = 1
    factors = []
    for _ in range(n):
        options = _children(n, prefix)
        if not options:
            return Sample(0, tuple(factors + [0]), None)
        factors.append(len(options))
        x *= len(options)
        j, _ = options[int(rng.integers(len(options)))]
        prefix += (j,)
    return Sample(x, tuple(factors), Configuration(prefix))


@dataclass
class Estimate:
    n: int
    k: int
    seed: int
    samples: list[Sample]
    elapsed_seconds: float = 0.0

    @property
    def mean(self) -> Fraction:
        return Fraction(sum(s.x_value for s in self.samples), len(self.samples))

    @property
    def std_error(self) -> float:
        xs = [s.x_value for s in self.samples]
        if len(xs) < 2:
            return 0.0
        m = self.mean
        var = sum((Fraction(x) - m) ** 2 for x in xs) / (len(xs) - 1)
        return math.sqrt(var / len(xs))


def _draw(args) -> Sample:
    n, seed, index = args
    return branching_product(n, sample_rng(seed, index))


def estimate(n: int, k: int, seed: int, *, shards: int = 1, progress=None) -> Estimate:
    """``k`` samples, sample ``i`` drawn from the stream keyed by ``(seed, i)``.

    With ``shards > 1`` samples are drawn by worker processes; the list is
    still assembled in index order, so the result does not depend on ``shards``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if shards < 1:
        raise ValueError("shards must be >= 1")
    t0 = time.perf_counter()
    jobs = [(n, seed, i) for i in range(k)]
    samples = []
    if shards == 1:
        it = map(_draw, jobs)
        pool = None
    else:
        pool = multiprocessing.get_context("spawn").Pool(shards)
        it = pool.imap(_draw, jobs, chunksize=max(1, k // (8 * shards)))
    try:
        for s in it:
            samples.append(s)
            if progress is not None:
                progress(len(samples), k)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return Estimate(n, k, seed, samples, round(time.perf_counter() - t0, 3))


def verify_samples(samples, n: int) -> dict:
    """Re-derive every sample independently of the walk that produced it.

    Completed paths are re-solved from scratch with :func:`is_unique` and the
    witness must reproduce exactly that configuration; X must equal the
    product of the recorded branching factors.
    """
    checked = product_ok = unique_ok = dead = 0
    bad = []
    for idx, s in enumerate(samples):
        checked += 1
        if s.x_value == math.prod(s.branching_factors):
            product_ok += 1
        else:
            bad.append({"sample": idx, "problem": "X != product of branching factors"})
        if s.path is None:
            dead += 1
            if s.x_value != 0:
                bad.append({"sample": idx, "problem": "dead path with nonzero X"})
            continue
        verdict = is_unique(s.path)
        if verdict.unique and output_configurations(verdict.witness) == {s.path}:
            unique_ok += 1
        else:
            bad.append({"sample": idx, "problem": f"path {s.path} not unique"})
    return {"samples": checked, "product_ok": product_ok, "paths_unique": unique_ok,
            "dead_paths": dead, "failures": bad, "ok": not bad}


def confidence_single(c: int) -> Fraction | None:
    """Markov confidence 1 - 1/c from a single sample reaching c times the bound."""
    if c < 1:
        return None
    return 1 - Fraction(1, c)


def confidence_joint(c: int, k: int) -> mpmath.mpf | None:
    """The k-sample bound (1 - 1/c)^k."""
    if c < 1:
        return None
    with mpmath.workdps(PRECISION):
        return mpmath.power(1 - mpmath.mpf(1) / c, k)


@dataclass
class TestReport:
    n: int
    k: int
    mean: Fraction
    max: int
    null_bound: str
    c_n: int
    confidence_single: Fraction | None
    confidence_joint_bound: str | None
    rejected: bool
    null_hypothesis: str = NULL_HYPOTHESIS
    std_error: float = 0.0
    extra: dict = field(default_factory=dict)

    __test__ = False  # not a pytest class

    @property
    def confidence_single_percent(self) -> str | None:
        return None if self.confidence_single is None else percent_15g(self.confidence_single)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "mean": str(self.mean),
            "std_error": decimal_string(self.std_error, 12) if self.std_error else "0",
            "max": str(self.max),
            "null_hypothesis": self.null_hypothesis,
            "null_bound": self.null_bound,
            "null_bound_precision_digits": 30,
            "c_n": str(self.c_n),
            "confidence_single": None if self.confidence_single is None else str(self.confidence_single),
            "confidence_single_percent": self.confidence_single_percent,
            "confidence_single_label": "single-sample Markov confidence (matches published table)",
            "confidence_joint_bound": self.confidence_joint_bound,
            "confidence_joint_label": "k-sample joint bound (1 - 1/c_n)^k",
            "rejected": self.rejected,
            **self.extra,
        }


def markov_test(samples, n: int) -> TestReport:
    """Reject E[X] <= Gamma(n/2+1) when the best sample is at least twice the bound."""
    samples = list(samples)
    if not samples:
        raise ValueError("samples must be nonempty")
    xs = [s.x_value if isinstance(s, Sample) else int(s) for s in samples]
    if any(x < 0 for x in xs):
        raise ValueError("samples must be nonnegative")
    k = len(xs)
    best = max(xs)
    bound = gamma_half_factorial(n)
    with mpmath.workdps(PRECISION):
        c = int(mpmath.floor(mpmath.mpf(best) / bound))
    joint = confidence_joint(c, k)
    mean = Fraction(sum(xs), k)
    se = 0.0
    if k > 1:
        var = sum((Fraction(x) - mean) ** 2 for x in xs) / (k - 1)
        se = math.sqrt(var / k)
    return TestReport(
        n=n, k=k, mean=mean, max=best, null_bound=decimal_string(bound, 30), c_n=c,
        confidence_single=confidence_single(c),
        confidence_joint_bound=None if joint is None else decimal_string(joint, 30),
        rejected=c >= 2, std_error=se)
