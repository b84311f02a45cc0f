"""Linear-size reductions between MCSP and (min,+)-convolution.

conv -> MCSP builds the ``2n+4``-element gadget sequence: the two copies of a
big constant ``S`` force every maximum window of length ``k+4`` to cover both
of them, and what is left inside is ``-x_t - y_s`` with ``t+s = k``.

MCSP -> conv uses prefix sums ``P_i``: with ``x_i = P_{n-i}`` and
``y_j = -P_j`` the convolution entry ``z_{n+l}`` is minus the best window sum
of length ``l``.

Convolution sequences are indexed 0..n, MCSP sequences 1..n.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .kernels import (ConvolutionResult, SubsumProfile, as_sequence, mcsp_naive,
                      minplus_conv)

__all__ = [
    "ConvToMcspInstance",
    "McspToConvInstance",
    "gadget_constant",
    "conv_to_mcsp",
    "decode_conv",
    "mcsp_to_conv",
    "decode_mcsp",
    "random_rational_sequence",
    "TrialResult",
    "EquivalenceReport",
    "verify_equivalence",
]


@dataclass(frozen=True)
class ConvToMcspInstance:
    a: tuple[Fraction, ...]
    big_constant: Fraction
    n: int

    def to_dict(self) -> dict:
        return {"a": [str(v) for v in self.a], "S": str(self.big_constant), "n": self.n}


@dataclass(frozen=True)
class McspToConvInstance:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    n: int

    def to_dict(self) -> dict:
        return {"x": [str(v) for v in self.x], "y": [str(v) for v in self.y], "n": self.n}


def gadget_constant(x, y) -> Fraction:
    """2 * sum(|x_i| + |y_i|) + 1.

    A window holding one big cell sums to at most S + sum|.|, while the best
    window holding both sums to at least 2S - sum|.|, so S > 2 sum|.| makes the
    two-cell windows win strictly.  S > sum|.| alone is not enough: with
    x = (0,0,0,0), y = (2,0,0,0) the window starting at the second big cell
    beats every window that contains both.
    """
    return 2 * sum((abs(v) for v in tuple(x) + tuple(y)), Fraction(0)) + 1


def conv_to_mcsp(x, y, big_constant=None) -> ConvToMcspInstance:
    """Gadget sequence of length 2n+4; ``big_constant`` overrides the default S."""
    x, y = as_sequence(x), as_sequence(y)
    if len(x) != len(y):
        raise ValueError(f"X and Y must have equal length ({len(x)} vs {len(y)})")
    n = len(x) - 1
    S = gadget_constant(x, y) if big_constant is None else Fraction(big_constant)
    head = [x[n - i] - x[n + 1 - i] for i in range(1, n + 1)]
    tail = [y[i - n - 5] - y[i - n - 4] for i in range(n + 5, 2 * n + 5)]
    a = tuple(head + [S, -x[0], -y[0], S] + tail)
    assert len(a) == 2 * n + 4
    return ConvToMcspInstance(a, S, n)


def decode_conv(instance: ConvToMcspInstance, profile: SubsumProfile) -> ConvolutionResult:
    n = instance.n
    if profile.n != 2 * n + 4:
        raise ValueError(f"profile has length {profile.n}, expected {2 * n + 4}")
    S2 = 2 * instance.big_constant
    return ConvolutionResult(tuple(S2 - profile.maxima[k + 3] for k in range(2 * n + 1)))


def mcsp_to_conv(a) -> McspToConvInstance:
    a = as_sequence(a)
    n = len(a)
    prefix = [Fraction(0)]
    for v in a:
        prefix.append(prefix[-1] + v)
    x = tuple(prefix[n - i] for i in range(n + 1))
    y = tuple(-prefix[j] for j in range(n + 1))
    return McspToConvInstance(x, y, n)


def decode_mcsp(instance: McspToConvInstance, z: ConvolutionResult) -> tuple[Fraction, ...]:
    """Window maxima m_1..m_n from the convolution of the instance."""
    n = instance.n
    if len(z) != 2 * n + 1:
        raise ValueError(f"convolution has length {len(z)}, expected {2 * n + 1}")
    return tuple(-z.z[n + length] for length in range(1, n + 1))


def random_rational_sequence(rng: random.Random, length: int, *, bound: int = 50,
                             max_den: int = 12) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-bound * max_den, bound * max_den), rng.randint(1, max_den))
                 for _ in range(length))


@dataclass(frozen=True)
class TrialResult:
    trial: int
    n_conv: int
    n_mcsp: int
    conv_ok: bool
    mcsp_ok: bool
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.conv_ok and self.mcsp_ok


@dataclass
class EquivalenceReport:
    trials: int
    max_n: int
    seed: int
    results: list[TrialResult] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def failures(self) -> list[TrialResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self, *, timing: bool = True) -> dict:
        out = {
            "trials": self.trials, "max_n": self.max_n, "seed": self.seed,
            "passed": self.passed, "failed": len(self.failures),
            "results": [{"trial": r.trial, "n_conv": r.n_conv, "n_mcsp": r.n_mcsp,
                         "pass": r.passed, "detail": r.detail} for r in self.results],
        }
        if timing:
            out["elapsed_seconds"] = self.elapsed_seconds
        return out


def _trial(seed: int, trial: int, max_n: int) -> TrialResult:
    rng = random.Random(f"{seed}:{trial}")
    n_conv = rng.randint(0, max_n)
    x = random_rational_sequence(rng, n_conv + 1)
    y = random_rational_sequence(rng, n_conv + 1)
    inst = conv_to_mcsp(x, y)
    conv_ok = decode_conv(inst, mcsp_naive(inst.a)) == minplus_conv(x, y)

    n_mcsp = rng.randint(1, max_n)
    a = random_rational_sequence(rng, n_mcsp)
    back = mcsp_to_conv(a)
    mcsp_ok = decode_mcsp(back, minplus_conv(back.x, back.y)) == mcsp_naive(a).maxima
    detail = "" if conv_ok and mcsp_ok else f"seed={seed} trial={trial}"
    return TrialResult(trial, n_conv, n_mcsp, conv_ok, mcsp_ok, detail)


def verify_equivalence(trials: int, max_n: int, seed: int) -> EquivalenceReport:
    """Round-trip both reductions on seeded random rational instances.

    Trial ``t`` draws from its own stream keyed by ``(seed, t)``, so any failing
    instance can be regenerated alone.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    t0 = time.perf_counter()
    report = EquivalenceReport(trials, max_n, seed)
    report.results = [_trial(seed, t, max_n) for t in range(trials)]
    report.elapsed_seconds = round(time.perf_counter() - t0, 3)
    return report
