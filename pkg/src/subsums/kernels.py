"""Naive exact solvers for MCSP and (min,+)/(max,+)-convolution.

These quadratic kernels are the ground truth every other module is checked
against.  MCSP sequences are 1-based in the public results (positions start at
1); convolution inputs are 0-based, ``x_0..x_n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

__all__ = [
    "Sequence",
    "SubsumProfile",
    "ConvolutionResult",
    "as_sequence",
    "parse_sequence",
    "read_sequence",
    "window_sums",
    "mcsp_naive",
    "minplus_conv",
    "maxplus_conv",
]

Sequence = tuple  # tuple[Fraction, ...]; immutable, normalised rationals


def as_sequence(values: Iterable, *, allow_empty: bool = False) -> tuple[Fraction, ...]:
    """Convert ints/strings/Fractions to a tuple of Fractions.

    Floats are rejected because their binary expansion is rarely what was meant.
    """
    out = []
    for v in values:
        if isinstance(v, float):
            raise TypeError("floats are not accepted; pass a string or Fraction")
        out.append(Fraction(v))
    if not out and not allow_empty:
        raise ValueError("sequence must be nonempty")
    return tuple(out)


def parse_sequence(text: str) -> tuple[Fraction, ...]:
    """Parse the one-rational-per-line text format.

    Accepts ``p/q``, integers and finite decimals; blank lines and ``#``
    comments are skipped.
    """
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(Fraction(line))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: cannot parse {line!r} as a rational") from exc
    return as_sequence(values)


def read_sequence(path: str | Path) -> tuple[Fraction, ...]:
    return parse_sequence(Path(path).read_text())


@dataclass(frozen=True)
class SubsumProfile:
    maxima: tuple[Fraction, ...]
    positions: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.maxima)


@dataclass(frozen=True)
class ConvolutionResult:
    z: tuple[Fraction, ...]

    def __iter__(self):
        return iter(self.z)

    def __len__(self):
        return len(self.z)


def window_sums(a, length: int) -> list[Fraction]:
    """All consecutive sums of ``length`` elements, by starting index (0-based)."""
    n = len(a)
    if not 1 <= length <= n:
        raise ValueError(f"window length {length} out of range for n={n}")
    s = sum(a[:length], Fraction(0))
    sums = [s]
    for i in range(length, n):
        s += a[i] - a[i - length]
        sums.append(s)
    return sums


def mcsp_naive(a) -> SubsumProfile:
    """Maximum sum of every window length, with the smallest maximizing start."""
    a = as_sequence(a)
    maxima, positions = [], []
    for length in range(1, len(a) + 1):
        sums = window_sums(a, length)
        best = max(sums)
        maxima.append(best)
        positions.append(sums.index(best) + 1)
    return SubsumProfile(tuple(maxima), tuple(positions))


def _check_pair(x, y):
    x, y = as_sequence(x), as_sequence(y)
    if len(x) != len(y):
        raise ValueError(f"convolution inputs differ in length ({len(x)} vs {len(y)})")
    return x, y


def minplus_conv(x, y) -> ConvolutionResult:
    """``z_k = min_i x_i + y_{k-i}`` for k = 0..2n."""
    x, y = _check_pair(x, y)
    n = len(x) - 1
    z = []
    for k in range(2 * n + 1):
        lo, hi = max(0, k - n), min(k, n)
        z.append(min(x[i] + y[k - i] for i in range(lo, hi + 1)))
    return ConvolutionResult(tuple(z))


def maxplus_conv(x, y) -> ConvolutionResult:
    x, y = _check_pair(x, y)
    neg = minplus_conv([-v for v in x], [-v for v in y])
    return ConvolutionResult(tuple(-v for v in neg.z))
