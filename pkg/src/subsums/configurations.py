"""Output configurations, their inequality systems and the uniqueness test.

A configuration ``P = (p_1, ..., p_n)`` lists, for every window length ``l``,
a 1-based start of a maximum-sum window of that length.  ``P`` is *unique*
when some input has ``P`` as its only output configuration, which happens iff
the strict system "window at ``p_i`` beats every other window of length
``i``", for ``i = 1..n-1``, is feasible.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .feasibility import check_witness, strict_feasible
from .kernels import as_sequence, window_sums

__all__ = [
    "Configuration",
    "PartialConfiguration",
    "ConstraintSystem",
    "UniquenessVerdict",
    "ResourceLimitError",
    "parse_configuration",
    "all_configurations",
    "maximizer_sets",
    "output_configurations",
    "build_inequalities",
    "prefix_system",
    "nonadjacency_violations",
    "is_unique",
]

MAX_ENUMERATION = 10**6


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class Configuration:
    p: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(v) for v in self.p)
        object.__setattr__(self, "p", p)
        n = len(p)
        if n == 0:
            raise ValueError("configuration must be nonempty")
        for length, start in enumerate(p, 1):
            if not 1 <= start <= n - length + 1:
                raise ValueError(
                    f"p_{length} = {start} outside 1..{n - length + 1} (n={n})")

    @property
    def n(self) -> int:
        return len(self.p)

    def __iter__(self):
        return iter(self.p)

    def __len__(self):
        return len(self.p)

    def __str__(self):
        return ",".join(map(str, self.p))


@dataclass(frozen=True)
class PartialConfiguration:
    """Positions ``p_1..p_{i-1}`` of an ``n``-configuration; ``frontier`` is ``i``."""

    n: int
    p: tuple[int, ...] = ()

    def __post_init__(self):
        p = tuple(int(v) for v in self.p)
        object.__setattr__(self, "p", p)
        if self.n < 1 or len(p) > self.n:
            raise ValueError(f"invalid partial configuration {p} for n={self.n}")
        for length, start in enumerate(p, 1):
            if not 1 <= start <= self.n - length + 1:
                raise ValueError(f"p_{length} = {start} out of range (n={self.n})")

    @property
    def frontier(self) -> int:
        return len(self.p) + 1

    def extend(self, j: int) -> "PartialConfiguration":
        return PartialConfiguration(self.n, self.p + (j,))

    def complete(self) -> Configuration:
        if len(self.p) != self.n:
            raise ValueError("configuration is not complete")
        return Configuration(self.p)


@dataclass(frozen=True)
class ConstraintSystem:
    """Rows ``w`` asserting ``w . a > 0``; ``tags[k]`` is the (length, challenger) of row k."""

    n: int
    rows: tuple[tuple[int, ...], ...] = ()
    tags: tuple[tuple[int, int], ...] = ()

    def __len__(self):
        return len(self.rows)

    def __add__(self, other: "ConstraintSystem") -> "ConstraintSystem":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return ConstraintSystem(self.n, self.rows + other.rows, self.tags + other.tags)


@dataclass(frozen=True)
class UniquenessVerdict:
    unique: bool
    reason: str | None = None  # "adjacency" | "infeasible-LP" when not unique
    witness: tuple[Fraction, ...] | None = None
    violations: tuple[tuple[int, int], ...] = field(default=())

    def to_dict(self) -> dict:
        out = {"unique": self.unique, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = [str(v) for v in self.witness]
        if self.violations:
            out["violations"] = [list(v) for v in self.violations]
        return out


def parse_configuration(text: str) -> Configuration:
    return Configuration(tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok))


def all_configurations(n: int) -> Iterable[Configuration]:
    """Every one of the n! configurations, in lexicographic order."""
    ranges = [range(1, n - length + 2) for length in range(1, n + 1)]
    for p in itertools.product(*ranges):
        yield Configuration(p)


def maximizer_sets(a) -> list[list[int]]:
    """For each length, all 1-based starts attaining the maximum window sum."""
    a = as_sequence(a)
    out = []
    for length in range(1, len(a) + 1):
        sums = window_sums(a, length)
        best = max(sums)
        out.append([k + 1 for k, s in enumerate(sums) if s == best])
    return out


def output_configurations(a) -> set[Configuration]:
    sets = maximizer_sets(a)
    total = math.prod(len(s) for s in sets)
    if total > MAX_ENUMERATION:
        raise ResourceLimitError(
            f"{total} output configurations exceed the limit of {MAX_ENUMERATION}")
    return {Configuration(p) for p in itertools.product(*sets)}


def _window_row(n: int, length: int, winner: int, challenger: int) -> tuple[int, ...]:
    row = [0] * n
    for k in range(winner - 1, winner - 1 + length):
        row[k] += 1
    for k in range(challenger - 1, challenger - 1 + length):
        row[k] -= 1
    return tuple(row)


def _rows_for(n: int, length: int, start: int):
    for j in range(1, n - length + 2):
        if j != start:
            yield _window_row(n, length, start, j), (length, j)


def build_inequalities(P, i: int) -> ConstraintSystem:
    """Q(P, i): the window of length ``i`` at ``p_i`` beats every other one.

    ``P`` may be a full or partial configuration as long as ``p_i`` is fixed.
    """
    n = P.n
    p = P.p
    if not 1 <= i <= n - 1:
        raise ValueError(f"length {i} out of range 1..{n - 1}")
    if i > len(p):
        raise ValueError(f"p_{i} is not fixed")
    pairs = list(_rows_for(n, i, p[i - 1]))
    return ConstraintSystem(n, tuple(r for r, _ in pairs), tuple(t for _, t in pairs))


def prefix_system(n: int, p: Sequence[int]) -> ConstraintSystem:
    """Union of Q(P, 1) .. Q(P, len(p)), skipping length n (it has no challengers)."""
    rows, tags = [], []
    for length, start in enumerate(p, 1):
        for row, tag in _rows_for(n, length, start):
            rows.append(row)
            tags.append(tag)
    return ConstraintSystem(n, tuple(rows), tuple(tags))


def nonadjacency_violations(P) -> list[tuple[int, int]]:
    """All pairs (i, j) of fixed lengths with ``p_j = p_i + i``.

    Accepts any integer sequence (or object with ``.p``); no range validation.
    """
    p = tuple(getattr(P, "p", P))
    out = []
    for i, pi in enumerate(p, 1):
        for j, pj in enumerate(p, 1):
            if pj == pi + i:
                out.append((i, j))
    return out


def is_unique(P) -> UniquenessVerdict:
    if not isinstance(P, Configuration):
        P = Configuration(tuple(P))
    violations = nonadjacency_violations(P)
    if violations:
        return UniquenessVerdict(False, "adjacency", violations=tuple(violations))
    system = prefix_system(P.n, P.p[:-1])
    result = strict_feasible(system.rows, P.n)
    if not result.feasible:
        return UniquenessVerdict(False, "infeasible-LP")
    assert check_witness(system.rows, result.witness)
    return UniquenessVerdict(True, None, result.witness)
