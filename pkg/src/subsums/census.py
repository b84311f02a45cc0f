"""Exact count of unique configurations by pruned depth-first search.

Lengths are fixed in ascending order, ``p_1`` first.  Each branch is gated by
:func:`is_feasible_extension`: the non-adjacency test first, then exact strict
feasibility of ``Q(P,1) u ... u Q(P,i)``.  A witness found for a prefix is
carried down; if it already satisfies the rows a child adds, the child is
feasible without another solve.
"""
from __future__ import annotations

import json
import logging
import multiprocessing
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

from .configurations import PartialConfiguration, _rows_for
from .feasibility import check_witness, strict_feasible
from .numbers import decimal_string, gamma_half_factorial, gamma_ratio

__all__ = [
    "CensusReport",
    "Counters",
    "adjacent",
    "is_feasible_extension",
    "extension_witness",
    "count_unique",
    "enumerate_unique",
    "lower_bound_from_count",
    "TABLE1",
]

log = logging.getLogger(__name__)

TABLE1 = {1: 1, 2: 2, 3: 4, 4: 12, 5: 36, 6: 148, 7: 586, 8: 2790, 9: 13338,
          10: 71562, 11: 378024, 12: 2222536, 13: 12770406, 14: 78968306}

CHECKPOINT_VERSION = 1


@dataclass
class Counters:
    nodes: int = 0
    lp_calls: int = 0
    adjacency_prunes: int = 0
    witness_reuses: int = 0
    max_pivots: int = 0

    def add(self, other: "Counters") -> None:
        self.nodes += other.nodes
        self.lp_calls += other.lp_calls
        self.adjacency_prunes += other.adjacency_prunes
        self.witness_reuses += other.witness_reuses
        self.max_pivots = max(self.max_pivots, other.max_pivots)


def adjacent(p, i: int, j: int) -> bool:
    """Would ``p_i = j`` sit next to an already fixed maximum window?"""
    for k, pk in enumerate(p[: i - 1], 1):
        if j == pk + k or pk == j + i:
            return True
    return False


def _check_args(P: PartialConfiguration, i: int, j: int):
    if i != P.frontier:
        raise ValueError(f"positions 1..{i - 1} must be fixed (frontier is {P.frontier})")
    if not 1 <= j <= P.n - i + 1:
        raise ValueError(f"j={j} outside 1..{P.n - i + 1}")


def extension_witness(P: PartialConfiguration, i: int, j: int, counters: Counters | None = None):
    """Witness for ``P`` extended by ``p_i = j``, or None when infeasible."""
    _check_args(P, i, j)
    counters = counters if counters is not None else Counters()
    if adjacent(P.p, i, j):
        counters.adjacency_prunes += 1
        return None
    p = P.p + (j,)
    rows = [r for length, start in enumerate(p[: P.n - 1], 1) for r, _ in _rows_for(P.n, length, start)]
    counters.lp_calls += 1
    res = strict_feasible(rows, P.n)
    counters.max_pivots = max(counters.max_pivots, res.pivots)
    return res.witness if res.feasible else None


def is_feasible_extension(P: PartialConfiguration, i: int, j: int) -> bool:
    return extension_witness(P, i, j) is not None


class _Search:
    """DFS below a fixed prefix; keeps the row list and witness of the current path."""

    def __init__(self, n: int, on_leaf: Callable | None = None, use_adjacency: bool = True):
        self.n = n
        self.counters = Counters()
        self.on_leaf = on_leaf
        self.use_adjacency = use_adjacency

    def children(self, p: list[int], rows: list, witness):
        """Yield (j, new_rows, witness) for each feasible extension at level len(p)+1."""
        n = self.n
        i = len(p) + 1
        c = self.counters
        for j in range(1, n - i + 2):
            c.nodes += 1
            if self.use_adjacency and adjacent(p, i, j):
                c.adjacency_prunes += 1
                continue
            new = [r for r, _ in _rows_for(n, i, j)] if i < n else []
            if witness is not None and check_witness(new, witness):
                c.witness_reuses += 1
                yield j, new, witness
                continue
            all_rows = rows + new
            c.lp_calls += 1
            res = strict_feasible(all_rows, n)
            if res.pivots > c.max_pivots:
                c.max_pivots = res.pivots
            if res.feasible:
                yield j, new, res.int_witness

    def count(self, p: list[int], rows: list, witness) -> int:
        if len(p) == self.n:
            if self.on_leaf is not None:
                self.on_leaf(tuple(p), witness)
            return 1
        total = 0
        for j, new, w in self.children(p, rows, witness):
            p.append(j)
            total += self.count(p, rows + new, w)
            p.pop()
        return total


def _prefix_state(n: int, prefix: tuple[int, ...]):
    rows = [r for length, start in enumerate(prefix[: n - 1], 1) for r, _ in _rows_for(n, length, start)]
    res = strict_feasible(rows, n)
    return rows, res.int_witness


def _work_units(n: int, depth: int) -> list[tuple[int, ...]]:
    """Feasible prefixes of the given depth, in lexicographic order."""
    search = _Search(n)
    units = []

    def walk(p, rows, w):
        if len(p) == depth:
            units.append(tuple(p))
            return
        for j, new, w2 in search.children(p, rows, w):
            p.append(j)
            walk(p, rows + new, w2)
            p.pop()

    walk([], [], None)
    return units


def _run_unit(args) -> tuple[tuple[int, ...], int, dict]:
    n, prefix = args
    search = _Search(n)
    rows, witness = _prefix_state(n, prefix)
    count = search.count(list(prefix), rows, witness)
    return prefix, count, asdict(search.counters)


@dataclass
class CensusReport:
    n: int
    unique_count: int
    nodes_visited: int
    lp_calls: int
    adjacency_prunes: int
    witness_reuses: int
    max_pivots: int
    elapsed_seconds: float
    shards: int
    work_units: int
    gamma: str = field(init=False)
    ratio: str = field(init=False)

    def __post_init__(self):
        self.gamma = decimal_string(gamma_half_factorial(self.n), 30)
        self.ratio = decimal_string(gamma_ratio(self.unique_count, self.n), 30)

    def to_dict(self, *, timing: bool = True) -> dict:
        out = asdict(self)
        out["gamma_precision_digits"] = 30
        if not timing:
            out.pop("elapsed_seconds")
        return out


def _load_checkpoint(path: Path | None, n: int, depth: int) -> dict[tuple[int, ...], tuple[int, dict]]:
    if path is None or not path.exists():
        return {}
    doc = json.loads(path.read_text())
    if doc.get("version") != CHECKPOINT_VERSION or doc.get("n") != n or doc.get("depth") != depth:
        log.warning("checkpoint %s does not match this run; ignoring it", path)
        return {}
    return {tuple(u["prefix"]): (u["count"], u["counters"]) for u in doc["completed"]}


def _save_checkpoint(path: Path, n: int, depth: int, done: dict) -> None:
    doc = {
        "version": CHECKPOINT_VERSION,
        "n": n,
        "depth": depth,
        "running_count": sum(c for c, _ in done.values()),
        "completed": [{"prefix": list(k), "count": c, "counters": ctr}
                      for k, (c, ctr) in sorted(done.items())],
    }
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(doc, indent=1))
    tmp.replace(path)


def count_unique(n: int, shards: int = 1, *, checkpoint: str | Path | None = None,
                 checkpoint_every: float = 60.0, progress: Callable | None = None) -> CensusReport:
    """Count configurations of length ``n`` whose inequality system is feasible.

    ``shards`` is the number of worker processes; the top levels' feasible
    prefixes are the work units and their counts are summed in unit order, so
    the result does not depend on ``shards``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if shards < 1:
        raise ValueError("shards must be >= 1")
    t0 = time.perf_counter()
    depth = min(2, n)
    units = _work_units(n, depth)
    ckpt = Path(checkpoint) if checkpoint else None
    done = _load_checkpoint(ckpt, n, depth)
    todo = [(n, u) for u in units if u not in done]
    last_save = time.monotonic()

    def record(prefix, count, ctr):
        nonlocal last_save
        done[prefix] = (count, ctr)
        if progress is not None:
            progress(len(done), len(units), sum(c for c, _ in done.values()))
        if ckpt is not None and time.monotonic() - last_save >= checkpoint_every:
            _save_checkpoint(ckpt, n, depth, done)
            last_save = time.monotonic()

    if shards == 1 or len(todo) <= 1:
        for args in todo:
            record(*_run_unit(args))
    else:
        with multiprocessing.get_context("spawn").Pool(shards) as pool:
            for result in pool.imap(_run_unit, todo):
                record(*result)
    if ckpt is not None:
        _save_checkpoint(ckpt, n, depth, done)

    totals = Counters()
    count = 0
    for u in units:
        c, ctr = done[u]
        count += c
        totals.add(Counters(**ctr))
    return CensusReport(
        n=n, unique_count=count, nodes_visited=totals.nodes, lp_calls=totals.lp_calls,
        adjacency_prunes=totals.adjacency_prunes, witness_reuses=totals.witness_reuses,
        max_pivots=totals.max_pivots, elapsed_seconds=round(time.perf_counter() - t0, 3),
        shards=shards, work_units=len(units))


def enumerate_unique(n: int, *, adjacency: bool = True) -> dict[tuple[int, ...], tuple]:
    """Every unique configuration of length ``n`` with the witness found for it.

    ``adjacency=False`` disables the pre-check so that pruning safety can be
    tested against the LP alone.
    """
    found = {}
    search = _Search(n, on_leaf=lambda p, w: found.__setitem__(p, w), use_adjacency=adjacency)
    search.count([], [], None)
    return found


def lower_bound_from_count(k: int) -> int:
    """Smallest ``h`` with ``3**h >= k``: the height of a ternary tree with k leaves."""
    if k < 1:
        raise ValueError("k must be >= 1")
    h, power = 0, 1
    while power < k:
        power *= 3
        h += 1
    return h
