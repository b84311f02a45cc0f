"""Exact strict feasibility of homogeneous systems ``W a > 0``.

The decision goes through the theorem of the alternative (Gordan): the strict
system has no solution iff some ``y >= 0`` with ``sum(y) = 1`` satisfies
``W^T y = 0``.  That alternative has only ``n + 1`` equality rows, so its
Phase-1 tableau stays small even when ``W`` has many rows.  It is solved with an
integer-preserving (Bareiss) simplex tableau under Bland's least-index rule,
which keeps every entry an exact integer and guarantees termination.

When the Phase-1 optimum is positive the simplex multipliers of the final
basis give a strict solution of the original system directly; the witness is
returned as an integer vector and re-verified row by row before returning.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numba
import numpy as np

__all__ = ["FeasibilityResult", "strict_feasible", "check_witness"]

# Above this magnitude the int64 products p*T could overflow; switch to Python ints.
_INT64_SAFE = 1 << 30


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    int_witness: tuple[int, ...] | None
    pivots: int = 0

    @property
    def witness(self) -> tuple[Fraction, ...] | None:
        if self.int_witness is None:
            return None
        return tuple(Fraction(v) for v in self.int_witness)

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"


def check_witness(rows: Sequence[Sequence[int]], witness: Sequence) -> bool:
    """True iff ``w . witness > 0`` holds exactly for every row."""
    for w in rows:
        if sum(c * x for c, x in zip(w, witness) if c) <= 0:
            return False
    return True


def _as_matrix(rows, n: int) -> np.ndarray:
    """Integer matrix of the distinct rows, first occurrences kept in order."""
    rows = list(rows)
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    if any(len(r) != n for r in rows):
        raise ValueError(f"rows must all have dimension {n}")
    try:
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    except OverflowError:
        # beyond int64: keep Python ints, dedupe by hand
        uniq = list(dict.fromkeys(tuple(int(c) for c in r) for r in rows))
        arr = np.empty((len(uniq), n), dtype=object)
        arr[:] = uniq
        if not all(any(r) for r in uniq):
            raise ValueError("all-zero row in strict system")
        return arr
    if not arr.any(axis=1).all():
        raise ValueError("all-zero row in strict system")
    _, first = np.unique(arr, axis=0, return_index=True)
    if len(first) < len(arr):
        arr = arr[np.sort(first)]
    return arr


def _verify(W: np.ndarray, witness: tuple[int, ...]) -> bool:
    if W.dtype != object and max(map(abs, witness), default=0) < (1 << 40):
        return bool((W @ np.array(witness, dtype=np.int64) > 0).all())
    return check_witness(W.tolist(), witness)


@numba.njit(cache=True)
def _bland_int64(T, basis, limit):
    """Integer-preserving Phase-1 simplex, Bland's rule, in place.

    Returns (status, pivots, d): status 1 means an entry exceeded ``limit`` and
    the caller must restart with unbounded integers.
    """
    rows, cols = T.shape
    obj = rows - 1
    nrhs = cols - 1
    d = 1
    pivots = 0
    while True:
        j = -1
        for c in range(nrhs):
            if T[obj, c] < 0:
                j = c
                break
        if j < 0:
            return 0, pivots, d
        r = -1
        for i in range(obj):
            ci = T[i, j]
            if ci <= 0:
                continue
            if r < 0:
                r = i
                continue
            lhs = T[i, nrhs] * T[r, j]
            cur = T[r, nrhs] * ci
            if lhs < cur or (lhs == cur and basis[i] < basis[r]):
                r = i
        if r < 0:
            return 2, pivots, d
        p = T[r, j]
        big = 0
        for i in range(rows):
            if i == r:
                continue
            f = T[i, j]
            for c in range(cols):
                v = (p * T[i, c] - f * T[r, c]) // d
                T[i, c] = v
                if v > big:
                    big = v
                elif -v > big:
                    big = -v
        d = p
        basis[r] = j
        pivots += 1
        if big > limit:
            return 1, pivots, d


def _bland_bigint(T, basis):
    """Same pivoting as :func:`_bland_int64` on an object array of Python ints."""
    rows, cols = T.shape
    obj = rows - 1
    d = 1
    pivots = 0
    while True:
        neg = np.flatnonzero(T[obj, : cols - 1] < 0)
        if neg.size == 0:
            return T, pivots, d
        j = int(neg[0])
        col = T[:obj, j].tolist()
        rhs = T[:obj, -1].tolist()
        r = -1
        for i, ci in enumerate(col):
            if ci <= 0:
                continue
            if r < 0:
                r = i
                continue
            lhs = rhs[i] * col[r]
            cur = rhs[r] * ci
            if lhs < cur or (lhs == cur and basis[i] < basis[r]):
                r = i
        if r < 0:
            raise RuntimeError("phase-1 objective unbounded")
        p = T[r, j]
        pivot_row = T[r].copy()
        T = (p * T - np.outer(T[:, j], pivot_row)) // d
        T[r] = pivot_row
        d = p
        basis[r] = j
        pivots += 1


def strict_feasible(rows: Sequence[Sequence[int]], n: int) -> FeasibilityResult:
    """Decide whether some rational ``a`` satisfies ``w . a > 0`` for every row.

    ``rows`` may be a list of coefficient vectors or any object with a
    ``rows`` attribute (e.g. a ConstraintSystem).  The verdict and witness are
    deterministic for a given row list.
    """
    rows = getattr(rows, "rows", rows)
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    W = _as_matrix(rows, n)
    m = len(W)
    if m == 0:
        return FeasibilityResult(True, (0,) * n, 0)

    # Columns: y_0..y_{m-1}, art_0..art_n, rhs.  Rows: n coordinate rows,
    # the normalisation row, then the Phase-1 reduced-cost row.
    T = np.zeros((n + 2, m + n + 2), dtype=W.dtype)
    T[:n, :m] = W.T
    T[n, :m] = 1
    T[np.arange(n + 1), m + np.arange(n + 1)] = 1
    T[n, -1] = 1
    T[n + 1, :m] = -T[: n + 1, :m].sum(axis=0)
    T[n + 1, -1] = -1
    basis = np.arange(m, m + n + 1, dtype=np.int64)

    status = 1
    if W.dtype != object and int(np.abs(W).max()) <= _INT64_SAFE:
        work = T.copy()
        status, pivots, d = _bland_int64(work, basis.copy(), _INT64_SAFE)
    if status != 0:
        # entries outgrew int64 headroom: redo the identical pivot sequence on Python ints
        work, pivots, d = _bland_bigint(T.astype(object), basis.tolist())
    T = work
    obj = n + 1

    # objective value * d sits negated in the rhs cell of the cost row
    if status == 2:
        raise RuntimeError("phase-1 objective unbounded")
    if int(T[obj, -1]) == 0:
        return FeasibilityResult(False, None, pivots)
    witness = tuple(int(T[obj, m + c]) - d for c in range(n))
    if not _verify(W, witness):
        raise AssertionError("simplex produced an invalid witness")
    return FeasibilityResult(True, witness, pivots)
