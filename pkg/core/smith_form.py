"""
Module: smith_form.py
Description: Smith normal form of integer matrices with optional unimodular
             transforms, plus the invariant-factor queries used by the
             DGS criteria.

core/smith_form.py - Smith Normal Form

Pivot-reduce with smallest-absolute-value pivoting: the smallest nonzero
entry of the trailing block is moved to the pivot, its row and column are
cleared by integer division, and a row addition repairs any entry the pivot
does not divide. Walk matrices are small but their entries are huge, so this
simple scheme is the right trade-off.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from core.errors import ArgumentError
from core.exact_matrix import IntMatrix
from utils.logger import get_logger

log = get_logger(__name__)


@dataclass(frozen=True)
class SnfResult:
    """Invariant factors d_1 | d_2 | ... and, optionally, U and V with U M V = diag(d)."""

    invariant_factors: tuple[int, ...]
    source_shape: tuple[int, int]
    left: IntMatrix | None = None
    right: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)

    @property
    def last(self) -> int:
        """d_n, the largest invariant factor."""
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def diagonal_matrix(self) -> IntMatrix:
        rows, cols = self.source_shape
        arr = IntMatrix.zeros(rows, cols).to_array()
        for i, d in enumerate(self.invariant_factors):
            arr[i, i] = d
        return IntMatrix._wrap(arr)


@dataclass(frozen=True)
class SnfQueries:
    """The four invariant-factor facts about a square integer matrix at a prime."""

    det_abs: int
    p_rank: int
    rank: int
    det_p_power_bound: int
    has_p2_kernel_vector: bool


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

def smith_normal_form(m: IntMatrix, with_transforms: bool = False) -> SnfResult:
    """Compute the Smith normal form of m."""
    a = m.to_array()
    rows, cols = a.shape
    u = IntMatrix.identity(rows).to_array() if with_transforms else None
    v = IntMatrix.identity(cols).to_array() if with_transforms else None

    size = min(rows, cols)
    t = 0
    while t < size:
        if not _move_smallest_to_pivot(a, u, v, t, t, rows, t, cols):
            break
        while True:
            _clear_pivot_row_and_column(a, u, v, t)
            if any(a[i, t] != 0 for i in range(t + 1, rows)) or \
                    any(a[t, j] != 0 for j in range(t + 1, cols)):
                _move_smallest_to_pivot(a, u, v, t, t, rows, t, cols, cross_only=True)
                continue
            bad_row = _find_non_multiple_row(a, t)
            if bad_row is None:
                break
            a[t, :] = a[t, :] + a[bad_row, :]
            if u is not None:
                u[t, :] = u[t, :] + u[bad_row, :]
        if a[t, t] < 0:
            a[t, :] = -a[t, :]
            if u is not None:
                u[t, :] = -u[t, :]
        t += 1

    factors = tuple(int(a[i, i]) for i in range(size))
    log.debug('SNF of %dx%d matrix: last factor has %d digits',
              rows, cols, len(str(factors[-1])) if factors else 0)
    return SnfResult(
        invariant_factors=factors,
        source_shape=(rows, cols),
        left=IntMatrix._wrap(u) if u is not None else None,
        right=IntMatrix._wrap(v) if v is not None else None,
    )


def snf_queries(s: SnfResult, p: int) -> SnfQueries:
    """Determinant, p-rank, p-power divisor of det and the mod-p^2 kernel test."""
    rows, cols = s.source_shape
    if rows != cols:
        raise ArgumentError('invariant-factor queries need a square source matrix')
    d = s.invariant_factors
    p_rank = sum(1 for x in d if x % p != 0)
    return SnfQueries(
        det_abs=prod(d),
        p_rank=p_rank,
        rank=s.rank,
        det_p_power_bound=p ** (rows - p_rank),
        has_p2_kernel_vector=bool(d) and d[-1] % (p * p) == 0,
    )


def determinant_divisors(s: SnfResult) -> tuple[int, ...]:
    """D_i = d_1 d_2 ... d_i, the gcd of all i x i minors."""
    out = []
    acc = 1
    for d in s.invariant_factors:
        acc *= d
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _swap_rows(a, u, i, j) -> None:
    if i != j:
        a[[i, j]] = a[[j, i]]
        if u is not None:
            u[[i, j]] = u[[j, i]]


def _swap_cols(a, v, i, j) -> None:
    if i != j:
        a[:, [i, j]] = a[:, [j, i]]
        if v is not None:
            v[:, [i, j]] = v[:, [j, i]]


def _move_smallest_to_pivot(a, u, v, t, r0, r1, c0, c1, cross_only=False) -> bool:
    """Swap the smallest nonzero |entry| into (t, t); False if the block is zero."""
    if cross_only:
        cells = [(i, t) for i in range(r0, r1)] + [(t, j) for j in range(c0 + 1, c1)]
    else:
        cells = [(i, j) for i in range(r0, r1) for j in range(c0, c1)]
    best = None
    for i, j in cells:
        x = a[i, j]
        if x != 0 and (best is None or abs(x) < best[0]):
            best = (abs(x), i, j)
    if best is None:
        return False
    _, i, j = best
    _swap_rows(a, u, t, i)
    _swap_cols(a, v, t, j)
    return True


def _clear_pivot_row_and_column(a, u, v, t) -> None:
    rows, cols = a.shape
    piv = a[t, t]
    for i in range(t + 1, rows):
        if a[i, t] != 0:
            q = a[i, t] // piv
            a[i, :] = a[i, :] - q * a[t, :]
            if u is not None:
                u[i, :] = u[i, :] - q * u[t, :]
    for j in range(t + 1, cols):
        if a[t, j] != 0:
            q = a[t, j] // piv
            a[:, j] = a[:, j] - q * a[:, t]
            if v is not None:
                v[:, j] = v[:, j] - q * v[:, t]


def _find_non_multiple_row(a, t) -> int | None:
    rows, cols = a.shape
    piv = a[t, t]
    for i in range(t + 1, rows):
        for j in range(t + 1, cols):
            if a[i, j] % piv != 0:
                return i
    return None
