"""
Module: exact_linalg.py
Description: Exact linear algebra over Z, Q and F_p on IntMatrix / RatMatrix:
             fraction-free determinant and rank, reduced row echelon forms,
             kernels, linear solves, inverses and characteristic polynomials.

core/exact_linalg.py - Exact Linear Algebra

Every routine works on numpy object arrays of Python ints or Fractions, so
results are bit-exact. Row operations are applied to whole rows at a time;
only pivot searches loop in Python.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from core.errors import ArgumentError, DimensionError, SingularMatrixError
from core.exact_matrix import IntMatrix, RatMatrix, _ExactMatrix
from core.number_theory import is_prime


# ---------------------------------------------------------------------------
# Fraction-free elimination over Z
# ---------------------------------------------------------------------------

def _fraction_free_echelon(arr: np.ndarray) -> tuple[np.ndarray, list[int], int]:
    """Bareiss elimination in place.

    Returns (echelon array, pivot columns, sign of the row permutation).
    Every division by the previous pivot is exact; entries stay minors of
    the input.
    """
    rows, cols = arr.shape
    prev = 1
    sign = 1
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if arr[i, c] != 0]
        if not nz:
            continue
        i0 = nz[0]
        if i0 != r:
            arr[[r, i0]] = arr[[i0, r]]
            sign = -sign
        piv = arr[r, c]
        if r + 1 < rows and c + 1 < cols:
            below = arr[r + 1:, c + 1:]
            arr[r + 1:, c + 1:] = (piv * below - np.outer(arr[r + 1:, c], arr[r, c + 1:])) // prev
        arr[r + 1:, c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return arr, pivots, sign


def bareiss_det(m: IntMatrix) -> int:
    """Exact determinant of a square integer matrix."""
    if not m.is_square:
        raise DimensionError(f'determinant needs a square matrix, got {m.shape}')
    n = m.rows
    if n == 0:
        return 1
    arr, pivots, sign = _fraction_free_echelon(m.to_array())
    if len(pivots) < n:
        return 0
    return sign * int(arr[n - 1, n - 1])


def rank_rational(m: _ExactMatrix) -> int:
    """Rank over Q."""
    if isinstance(m, RatMatrix):
        return len(rref_rational(m)[1])
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_fraction_free_echelon(m.to_array())[1])


# ---------------------------------------------------------------------------
# Rational elimination
# ---------------------------------------------------------------------------

def _as_fraction_array(m) -> np.ndarray:
    if isinstance(m, RatMatrix):
        return m.to_array()
    return RatMatrix(m).to_array()


def _rref_fraction_array(arr: np.ndarray, limit: int | None = None) -> list[int]:
    """In-place RREF over Q; pivots are searched in the first `limit` columns."""
    rows, cols = arr.shape
    limit = cols if limit is None else limit
    r = 0
    pivots: list[int] = []
    for c in range(limit):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if arr[i, c] != 0]
        if not nz:
            continue
        if nz[0] != r:
            arr[[r, nz[0]]] = arr[[nz[0], r]]
        arr[r, :] = arr[r, :] / arr[r, c]
        for i in range(rows):
            if i != r and arr[i, c] != 0:
                arr[i, :] = arr[i, :] - arr[i, c] * arr[r, :]
        pivots.append(c)
        r += 1
    return pivots


def rref_rational(m) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form over Q and its pivot columns."""
    arr = _as_fraction_array(m)
    pivots = _rref_fraction_array(arr)
    return RatMatrix._wrap(arr), pivots


def primitive_vector(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    fracs = [Fraction(x) for x in v]
    den = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * den) for f in fracs]
    g = gcd(*ints) if ints else 0
    return tuple(x // g for x in ints) if g else tuple(ints)


def rational_nullspace(m) -> list[tuple[int, ...]]:
    """Basis of the right kernel over Q as primitive integer vectors.

    One vector per free column, in increasing free-column order; each has a
    positive entry at its free column.
    """
    rref, pivots = rref_rational(m)
    cols = m.cols
    free = [j for j in range(cols) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            x[pc] = -rref[row_idx, f]
        basis.append(primitive_vector(x))
    return basis


def solve_rational(m, rhs: Sequence) -> tuple[Fraction, ...] | None:
    """One rational solution of m x = rhs (free variables 0), or None."""
    if len(rhs) != m.rows:
        raise DimensionError('right-hand side length does not match row count')
    arr = _as_fraction_array(m)
    col = np.empty((m.rows, 1), dtype=object)
    for i, x in enumerate(rhs):
        col[i, 0] = Fraction(x)
    aug = np.concatenate([arr, col], axis=1)
    pivots = _rref_fraction_array(aug, limit=m.cols)
    for i in range(len(pivots), m.rows):
        if aug[i, m.cols] != 0:
            return None
    x = [Fraction(0)] * m.cols
    for row_idx, pc in enumerate(pivots):
        x[pc] = aug[row_idx, m.cols]
    return tuple(x)


def rational_inverse(m) -> RatMatrix:
    """Exact inverse by Gauss-Jordan over Q."""
    if not m.is_square:
        raise DimensionError(f'inverse needs a square matrix, got {m.shape}')
    n = m.rows
    aug = np.concatenate([_as_fraction_array(m), RatMatrix.identity(n).to_array()], axis=1)
    pivots = _rref_fraction_array(aug, limit=n)
    if len(pivots) < n:
        raise SingularMatrixError(f'matrix of rank {len(pivots)} < {n} has no inverse')
    return RatMatrix._wrap(aug[:, n:].copy())


# ---------------------------------------------------------------------------
# Elimination over F_p
# ---------------------------------------------------------------------------

def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ArgumentError(f'modulus {p} is not prime')


def _rref_mod_array(arr: np.ndarray, p: int) -> list[int]:
    rows, cols = arr.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if arr[i, c] % p != 0]
        if not nz:
            continue
        if nz[0] != r:
            arr[[r, nz[0]]] = arr[[nz[0], r]]
        inv = pow(int(arr[r, c]), -1, p)
        arr[r, :] = (arr[r, :] * inv) % p
        for i in range(rows):
            if i != r and arr[i, c] != 0:
                arr[i, :] = (arr[i, :] - arr[i, c] * arr[r, :]) % p
        pivots.append(c)
        r += 1
    return pivots


def rref_mod_p(m: IntMatrix, p: int) -> tuple[IntMatrix, list[int]]:
    """Reduced row echelon form over F_p (entries in 0..p-1) and pivot columns."""
    _require_prime(p)
    arr = m.to_array() % p
    pivots = _rref_mod_array(arr, p)
    return IntMatrix._wrap(arr), pivots


def rank_mod_p(m: IntMatrix, p: int) -> int:
    return len(rref_mod_p(m, p)[1])


def nullspace_mod_p(m: IntMatrix, p: int) -> list[tuple[int, ...]]:
    """Right kernel of m over F_p as the rows of a reduced echelon basis.

    The basis is canonical for the kernel: each vector has leading entry 1
    and zeros above/below the other vectors' leading positions.
    """
    rref, pivots = rref_mod_p(m, p)
    cols = m.cols
    pivot_set = set(pivots)
    free = [j for j in range(cols) if j not in pivot_set]
    if not free:
        return []
    raw = np.zeros((len(free), cols), dtype=object)
    for k, f in enumerate(free):
        raw[k, f] = 1
        for row_idx, pc in enumerate(pivots):
            raw[k, pc] = (-rref[row_idx, f]) % p
    _rref_mod_array(raw, p)
    return [tuple(int(x) for x in row) for row in raw]


# ---------------------------------------------------------------------------
# Characteristic polynomial
# ---------------------------------------------------------------------------

def char_poly(m: IntMatrix) -> list[int]:
    """Monic characteristic polynomial det(xI - m), highest degree first.

    Trace recurrence: M_k = m M_{k-1} + c_{n-k+1} I and
    c_{n-k} = -tr(m M_k) / k, where every division is exact over Z.
    """
    if not m.is_square:
        raise DimensionError(f'characteristic polynomial needs a square matrix, got {m.shape}')
    n = m.rows
    a = m.array
    coeffs = [1]
    mk = np.zeros((n, n), dtype=object)
    ident = IntMatrix.identity(n).array
    for k in range(1, n + 1):
        mk = a.dot(mk) + coeffs[-1] * ident
        trace = sum(a.dot(mk).diagonal())
        q, rem = divmod(-trace, k)
        if rem:
            raise ArgumentError('characteristic polynomial needs an integer matrix')
        coeffs.append(q)
    return coeffs
