"""
Module: exact_matrix.py
Description: Immutable dense integer and rational matrices backed by numpy
             object arrays, so every entry is a Python int or Fraction and
             arithmetic never overflows or rounds.

core/exact_matrix.py - Exact matrix containers

IntMatrix houses adjacency and walk matrices (entries grow like n^k, so
fixed-width dtypes are never used). RatMatrix houses rational orthogonal
matrices; Fraction keeps every entry canonical (positive denominator,
lowest terms).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral
from typing import Sequence

import numpy as np

from core.errors import ArgumentError, DimensionError


def _object_array(rows: int, cols: int, fill=0) -> np.ndarray:
    arr = np.empty((rows, cols), dtype=object)
    arr.fill(fill)
    return arr


class _ExactMatrix:
    """Shared behaviour of IntMatrix and RatMatrix."""

    __slots__ = ('_a',)

    def __init__(self, data) -> None:
        if isinstance(data, _ExactMatrix):
            arr = data._a.copy()
        elif isinstance(data, np.ndarray):
            arr = data.astype(object)
        else:
            rows = [list(r) for r in data]
            width = len(rows[0]) if rows else 0
            if any(len(r) != width for r in rows):
                raise DimensionError('ragged rows in matrix data')
            arr = _object_array(len(rows), width)
            for i, r in enumerate(rows):
                for j, x in enumerate(r):
                    arr[i, j] = x
        if arr.ndim != 2:
            raise DimensionError(f'expected a 2-D matrix, got {arr.ndim}-D data')
        coerce = self._coerce
        for idx, x in np.ndenumerate(arr):
            arr[idx] = coerce(x)
        arr.setflags(write=False)
        self._a = arr

    @staticmethod
    def _coerce(x):
        raise NotImplementedError

    @classmethod
    def _wrap(cls, arr: np.ndarray):
        """Adopt an object array without re-validating its entries."""
        obj = cls.__new__(cls)
        arr = arr if arr.dtype == object else arr.astype(object)
        arr.setflags(write=False)
        obj._a = arr
        return obj

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls._wrap(_object_array(rows, cols, cls._coerce(0)))

    @classmethod
    def identity(cls, n: int):
        arr = _object_array(n, n, cls._coerce(0))
        for i in range(n):
            arr[i, i] = cls._coerce(1)
        return cls._wrap(arr)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None):
        """Build a matrix whose j-th column is columns[j]."""
        if not columns:
            return cls.zeros(rows or 0, 0)
        height = len(columns[0])
        arr = _object_array(height, len(columns))
        for j, col in enumerate(columns):
            if len(col) != height:
                raise DimensionError('columns of unequal length')
            for i, x in enumerate(col):
                arr[i, j] = cls._coerce(x)
        return cls._wrap(arr)

    # ------------------------------------------------------------------
    # Shape and access
    # ------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def array(self) -> np.ndarray:
        """Read-only object array view."""
        return self._a

    def to_array(self) -> np.ndarray:
        """Writable copy for in-place elimination."""
        return self._a.copy()

    @property
    def entries(self) -> tuple:
        """All entries in row-major order."""
        return tuple(self._a.ravel())

    def tolist(self) -> list[list]:
        return [list(r) for r in self._a]

    def column(self, j: int) -> tuple:
        return tuple(self._a[:, j])

    def __getitem__(self, idx):
        i, j = idx
        return self._a[i, j]

    @property
    def T(self):
        return type(self)._wrap(self._a.T.copy())

    # ------------------------------------------------------------------
    # Structural edits
    # ------------------------------------------------------------------

    def delete_row(self, i: int):
        return type(self)._wrap(np.delete(self._a, i, axis=0))

    def delete_column(self, j: int):
        return type(self)._wrap(np.delete(self._a, j, axis=1))

    def with_column(self, j: int, values: Sequence):
        """Copy with column j replaced by values."""
        arr = self._a.copy()
        for i, x in enumerate(values):
            arr[i, j] = self._coerce(x)
        return type(self)._wrap(arr)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _result_type(self, other):
        if isinstance(self, RatMatrix) or isinstance(other, RatMatrix):
            return RatMatrix
        return IntMatrix

    def __matmul__(self, other):
        if isinstance(other, _ExactMatrix):
            if self.cols != other.rows:
                raise DimensionError(f'cannot multiply {self.shape} by {other.shape}')
            kind = self._result_type(other)
            if self.cols == 0:
                return kind.zeros(self.rows, other.cols)
            left = self._a if kind is type(self) else RatMatrix(self._a)._a
            right = other._a if kind is type(other) else RatMatrix(other._a)._a
            return kind._wrap(left.dot(right))
        vec = list(other)
        if len(vec) != self.cols:
            raise DimensionError(f'cannot multiply {self.shape} by vector of length {len(vec)}')
        return tuple(sum((a * x for a, x in zip(row, vec)), self._coerce(0))
                     for row in self._a)

    def _elementwise(self, other, op):
        if not isinstance(other, _ExactMatrix) or other.shape != self.shape:
            raise DimensionError('elementwise operation needs equal shapes')
        kind = self._result_type(other)
        return kind(op(self._a, other._a))

    def __add__(self, other):
        return self._elementwise(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._elementwise(other, lambda a, b: a - b)

    def __neg__(self):
        return type(self)._wrap(-self._a)

    def __mul__(self, scalar):
        if isinstance(scalar, _ExactMatrix):
            return NotImplemented
        if isinstance(scalar, Fraction) and scalar.denominator != 1:
            return RatMatrix(self._a * scalar)
        return type(self)(self._a * scalar)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, _ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for a, b in zip(self._a.ravel(), other._a.ravel()))

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        body = '; '.join(' '.join(str(x) for x in r) for r in self._a)
        return f'{type(self).__name__}({self.rows}x{self.cols}: [{body}])'


class IntMatrix(_ExactMatrix):
    """Dense arbitrary-precision integer matrix."""

    __slots__ = ()

    @staticmethod
    def _coerce(x) -> int:
        if isinstance(x, (bool, Integral)):
            return int(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        raise ArgumentError(f'IntMatrix entries must be integers, got {x!r}')

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._a.ravel())


class RatMatrix(_ExactMatrix):
    """Dense exact rational matrix; entries are canonical Fractions."""

    __slots__ = ()

    @staticmethod
    def _coerce(x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (bool, Integral)):
            return Fraction(int(x))
        raise ArgumentError(f'RatMatrix entries must be exact rationals, got {x!r}')

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self._a.ravel())

    def to_int_matrix(self) -> IntMatrix:
        if not self.is_integral():
            raise ArgumentError('matrix has non-integral entries')
        return IntMatrix(self._a)

    def denominators(self) -> tuple[int, ...]:
        return tuple(x.denominator for x in self._a.ravel())


def permutation_matrix(perm: Sequence[int]) -> IntMatrix:
    """Matrix P with P[i, perm[i]] = 1, so that P^T M P relabels i as perm[i]."""
    n = len(perm)
    arr = _object_array(n, n, 0)
    for i, j in enumerate(perm):
        arr[i, j] = 1
    return IntMatrix._wrap(arr)
