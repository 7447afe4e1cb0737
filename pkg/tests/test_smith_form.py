"""
tests/test_smith_form.py - Unit tests for the Smith normal form

Run:
    python -m pytest tests/test_smith_form.py -v
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import random
import unittest
from itertools import combinations
from math import gcd

import numpy as np
import sympy

from core.errors import ArgumentError
from core.exact_linalg import bareiss_det, rank_mod_p, rank_rational
from core.exact_matrix import IntMatrix
from core.smith_form import SnfResult, determinant_divisors, smith_normal_form, snf_queries
from engine.walk import walk_matrix, w_hat
from tests.fixture_graphs import (
    SNF_CERTIFIED_10,
    SNF_NON_DGS_9,
    SNF_REFUTED_13,
    certified_10,
    non_dgs_9,
    refuted_13,
)


def _random_int_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> IntMatrix:
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def _gcd_of_minors(m: IntMatrix, k: int) -> int:
    sm = sympy.Matrix(m.tolist())
    g = 0
    for rows in combinations(range(m.rows), k):
        for cols in combinations(range(m.cols), k):
            g = gcd(g, int(sm.extract(list(rows), list(cols)).det()))
    return g


class TestWalkMatrixSnf(unittest.TestCase):
    """Invariant factors of the worked-example walk matrices."""

    def test_examples(self) -> None:
        cases = [
            (non_dgs_9, SNF_NON_DGS_9),
            (certified_10, SNF_CERTIFIED_10),
            (refuted_13, SNF_REFUTED_13),
        ]
        for make, expected in cases:
            with self.subTest(n=len(expected)):
                self.assertEqual(smith_normal_form(walk_matrix(make())).invariant_factors, expected)


class TestSmithNormalForm(unittest.TestCase):

    def test_transforms_diagonalize(self) -> None:
        rng = random.Random(31)
        shapes = [(2, 2), (3, 3), (4, 4), (4, 5), (5, 3), (2, 4)]
        for k in range(200):
            rows, cols = shapes[k % len(shapes)]
            m = _random_int_matrix(rng, rows, cols, 6)
            s = smith_normal_form(m, with_transforms=True)
            with self.subTest(k=k, shape=(rows, cols)):
                self.assertEqual(s.left @ m @ s.right, s.diagonal_matrix())
                self.assertEqual(abs(bareiss_det(s.left)), 1)
                self.assertEqual(abs(bareiss_det(s.right)), 1)

    def test_unimodular_transforms_match_sympy(self) -> None:
        rng = random.Random(32)
        for _ in range(3):
            s = smith_normal_form(_random_int_matrix(rng, 4, 5, 6), with_transforms=True)
            self.assertEqual(abs(sympy.Matrix(s.left.tolist()).det()), 1)
            self.assertEqual(abs(sympy.Matrix(s.right.tolist()).det()), 1)

    def test_divisibility_chain(self) -> None:
        rng = random.Random(37)
        for _ in range(10):
            m = IntMatrix([[rng.randint(-20, 20) for _ in range(4)] for _ in range(4)])
            d = smith_normal_form(m).invariant_factors
            for a, b in zip(d, d[1:]):
                with self.subTest(factors=d):
                    self.assertTrue(a >= 0 and (b == 0 or (a != 0 and b % a == 0)))

    def test_determinant_divisors_match_minors(self) -> None:
        rng = random.Random(41)
        for _ in range(4):
            m = IntMatrix([[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)])
            divisors = determinant_divisors(smith_normal_form(m))
            for k in range(1, 5):
                with self.subTest(k=k):
                    self.assertEqual(abs(divisors[k - 1]), _gcd_of_minors(m, k))

    def test_zero_matrix(self) -> None:
        self.assertEqual(smith_normal_form(IntMatrix.zeros(3, 3)).invariant_factors, (0, 0, 0))


class TestInvariantFactorFacts(unittest.TestCase):
    """Determinant, ranks and the mod-p^2 kernel read off the invariant factors."""

    def test_determinant_is_product(self) -> None:
        rng = random.Random(47)
        for k in range(200):
            size = 2 + k % 4
            m = _random_int_matrix(rng, size, size, 9)
            with self.subTest(k=k, size=size):
                self.assertEqual(abs(bareiss_det(m)), snf_queries(smith_normal_form(m), 3).det_abs)

    def test_ranks_are_counts(self) -> None:
        rng = random.Random(53)
        for k in range(200):
            inner = 1 + k % 5
            m = _random_int_matrix(rng, 5, inner, 9) @ _random_int_matrix(rng, inner, 5, 9)
            d = smith_normal_form(m).invariant_factors
            for p in (2, 3, 5):
                with self.subTest(p=p, factors=d):
                    self.assertEqual(rank_mod_p(m, p), sum(1 for x in d if x % p))
            self.assertEqual(rank_rational(m), sum(1 for x in d if x))

    def test_p2_kernel_matches_exhaustive_search(self) -> None:
        rng = random.Random(59)
        primes = (2, 3, 5)
        lifts = {}
        for p in primes:
            p2 = p * p
            grid = np.array(np.meshgrid(*[np.arange(p2)] * 4, indexing='ij')).reshape(4, -1)
            lifts[p] = grid[:, (grid % p).any(axis=0)]
        for k in range(240):
            p = primes[k % 3]
            rows = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
            shape = k // 3 % 4
            if shape == 1:
                rows[3] = [p * x for x in rows[3]]
            elif shape == 2:
                rows[3] = [a + b + p * rng.randint(-2, 2) for a, b in zip(rows[0], rows[1])]
            elif shape == 3:
                rows[2] = [p * x for x in rows[2]]
                rows[3] = [p * x for x in rows[3]]
            found = bool(((np.array(rows, dtype=np.int64) @ lifts[p]) % (p * p) == 0).all(axis=0).any())
            q = snf_queries(smith_normal_form(IntMatrix(rows)), p)
            with self.subTest(k=k, p=p, rows=rows):
                self.assertEqual(q.has_p2_kernel_vector, found)

    def test_read_off_diagonal(self) -> None:
        q = snf_queries(SnfResult((1, 1, 2, 6), (4, 4)), 3)
        self.assertEqual((q.det_abs, q.p_rank, q.has_p2_kernel_vector), (12, 3, False))
        self.assertTrue(snf_queries(SnfResult((1, 1, 2, 18), (4, 4)), 3).has_p2_kernel_vector)


class TestSnfQueries(unittest.TestCase):
    """Rank, p-rank and determinant facts read off the invariant factors."""

    def test_non_dgs_9_at_3(self) -> None:
        q = snf_queries(smith_normal_form(walk_matrix(non_dgs_9())), 3)
        self.assertEqual(q.det_abs, 0)
        self.assertEqual(q.rank, 8)
        self.assertEqual(q.p_rank, 7)
        self.assertTrue(q.has_p2_kernel_vector)

    def test_w_hat_has_no_p2_kernel_vector(self) -> None:
        g = refuted_13()
        s = smith_normal_form(w_hat(g))
        q = snf_queries(s, 5)
        self.assertFalse(q.has_p2_kernel_vector)
        self.assertEqual(q.det_abs, 2 ** 6 * 123899854845)
        self.assertEqual(q.p_rank, 12)

    def test_p_rank_agrees_with_bound(self) -> None:
        rng = random.Random(43)
        m = IntMatrix([[rng.randint(-9, 9) for _ in range(5)] for _ in range(5)])
        for p in (2, 3, 5):
            q = snf_queries(smith_normal_form(m), p)
            with self.subTest(p=p):
                if q.det_abs:
                    self.assertEqual(q.det_abs % q.det_p_power_bound, 0)

    def test_non_square_rejected(self) -> None:
        with self.assertRaises(ArgumentError):
            snf_queries(smith_normal_form(IntMatrix([[1, 2, 3]])), 3)


if __name__ == '__main__':
    unittest.main(verbosity=2)
