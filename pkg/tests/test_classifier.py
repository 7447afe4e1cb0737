"""
tests/test_classifier.py - Unit tests for the family classifier and F_n membership

Run:
    python -m pytest tests/test_classifier.py -v
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import unittest
from unittest import mock

from core.errors import InvariantViolationError
from core.graph import Graph
from engine import classifier
from engine.classifier import Family, classify, symmetric_snf_b
from engine.walk import WalkBundle
from tests.fixture_graphs import (
    SNF_CERTIFIED_10,
    SNF_NON_DGS_9,
    SNF_REFUTED_13,
    certified_10,
    first_controllable,
    non_dgs_9,
    pendant_twins_5,
    refuted_13,
)


class TestFamilyF(unittest.TestCase):
    """Worked examples: almost controllable with one twin pair."""

    def test_examples(self) -> None:
        cases = [
            (non_dgs_9, 303, (3, 101), SNF_NON_DGS_9),
            (certified_10, 152345, (5, 30469), SNF_CERTIFIED_10),
            (refuted_13, 123899854845, (3, 5, 13, 3607, 176153), SNF_REFUTED_13),
        ]
        for make, b, primes, snf in cases:
            gc = classify(make())
            with self.subTest(n=gc.n):
                self.assertIs(gc.family, Family.ALMOST_CONTROLLABLE_SYMMETRIC)
                self.assertTrue(gc.in_F_n)
                self.assertFalse(gc.in_F_n_star)
                self.assertEqual(gc.b, b)
                self.assertEqual(gc.odd_primes, primes)
                self.assertEqual(gc.snf.invariant_factors, snf)
                self.assertEqual(gc.rank_Q, gc.n - 1)

    def test_uses_shared_number_theory(self) -> None:
        with mock.patch.object(classifier, 'is_square_free', wraps=classifier.is_square_free) as sq, \
                mock.patch.object(classifier, 'odd_prime_factors', wraps=classifier.odd_prime_factors) as odd:
            gc = classify(certified_10())
        sq.assert_any_call(152345, trial_bound=mock.ANY, seed=mock.ANY)
        odd.assert_called_once_with(152345, trial_bound=mock.ANY, seed=mock.ANY)
        self.assertEqual(gc.odd_primes, (5, 30469))

    def test_b_equal_to_one(self) -> None:
        gc = classify(pendant_twins_5())
        self.assertEqual(gc.snf.invariant_factors, (1, 1, 1, 2, 0))
        self.assertTrue(gc.in_F_n_star)
        self.assertEqual(gc.b, 1)
        self.assertEqual(gc.odd_primes, ())
        self.assertEqual(gc.rank_2, 3)

    def test_snf_shape_rules(self) -> None:
        cases = {
            'wrong leading ones': ((1, 1, 2, 2, 0), 5, None),
            'even b': ((1, 1, 1, 4, 0), 5, None),
            'square factor': ((1, 1, 1, 18, 0), 5, None),
            'nonzero last': ((1, 1, 1, 2, 6), 5, None),
            'b = 15': ((1, 1, 1, 30, 0), 5, 15),
            'too small': ((1, 2, 0), 3, None),
        }
        for label, (factors, n, expected) in cases.items():
            with self.subTest(label=label):
                self.assertEqual(symmetric_snf_b(factors, n), expected)

    def test_disagreeing_b_raises(self) -> None:
        with mock.patch.object(classifier, 'cofactor_b', return_value=7):
            with self.assertRaises(InvariantViolationError):
                classify(non_dgs_9())


class TestOtherFamilies(unittest.TestCase):

    def test_empty_graph_is_other(self) -> None:
        gc = classify(Graph.empty(4))
        self.assertIs(gc.family, Family.OTHER)
        self.assertFalse(gc.in_F_n)
        self.assertIsNone(gc.b)
        self.assertIsNone(gc.controllable_criterion)

    def test_controllable_graph_gets_criterion(self) -> None:
        g = first_controllable()
        gc = classify(g, WalkBundle.from_graph(g))
        self.assertIs(gc.family, Family.CONTROLLABLE)
        self.assertIsInstance(gc.controllable_criterion, bool)
        self.assertIsNone(gc.twins)
        self.assertFalse(gc.in_F_n)

    def test_ambiguous_twins_outside_almost_controllable(self) -> None:
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        self.assertIs(classify(star).family, Family.OTHER)


if __name__ == '__main__':
    unittest.main(verbosity=2)
