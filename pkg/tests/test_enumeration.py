"""
tests/test_enumeration.py - Unit tests for the small-order graph catalogue

Run:
    python -m pytest tests/test_enumeration.py -v
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import random
import unittest

import networkx as nx

from core.enumeration import canonical_code, enumerate_all_graphs, graph_from_code
from core.errors import ArgumentError, ScaleError
from core.graph import Graph, is_isomorphic
from tests.fixture_graphs import pendant_twins_5


class TestCatalogue(unittest.TestCase):

    def test_class_counts(self) -> None:
        for n, count in {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}.items():
            with self.subTest(n=n):
                self.assertEqual(len(enumerate_all_graphs(n)), count)

    def test_matches_atlas_at_order_5(self) -> None:
        atlas = [Graph.from_networkx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() == 5]
        self.assertEqual({canonical_code(g) for g in atlas},
                         {canonical_code(g) for g in enumerate_all_graphs(5)})

    def test_representatives_are_canonical(self) -> None:
        for g in enumerate_all_graphs(4):
            with self.subTest(g=str(g)):
                self.assertEqual(graph_from_code(g.n, canonical_code(g)), g)

    def test_bounds(self) -> None:
        with self.assertRaises(ScaleError):
            enumerate_all_graphs(7)
        with self.assertRaises(ArgumentError):
            enumerate_all_graphs(0)


class TestCanonicalCode(unittest.TestCase):

    def test_invariant_under_relabelling(self) -> None:
        rng = random.Random(61)
        g = pendant_twins_5()
        for _ in range(10):
            perm = list(range(g.n))
            rng.shuffle(perm)
            with self.subTest(perm=perm):
                self.assertEqual(canonical_code(g.relabel(perm)), canonical_code(g))

    def test_code_decodes_to_isomorphic_graph(self) -> None:
        g = pendant_twins_5()
        h = graph_from_code(g.n, canonical_code(g))
        self.assertEqual(h.edge_count, g.edge_count)
        self.assertIsNotNone(is_isomorphic(g, h))

    def test_single_vertex(self) -> None:
        self.assertEqual(canonical_code(Graph.empty(1)), 0)


if __name__ == '__main__':
    unittest.main(verbosity=2)
