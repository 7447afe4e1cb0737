"""
tests/test_graph.py - Unit tests for Graph, twins, cospectrality,
isomorphism and the graph6 codec

Run:
    python -m pytest tests/test_graph.py -v
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import random
import tempfile
import unittest

import networkx as nx

from core.enumeration import enumerate_all_graphs
from core.errors import AmbiguousTwinsError, ArgumentError, Graph6Error, GraphError, ScaleError
from core.graph import (
    Graph,
    complement,
    find_twins,
    generalized_cospectral,
    is_isomorphic,
    twin_pairs,
)
from core.graph6 import emit_graph6, iter_graph6_lines, parse_graph6, read_graph6_file
from tests.algebra_helpers import write_graph6_file
from tests.fixture_graphs import (
    certified_10,
    k2,
    non_dgs_9,
    non_dgs_9_mate,
    pendant_twins_5,
)


def _random_graph(rng: random.Random, n: int, density: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    return Graph.from_edges(n, edges)


class TestGraph(unittest.TestCase):
    """Construction, validation and basic queries."""

    def test_rejects_loop(self) -> None:
        with self.assertRaises(GraphError):
            Graph.from_adjacency([[1, 0], [0, 0]])

    def test_rejects_asymmetry(self) -> None:
        with self.assertRaises(GraphError):
            Graph.from_adjacency([[0, 1], [0, 0]])

    def test_rejects_bad_entry(self) -> None:
        with self.assertRaises(GraphError):
            Graph.from_adjacency([[0, 2], [2, 0]])

    def test_edge_counts(self) -> None:
        g = pendant_twins_5()
        self.assertEqual(g.edge_count, 4)
        self.assertEqual(complement(g).edge_count, 6)
        self.assertEqual(g.degrees(), (1, 2, 3, 1, 1))

    def test_complement_involution(self) -> None:
        rng = random.Random(2)
        for n in (1, 4, 9):
            g = _random_graph(rng, n)
            with self.subTest(n=n):
                self.assertEqual(complement(complement(g)), g)

    def test_complement_examples(self) -> None:
        self.assertEqual(complement(k2()), Graph.empty(2))
        c5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
        self.assertIsNotNone(is_isomorphic(complement(c5), c5))

    def test_networkx_interchange(self) -> None:
        g = certified_10()
        h = Graph.from_networkx(g.to_networkx())
        self.assertEqual(h, g)
        self.assertEqual(g.to_networkx().number_of_edges(), g.edge_count)

    def test_relabel_rejects_non_permutation(self) -> None:
        with self.assertRaises(ArgumentError):
            k2().relabel([0, 0])


class TestTwins(unittest.TestCase):

    def test_pendant_twins(self) -> None:
        t = find_twins(pendant_twins_5())
        self.assertEqual((t.tau, t.tau_prime), (4, 5))
        self.assertFalse(t.adjacent)
        self.assertEqual(t.lambda1, 0)
        self.assertEqual(t.alpha, (0, 0, 0, -1, 1))

    def test_examples_have_first_two_vertices_as_twins(self) -> None:
        for make, adjacent in [(non_dgs_9, True), (certified_10, True)]:
            t = find_twins(make())
            with self.subTest(n=make().n):
                self.assertEqual((t.tau, t.tau_prime), (1, 2))
                self.assertEqual(t.adjacent, adjacent)

    def test_adjacent_twins_eigenvalue(self) -> None:
        self.assertEqual(find_twins(certified_10()).lambda1, -1)

    def test_transposition_is_automorphism(self) -> None:
        for make in (pendant_twins_5, non_dgs_9, certified_10):
            g = make()
            t = find_twins(g)
            with self.subTest(n=g.n):
                self.assertEqual(g.relabel(t.transposition()), g)

    def test_ambiguous_twins(self) -> None:
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        self.assertEqual(len(twin_pairs(star)), 3)
        with self.assertRaises(AmbiguousTwinsError) as ctx:
            find_twins(star)
        self.assertEqual(ctx.exception.pairs, [(2, 3), (2, 4), (3, 4)])

    def test_path_ends_are_twins(self) -> None:
        t = find_twins(Graph.from_edges(3, [(0, 1), (1, 2)]))
        self.assertEqual((t.tau, t.tau_prime, t.adjacent, t.lambda1), (1, 3, False, 0))

    def test_no_twins(self) -> None:
        path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        self.assertIsNone(find_twins(path))


class TestCospectralAndIsomorphic(unittest.TestCase):

    def test_non_dgs_pair_is_cospectral_not_isomorphic(self) -> None:
        g, h = non_dgs_9(), non_dgs_9_mate()
        self.assertTrue(generalized_cospectral(g, h))
        self.assertIsNone(is_isomorphic(g, h))

    def test_order_mismatch(self) -> None:
        with self.assertRaises(ArgumentError):
            generalized_cospectral(k2(), pendant_twins_5())

    def test_relabelled_graph_is_found(self) -> None:
        rng = random.Random(19)
        for n in (3, 6, 9, 12):
            g = _random_graph(rng, n)
            perm = list(range(n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            found = is_isomorphic(g, h)
            with self.subTest(n=n):
                self.assertIsNotNone(found)
                self.assertEqual(g.relabel(found), h)
                self.assertTrue(generalized_cospectral(g, h))

    def test_agrees_with_networkx(self) -> None:
        rng = random.Random(47)
        for _ in range(40):
            g = _random_graph(rng, 6, 0.4)
            h = _random_graph(rng, 6, 0.4)
            expected = nx.is_isomorphic(g.to_networkx(), h.to_networkx())
            with self.subTest(g=emit_graph6(g), h=emit_graph6(h)):
                self.assertEqual(is_isomorphic(g, h) is not None, expected)

    def test_small_cases(self) -> None:
        self.assertIsNone(is_isomorphic(k2(), Graph.empty(2)))
        self.assertFalse(generalized_cospectral(k2(), Graph.empty(2)))
        self.assertTrue(generalized_cospectral(certified_10(), certified_10()))

    def test_cospectrality_is_an_equivalence_on_order_5(self) -> None:
        graphs = enumerate_all_graphs(5)
        for g in graphs:
            self.assertTrue(generalized_cospectral(g, g))
        for g, h in zip(graphs, graphs[1:]):
            with self.subTest(g=emit_graph6(g), h=emit_graph6(h)):
                self.assertEqual(generalized_cospectral(g, h), generalized_cospectral(h, g))

    def test_oracle_bound(self) -> None:
        g = Graph.empty(13)
        with self.assertRaises(ScaleError):
            is_isomorphic(g, g)


class TestGraph6(unittest.TestCase):

    def test_known_strings(self) -> None:
        self.assertEqual(parse_graph6('A_'), k2())
        self.assertEqual(emit_graph6(Graph.empty(1)), '@')
        self.assertEqual(parse_graph6('>>graph6<<A_'), k2())

    def test_order_6_catalogue_round_trips(self) -> None:
        for g in enumerate_all_graphs(6):
            text = emit_graph6(g)
            with self.subTest(g=text):
                self.assertEqual(parse_graph6(text), g)
                self.assertEqual(emit_graph6(parse_graph6(text)), text)

    def test_matches_networkx(self) -> None:
        rng = random.Random(53)
        for n in (2, 5, 9, 13, 30, 62):
            g = _random_graph(rng, n)
            expected = nx.to_graph6_bytes(g.to_networkx(), header=False).decode('ascii').strip()
            with self.subTest(n=n):
                self.assertEqual(emit_graph6(g), expected)
                self.assertEqual(Graph.from_networkx(nx.from_graph6_bytes(expected.encode('ascii'))), g)

    def test_malformed(self) -> None:
        cases = {
            '': 'empty',
            'A\x1f': 'out of range byte',
            '~?@?': 'long form',
            '?': 'zero vertices',
            'D?': 'truncated',
            'A_?': 'trailing data',
            'A`': 'nonzero padding',
        }
        for text, label in cases.items():
            with self.subTest(label=label):
                with self.assertRaises(Graph6Error):
                    parse_graph6(text)

    def test_error_offsets(self) -> None:
        with self.assertRaises(Graph6Error) as ctx:
            parse_graph6('~?@?')
        self.assertEqual(ctx.exception.offset, 0)

    def test_corpus_lines(self) -> None:
        lines = ['# corpus', '', 'A_', '  ', '@']
        self.assertEqual([(k, g.n) for k, g in iter_graph6_lines(lines)], [(3, 2), (5, 1)])

    def test_corpus_error_reports_line(self) -> None:
        with self.assertRaises(Graph6Error) as ctx:
            list(iter_graph6_lines(['A_', '# c', 'D?']))
        self.assertEqual(ctx.exception.line, 3)
        self.assertIn('line 3', str(ctx.exception))

    def test_file_round_trip(self) -> None:
        graphs = [k2(), pendant_twins_5(), certified_10()]
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'corpus.g6'
            write_graph6_file(path, graphs, header=True)
            self.assertEqual([g for _, g in read_graph6_file(path)], graphs)


if __name__ == '__main__':
    unittest.main(verbosity=2)
