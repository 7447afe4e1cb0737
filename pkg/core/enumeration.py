"""
Module: enumeration.py
Description: Isomorph-free catalogue of all graphs on n <= 6 vertices, grown
             one vertex at a time and deduplicated by a minimum canonical code.

core/enumeration.py - Small-Order Graph Catalogue

The canonical code of a graph is the smallest integer obtained by reading
the upper triangle of P^T A P as a bit string, over all n! relabellings.
The relabellings are evaluated in one vectorized numpy gather per graph.
Larger orders are out of reach for this approach and must come from
external graph6 corpora.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from core.errors import ArgumentError, ScaleError
from core.graph import Graph
from utils.logger import get_logger

log = get_logger(__name__)

MAX_ENUMERATION_ORDER = 6


@lru_cache(maxsize=None)
def _permutation_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)


@lru_cache(maxsize=None)
def _triangle(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    iu, ju = np.triu_indices(n, 1)
    weights = np.left_shift(np.int64(1), np.arange(len(iu) - 1, -1, -1, dtype=np.int64))
    return iu, ju, weights


def canonical_code(g: Graph) -> int:
    """Minimum upper-triangle code of g over all relabellings."""
    n = g.n
    if n == 1:
        return 0
    adj = np.array([[r >> j & 1 for j in range(n)] for r in g.rows], dtype=np.int64)
    perms = _permutation_table(n)
    iu, ju, weights = _triangle(n)
    relabelled = adj[perms[:, :, None], perms[:, None, :]]
    codes = relabelled[:, iu, ju] @ weights
    return int(codes.min())


def graph_from_code(n: int, code: int) -> Graph:
    iu, ju, _ = _triangle(n)
    m = len(iu)
    edges = [(int(iu[k]), int(ju[k])) for k in range(m) if code >> (m - 1 - k) & 1]
    return Graph.from_edges(n, edges)


def enumerate_all_graphs(n: int, *, max_order: int = MAX_ENUMERATION_ORDER) -> list[Graph]:
    """One canonical representative per isomorphism class on n vertices."""
    if n < 1:
        raise ArgumentError(f'order must be positive, got {n}')
    if n > max_order:
        raise ScaleError(
            f'built-in enumeration stops at n={max_order}; '
            f'supply a graph6 corpus (e.g. from nauty geng) for n={n}')
    return list(_catalogue(n))


@lru_cache(maxsize=None)
def _catalogue(n: int) -> tuple[Graph, ...]:
    level = {0: Graph.empty(1)}
    for k in range(1, n):
        level = _next_level(level.values(), k)
        log.debug('order %d: %d classes', k + 1, len(level))
    return tuple(level[c] for c in sorted(level))


def _next_level(graphs, k: int) -> dict[int, Graph]:
    """Every graph on k + 1 vertices, keyed by canonical code."""
    out: dict[int, Graph] = {}
    for g in graphs:
        for subset in range(1 << k):
            rows = list(g.rows) + [subset]
            for j in range(k):
                if subset >> j & 1:
                    rows[j] |= 1 << k
            code = canonical_code(Graph(k + 1, tuple(rows)))
            if code not in out:
                out[code] = graph_from_code(k + 1, code)
    return out
