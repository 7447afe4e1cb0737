"""
Module: graph.py
Description: Immutable simple undirected graphs with bitmask adjacency, twin
             detection, generalized cospectrality and a backtracking
             isomorphism oracle.

core/graph.py - Graph Core

Vertices are 0-based inside the code; TwinInfo reports twins 1-based, the
way adjacency matrices are usually printed. A permutation perm maps vertex i
to perm[i]: g.relabel(perm) has A[perm[i], perm[j]] = A_g[i, j], which is
P^T A_g P for the matrix with P[i, perm[i]] = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx

from core.errors import AmbiguousTwinsError, ArgumentError, GraphError, ScaleError
from core.exact_linalg import char_poly
from core.exact_matrix import IntMatrix

MAX_ISOMORPHISM_ORDER = 12


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; rows[i] is the neighbour bitmask of vertex i."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError(f'a graph needs at least one vertex, got n={self.n}')
        if len(self.rows) != self.n:
            raise GraphError(f'expected {self.n} adjacency rows, got {len(self.rows)}')
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise GraphError(f'vertex {i} has a neighbour outside 0..{self.n - 1}')
            if r >> i & 1:
                raise GraphError(f'self-loop at vertex {i}')
            for j in _bits(r):
                if not self.rows[j] >> i & 1:
                    raise GraphError(f'adjacency is not symmetric at ({i}, {j})')

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_adjacency(cls, matrix) -> 'Graph':
        rows = [list(r) for r in (matrix.tolist() if isinstance(matrix, IntMatrix) else matrix)]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise GraphError('adjacency matrix is not square')
        masks = []
        for i, r in enumerate(rows):
            mask = 0
            for j, x in enumerate(r):
                if x not in (0, 1):
                    raise GraphError(f'adjacency entry ({i}, {j}) is {x!r}, expected 0 or 1')
                if x:
                    mask |= 1 << j
            masks.append(mask)
        return cls(n, tuple(masks))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> 'Graph':
        masks = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise GraphError(f'invalid edge ({u}, {v}) for n={n}')
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, tuple(masks))

    @classmethod
    def empty(cls, n: int) -> 'Graph':
        return cls(n, (0,) * n)

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> 'Graph':
        """Vertices are numbered in sorted node order."""
        order = sorted(g.nodes())
        index = {v: i for i, v in enumerate(order)}
        return cls.from_edges(len(order), ((index[u], index[v]) for u, v in g.edges()))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def adjacency_matrix(self) -> IntMatrix:
        return IntMatrix([[r >> j & 1 for j in range(self.n)] for r in self.rows])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(_bits(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def relabel(self, perm: Sequence[int]) -> 'Graph':
        """Graph with vertex i renamed perm[i]."""
        if sorted(perm) != list(range(self.n)):
            raise ArgumentError(f'{list(perm)} is not a permutation of 0..{self.n - 1}')
        masks = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in _bits(r):
                masks[perm[i]] |= 1 << perm[j]
        return Graph(self.n, tuple(masks))

    def __str__(self) -> str:
        return f'Graph(n={self.n}, m={self.edge_count})'


@dataclass(frozen=True)
class TwinInfo:
    """The unique pair of twins: swapping tau and tau_prime (1-based) is an automorphism."""

    tau: int
    tau_prime: int
    adjacent: bool
    lambda1: int
    alpha: tuple[int, ...]

    @property
    def indices(self) -> tuple[int, int]:
        """0-based (tau, tau_prime)."""
        return self.tau - 1, self.tau_prime - 1

    def transposition(self) -> tuple[int, ...]:
        n = len(self.alpha)
        i, j = self.indices
        perm = list(range(n))
        perm[i], perm[j] = j, i
        return tuple(perm)

    def swap(self, v: Sequence) -> tuple:
        """v with the entries at tau and tau_prime exchanged."""
        out = list(v)
        i, j = self.indices
        out[i], out[j] = out[j], out[i]
        return tuple(out)


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~r & ~(1 << i) for i, r in enumerate(g.rows)))


def twin_pairs(g: Graph) -> list[tuple[int, int]]:
    """All 0-based pairs u < v with N(u) \\ {v} = N(v) \\ {u}."""
    pairs = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.rows[u] & ~(1 << v) == g.rows[v] & ~(1 << u):
                pairs.append((u, v))
    return pairs


def find_twins(g: Graph) -> TwinInfo | None:
    pairs = twin_pairs(g)
    if not pairs:
        return None
    if len(pairs) > 1:
        raise AmbiguousTwinsError([(u + 1, v + 1) for u, v in pairs])
    u, v = pairs[0]
    adjacent = g.has_edge(u, v)
    alpha = [0] * g.n
    alpha[u], alpha[v] = -1, 1
    return TwinInfo(tau=u + 1, tau_prime=v + 1, adjacent=adjacent,
                    lambda1=-1 if adjacent else 0, alpha=tuple(alpha))


@lru_cache(maxsize=4096)
def spectral_key(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Characteristic polynomials of A(g) and of A of the complement."""
    return (tuple(char_poly(g.adjacency_matrix())),
            tuple(char_poly(complement(g).adjacency_matrix())))


def generalized_cospectral(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        raise ArgumentError(f'graphs have different orders ({g.n} and {h.n})')
    return spectral_key(g) == spectral_key(h)


def is_isomorphic(g: Graph, h: Graph, *,
                  max_order: int = MAX_ISOMORPHISM_ORDER) -> tuple[int, ...] | None:
    """A permutation perm with g.relabel(perm) == h, or None.

    Backtracking over vertices of g in decreasing degree order; candidates
    in h must agree on degree and on the sorted degrees of their neighbours.
    """
    if max(g.n, h.n) > max_order:
        raise ScaleError(f'isomorphism oracle is bounded to n <= {max_order}, got n={max(g.n, h.n)}')
    if g.n != h.n or g.edge_count != h.edge_count:
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None

    sig_g = _vertex_signatures(g)
    sig_h = _vertex_signatures(h)
    if sorted(sig_g) != sorted(sig_h):
        return None

    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    candidates = {v: [w for w in range(h.n) if sig_h[w] == sig_g[v]] for v in order}
    perm = [-1] * g.n
    used = [False] * h.n

    def extend(depth: int) -> bool:
        if depth == g.n:
            return True
        v = order[depth]
        for w in candidates[v]:
            if used[w]:
                continue
            if all(g.has_edge(v, u) == h.has_edge(w, perm[u]) for u in order[:depth]):
                perm[v], used[w] = w, True
                if extend(depth + 1):
                    return True
                perm[v], used[w] = -1, False
        return False

    return tuple(perm) if extend(0) else None


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _vertex_signatures(g: Graph) -> list[tuple[int, tuple[int, ...]]]:
    return [(g.degree(v), tuple(sorted(g.degree(u) for u in g.neighbors(v))))
            for v in range(g.n)]
