"""
Module: walk.py
Description: Walk matrix W = [e, Ae, ..., A^{n-1}e] and every matrix derived
             from it: V, the cofactor vector xi, W_0/W_1, W-hat, the halved
             binary-rank matrices, and the mod-p eigendata (beta, lambda0).

engine/walk.py - Walk-Matrix Derivatives

For an almost controllable graph (rank W = n - 1) the rational kernel of W^T
is one-dimensional and spanned by xi, the vector of algebraic cofactors of
the last column of W. xi is obtained as a primitive kernel vector scaled by
one explicitly evaluated cofactor; the all-cofactor version is kept for
cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

from core.errors import (
    AmbiguousTwinsError,
    ArgumentError,
    DomainError,
    InvariantViolationError,
    MisclassificationError,
    NotAlmostControllableError,
)
from core.exact_linalg import (
    bareiss_det,
    nullspace_mod_p,
    rank_mod_p,
    rank_rational,
    rational_nullspace,
)
from core.exact_matrix import IntMatrix
from core.graph import Graph, TwinInfo, find_twins
from core.number_theory import is_prime
from utils.logger import get_logger

log = get_logger(__name__)


# ---------------------------------------------------------------------------
# Walk matrix and its columns
# ---------------------------------------------------------------------------

def walk_columns(g: Graph, count: int) -> list[tuple[int, ...]]:
    """[e, Ae, ..., A^{count-1}e], each power obtained from the previous column."""
    cols: list[tuple[int, ...]] = []
    col = (1,) * g.n
    for _ in range(count):
        cols.append(col)
        col = tuple(sum(col[j] for j in g.neighbors(i)) for i in range(g.n))
    return cols


def walk_matrix(g: Graph) -> IntMatrix:
    return IntMatrix.from_columns(walk_columns(g, g.n))


def half_rank_exponent(n: int) -> int:
    """floor(n/2) - 1, the power of 2 dividing xi for almost controllable graphs."""
    return n // 2 - 1


# ---------------------------------------------------------------------------
# xi and the W_delta / W-hat matrices
# ---------------------------------------------------------------------------

def _require_almost_controllable(w: IntMatrix) -> None:
    r = rank_rational(w)
    if r != w.rows - 1:
        raise NotAlmostControllableError(f'walk matrix has rank {r}, expected n - 1 = {w.rows - 1}')


def cofactor_last_column(w: IntMatrix, i: int) -> int:
    """Algebraic cofactor of entry (i, n-1) of W (0-based i)."""
    n = w.rows
    x_i = w.delete_column(n - 1).delete_row(i)
    sign = -1 if (n - 1 + i) % 2 else 1
    return sign * bareiss_det(x_i)


def xi_vector(g: Graph, w: IntMatrix | None = None) -> tuple[int, ...]:
    """Cofactors of the last column of W, for rank W = n - 1."""
    w = walk_matrix(g) if w is None else w
    _require_almost_controllable(w)
    kernel = rational_nullspace(w.T)
    if len(kernel) != 1:
        raise InvariantViolationError(f'kernel of W^T has dimension {len(kernel)} at rank n - 1')
    k = kernel[0]
    i = next(idx for idx, x in enumerate(k) if x != 0)
    xi_i = cofactor_last_column(w, i)
    scale, rem = divmod(xi_i, k[i])
    if rem:
        raise InvariantViolationError('cofactor is not an integer multiple of the primitive kernel vector')
    return tuple(scale * x for x in k)


def xi_vector_by_cofactors(g: Graph) -> tuple[int, ...]:
    """Slow path: all n cofactor determinants."""
    w = walk_matrix(g)
    _require_almost_controllable(w)
    return tuple(cofactor_last_column(w, i) for i in range(g.n))


def scaled_xi(xi: tuple[int, ...]) -> tuple[int, ...]:
    """xi / 2^(floor(n/2) - 1), which is integral for almost controllable graphs."""
    e = half_rank_exponent(len(xi))
    d = 1 << max(e, 0)
    if any(x % d for x in xi):
        raise InvariantViolationError(f'xi is not divisible by 2^{e}')
    return tuple(x // d for x in xi)


def w_delta(g: Graph, delta: int, *, xi: tuple[int, ...] | None = None) -> IntMatrix:
    """[e, Ae, ..., A^{n-2}e, (-1)^delta xi / 2^(floor(n/2)-1)]."""
    if delta not in (0, 1):
        raise ArgumentError(f'delta must be 0 or 1, got {delta}')
    xi = xi_vector(g) if xi is None else xi
    last = scaled_xi(xi)
    if delta:
        last = tuple(-x for x in last)
    return IntMatrix.from_columns(walk_columns(g, g.n - 1) + [last])


def w_hat(g: Graph, *, twins: TwinInfo | None = None) -> IntMatrix:
    """[e, Ae, ..., A^{n-2}e, alpha] for a graph with a twin pair."""
    twins = find_twins(g) if twins is None else twins
    if twins is None:
        raise DomainError('W-hat needs a pair of twins and the graph has none')
    return IntMatrix.from_columns(walk_columns(g, g.n - 1) + [twins.alpha])


# ---------------------------------------------------------------------------
# Mod-p eigendata
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeContext:
    """beta(G;p) spans ker W-hat^T mod p; A beta = lambda0 beta mod p."""

    p: int
    beta: tuple[int, ...]
    lambda0: int


def beta_lambda0(g: Graph, p: int, *, twins: TwinInfo | None = None) -> PrimeContext:
    if p == 2 or not is_prime(p):
        raise ArgumentError(f'beta needs an odd prime, got {p}')
    wh = w_hat(g, twins=twins)
    kernel = nullspace_mod_p(wh.T, p)
    if len(kernel) != 1:
        raise MisclassificationError(
            f'kernel of W-hat^T mod {p} has dimension {len(kernel)}, expected 1')
    v = kernel[0]
    last = max(i for i, x in enumerate(v) if x)
    inv = pow(v[last], -1, p)
    beta = tuple(x * inv % p for x in v)

    a = g.adjacency_matrix()
    a_beta = tuple(x % p for x in a @ beta)
    j = next(i for i, x in enumerate(beta) if x)
    lambda0 = a_beta[j] * pow(beta[j], -1, p) % p
    if any((a_beta[i] - lambda0 * beta[i]) % p for i in range(g.n)):
        raise MisclassificationError(f'A beta is not proportional to beta mod {p}')
    log.debug('p=%d: lambda0=%d, beta=%s', p, lambda0, beta)
    return PrimeContext(p=p, beta=beta, lambda0=lambda0)


# ---------------------------------------------------------------------------
# Binary rank (p = 2)
# ---------------------------------------------------------------------------

def tilde_matrices(g: Graph) -> tuple[IntMatrix, IntMatrix]:
    """(W-tilde, W-tilde_1) with k = floor(n/2) columns each.

    even n: [e, Ae, ..., A^{k-1}e] and [e, A^2e, ..., A^{2k-2}e]
    odd n:  [Ae, A^2e, ..., A^k e] and [A^2e, A^4e, ..., A^{2k}e]
    """
    n = g.n
    k = n // 2
    cols = walk_columns(g, 2 * k + 1)
    if n % 2 == 0:
        first = [cols[i] for i in range(k)]
        second = [cols[2 * i] for i in range(k)]
    else:
        first = [cols[i] for i in range(1, k + 1)]
        second = [cols[2 * i] for i in range(1, k + 1)]
    return IntMatrix.from_columns(first, rows=n), IntMatrix.from_columns(second, rows=n)


def halved_binary_product(g: Graph, w: IntMatrix | None = None) -> IntMatrix:
    """W^T W-tilde_1 / 2, integral because e^T A^j e is even for j >= 1."""
    w = walk_matrix(g) if w is None else w
    _, w1 = tilde_matrices(g)
    prod = w.T @ w1
    if any(x % 2 for x in prod.entries):
        raise InvariantViolationError('W^T W-tilde_1 has an odd entry')
    return IntMatrix([[x // 2 for x in row] for row in prod.tolist()])


def full_binary_rank_check(g: Graph, w: IntMatrix | None = None) -> bool:
    """Whether W^T W-tilde_1 / 2 has full column rank floor(n/2) over F_2."""
    half = halved_binary_product(g, w)
    return half.cols == 0 or rank_mod_p(half, 2) == half.cols


def odd_level_check(g: Graph, w: IntMatrix | None = None) -> bool:
    """ker (W^T W-tilde_1 / 2) mod 2 is contained in ker W-tilde mod 2."""
    half = halved_binary_product(g, w)
    w_tilde, _ = tilde_matrices(g)
    if half.cols == 0:
        return True
    for v in nullspace_mod_p(half, 2):
        if any(x % 2 for x in w_tilde @ v):
            return False
    return True


# ---------------------------------------------------------------------------
# Bundle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WalkBundle:
    """Per-graph walk data computed once and shared by the classifier and engine."""

    graph: Graph
    W: IntMatrix
    V: IntMatrix
    rank_Q: int
    rank_2: int
    xi: tuple[int, ...] | None
    xi_scaled: tuple[int, ...] | None
    twins: TwinInfo | None
    twin_pairs_ambiguous: bool = False

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def almost_controllable(self) -> bool:
        return self.rank_Q == self.n - 1

    @classmethod
    def from_graph(cls, g: Graph) -> 'WalkBundle':
        w = walk_matrix(g)
        rank_q = rank_rational(w)
        try:
            twins = find_twins(g)
            ambiguous = False
        except AmbiguousTwinsError:
            twins, ambiguous = None, True
        xi = xi_scaled_v = None
        if rank_q == g.n - 1:
            xi = xi_vector(g, w)
            xi_scaled_v = scaled_xi(xi)
        return cls(
            graph=g,
            W=w,
            V=w.delete_column(g.n - 1),
            rank_Q=rank_q,
            rank_2=rank_mod_p(w, 2),
            xi=xi,
            xi_scaled=xi_scaled_v,
            twins=twins,
            twin_pairs_ambiguous=ambiguous,
        )

    def w_delta(self, delta: int) -> IntMatrix:
        return w_delta(self.graph, delta, xi=self.xi)

    def w_hat(self) -> IntMatrix:
        return w_hat(self.graph, twins=self.twins)
