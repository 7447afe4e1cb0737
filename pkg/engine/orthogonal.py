"""
Module: orthogonal.py
Description: Rational regular orthogonal matrices Q with Q^T A(G) Q = A(H)
             for generalized cospectral pairs, built from walk matrices, and
             their levels.

engine/orthogonal.py - Orthogonal Similarities

Controllable G: the only such Q is W(G) W(H)^{-1}.
Almost controllable G: exactly two, Q_delta = W_delta(G) W_0(H)^{-1} for
delta in {0, 1}. Every constructed matrix is checked exactly before it is
returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from core.errors import DomainError, InvariantViolationError
from core.exact_linalg import rank_rational, rational_inverse
from core.exact_matrix import IntMatrix, RatMatrix
from core.graph import Graph, generalized_cospectral
from engine.walk import walk_matrix, w_delta, xi_vector


@dataclass(frozen=True)
class RationalOrthogonalSolution:
    Q0: RatMatrix
    Q1: RatMatrix
    level0: int
    level1: int

    @property
    def levels(self) -> tuple[int, int]:
        return self.level0, self.level1


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

def level(q: RatMatrix) -> int:
    """Least k >= 1 with k Q integral."""
    return lcm(1, *q.denominators())


def regular_orthogonal_failures(q: RatMatrix, a_g: IntMatrix, a_h: IntMatrix) -> list[str]:
    """Names of the violated conditions among Q^T Q = I, Q e = e, Q^T A_g Q = A_h."""
    n = q.rows
    failures = []
    if q.T @ q != RatMatrix.identity(n):
        failures.append('Q^T Q != I')
    if any(s != 1 for s in q @ ((1,) * n)):
        failures.append('Q e != e')
    if q.T @ a_g @ q != a_h:
        failures.append('Q^T A(G) Q != A(H)')
    return failures


def controllable_similarity(g: Graph, h: Graph) -> RatMatrix:
    """The unique regular rational orthogonal Q with Q^T A(g) Q = A(h)."""
    _require_cospectral(g, h)
    w_g = walk_matrix(g)
    if rank_rational(w_g) != g.n:
        raise DomainError('graph is not controllable')
    q = w_g @ rational_inverse(walk_matrix(h))
    _check(q, g, h, 'Q')
    return q


def orthogonal_solutions(g: Graph, h: Graph) -> RationalOrthogonalSolution:
    """Both regular rational orthogonal Q with Q^T A(g) Q = A(h), g almost controllable."""
    _require_cospectral(g, h)
    xi_g = xi_vector(g)
    xi_h = xi_vector(h)
    w0_h_inv = rational_inverse(w_delta(h, 0, xi=xi_h))
    q0 = w_delta(g, 0, xi=xi_g) @ w0_h_inv
    q1 = w_delta(g, 1, xi=xi_g) @ w0_h_inv
    _check(q0, g, h, 'Q_0')
    _check(q1, g, h, 'Q_1')
    if q0 == q1:
        raise InvariantViolationError('the two orthogonal solutions coincide')
    return RationalOrthogonalSolution(Q0=q0, Q1=q1, level0=level(q0), level1=level(q1))


def conjugate_adjacency(g: Graph, q: RatMatrix) -> RatMatrix:
    return q.T @ g.adjacency_matrix() @ q


def mate_from_orthogonal(g: Graph, q: RatMatrix) -> Graph:
    """The graph H with A(H) = Q^T A(g) Q; Q^T A Q must be an adjacency matrix."""
    conj = conjugate_adjacency(g, q)
    if not conj.is_integral():
        raise DomainError('Q^T A Q is not integral')
    return Graph.from_adjacency(conj.to_int_matrix())


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _require_cospectral(g: Graph, h: Graph) -> None:
    if not generalized_cospectral(g, h):
        raise DomainError('not generalized cospectral')


def _check(q: RatMatrix, g: Graph, h: Graph, name: str) -> None:
    failures = regular_orthogonal_failures(q, g.adjacency_matrix(), h.adjacency_matrix())
    if failures:
        raise InvariantViolationError(f'{name} fails: {"; ".join(failures)}')
