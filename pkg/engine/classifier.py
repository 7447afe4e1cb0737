"""
Module: classifier.py
Description: Places a graph in its walk-matrix family (controllable, almost
             controllable with or without twins, other) and decides
             membership of the family F_n from the Smith normal form of W.

engine/classifier.py - Graph Family Classifier

F_n: almost controllable graphs with a twin pair whose walk-matrix SNF is
diag(1 x ceil(n/2), 2 x (floor(n/2) - 2), 2b, 0) with b odd and square-free.
The same membership is recomputed from the twin cofactor
|W_{tau,n}| / 2^(floor(n/2) - 1) = b and the two answers must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from core.errors import InvariantViolationError
from core.exact_linalg import bareiss_det
from core.graph import Graph, TwinInfo
from core.number_theory import (
    RHO_SEED,
    TRIAL_DIVISION_BOUND,
    is_square_free,
    odd_prime_factors,
)
from core.smith_form import SnfResult, smith_normal_form
from engine.walk import WalkBundle, half_rank_exponent
from utils.logger import get_logger

log = get_logger(__name__)


class Family(str, Enum):
    CONTROLLABLE = 'controllable'
    ALMOST_CONTROLLABLE_ASYMMETRIC = 'almost_controllable_asymmetric'
    ALMOST_CONTROLLABLE_SYMMETRIC = 'almost_controllable_symmetric'
    OTHER = 'other'


@dataclass(frozen=True)
class GraphClass:
    n: int
    rank_Q: int
    rank_2: int
    family: Family
    in_F_n: bool
    in_F_n_star: bool
    b: int | None
    odd_primes: tuple[int, ...]
    snf: SnfResult
    twins: TwinInfo | None
    controllable_criterion: bool | None = None

    @property
    def almost_controllable(self) -> bool:
        return self.family in (Family.ALMOST_CONTROLLABLE_ASYMMETRIC,
                               Family.ALMOST_CONTROLLABLE_SYMMETRIC)


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

def classify(g: Graph, bundle: WalkBundle | None = None, *,
             trial_bound: int = TRIAL_DIVISION_BOUND, rho_seed: int = RHO_SEED) -> GraphClass:
    bundle = WalkBundle.from_graph(g) if bundle is None else bundle
    n = g.n
    snf = smith_normal_form(bundle.W)
    factor_kw = {'trial_bound': trial_bound, 'seed': rho_seed}

    if bundle.rank_Q == n:
        family = Family.CONTROLLABLE
    elif bundle.rank_Q == n - 1:
        if bundle.twin_pairs_ambiguous:
            raise InvariantViolationError('almost controllable graph with several twin pairs')
        family = (Family.ALMOST_CONTROLLABLE_SYMMETRIC if bundle.twins is not None
                  else Family.ALMOST_CONTROLLABLE_ASYMMETRIC)
    else:
        family = Family.OTHER

    in_f, b = False, None
    if family is Family.ALMOST_CONTROLLABLE_SYMMETRIC:
        snf_b = symmetric_snf_b(snf.invariant_factors, n, **factor_kw)
        cof_b = cofactor_b(bundle, **factor_kw)
        if (snf_b is None) != (cof_b is None) or (snf_b is not None and snf_b != cof_b):
            raise InvariantViolationError(
                f'F_n membership disagrees: SNF gives b={snf_b}, twin cofactor gives b={cof_b}')
        in_f, b = snf_b is not None, snf_b

    criterion = None
    if family is Family.CONTROLLABLE:
        criterion = controllable_criterion(bundle, snf, **factor_kw)

    odd_primes = odd_prime_factors(b, **factor_kw) if b is not None else ()
    result = GraphClass(
        n=n,
        rank_Q=bundle.rank_Q,
        rank_2=bundle.rank_2,
        family=family,
        in_F_n=in_f,
        in_F_n_star=in_f and b == 1,
        b=b,
        odd_primes=odd_primes,
        snf=snf,
        twins=bundle.twins,
        controllable_criterion=criterion,
    )
    log.debug('classified %s: family=%s in_F_n=%s b=%s', g, family.value, in_f, b)
    return result


def symmetric_snf_b(factors: tuple[int, ...], n: int, **factor_kw) -> int | None:
    """b if factors = (1 x ceil(n/2), 2 x (floor(n/2) - 2), 2b, 0) with b odd square-free."""
    if n < 4 or len(factors) != n:
        return None
    ones = (n + 1) // 2
    twos = n // 2 - 2
    if any(d != 1 for d in factors[:ones]):
        return None
    if any(d != 2 for d in factors[ones:ones + twos]):
        return None
    if factors[-1] != 0:
        return None
    return _odd_square_free_half(factors[-2], **factor_kw)


def cofactor_b(bundle: WalkBundle, **factor_kw) -> int | None:
    """b = |W_{tau,n}| / 2^(floor(n/2) - 1) when it is an odd square-free integer."""
    if bundle.twins is None or bundle.xi is None or bundle.n < 4:
        return None
    tau, _ = bundle.twins.indices
    value = abs(bundle.xi[tau])
    d = 1 << half_rank_exponent(bundle.n)
    if value == 0 or value % d:
        return None
    b = value // d
    if b % 2 == 0 or not is_square_free(b, **factor_kw):
        return None
    return b


def controllable_criterion(bundle: WalkBundle, snf: SnfResult | None = None, **factor_kw) -> bool:
    """det W / 2^floor(n/2) odd and square-free, cross-checked against the SNF shape.

    SNF shape: diag(1 x ceil(n/2), 2 x (floor(n/2) - 1), 2b) with b odd square-free.
    """
    n = bundle.n
    det = abs(bareiss_det(bundle.W))
    d = 1 << (n // 2)
    by_det = det != 0 and det % d == 0 and (det // d) % 2 == 1 and is_square_free(det // d, **factor_kw)
    if n < 2:
        return by_det
    snf = smith_normal_form(bundle.W) if snf is None else snf
    f = snf.invariant_factors
    ones = (n + 1) // 2
    by_snf = (all(x == 1 for x in f[:ones])
              and all(x == 2 for x in f[ones:n - 1])
              and _odd_square_free_half(f[-1], **factor_kw) is not None)
    if by_det != by_snf:
        raise InvariantViolationError('determinant and SNF forms of the controllable criterion disagree')
    return by_det


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _odd_square_free_half(two_b: int, **factor_kw) -> int | None:
    if two_b <= 0 or two_b % 2:
        return None
    b = two_b // 2
    if b % 2 == 0 or not is_square_free(b, **factor_kw):
        return None
    return b
