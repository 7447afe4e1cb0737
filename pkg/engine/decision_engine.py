"""
Module: decision_engine.py
Description: DGS decision procedure for graphs of the family F_n. Per odd
             prime p of b it runs the eigenvalue separation check, falls back
             to the quadratic refutation tests, and searches for an explicit
             generalized cospectral mate when neither settles the prime.

engine/decision_engine.py - DGS Decision Engine

Verdicts
--------
DGS_certified          : G in F_n and every odd prime of b separates
                         lambda0(G;p) from lambda1(G) (always so for b = 1)
DGS_certified_extended : every non-separating prime is refuted by the
                         quadratic residue test or the quadratic form test
NOT_DGS                : an explicit mate was found and verified
UNKNOWN                : anything else; absence of certification is never
                         reported as NOT_DGS
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from core.errors import InvariantViolationError, MisuseError, ScaleError
from core.exact_matrix import RatMatrix
from core.enumeration import MAX_ENUMERATION_ORDER, enumerate_all_graphs
from core.graph import MAX_ISOMORPHISM_ORDER, Graph, TwinInfo, find_twins, generalized_cospectral, is_isomorphic
from core.number_theory import RHO_SEED, TRIAL_DIVISION_BOUND, sqrt_mod_p
from core.smith_form import SnfResult, smith_normal_form
from engine.classifier import Family, GraphClass, classify
from engine.orthogonal import controllable_similarity, level, orthogonal_solutions
from engine.walk import (
    PrimeContext,
    WalkBundle,
    beta_lambda0,
    full_binary_rank_check,
    odd_level_check,
    w_delta,
)
from utils.logger import get_logger

log = get_logger(__name__)


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

REFUTED_BY_RESIDUE = 'quadratic_residue'
REFUTED_BY_FORM = 'quadratic_form'


class Verdict(str, Enum):
    DGS_CERTIFIED = 'DGS_certified'
    DGS_CERTIFIED_EXTENDED = 'DGS_certified_extended'
    NOT_DGS = 'NOT_DGS'
    UNKNOWN = 'UNKNOWN'


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeparationCheck:
    p: int
    lambda0: int
    lambda1: int
    holds: bool


@dataclass(frozen=True)
class QuadraticWitness:
    """Data of the quadratic tests at p.

    qr_value = -((p+1)/2) beta^T beta mod p. When it is a residue, c0 is the
    smaller root, gamma0 = beta + c0 alpha and gamma1 = beta - c0 alpha
    (reduced mod p), and quadform = gamma0^T (A - lambda I) gamma0 mod p^2
    for the integer lift lambda recorded in lambda_lift.
    """

    p: int
    qr_value: int
    c0: int | None
    gamma0: tuple[int, ...] | None
    gamma1: tuple[int, ...] | None
    lambda_lift: int
    quadform: int | None
    quadform_canonical_lift: int | None

    @property
    def is_residue(self) -> bool:
        return self.c0 is not None


@dataclass(frozen=True)
class Refutation:
    """A failed necessary condition for p to divide the level of some Q."""

    condition: str
    qr_value: int
    c0: int | None = None
    gamma0: tuple[int, ...] | None = None
    quadform: int | None = None
    lambda_lift: int | None = None


@dataclass(frozen=True)
class PrimeEvidence:
    p: int
    lambda0: int
    lambda1: int
    separation_holds: bool
    refutation: Refutation | None = None


@dataclass(frozen=True)
class Counterexample:
    mate: Graph
    Q: RatMatrix | None
    level: int | None
    level_divides_dn: bool | None = None


@dataclass(frozen=True)
class DgsCertificate:
    verdict: Verdict
    graph: Graph
    family: Family
    b: int | None
    snf: SnfResult
    evidence: tuple[PrimeEvidence, ...] = ()
    counterexample: Counterexample | None = None
    full_binary_rank: bool | None = None
    odd_level: bool | None = None
    notes: tuple[str, ...] = field(default=())


# ---------------------------------------------------------------------------
# Per-prime checks
# ---------------------------------------------------------------------------

def _twins_of(g: Graph, twins: TwinInfo | None) -> TwinInfo:
    twins = find_twins(g) if twins is None else twins
    if twins is None:
        raise MisuseError('per-prime checks need a graph with a twin pair')
    return twins


def check_separation(g: Graph, p: int, *, twins: TwinInfo | None = None,
                     ctx: PrimeContext | None = None) -> SeparationCheck:
    """holds iff lambda1(G) mod p differs from lambda0(G;p)."""
    twins = _twins_of(g, twins)
    ctx = beta_lambda0(g, p, twins=twins) if ctx is None else ctx
    return SeparationCheck(p=p, lambda0=ctx.lambda0, lambda1=twins.lambda1,
                           holds=twins.lambda1 % p != ctx.lambda0)


def quadratic_form_mod(g: Graph, gamma: tuple[int, ...], lam: int, modulus: int) -> int:
    """gamma^T (A - lam I) gamma mod modulus."""
    a_gamma = g.adjacency_matrix() @ gamma
    return sum(x * (ax - lam * x) for x, ax in zip(gamma, a_gamma)) % modulus


def quadratic_witness(g: Graph, p: int, *, twins: TwinInfo | None = None,
                      ctx: PrimeContext | None = None) -> QuadraticWitness:
    twins = _twins_of(g, twins)
    ctx = beta_lambda0(g, p, twins=twins) if ctx is None else ctx
    beta, alpha = ctx.beta, twins.alpha
    qr_value = -((p + 1) // 2) * sum(x * x for x in beta) % p
    lift = twins.lambda1 if twins.lambda1 % p == ctx.lambda0 else ctx.lambda0

    roots = sqrt_mod_p(qr_value, p)
    if roots is None:
        return QuadraticWitness(p=p, qr_value=qr_value, c0=None, gamma0=None, gamma1=None,
                                lambda_lift=lift, quadform=None, quadform_canonical_lift=None)
    c0 = roots[0]
    gamma0 = tuple((b + c0 * a) % p for b, a in zip(beta, alpha))
    gamma1 = tuple((b - c0 * a) % p for b, a in zip(beta, alpha))
    p2 = p * p
    return QuadraticWitness(
        p=p,
        qr_value=qr_value,
        c0=c0,
        gamma0=gamma0,
        gamma1=gamma1,
        lambda_lift=lift,
        quadform=quadratic_form_mod(g, gamma0, lift, p2),
        quadform_canonical_lift=quadratic_form_mod(g, gamma0, ctx.lambda0, p2),
    )


def refute_prime(g: Graph, p: int, *, twins: TwinInfo | None = None,
                 ctx: PrimeContext | None = None) -> Refutation | None:
    """Try to exclude p from the level of every Q; only for non-separating primes.

    The residue test runs first; the quadratic form test only when it passes.
    """
    twins = _twins_of(g, twins)
    ctx = beta_lambda0(g, p, twins=twins) if ctx is None else ctx
    if check_separation(g, p, twins=twins, ctx=ctx).holds:
        raise MisuseError(f'p={p} already separates lambda0 from lambda1; nothing to refute')
    w = quadratic_witness(g, p, twins=twins, ctx=ctx)
    if not w.is_residue:
        log.debug('p=%d refuted: %d is not a quadratic residue', p, w.qr_value)
        return Refutation(condition=REFUTED_BY_RESIDUE, qr_value=w.qr_value,
                          lambda_lift=w.lambda_lift)
    if w.quadform != 0:
        log.debug('p=%d refuted: quadratic form %d mod p^2', p, w.quadform)
        return Refutation(condition=REFUTED_BY_FORM, qr_value=w.qr_value, c0=w.c0,
                          gamma0=w.gamma0, quadform=w.quadform, lambda_lift=w.lambda_lift)
    log.debug('p=%d not refuted', p)
    return None


# ---------------------------------------------------------------------------
# Mate search
# ---------------------------------------------------------------------------

def level_divides_dn(g: Graph, gclass: GraphClass, lv: int) -> bool | None:
    """Whether lv divides d_n of SNF(W) (controllable) or SNF(W_0) (almost controllable)."""
    if gclass.family is Family.CONTROLLABLE:
        return gclass.snf.last % lv == 0
    if gclass.almost_controllable:
        return smith_normal_form(w_delta(g, 0)).last % lv == 0
    return None


def build_counterexample(g: Graph, h: Graph, gclass: GraphClass) -> Counterexample:
    """Q, its level and the level | d_n check for a generalized cospectral mate h."""
    if gclass.family is Family.CONTROLLABLE:
        q = controllable_similarity(g, h)
    elif gclass.almost_controllable:
        q = orthogonal_solutions(g, h).Q0
    else:
        return Counterexample(mate=h, Q=None, level=None)
    lv = level(q)
    return Counterexample(mate=h, Q=q, level=lv, level_divides_dn=level_divides_dn(g, gclass, lv))


def mate_is_non_isomorphic(g: Graph, h: Graph, gclass: GraphClass, *,
                           max_isomorphism_order: int = MAX_ISOMORPHISM_ORDER) -> bool | None:
    """Whether h is not isomorphic to g.

    Beyond the oracle bound a level above 1 stands in for non-isomorphism;
    None when neither test applies.
    """
    try:
        return is_isomorphic(g, h, max_order=max_isomorphism_order) is None
    except ScaleError:
        if gclass.family is Family.CONTROLLABLE:
            return level(controllable_similarity(g, h)) > 1
        if gclass.almost_controllable:
            return min(orthogonal_solutions(g, h).levels) > 1
        return None


def find_mate(g: Graph, candidates: Iterable[Graph], gclass: GraphClass, *,
              max_isomorphism_order: int = MAX_ISOMORPHISM_ORDER) -> Counterexample | None:
    for h in candidates:
        if h.n != g.n or not generalized_cospectral(g, h):
            continue
        if mate_is_non_isomorphic(g, h, gclass, max_isomorphism_order=max_isomorphism_order):
            log.info('mate found for %s', g)
            return build_counterexample(g, h, gclass)
    return None


# ---------------------------------------------------------------------------
# Decision
# ---------------------------------------------------------------------------

def decide_dgs(g: Graph, *,
               mate_corpus: Iterable[Graph] | None = None,
               enumerate_mates: bool = True,
               max_enumeration_order: int = MAX_ENUMERATION_ORDER,
               max_isomorphism_order: int = MAX_ISOMORPHISM_ORDER,
               trial_bound: int = TRIAL_DIVISION_BOUND,
               rho_seed: int = RHO_SEED) -> DgsCertificate:
    bundle = WalkBundle.from_graph(g)
    gclass = classify(g, bundle, trial_bound=trial_bound, rho_seed=rho_seed)
    base = dict(graph=g, family=gclass.family, b=gclass.b, snf=gclass.snf)

    if not gclass.in_F_n:
        mate = _search(g, gclass, mate_corpus, enumerate_mates,
                       max_enumeration_order, max_isomorphism_order)
        verdict = Verdict.NOT_DGS if mate else Verdict.UNKNOWN
        return DgsCertificate(verdict=verdict, counterexample=mate,
                              notes=('graph is outside F_n',), **base)

    full_br = full_binary_rank_check(g, bundle.W)
    if not full_br:
        raise InvariantViolationError('W^T W-tilde_1 / 2 lacks full column rank over F_2 for a graph in F_n')
    odd = odd_level_check(g, bundle.W)
    checks = dict(full_binary_rank=full_br, odd_level=odd)

    evidence = []
    for p in gclass.odd_primes:
        ctx = beta_lambda0(g, p, twins=bundle.twins)
        sep = check_separation(g, p, twins=bundle.twins, ctx=ctx)
        refutation = None if sep.holds else refute_prime(g, p, twins=bundle.twins, ctx=ctx)
        log.debug('p=%d: lambda0=%d lambda1=%d separation=%s', p, sep.lambda0, sep.lambda1, sep.holds)
        evidence.append(PrimeEvidence(p=p, lambda0=sep.lambda0, lambda1=sep.lambda1,
                                      separation_holds=sep.holds, refutation=refutation))

    if all(e.separation_holds for e in evidence):
        verdict = Verdict.DGS_CERTIFIED
    elif all(e.separation_holds or e.refutation is not None for e in evidence):
        verdict = Verdict.DGS_CERTIFIED_EXTENDED
    else:
        verdict = Verdict.UNKNOWN

    mate = None
    if verdict is Verdict.UNKNOWN:
        mate = _search(g, gclass, mate_corpus, enumerate_mates,
                       max_enumeration_order, max_isomorphism_order)
        if mate is not None:
            verdict = Verdict.NOT_DGS
    log.info('%s: %s', g, verdict.value)
    return DgsCertificate(verdict=verdict, evidence=tuple(evidence), counterexample=mate,
                          **checks, **base)


def _search(g, gclass, mate_corpus, enumerate_mates, max_enumeration_order,
            max_isomorphism_order) -> Counterexample | None:
    candidates: list[Graph] = list(mate_corpus or [])
    if enumerate_mates and g.n <= max_enumeration_order:
        candidates.extend(enumerate_all_graphs(g.n, max_order=max_enumeration_order))
    if not candidates:
        return None
    return find_mate(g, candidates, gclass, max_isomorphism_order=max_isomorphism_order)
