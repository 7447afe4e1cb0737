"""
Module: certificate.py
Description: "dgs-cert/1" JSON documents for DgsCertificate and an
             independent verifier that recomputes every claim from the graph.

engine/certificate.py - Certificate Codec and Audit

Integers are written as decimal strings and rationals as "num/den" strings,
so nothing passes through floating point. A certificate is self-contained:
verify_certificate needs only the document and the graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction
from pathlib import Path

from core.errors import ArgumentError, DgsError
from core.exact_matrix import RatMatrix
from core.graph import MAX_ISOMORPHISM_ORDER, Graph, generalized_cospectral
from core.graph6 import emit_graph6, parse_graph6
from core.smith_form import SnfResult
from engine.classifier import Family, classify
from engine.decision_engine import (
    Counterexample,
    DgsCertificate,
    PrimeEvidence,
    Refutation,
    Verdict,
    check_separation,
    level_divides_dn,
    mate_is_non_isomorphic,
    refute_prime,
)
from engine.orthogonal import level, regular_orthogonal_failures
from engine.walk import WalkBundle, beta_lambda0, full_binary_rank_check, odd_level_check
from utils.logger import get_logger

log = get_logger(__name__)

SCHEMA = 'dgs-cert/1'


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _int(x: int | None) -> str | None:
    return None if x is None else str(x)


def _ints(xs) -> list[str] | None:
    return None if xs is None else [str(x) for x in xs]


def _parse_int(s) -> int | None:
    if s is None:
        return None
    if not isinstance(s, str):
        raise ArgumentError(f'expected a decimal string, got {s!r}')
    return int(s)


def _parse_bool(x, *, required: bool = False) -> bool | None:
    if x is None and not required:
        return None
    if not isinstance(x, bool):
        raise ArgumentError(f'expected true or false, got {x!r}')
    return x


def _parse_ints(xs) -> tuple[int, ...] | None:
    return None if xs is None else tuple(_parse_int(x) for x in xs)


def _refutation_doc(r: Refutation | None) -> dict | None:
    if r is None:
        return None
    return {
        'condition': r.condition,
        'qr_value': _int(r.qr_value),
        'c0': _int(r.c0),
        'gamma0': _ints(r.gamma0),
        'quadform': _int(r.quadform),
        'lambda_lift': _int(r.lambda_lift),
    }


def to_document(cert: DgsCertificate, *, timestamp: bool = True) -> dict:
    ce = cert.counterexample
    doc = {
        'schema': SCHEMA,
        'graph6': emit_graph6(cert.graph),
        'n': _int(cert.graph.n),
        'verdict': cert.verdict.value,
        'family': cert.family.value,
        'b': _int(cert.b),
        'snf': _ints(cert.snf.invariant_factors),
        'full_binary_rank': cert.full_binary_rank,
        'odd_level': cert.odd_level,
        'evidence': [
            {
                'p': _int(e.p),
                'lambda0': _int(e.lambda0),
                'lambda1': _int(e.lambda1),
                'separation_holds': e.separation_holds,
                'refutation': _refutation_doc(e.refutation),
            }
            for e in cert.evidence
        ],
        'counterexample': None if ce is None else {
            'mate': emit_graph6(ce.mate),
            'Q': None if ce.Q is None else [[str(x) for x in row] for row in ce.Q.tolist()],
            'level': _int(ce.level),
            'level_divides_dn': ce.level_divides_dn,
        },
        'notes': list(cert.notes),
    }
    if timestamp:
        doc['generated_at'] = datetime.now().isoformat(timespec='seconds')
    return doc


def from_document(doc: dict) -> DgsCertificate:
    if doc.get('schema') != SCHEMA:
        raise ArgumentError(f'unsupported certificate schema {doc.get("schema")!r}')
    try:
        g = parse_graph6(doc['graph6'])
        ce_doc = doc.get('counterexample')
        ce = None
        if ce_doc is not None:
            q_rows = ce_doc.get('Q')
            ce = Counterexample(
                mate=parse_graph6(ce_doc['mate']),
                Q=None if q_rows is None else RatMatrix([[Fraction(x) for x in row] for row in q_rows]),
                level=_parse_int(ce_doc.get('level')),
                level_divides_dn=_parse_bool(ce_doc.get('level_divides_dn')),
            )
        evidence = []
        for e in doc.get('evidence', []):
            r = e.get('refutation')
            evidence.append(PrimeEvidence(
                p=_parse_int(e['p']),
                lambda0=_parse_int(e['lambda0']),
                lambda1=_parse_int(e['lambda1']),
                separation_holds=_parse_bool(e['separation_holds'], required=True),
                refutation=None if r is None else Refutation(
                    condition=r['condition'],
                    qr_value=_parse_int(r['qr_value']),
                    c0=_parse_int(r.get('c0')),
                    gamma0=_parse_ints(r.get('gamma0')),
                    quadform=_parse_int(r.get('quadform')),
                    lambda_lift=_parse_int(r.get('lambda_lift')),
                ),
            ))
        snf = _parse_ints(doc['snf'])
        return DgsCertificate(
            verdict=Verdict(doc['verdict']),
            graph=g,
            family=Family(doc['family']),
            b=_parse_int(doc.get('b')),
            snf=SnfResult(invariant_factors=snf, source_shape=(g.n, g.n)),
            evidence=tuple(evidence),
            counterexample=ce,
            full_binary_rank=_parse_bool(doc.get('full_binary_rank')),
            odd_level=_parse_bool(doc.get('odd_level')),
            notes=tuple(doc.get('notes', ())),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ArgumentError(f'malformed certificate: {exc}') from exc


def write_certificate(path: str | Path, cert: DgsCertificate, *, timestamp: bool = True) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as fh:
        json.dump(to_document(cert, timestamp=timestamp), fh, indent=2)
        fh.write('\n')
    return path


def read_certificate(path: str | Path) -> DgsCertificate:
    with open(path, 'r', encoding='utf-8') as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ArgumentError(f'certificate {path} is not valid JSON: {exc}') from exc
    return from_document(doc)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass
class CertificateCheck:
    ok: bool = True
    discrepancies: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.ok = False
        self.discrepancies.append(message)

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(cert: DgsCertificate, g: Graph, *,
                       max_isomorphism_order: int = MAX_ISOMORPHISM_ORDER) -> CertificateCheck:
    """Recompute every claim of cert for g and name each mismatch."""
    check = CertificateCheck()
    if cert.graph != g:
        check.fail('graph mismatch')
        return check

    bundle = WalkBundle.from_graph(g)
    gclass = classify(g, bundle)
    if tuple(cert.snf.invariant_factors) != gclass.snf.invariant_factors:
        check.fail('snf mismatch')
    if cert.family is not gclass.family:
        check.fail('family mismatch')
    if cert.b != gclass.b:
        check.fail('b mismatch')

    if gclass.in_F_n:
        _verify_evidence(cert, g, bundle, gclass.odd_primes, check)
        if cert.full_binary_rank is not True or not full_binary_rank_check(g, bundle.W):
            check.fail('full binary rank not confirmed')
        if cert.odd_level is not True or not odd_level_check(g, bundle.W):
            check.fail('odd level not confirmed')
    else:
        if cert.evidence:
            check.fail('evidence given for a graph outside F_n')
        if cert.full_binary_rank is not None or cert.odd_level is not None:
            check.fail('binary checks given for a graph outside F_n')

    if cert.verdict is Verdict.DGS_CERTIFIED:
        if not gclass.in_F_n:
            check.fail('verdict needs a graph in F_n')
        elif not all(e.separation_holds for e in cert.evidence):
            check.fail('verdict does not follow from evidence')
    elif cert.verdict is Verdict.DGS_CERTIFIED_EXTENDED:
        if not gclass.in_F_n:
            check.fail('verdict needs a graph in F_n')
        elif not all(e.separation_holds or e.refutation is not None for e in cert.evidence):
            check.fail('verdict does not follow from evidence')
    elif cert.verdict is Verdict.NOT_DGS:
        _verify_counterexample(cert, g, gclass, check, max_isomorphism_order)
    elif cert.counterexample is not None:
        check.fail('counterexample attached to a verdict other than NOT_DGS')

    if not check.ok:
        log.warning('certificate for %s rejected: %s', g, '; '.join(check.discrepancies))
    return check


def _verify_evidence(cert, g, bundle, primes, check: CertificateCheck) -> None:
    claimed = {e.p: e for e in cert.evidence}
    if set(claimed) != set(primes):
        check.fail(f'evidence primes {sorted(claimed)} differ from odd primes of b {list(primes)}')
    for p in primes:
        e = claimed.get(p)
        if e is None:
            continue
        ctx = beta_lambda0(g, p, twins=bundle.twins)
        sep = check_separation(g, p, twins=bundle.twins, ctx=ctx)
        if e.lambda0 != sep.lambda0:
            check.fail(f'lambda0 mismatch at p={p}')
        if e.lambda1 != sep.lambda1:
            check.fail(f'lambda1 mismatch at p={p}')
        if e.separation_holds != sep.holds:
            check.fail(f'separation mismatch at p={p}')
            continue
        if sep.holds:
            if e.refutation is not None:
                check.fail(f'refutation given for separating prime p={p}')
            continue
        expected = refute_prime(g, p, twins=bundle.twins, ctx=ctx)
        if e.refutation != expected:
            check.fail(f'refutation mismatch at p={p}')


def _verify_counterexample(cert, g, gclass, check: CertificateCheck, max_order: int) -> None:
    ce = cert.counterexample
    if ce is None:
        check.fail('NOT_DGS without a counterexample')
        return
    h = ce.mate
    if h.n != g.n or not generalized_cospectral(g, h):
        check.fail('mate not generalized cospectral')
        return
    non_iso = mate_is_non_isomorphic(g, h, gclass, max_isomorphism_order=max_order)
    if non_iso is False:
        check.fail('mate is isomorphic')
    elif non_iso is None:
        check.fail('non-isomorphism of the mate cannot be confirmed')
    if ce.Q is not None:
        try:
            failures = regular_orthogonal_failures(ce.Q, g.adjacency_matrix(), h.adjacency_matrix())
        except DgsError as exc:
            failures = [str(exc)]
        for f in failures:
            check.fail(f'Q fails: {f}')
        if ce.level != level(ce.Q):
            check.fail('level mismatch')
    elif gclass.family is Family.CONTROLLABLE or gclass.almost_controllable:
        check.fail('Q missing for a graph with an orthogonal similarity')
    if ce.Q is not None and ce.level_divides_dn != level_divides_dn(g, gclass, level(ce.Q)):
        check.fail('level divides d_n mismatch')
