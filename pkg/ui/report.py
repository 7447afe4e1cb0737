"""
Module: report.py
Description: Plain-text rendering of classification reports, verdict tables,
             census rows, orthogonal matrices, mate pairs and certificate
             checks.

ui/report.py - Text Reports

Every function returns a string; the caller decides where it goes. Output
carries no timestamps or addresses, so two runs on the same input print the
same bytes.
"""

from __future__ import annotations

from typing import Sequence

from core.exact_matrix import RatMatrix
from core.graph import Graph
from core.graph6 import emit_graph6
from engine.certificate import CertificateCheck
from engine.classifier import Family, GraphClass
from engine.decision_engine import DgsCertificate
from engine.orthogonal import RationalOrthogonalSolution


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

def format_vector(v: Sequence) -> str:
    return '(' + ', '.join(str(x) for x in v) + ')'


def format_matrix(m: RatMatrix, indent: str = '  ') -> str:
    """Right-aligned columns; rationals print as num/den."""
    cells = [[str(x) for x in row] for row in m.tolist()]
    if not cells:
        return indent + '[]'
    width = max(len(c) for row in cells for c in row)
    return '\n'.join(indent + ' '.join(c.rjust(width) for c in row) for row in cells)


def format_snf(factors: Sequence[int]) -> str:
    return 'diag' + format_vector(factors)


def render_classification(index: int, g: Graph, gclass: GraphClass,
                          xi: tuple[int, ...] | None) -> str:
    lines = [
        f'graph {index}: {emit_graph6(g)}  n={g.n} m={g.edge_count}',
        f'  family:          {gclass.family.value}',
        f'  rank over Q:     {gclass.rank_Q}',
        f'  rank over F_2:   {gclass.rank_2}',
        f'  SNF(W):          {format_snf(gclass.snf.invariant_factors)}',
    ]
    if gclass.twins is not None:
        t = gclass.twins
        kind = 'adjacent' if t.adjacent else 'non-adjacent'
        lines.append(f'  twins:           ({t.tau}, {t.tau_prime}) {kind}, lambda1={t.lambda1}')
    else:
        lines.append('  twins:           none')
    if xi is not None:
        lines.append(f'  xi:              {format_vector(xi)}')
    if gclass.family is Family.ALMOST_CONTROLLABLE_SYMMETRIC:
        member = 'yes' if gclass.in_F_n else 'no'
        lines.append(f'  in F_n:          {member}' + (f' (b={gclass.b})' if gclass.b is not None else ''))
        if gclass.in_F_n:
            lines.append(f'  in F_n*:         {"yes" if gclass.in_F_n_star else "no"}')
            lines.append(f'  odd primes of b: {format_vector(gclass.odd_primes)}')
    if gclass.controllable_criterion is not None:
        lines.append(f'  DGS by SNF(W):   {"yes" if gclass.controllable_criterion else "no"}')
    return '\n'.join(lines)


def render_verdict_table(rows: Sequence[tuple[int, DgsCertificate]]) -> str:
    header = f'{"#":>5}  {"graph6":<14} {"n":>3}  {"family":<31} {"verdict":<23} primes'
    out = [header, '-' * len(header)]
    for index, cert in rows:
        primes = ' '.join(_prime_tag(e) for e in cert.evidence) or '-'
        out.append(f'{index:>5}  {emit_graph6(cert.graph):<14} {cert.graph.n:>3}  '
                   f'{cert.family.value:<31} {cert.verdict.value:<23} {primes}')
    return '\n'.join(out)


def render_certificate(cert: DgsCertificate) -> str:
    lines = [f'verdict: {cert.verdict.value}', f'family:  {cert.family.value}',
             f'SNF(W):  {format_snf(cert.snf.invariant_factors)}']
    if cert.b is not None:
        lines.append(f'b:       {cert.b}')
    for e in cert.evidence:
        state = 'separates' if e.separation_holds else 'does not separate'
        lines.append(f'  p={e.p}: lambda0={e.lambda0} lambda1={e.lambda1} {state}')
        if e.refutation is not None:
            lines.append(f'    refuted by {e.refutation.condition} (qr value {e.refutation.qr_value})')
    ce = cert.counterexample
    if ce is not None:
        lines.append(f'mate:    {emit_graph6(ce.mate)}')
        if ce.level is not None:
            lines.append(f'level:   {ce.level}')
        if ce.Q is not None:
            lines.append('Q:')
            lines.append(format_matrix(ce.Q))
    lines.extend(f'note:    {note}' for note in cert.notes)
    return '\n'.join(lines)


def render_census(row) -> str:
    return (f'n={row.n}  total={row.total_graphs}  H_n={row.h_n}  '
            f'H_n asymmetric={row.h_n_asym}  H_n symmetric={row.h_n_sym}')


def render_q_matrices(sol: RationalOrthogonalSolution) -> str:
    return '\n'.join([
        f'Q_0 (level {sol.level0}):',
        format_matrix(sol.Q0),
        f'Q_1 (level {sol.level1}):',
        format_matrix(sol.Q1),
        f'levels: {format_vector(sol.levels)}',
    ])


def render_mate_pairs(pairs) -> str:
    if not pairs:
        return 'no generalized cospectral non-isomorphic pairs'
    out = []
    for pair in pairs:
        line = f'{pair.first} {emit_graph6(pair.g)}  ~  {pair.second} {emit_graph6(pair.h)}'
        if pair.levels is not None:
            line += f'  levels {format_vector(pair.levels)}'
        out.append(line)
    return '\n'.join(out)


def render_check(check: CertificateCheck) -> str:
    if check.ok:
        return 'certificate verified'
    return 'certificate rejected:\n' + '\n'.join(f'  - {d}' for d in check.discrepancies)


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _prime_tag(e) -> str:
    if e.separation_holds:
        return f'{e.p}:sep'
    return f'{e.p}:refuted' if e.refutation is not None else f'{e.p}:open'
