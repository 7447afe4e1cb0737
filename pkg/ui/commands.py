"""
Module: commands.py
Description: The command operations behind main.py: classify, check-dgs,
             census, q-matrix, mate-scan and verify-cert.

ui/commands.py - Command Layer

Each cmd_* function takes parsed inputs, does the work through the engine
packages and returns a structured result; the text goes to the stream
passed as out. Per-graph work is fanned out through CorpusRunner with
module-level tasks so it can run on a process pool.
"""

from __future__ import annotations

import json
import re
import sys
from dataclasses import asdict, dataclass
from functools import partial
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from core.errors import ArgumentError, GraphError, ScaleError
from core.enumeration import MAX_ENUMERATION_ORDER, enumerate_all_graphs
from core.graph import MAX_ISOMORPHISM_ORDER, Graph, is_isomorphic, spectral_key
from core.graph6 import read_graph6_file
from core.number_theory import RHO_SEED, TRIAL_DIVISION_BOUND
from engine.certificate import (
    CertificateCheck,
    read_certificate,
    to_document,
    verify_certificate,
    write_certificate,
)
from engine.classifier import Family, GraphClass, classify
from engine.decision_engine import DgsCertificate, decide_dgs
from engine.orthogonal import RationalOrthogonalSolution, orthogonal_solutions
from engine.walk import WalkBundle
from ui import report
from ui.corpus_runner import CorpusRunner
from utils.logger import get_logger

log = get_logger(__name__)

_INLINE_ROW = re.compile(r'^[01]+$')


@dataclass(frozen=True)
class CensusRow:
    n: int
    total_graphs: int
    h_n: int
    h_n_asym: int
    h_n_sym: int


@dataclass(frozen=True)
class ClassifiedGraph:
    index: int
    graph: Graph
    gclass: GraphClass
    xi: tuple[int, ...] | None


@dataclass(frozen=True)
class MatePair:
    """Generalized cospectral, non-isomorphic; first/second are 1-based corpus positions."""

    first: int
    second: int
    g: Graph
    h: Graph
    levels: tuple[int, int] | None


# ---------------------------------------------------------------------------
# Input
# ---------------------------------------------------------------------------

def parse_inline_matrix(text: str) -> Graph:
    """Rows of 0/1 separated by ';', e.g. "010;101;010"."""
    rows = [r.replace(' ', '').replace(',', '') for r in text.strip().strip(';').split(';')]
    if not rows or not all(rows):
        raise GraphError(f'empty row in inline matrix {text!r}')
    for k, r in enumerate(rows, start=1):
        if not _INLINE_ROW.match(r):
            raise GraphError(f'row {k} of inline matrix is {r!r}; expected only 0 and 1')
    return Graph.from_adjacency([[int(c) for c in r] for r in rows])


def load_graphs(path: str | Path) -> list[Graph]:
    return [g for _, g in read_graph6_file(path)]


def _single_order(graphs: Sequence[Graph]) -> int:
    orders = sorted({g.n for g in graphs})
    if len(orders) > 1:
        raise ArgumentError(f'corpus mixes orders {orders}')
    return orders[0]


# ---------------------------------------------------------------------------
# Per-graph tasks (module level so they pickle)
# ---------------------------------------------------------------------------

def _classify_task(g: Graph, trial_bound: int, rho_seed: int) -> tuple[GraphClass, tuple[int, ...] | None]:
    bundle = WalkBundle.from_graph(g)
    return classify(g, bundle, trial_bound=trial_bound, rho_seed=rho_seed), bundle.xi


def _decide_task(g: Graph, options: dict) -> DgsCertificate:
    return decide_dgs(g, **options)


def _family_task(g: Graph) -> Family:
    bundle = WalkBundle.from_graph(g)
    return classify(g, bundle).family if bundle.almost_controllable else Family.OTHER


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_classify(graphs: Sequence[Graph], *, jobs: int = 1,
                 trial_bound: int = TRIAL_DIVISION_BOUND, rho_seed: int = RHO_SEED,
                 out: TextIO | None = None) -> list[ClassifiedGraph]:
    task = partial(_classify_task, trial_bound=trial_bound, rho_seed=rho_seed)
    results = CorpusRunner(jobs).map(task, graphs)
    classified = [ClassifiedGraph(index=k, graph=g, gclass=gc, xi=xi)
                  for k, (g, (gc, xi)) in enumerate(zip(graphs, results), start=1)]
    for c in classified:
        print(report.render_classification(c.index, c.graph, c.gclass, c.xi), file=out or sys.stdout)
    return classified


def cmd_check_dgs(graphs: Sequence[Graph], *,
                  mate_corpus: Iterable[Graph] | None = None,
                  output_dir: str | Path | None = None,
                  stem: str = 'graph',
                  timestamp: bool = True,
                  as_json: bool = False,
                  jobs: int = 1,
                  enumerate_mates: bool = True,
                  max_enumeration_order: int = MAX_ENUMERATION_ORDER,
                  max_isomorphism_order: int = MAX_ISOMORPHISM_ORDER,
                  trial_bound: int = TRIAL_DIVISION_BOUND,
                  rho_seed: int = RHO_SEED,
                  out: TextIO | None = None) -> list[DgsCertificate]:
    """decide_dgs for every graph; one certificate file per graph when output_dir is set."""
    options = dict(
        mate_corpus=tuple(mate_corpus or ()),
        enumerate_mates=enumerate_mates,
        max_enumeration_order=max_enumeration_order,
        max_isomorphism_order=max_isomorphism_order,
        trial_bound=trial_bound,
        rho_seed=rho_seed,
    )
    certs = CorpusRunner(jobs).map(partial(_decide_task, options=options), graphs)

    if output_dir is not None:
        for k, cert in enumerate(certs, start=1):
            path = write_certificate(Path(output_dir) / f'{stem}-{k:04d}.json', cert, timestamp=timestamp)
            log.info('wrote %s', path)

    if as_json:
        docs = [to_document(c, timestamp=timestamp) for c in certs]
        print(json.dumps(docs, indent=2), file=out or sys.stdout)
    else:
        print(report.render_verdict_table(list(enumerate(certs, start=1))), file=out or sys.stdout)
        if len(certs) == 1:
            print('\n' + report.render_certificate(certs[0]), file=out or sys.stdout)
    return certs


def cmd_census(n: int | None = None, corpus: Sequence[Graph] | None = None, *,
               jobs: int = 1, max_enumeration_order: int = MAX_ENUMERATION_ORDER,
               as_json: bool = False, out: TextIO | None = None) -> CensusRow:
    """Counts of all graphs and of almost controllable graphs by twin symmetry.

    The corpus is taken to be isomorph-free; without one the built-in
    catalogue is used, which stops at max_enumeration_order.
    """
    if corpus is not None:
        graphs = list(corpus)
        if not graphs:
            raise ArgumentError('census corpus is empty')
        order = _single_order(graphs)
        if n is not None and n != order:
            raise ArgumentError(f'corpus has order {order}, census asked for n={n}')
    elif n is None:
        raise ArgumentError('census needs an order or a corpus')
    else:
        if n > max_enumeration_order:
            raise ScaleError(f'census for n={n} needs a graph6 corpus (--corpus)')
        order = n
        graphs = enumerate_all_graphs(n, max_order=max_enumeration_order)

    families = CorpusRunner(jobs).map(_family_task, graphs)
    asym = sum(f is Family.ALMOST_CONTROLLABLE_ASYMMETRIC for f in families)
    sym = sum(f is Family.ALMOST_CONTROLLABLE_SYMMETRIC for f in families)
    row = CensusRow(n=order, total_graphs=len(graphs), h_n=asym + sym, h_n_asym=asym, h_n_sym=sym)
    if as_json:
        print(json.dumps(asdict(row)), file=out or sys.stdout)
    else:
        print(report.render_census(row), file=out or sys.stdout)
    return row


def cmd_q_matrix(g: Graph, h: Graph, *, out: TextIO | None = None) -> RationalOrthogonalSolution:
    """Both orthogonal solutions for an almost controllable g and a mate h."""
    sol = orthogonal_solutions(g, h)
    print(report.render_q_matrices(sol), file=out or sys.stdout)
    return sol


def cmd_mate_scan(graphs: Sequence[Graph], *,
                  max_isomorphism_order: int = MAX_ISOMORPHISM_ORDER,
                  out: TextIO | None = None) -> list[MatePair]:
    """Every unordered generalized cospectral, non-isomorphic pair of the corpus."""
    if not graphs:
        print(report.render_mate_pairs([]), file=out or sys.stdout)
        return []
    order = _single_order(graphs)
    if order > max_isomorphism_order:
        raise ScaleError(f'mate scan needs the isomorphism oracle, bounded to n <= {max_isomorphism_order}')

    buckets: dict[tuple, list[int]] = {}
    for k, g in enumerate(graphs):
        buckets.setdefault(spectral_key(g), []).append(k)

    pairs = []
    for members in buckets.values():
        for a, i in enumerate(members):
            for j in members[a + 1:]:
                g, h = graphs[i], graphs[j]
                if is_isomorphic(g, h, max_order=max_isomorphism_order) is not None:
                    continue
                levels = None
                if WalkBundle.from_graph(g).almost_controllable:
                    levels = orthogonal_solutions(g, h).levels
                pairs.append(MatePair(first=i + 1, second=j + 1, g=g, h=h, levels=levels))
    pairs.sort(key=lambda p: (p.first, p.second))
    print(report.render_mate_pairs(pairs), file=out or sys.stdout)
    return pairs


def cmd_verify_cert(path: str | Path, graph: Graph | None = None, *,
                    max_isomorphism_order: int = MAX_ISOMORPHISM_ORDER,
                    out: TextIO | None = None) -> CertificateCheck:
    """Verify a certificate file against graph, or against the graph it embeds."""
    cert = read_certificate(path)
    check = verify_certificate(cert, cert.graph if graph is None else graph,
                               max_isomorphism_order=max_isomorphism_order)
    print(report.render_check(check), file=out or sys.stdout)
    return check
