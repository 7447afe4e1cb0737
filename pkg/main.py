"""
Module: main.py
Description: Command-line entry point for walkdgs: decides whether graphs
             are determined by their generalized spectrum and prints the
             evidence.

walkdgs - Generalized Spectral Characterization Toolkit

Subcommands
-----------
classify     family, ranks, SNF(W), twins and xi for each graph
check-dgs    verdict and "dgs-cert/1" certificate for each graph
census       almost controllable counts for an order (<= 6) or a corpus
q-matrix     both rational orthogonal matrices for a cospectral pair
mate-scan    generalized cospectral, non-isomorphic pairs in a corpus
verify-cert  re-check a certificate file

Usage
-----
  python main.py classify --matrix "01000;10100;01011;00101;00110"
  python main.py check-dgs --corpus graphs.g6 --mate-corpus mates.g6
  python main.py census 6
  python main.py census --corpus order7.g6 --jobs 4

Exit codes: 0 success, 1 usage/parse/domain errors and rejected
certificates, 2 internal invariant violations.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from core.errors import DgsError, InvariantViolationError  # noqa: E402
from core.graph6 import parse_graph6  # noqa: E402
from utils.config import DEFAULT_CONFIG_PATH, Config  # noqa: E402
from utils.logger import configure_logging, get_logger  # noqa: E402

log = get_logger('main')

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVARIANT = 2


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1, like every other input error."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--config', default=None, help='JSON settings file')
    common.add_argument('--log-level', default=None, help='DEBUG, INFO, WARNING, ...')
    common.add_argument('--jobs', type=int, default=None, help='worker processes for corpus scans')
    common.add_argument('--json', action='store_true', help='machine-readable output')
    common.add_argument('--no-timestamp', action='store_true', help='omit generated_at from certificates')

    parser = _Parser(prog='walkdgs', description=__doc__.split('\n\n')[1].strip())
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('classify', parents=[common], help='classify graphs')
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument('--corpus', help='graph6 file')
    src.add_argument('--matrix', help='inline adjacency, rows of 0/1 separated by ";"')

    p = sub.add_parser('check-dgs', parents=[common], help='decide DGS and write certificates')
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument('--corpus', help='graph6 file')
    src.add_argument('--matrix', help='inline adjacency, rows of 0/1 separated by ";"')
    p.add_argument('--mate-corpus', help='graph6 file searched for generalized cospectral mates')
    p.add_argument('--output-dir', help='certificate directory (default from settings)')
    p.add_argument('--no-write', action='store_true', help='do not write certificate files')

    p = sub.add_parser('census', parents=[common], help='count almost controllable graphs')
    p.add_argument('n', type=int, nargs='?', help='order for the built-in catalogue')
    p.add_argument('--corpus', help='isomorph-free graph6 file of one order')

    p = sub.add_parser('q-matrix', parents=[common], help='orthogonal matrices of a cospectral pair')
    p.add_argument('g', help='graph6 of the almost controllable graph')
    p.add_argument('h', help='graph6 of its generalized cospectral mate')

    p = sub.add_parser('mate-scan', parents=[common], help='cospectral non-isomorphic pairs')
    p.add_argument('--corpus', required=True, help='graph6 file of one order')

    p = sub.add_parser('verify-cert', parents=[common], help='verify a certificate file')
    p.add_argument('certificate', help='"dgs-cert/1" JSON file')
    p.add_argument('--graph', help='graph6 to verify against (default: the embedded graph)')
    return parser


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def _graphs_from(args) -> tuple[list, str]:
    from ui.commands import load_graphs, parse_inline_matrix
    if getattr(args, 'matrix', None):
        return [parse_inline_matrix(args.matrix)], 'inline'
    return load_graphs(args.corpus), Path(args.corpus).stem


def run(args, config: Config) -> int:
    from ui import commands

    jobs = config.get('runner.jobs')
    iso_order = config.get('oracle.max_isomorphism_order')
    enum_order = config.get('oracle.max_enumeration_order')
    factor_kw = dict(trial_bound=config.get('factorization.trial_division_bound'),
                     rho_seed=config.get('factorization.rho_seed'))

    if args.command == 'classify':
        graphs, _ = _graphs_from(args)
        commands.cmd_classify(graphs, jobs=jobs, **factor_kw)
        return EXIT_OK

    if args.command == 'check-dgs':
        graphs, stem = _graphs_from(args)
        mates = commands.load_graphs(args.mate_corpus) if args.mate_corpus else None
        output_dir = None if args.no_write else (args.output_dir or config.get('certificates.output_dir'))
        commands.cmd_check_dgs(
            graphs,
            mate_corpus=mates,
            output_dir=output_dir,
            stem=stem,
            timestamp=config.get('certificates.timestamp'),
            as_json=args.json,
            jobs=jobs,
            enumerate_mates=config.get('search.enumerate_mates'),
            max_enumeration_order=enum_order,
            max_isomorphism_order=iso_order,
            **factor_kw,
        )
        return EXIT_OK

    if args.command == 'census':
        corpus = commands.load_graphs(args.corpus) if args.corpus else None
        commands.cmd_census(args.n, corpus, jobs=jobs, max_enumeration_order=enum_order,
                            as_json=args.json)
        return EXIT_OK

    if args.command == 'q-matrix':
        commands.cmd_q_matrix(parse_graph6(args.g), parse_graph6(args.h))
        return EXIT_OK

    if args.command == 'mate-scan':
        commands.cmd_mate_scan(commands.load_graphs(args.corpus), max_isomorphism_order=iso_order)
        return EXIT_OK

    if args.command == 'verify-cert':
        graph = parse_graph6(args.graph) if args.graph else None
        check = commands.cmd_verify_cert(args.certificate, graph, max_isomorphism_order=iso_order)
        return EXIT_OK if check else EXIT_ERROR

    raise AssertionError(f'unhandled command {args.command!r}')


def _apply_overrides(args, config: Config) -> None:
    """Command-line flags win over the settings file."""
    if args.log_level:
        config.set('logging.level', args.log_level)
    if args.jobs is not None:
        config.set('runner.jobs', args.jobs)
    if args.no_timestamp:
        config.set('certificates.timestamp', False)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = Config(args.config if args.config else DEFAULT_CONFIG_PATH)
    _apply_overrides(args, config)
    configure_logging(config.get('logging.level'), config.get('logging.file'))

    try:
        return run(args, config)
    except InvariantViolationError as exc:
        log.error('internal invariant violated: %s', exc)
        print(f'error: internal invariant violated: {exc}', file=sys.stderr)
        return EXIT_INVARIANT
    except (DgsError, OSError) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_ERROR


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

if __name__ == '__main__':
    sys.exit(main())
