"""
Module: graph6.py
Description: graph6 short-form codec (n <= 62) and a line-oriented corpus
             reader that skips '#' comments and blank lines.

core/graph6.py - graph6 I/O

Layout: one size byte chr(n + 63), then the upper triangle read column by
column (x(0,1), x(0,2), x(1,2), x(0,3), ...) packed six bits per byte, most
significant bit first, each byte offset by 63. Padding bits must be zero.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from core.errors import Graph6Error
from core.graph import Graph
from utils.logger import get_logger

log = get_logger(__name__)

HEADER = '>>graph6<<'
MAX_SHORT_FORM_ORDER = 62


def parse_graph6(text: str) -> Graph:
    line = text.rstrip('\r\n')
    base = 0
    if line.startswith(HEADER):
        base = len(HEADER)
        line = line[base:]
    if not line:
        raise Graph6Error('empty graph6 string', offset=base)

    for k, ch in enumerate(line):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f'byte {ch!r} is outside the graph6 range 63..126', offset=base + k)

    if line[0] == '~':
        raise Graph6Error('long-form graph6 (n > 62) is not supported', offset=base)
    n = ord(line[0]) - 63
    if n == 0:
        raise Graph6Error('graph6 string encodes a graph with no vertices', offset=base)

    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = line[1:]
    if len(body) < nbytes:
        raise Graph6Error(f'truncated: n={n} needs {nbytes} data bytes, got {len(body)}',
                          offset=base + len(line))
    if len(body) > nbytes:
        raise Graph6Error(f'trailing data: n={n} needs {nbytes} data bytes, got {len(body)}',
                          offset=base + 1 + nbytes)

    bits = []
    for ch in body:
        v = ord(ch) - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error('nonzero padding bits', offset=base + len(line) - 1)

    masks = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            k += 1
    return Graph(n, tuple(masks))


def emit_graph6(g: Graph) -> str:
    if g.n > MAX_SHORT_FORM_ORDER:
        raise Graph6Error(f'n={g.n} needs the long form, which is not supported')
    bits = [int(g.has_edge(i, j)) for j in range(1, g.n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = v << 1 | b
        out.append(chr(v + 63))
    return ''.join(out)


def iter_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph]]:
    """Yield (1-based line number, graph), skipping blanks and '#' comments."""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        try:
            yield lineno, parse_graph6(line)
        except Graph6Error as exc:
            raise exc.at_line(lineno) from exc


def read_graph6_file(path: str | Path) -> list[tuple[int, Graph]]:
    with open(path, 'r', encoding='ascii', errors='replace') as fh:
        graphs = list(iter_graph6_lines(fh))
    log.debug('read %d graphs from %s', len(graphs), path)
    return graphs
