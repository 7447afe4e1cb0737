"""
Module: corpus_runner.py
Description: Ordered fan-out/fan-in of a per-graph task over a corpus, in
             process or on a process pool.

ui/corpus_runner.py - Corpus Runner

Every task is a picklable module-level callable applied to one item. Results
come back in input order whatever the completion order, so the output of a
command does not depend on --jobs. Throughput is logged through RateCounter.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

from core.errors import ArgumentError
from utils.logger import get_logger
from utils.rate_counter import RateCounter

log = get_logger(__name__)

T = TypeVar('T')
R = TypeVar('R')

PROGRESS_EVERY = 100


class CorpusRunner:
    """Applies a task to every item of a corpus, preserving input order."""

    def __init__(self, jobs: int = 1, *, label: str = 'graphs') -> None:
        if jobs < 1:
            raise ArgumentError(f'--jobs must be at least 1, got {jobs}')
        self.jobs = jobs
        self.label = label
        self.rate = RateCounter()

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    def map(self, task: Callable[[T], R], items: Iterable[T]) -> list[R]:
        items = list(items)
        if self.jobs == 1 or len(items) < 2:
            results = self._collect(map(task, items), len(items))
        else:
            workers = min(self.jobs, len(items))
            chunk = max(1, len(items) // (4 * workers))
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = self._collect(pool.map(task, items, chunksize=chunk), len(items))
        if items:
            log.info('%d %s processed (%.1f/s)', len(items), self.label, self.rate.rate)
        return results

    # ------------------------------------------------------------------
    # Internal helpers
    # ------------------------------------------------------------------

    def _collect(self, stream: Iterable[R], total: int) -> list[R]:
        out: list[R] = []
        for result in stream:
            out.append(result)
            self.rate.update()
            if self.rate.count % PROGRESS_EVERY == 0:
                log.info('%d/%d %s (%.1f/s)', self.rate.count, total, self.label, self.rate.rate)
        return out
