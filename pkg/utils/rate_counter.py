"""
Module: rate_counter.py
Description: Rolling-window throughput counter for corpus scans; reports
             graphs per second over the last N processed items.

utils/rate_counter.py - Throughput Monitor
"""

from __future__ import annotations

import time
from collections import deque


class RateCounter:
    """Rolling-average items-per-second counter."""

    def __init__(self, window: int = 50, clock=time.perf_counter):
        self._clock = clock
        self._timestamps: deque[float] = deque(maxlen=window)
        self._rate: float = 0.0
        self._count: int = 0

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    def update(self) -> None:
        """Record one processed item and recalculate the rate."""
        self._timestamps.append(self._clock())
        self._count += 1

        if len(self._timestamps) >= 2:
            elapsed = self._timestamps[-1] - self._timestamps[0]
            self._rate = (len(self._timestamps) - 1) / elapsed if elapsed > 0 else 0.0

    @property
    def rate(self) -> float:
        """Current items-per-second value."""
        return self._rate

    @property
    def count(self) -> int:
        return self._count
