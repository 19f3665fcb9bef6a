"""In-memory run metrics adapter."""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from story_caption.application.ports.output import RunMetricsPort
from story_caption.domain.exceptions import InvalidInputError

if TYPE_CHECKING:
    from _thread import LockType

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class LatencyStatsSnapshot:
    """Aggregated latency statistics for one stage."""

    count: int
    total_ms: float
    min_ms: float
    max_ms: float
    avg_ms: float
    last_ms: float

    def to_dict(self) -> dict[str, float]:
        """Return the statistics rounded for the run manifest."""
        return {
            "count": self.count,
            "total_ms": round(self.total_ms, 3),
            "min_ms": round(self.min_ms, 3),
            "max_ms": round(self.max_ms, 3),
            "avg_ms": round(self.avg_ms, 3),
            "last_ms": round(self.last_ms, 3),
        }


@dataclass(frozen=True)
class RunMetricsSnapshot:
    """Snapshot of collected run metrics."""

    items: dict[str, int]
    latency_stats: dict[str, LatencyStatsSnapshot]


@dataclass
class _LatencyAccumulator:
    count: int = 0
    total_ms: float = 0.0
    min_ms: float = field(default_factory=lambda: math.inf)
    max_ms: float = field(default_factory=lambda: -math.inf)
    last_ms: float = 0.0

    def add_sample(self, elapsed_ms: float) -> None:
        self.count += 1
        self.total_ms += elapsed_ms
        self.min_ms = min(self.min_ms, elapsed_ms)
        self.max_ms = max(self.max_ms, elapsed_ms)
        self.last_ms = elapsed_ms

    def to_snapshot(self) -> LatencyStatsSnapshot:
        return LatencyStatsSnapshot(
            count=self.count,
            total_ms=self.total_ms,
            min_ms=self.min_ms,
            max_ms=self.max_ms,
            avg_ms=self.total_ms / self.count,
            last_ms=self.last_ms,
        )


@dataclass
class InMemoryRunMetricsAdapter(RunMetricsPort):
    """Collect per-stage timings and item counts of one run."""

    _lock: LockType = field(default_factory=threading.Lock, init=False, repr=False)
    items: dict[str, int] = field(default_factory=dict)
    _latency_stats: dict[str, _LatencyAccumulator] = field(default_factory=dict, init=False, repr=False)

    def record_items(self, command: str, count: int) -> None:
        """Add ``count`` processed items to a command's total."""
        if count < 0:
            msg = "Item count must be non-negative"
            raise InvalidInputError(msg)
        with self._lock:
            total = self.items.get(command, 0) + count
            self.items[command] = total
        LOGGER.info("Items processed", extra={"component": self.__class__.__name__, "command": command, "items": total})

    def record_latency(self, stage: str, elapsed_ms: float) -> None:
        """Record the duration of one pipeline stage."""
        normalized_stage = stage.strip()
        if not normalized_stage:
            msg = "Stage name must be a non-empty string"
            raise InvalidInputError(msg)
        if elapsed_ms < 0 or not math.isfinite(elapsed_ms):
            msg = "Elapsed latency must be a finite, non-negative number"
            raise InvalidInputError(msg)

        with self._lock:
            accumulator = self._latency_stats.setdefault(normalized_stage, _LatencyAccumulator())
            accumulator.add_sample(elapsed_ms)
            sample_count = accumulator.count

        LOGGER.debug(
            "Stage latency recorded",
            extra={
                "component": self.__class__.__name__,
                "stage": normalized_stage,
                "elapsed_ms": round(elapsed_ms, 2),
                "sample_count": sample_count,
            },
        )

    def timings(self) -> dict[str, dict[str, float]]:
        """Return latency statistics per stage, sorted by stage name."""
        with self._lock:
            return {stage: self._latency_stats[stage].to_snapshot().to_dict() for stage in sorted(self._latency_stats)}

    def snapshot(self) -> RunMetricsSnapshot:
        """Return a snapshot of stored metrics."""
        with self._lock:
            return RunMetricsSnapshot(
                items=dict(self.items),
                latency_stats={stage: stats.to_snapshot() for stage, stats in self._latency_stats.items()},
            )
