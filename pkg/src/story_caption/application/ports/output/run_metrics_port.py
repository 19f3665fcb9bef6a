"""Run metrics port contract."""

from __future__ import annotations

from typing import Protocol


class RunMetricsPort(Protocol):
    """Observability interface for pipeline runs."""

    def record_items(self, command: str, count: int) -> None:
        """Record processed work items for a command."""

    def record_latency(self, stage: str, elapsed_ms: float) -> None:
        """Record latency of one pipeline stage."""

    def timings(self) -> dict[str, dict[str, float]]:
        """Return latency statistics per stage."""
