"""In-memory run metrics adapter."""

from .adapter import InMemoryRunMetricsAdapter, LatencyStatsSnapshot, RunMetricsSnapshot

__all__ = ["InMemoryRunMetricsAdapter", "LatencyStatsSnapshot", "RunMetricsSnapshot"]
