"""Unit tests for the in-memory run metrics adapter."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import cast

import pytest

from story_caption.adapters.output.metrics import InMemoryRunMetricsAdapter
from story_caption.domain.exceptions import InvalidInputError

SINGLE_SAMPLE_MS = 123.4567
FIRST_SAMPLE_MS = 10.0
SECOND_SAMPLE_MS = 20.0
THIRD_SAMPLE_MS = 30.0
THREAD_COUNT = 5
SAMPLES_PER_THREAD = 100
EXPECTED_TOTAL_SAMPLES = THREAD_COUNT * SAMPLES_PER_THREAD
CONCURRENT_SAMPLE_MS = 1.0


def test_metrics_adapter_records_items_per_command() -> None:
    """Accumulate processed items per command."""
    adapter = InMemoryRunMetricsAdapter()

    adapter.record_items("segment", 3)
    adapter.record_items("segment", 2)
    adapter.record_items("stitch", 1)

    assert adapter.snapshot().items == {"segment": 5, "stitch": 1}


def test_metrics_adapter_rejects_negative_item_count() -> None:
    """Raise a domain error for negative counts."""
    with pytest.raises(InvalidInputError):
        InMemoryRunMetricsAdapter().record_items("segment", -1)


def test_metrics_adapter_aggregates_multiple_latency_samples() -> None:
    """Aggregate latency samples per stage."""
    adapter = InMemoryRunMetricsAdapter()

    adapter.record_latency("nms", FIRST_SAMPLE_MS)
    adapter.record_latency("nms", SECOND_SAMPLE_MS)
    adapter.record_latency("nms", THIRD_SAMPLE_MS)

    stats = adapter.snapshot().latency_stats["nms"]
    assert stats.count == 3
    assert stats.total_ms == FIRST_SAMPLE_MS + SECOND_SAMPLE_MS + THIRD_SAMPLE_MS
    assert stats.min_ms == FIRST_SAMPLE_MS
    assert stats.max_ms == THIRD_SAMPLE_MS
    assert stats.avg_ms == SECOND_SAMPLE_MS
    assert stats.last_ms == THIRD_SAMPLE_MS


def test_metrics_adapter_timings_are_sorted_and_rounded() -> None:
    """Return manifest timings sorted by stage with millisecond precision."""
    adapter = InMemoryRunMetricsAdapter()

    adapter.record_latency("stitch", SINGLE_SAMPLE_MS)
    adapter.record_latency(" encode ", FIRST_SAMPLE_MS)

    timings = adapter.timings()
    assert list(timings) == ["encode", "stitch"]
    assert timings["stitch"] == {
        "count": 1,
        "total_ms": 123.457,
        "min_ms": 123.457,
        "max_ms": 123.457,
        "avg_ms": 123.457,
        "last_ms": 123.457,
    }


@pytest.mark.parametrize(
    ("stage", "elapsed_ms"),
    [
        ("", 5.0),
        ("   ", 5.0),
        ("segment", -1.0),
        ("segment", float("inf")),
        ("segment", float("nan")),
    ],
)
def test_metrics_adapter_rejects_invalid_latency_input(stage: str, elapsed_ms: float) -> None:
    """Raise a domain error when latency input is invalid."""
    with pytest.raises(InvalidInputError):
        InMemoryRunMetricsAdapter().record_latency(cast("str", stage), elapsed_ms)


def test_metrics_adapter_handles_concurrent_updates() -> None:
    """Keep consistent state during concurrent metric writes."""
    adapter = InMemoryRunMetricsAdapter()

    def _record_batch() -> None:
        for _ in range(SAMPLES_PER_THREAD):
            adapter.record_items("stitch", 1)
            adapter.record_latency("stitch", CONCURRENT_SAMPLE_MS)

    with ThreadPoolExecutor(max_workers=THREAD_COUNT) as executor:
        futures = [executor.submit(_record_batch) for _ in range(THREAD_COUNT)]
        for future in futures:
            future.result()

    snapshot = adapter.snapshot()
    assert snapshot.items["stitch"] == EXPECTED_TOTAL_SAMPLES
    stats = snapshot.latency_stats["stitch"]
    assert stats.count == EXPECTED_TOTAL_SAMPLES
    assert stats.total_ms == EXPECTED_TOTAL_SAMPLES * CONCURRENT_SAMPLE_MS
    assert stats.avg_ms == CONCURRENT_SAMPLE_MS
