"""Run manifest assembly and stage timing."""

from __future__ import annotations

import hashlib
import json
import time
from contextlib import contextmanager
from datetime import UTC, datetime
from importlib.metadata import PackageNotFoundError, version
from typing import TYPE_CHECKING

from story_caption.application.dtos import RunManifest

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping
    from pathlib import Path

    from story_caption.application.dtos import PipelineConfig
    from story_caption.application.ports.output import ArtifactStorePort, RunMetricsPort

TRACKED_DISTRIBUTIONS = ("story-caption", "numpy", "scikit-learn", "nltk")


def utc_now() -> str:
    """Return the current UTC time in ISO 8601."""
    return datetime.now(tz=UTC).isoformat()


def config_hash(config: PipelineConfig) -> str:
    """Hash the canonical JSON form of the output-relevant configuration."""
    canonical = json.dumps(config.to_canonical_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def artifact_versions() -> dict[str, str]:
    """Return installed versions of the packages that shape outputs."""
    versions = {}
    for name in TRACKED_DISTRIBUTIONS:
        try:
            versions[name] = version(name)
        except PackageNotFoundError:
            versions[name] = "unknown"
    return versions


@contextmanager
def stage_timer(metrics: RunMetricsPort | None, stage: str) -> Iterator[None]:
    """Record the wall-clock duration of a block as a stage latency."""
    started = time.perf_counter()
    try:
        yield
    finally:
        if metrics is not None:
            metrics.record_latency(stage, (time.perf_counter() - started) * 1000.0)


def build_manifest(
    *,
    command: str,
    config: PipelineConfig,
    inputs: Mapping[str, Path],
    store: ArtifactStorePort,
    started_at: str,
    metrics: RunMetricsPort | None = None,
) -> RunManifest:
    """Assemble the manifest of a finished run."""
    digests: dict[str, str] = {}
    for name, path in sorted(inputs.items()):
        for relative, digest in store.digest(path).items():
            key = name if not relative else f"{name}/{relative}"
            digests[key] = digest
    return RunManifest(
        command=command,
        config_hash=config_hash(config),
        input_digests=digests,
        artifact_versions=artifact_versions(),
        started_at=started_at,
        finished_at=utc_now(),
        score_threshold=config.score_threshold,
        profile=str(config.profile),
        seed=config.seed,
        timings=metrics.timings() if metrics is not None else {},
    )
