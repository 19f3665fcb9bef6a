"""Summaries returned by the subcommand use cases."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from pathlib import Path

    from story_caption.domain.value_objects import ActionWindow, EvaluationReport, SweepReport


@dataclass(frozen=True)
class TrainSummary:
    """Outcome of model training."""

    clips: int
    classes: tuple[str, ...]
    pca_dim: int
    gmm_components: int
    output_dir: Path


@dataclass(frozen=True)
class SegmentSummary:
    """Outcome of segmentation."""

    videos: int
    avg_segments: float
    fallback_videos: tuple[str, ...]
    output_dir: Path

    def to_dict(self) -> dict[str, object]:
        """Return the ``summary.json`` payload."""
        return {"videos": self.videos, "avg_segments": self.avg_segments, "fallback_videos": list(self.fallback_videos)}


@dataclass(frozen=True)
class BankSummary:
    """Outcome of connective-bank construction."""

    pairs: int
    instances: int
    connectives: dict[str, int]
    bank_path: Path


@dataclass(frozen=True)
class StitchSummary:
    """Outcome of caption stitching."""

    videos: int
    avg_length: float
    skipped_videos: tuple[str, ...]
    output_dir: Path

    def to_dict(self) -> dict[str, object]:
        """Return the ``summary.json`` payload."""
        return {"videos": self.videos, "avg_length": self.avg_length, "skipped_videos": list(self.skipped_videos)}


@dataclass(frozen=True)
class EvaluationSummary:
    """Outcome of caption evaluation."""

    reports: tuple[EvaluationReport, ...]
    output_dir: Path


@dataclass(frozen=True)
class SweepSummary:
    """Outcome of a threshold sweep."""

    report: SweepReport
    output_dir: Path
    files: tuple[Path, ...] = field(default=())


@dataclass(frozen=True)
class WindowScore:
    """One class score of one precomputed window."""

    video_id: str
    start_frame: int
    end_frame: int
    class_id: str
    score: float


@dataclass(frozen=True)
class VideoWindows:
    """Scored argmax windows of one video with its frame range."""

    video_id: str
    start_frame: int
    end_frame: int
    windows: tuple[ActionWindow, ...]
