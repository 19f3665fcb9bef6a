"""Temporal windows, segments and segmentation results."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from story_caption.domain.exceptions import InvalidConfigurationError, InvalidInputError

DEFAULT_WINDOW_LENGTHS = (30, 60, 90, 120)
DEFAULT_STRIDE = 30
DEFAULT_NMS_IOU = 0.2
DEFAULT_SCORE_THRESHOLD = -0.5


@dataclass(frozen=True)
class SlidingWindowConfig:
    """Sliding-window, suppression and threshold settings."""

    lengths: tuple[int, ...] = DEFAULT_WINDOW_LENGTHS
    stride: int = DEFAULT_STRIDE
    nms_iou: float = DEFAULT_NMS_IOU
    score_threshold: float = DEFAULT_SCORE_THRESHOLD
    cross_class_nms: bool = False

    def __post_init__(self) -> None:
        """Validate window geometry and thresholds."""
        object.__setattr__(self, "lengths", tuple(self.lengths))
        if self.stride <= 0:
            msg = f"Stride must be positive, got {self.stride}"
            raise InvalidConfigurationError(msg)
        if not self.lengths:
            msg = "At least one window length is required"
            raise InvalidConfigurationError(msg)
        for length in self.lengths:
            if length <= 0 or length % self.stride:
                msg = f"Window length {length} must be a positive multiple of stride {self.stride}"
                raise InvalidConfigurationError(msg)
        if not 0.0 <= self.nms_iou <= 1.0:
            msg = f"NMS IoU threshold must be in [0, 1], got {self.nms_iou}"
            raise InvalidConfigurationError(msg)
        if not math.isfinite(self.score_threshold):
            msg = "Score threshold must be finite"
            raise InvalidConfigurationError(msg)

    def with_threshold(self, score_threshold: float) -> SlidingWindowConfig:
        """Return a copy using another score threshold."""
        return SlidingWindowConfig(
            lengths=self.lengths,
            stride=self.stride,
            nms_iou=self.nms_iou,
            score_threshold=score_threshold,
            cross_class_nms=self.cross_class_nms,
        )


@dataclass(frozen=True)
class ActionWindow:
    """Scored half-open frame interval ``[start_frame, end_frame)`` carrying one class."""

    start_frame: int
    end_frame: int
    class_id: str
    score: float
    class_index: int = 0

    def __post_init__(self) -> None:
        """Validate interval bounds."""
        if self.start_frame < 0 or self.start_frame >= self.end_frame:
            msg = f"Window [{self.start_frame}, {self.end_frame}) is empty or negative"
            raise InvalidInputError(msg)
        if not math.isfinite(self.score):
            msg = f"Window [{self.start_frame}, {self.end_frame}) has a non-finite score"
            raise InvalidInputError(msg)

    @property
    def length(self) -> int:
        """Return the number of frames covered."""
        return self.end_frame - self.start_frame


@dataclass(frozen=True)
class Segment:
    """Merged run of adjacent same-class windows."""

    start_frame: int
    end_frame: int
    class_id: str | None
    source_windows: tuple[ActionWindow, ...] = field(default=())
    keyframe: int = field(init=False)

    def __post_init__(self) -> None:
        """Derive the midpoint keyframe."""
        if self.start_frame >= self.end_frame:
            msg = f"Segment [{self.start_frame}, {self.end_frame}) is empty"
            raise InvalidInputError(msg)
        object.__setattr__(self, "source_windows", tuple(self.source_windows))
        object.__setattr__(self, "keyframe", (self.start_frame + self.end_frame) // 2)


@dataclass(frozen=True)
class SegmentationResult:
    """Segments of one video, or the whole-video fallback."""

    video_id: str
    segments: tuple[Segment, ...]
    fallback_used: bool = False

    def __post_init__(self) -> None:
        """Check ordering, non-overlap and fallback shape."""
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            msg = f"Segmentation of {self.video_id} has no segment"
            raise InvalidInputError(msg)
        for previous, current in zip(self.segments, self.segments[1:], strict=False):
            if current.start_frame < previous.end_frame:
                msg = f"Segments of {self.video_id} overlap or are unsorted"
                raise InvalidInputError(msg)
        if self.fallback_used and len(self.segments) != 1:
            msg = "Fallback segmentation must hold exactly one segment"
            raise InvalidInputError(msg)

    @property
    def reported_segment_count(self) -> int:
        """Count segments, reporting zero when nothing was localized."""
        return 0 if self.fallback_used else len(self.segments)


@dataclass(frozen=True)
class SweepPoint:
    """Average segment count at one score threshold."""

    threshold: float
    avg_segments: float


@dataclass(frozen=True)
class SweepReport:
    """Average segments per video over several score thresholds."""

    points: tuple[SweepPoint, ...]
    video_count: int
