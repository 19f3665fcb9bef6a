"""Input port: segment videos into same-class window runs."""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from story_caption.application.dtos import PipelineConfig, SegmentSummary


class SegmentVideosPort(Protocol):
    """Contract for video segmentation use cases."""

    def execute(self, config: PipelineConfig) -> SegmentSummary:
        """Segment videos into same-class window runs."""
