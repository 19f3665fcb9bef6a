"""Input port: stitch per-segment captions into passages."""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from story_caption.application.dtos import PipelineConfig, StitchSummary


class StitchCaptionsPort(Protocol):
    """Contract for caption stitching use cases."""

    def execute(self, config: PipelineConfig) -> StitchSummary:
        """Stitch per-segment captions into passages."""
