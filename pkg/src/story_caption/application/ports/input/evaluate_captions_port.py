"""Input port: score stitched captions against references."""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from story_caption.application.dtos import PipelineConfig, EvaluationSummary


class EvaluateCaptionsPort(Protocol):
    """Contract for caption evaluation use cases."""

    def execute(self, config: PipelineConfig) -> EvaluationSummary:
        """Score stitched captions against references."""
