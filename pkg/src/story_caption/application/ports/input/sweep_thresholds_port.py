"""Input port: average segments per video over score thresholds."""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from story_caption.application.dtos import PipelineConfig, SweepSummary


class SweepThresholdsPort(Protocol):
    """Contract for threshold sweep use cases."""

    def execute(self, config: PipelineConfig) -> SweepSummary:
        """Average segments per video over score thresholds."""
