"""Input port: fit PCA, GMM and the one-vs-rest classifier."""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from story_caption.application.dtos import PipelineConfig, TrainSummary


class TrainEncoderPort(Protocol):
    """Contract for model training use cases."""

    def execute(self, config: PipelineConfig) -> TrainSummary:
        """Fit PCA, GMM and the one-vs-rest classifier."""
