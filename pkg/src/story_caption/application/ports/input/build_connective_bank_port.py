"""Input port: collect connective instances from a tagged corpus."""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from story_caption.application.dtos import PipelineConfig, BankSummary


class BuildConnectiveBankPort(Protocol):
    """Contract for connective-bank use cases."""

    def execute(self, config: PipelineConfig) -> BankSummary:
        """Collect connective instances from a tagged corpus."""
