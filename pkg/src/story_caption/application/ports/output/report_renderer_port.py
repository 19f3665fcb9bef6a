"""Report renderer port contract."""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from collections.abc import Sequence

    from story_caption.domain.value_objects import EvaluationReport, SweepReport


class ReportRendererPort(Protocol):
    """Render human-readable reports."""

    def render_sweep_plot(self, report: SweepReport) -> str:
        """Render an ASCII bar plot of a threshold sweep."""

    def render_sweep_svg(self, report: SweepReport) -> str:
        """Render an SVG line plot of a threshold sweep."""

    def render_evaluation_table(self, reports: Sequence[EvaluationReport]) -> str:
        """Render the aligned score table."""
