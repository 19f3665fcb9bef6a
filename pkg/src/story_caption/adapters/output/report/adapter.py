"""Text and SVG report renderer."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

from jinja2 import Environment, FileSystemLoader, StrictUndefined, TemplateError, select_autoescape

from story_caption.application.ports.output import ReportRendererPort

from .exceptions import ReportRenderError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from story_caption.domain.value_objects import EvaluationReport, SweepReport

LOGGER = logging.getLogger(__name__)

BAR_WIDTH = 40
SVG_WIDTH = 480
SVG_HEIGHT = 320
SVG_MARGIN = 40

SMOKE_CHECK_MARKERS_BY_TEMPLATE: dict[str, tuple[str, ...]] = {
    "sweep.txt.j2": ("threshold | segments",),
    "sweep.svg.j2": ("<svg", "<polyline", "</svg>"),
    "report.txt.j2": ("BLEU-4", "CIDEr", "METEOR", "Avg. Length"),
}


@dataclass
class JinjaReportRenderer(ReportRendererPort):
    """Render sweep plots and evaluation tables from Jinja2 templates."""

    bar_width: int = BAR_WIDTH

    def __post_init__(self) -> None:
        """Prepare the template environment."""
        self._environment = Environment(
            loader=FileSystemLoader(Path(__file__).parent / "templates"),
            autoescape=select_autoescape(["svg", "svg.j2"], default_for_string=False),
            keep_trailing_newline=True,
            undefined=StrictUndefined,
        )

    def render_sweep_plot(self, report: SweepReport) -> str:
        """Render a horizontal bar chart of segments per threshold."""
        peak = max((point.avg_segments for point in report.points), default=0.0)
        rows = [
            {
                "threshold": point.threshold,
                "avg_segments": point.avg_segments,
                "bar": round(self.bar_width * point.avg_segments / peak) if peak > 0 else 0,
            }
            for point in report.points
        ]
        return self._render("sweep.txt.j2", {"rows": rows, "video_count": report.video_count})

    def render_sweep_svg(self, report: SweepReport) -> str:
        """Render the sweep as an SVG line chart, thresholds decreasing left to right."""
        plot_width = SVG_WIDTH - 2 * SVG_MARGIN
        plot_height = SVG_HEIGHT - 2 * SVG_MARGIN
        y_max = max((point.avg_segments for point in report.points), default=0.0) or 1.0
        step = plot_width / (len(report.points) - 1) if len(report.points) > 1 else 0.0
        points = [
            {
                "threshold": point.threshold,
                "x": SVG_MARGIN + index * step,
                "y": SVG_HEIGHT - SVG_MARGIN - plot_height * point.avg_segments / y_max,
            }
            for index, point in enumerate(report.points)
        ]
        context = {"points": points, "width": SVG_WIDTH, "height": SVG_HEIGHT, "margin": SVG_MARGIN, "y_max": y_max}
        return self._render("sweep.svg.j2", context)

    def render_evaluation_table(self, reports: Sequence[EvaluationReport]) -> str:
        """Render one row per captioning system."""
        return self._render("report.txt.j2", {"reports": list(reports)})

    def _render(self, template_name: str, context: dict[str, object]) -> str:
        try:
            rendered = self._environment.get_template(template_name).render(**context)
        except TemplateError as err:
            LOGGER.exception(
                "Report template render failed",
                extra={"component": self.__class__.__name__, "template_name": template_name, "error_type": type(err).__name__},
            )
            msg = f"Failed to render report template: {template_name}"
            raise ReportRenderError(msg) from err
        self._smoke_check(rendered, template_name)
        return rendered

    def _smoke_check(self, rendered: str, template_name: str) -> None:
        missing = [marker for marker in SMOKE_CHECK_MARKERS_BY_TEMPLATE.get(template_name, ()) if marker not in rendered]
        if missing:
            LOGGER.error(
                "Report smoke check failed",
                extra={"component": self.__class__.__name__, "template_name": template_name, "missing_markers": missing},
            )
            msg = f"Rendered {template_name} is missing: {', '.join(missing)}"
            raise ReportRenderError(msg)
