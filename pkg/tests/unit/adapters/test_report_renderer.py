"""Unit tests for the Jinja2 report renderer."""

from __future__ import annotations

from typing import cast

import pytest

from story_caption.adapters.output.report import JinjaReportRenderer, ReportRenderError
from story_caption.adapters.output.report import adapter as report_adapter
from story_caption.domain.value_objects import CaptionScores, EvaluationReport, SweepPoint, SweepReport

SWEEP = SweepReport(points=(SweepPoint(-0.5, 2.0), SweepPoint(-0.8, 1.0), SweepPoint(-1.0, 0.0)), video_count=3)


def test_render_sweep_plot_scales_bars_to_peak() -> None:
    """Draw one bar per threshold, the largest at full width."""
    rendered = JinjaReportRenderer(bar_width=4).render_sweep_plot(SWEEP)

    assert rendered == (
        "Average segments per video (3 videos)\n"
        "\n"
        "threshold | segments\n"
        "    -0.50 | #### 2.00\n"
        "    -0.80 | ## 1.00\n"
        "    -1.00 | 0.00\n"
    )


def test_render_sweep_svg_places_points_left_to_right() -> None:
    """Plot thresholds left to right with the peak at the top margin."""
    rendered = JinjaReportRenderer().render_sweep_svg(SWEEP)

    assert rendered.startswith("<svg")
    assert 'points="40.0,40.0 240.0,160.0 440.0,280.0"' in rendered
    assert rendered.count("<circle") == 3
    assert rendered.rstrip().endswith("</svg>")


def test_render_evaluation_table_aligns_columns() -> None:
    """Render a header and one row per system."""
    report = EvaluationReport(
        system="Mid-frame",
        per_video={},
        corpus=CaptionScores(bleu4=0.5, cider=1.25, meteor_lite=0.75),
        avg_length=28 / 3,
    )

    lines = JinjaReportRenderer().render_evaluation_table([report]).splitlines()

    assert lines[0].split() == ["System", "BLEU-4", "CIDEr", "METEOR", "Avg.", "Length"]
    assert lines[1].split() == ["Mid-frame", "0.5000", "1.2500", "0.7500", "9.33"]
    assert len(lines[0]) == len(lines[1])


def test_renderer_wraps_template_errors() -> None:
    """Turn undefined template values into a render error."""
    with pytest.raises(ReportRenderError, match="report.txt.j2"):
        JinjaReportRenderer().render_evaluation_table([cast("EvaluationReport", object())])


def test_renderer_smoke_check_rejects_missing_marker(monkeypatch: pytest.MonkeyPatch) -> None:
    """Fail when rendered output lacks an expected marker."""
    monkeypatch.setitem(report_adapter.SMOKE_CHECK_MARKERS_BY_TEMPLATE, "sweep.txt.j2", ("no such marker",))

    with pytest.raises(ReportRenderError, match="no such marker"):
        JinjaReportRenderer().render_sweep_plot(SWEEP)
