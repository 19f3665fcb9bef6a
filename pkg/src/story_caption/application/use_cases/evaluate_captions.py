"""Score stitched captions, and optionally a mid-frame baseline, against references."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from story_caption.application.dtos import EvaluationSummary
from story_caption.application.services import build_manifest, stage_timer, utc_now
from story_caption.domain.services import score_captions

if TYPE_CHECKING:
    from pathlib import Path

    from story_caption.application.dtos import PipelineConfig
    from story_caption.application.ports.output import ArtifactStorePort, ReportRendererPort, RunMetricsPort
    from story_caption.domain.value_objects import EvaluationReport

LOGGER = logging.getLogger(__name__)
COMMAND = "evaluate"
SYSTEM_NAME = "Ours"
BASELINE_NAME = "Mid-frame"


def report_payload(report: EvaluationReport) -> dict[str, object]:
    """Return the JSON form of one system's scores."""
    return {
        "system": report.system,
        "corpus": {"bleu4": report.corpus.bleu4, "cider": report.corpus.cider, "meteor_lite": report.corpus.meteor_lite},
        "avg_length": report.avg_length,
        "per_video": {
            video_id: {"bleu4": scores.bleu4, "cider": scores.cider, "meteor_lite": scores.meteor_lite}
            for video_id, scores in sorted(report.per_video.items())
        },
    }


@dataclass(frozen=True)
class EvaluateCaptionsUseCase:
    """Write ``report.json`` and the aligned ``report.txt`` table."""

    store: ArtifactStorePort
    renderer: ReportRendererPort
    metrics: RunMetricsPort | None = None

    def execute(self, config: PipelineConfig) -> EvaluationSummary:
        """Score every system against the same references."""
        started_at = utc_now()
        inputs: dict[str, Path] = {name: config.require_path(name) for name in ("stitched_dir", "references")}
        references = self.store.read_references(inputs["references"])
        systems: list[tuple[str, dict[str, str]]] = []
        baseline_path = config.optional_path("baseline_captions")
        if baseline_path is not None:
            inputs["baseline_captions"] = baseline_path
            systems.append((BASELINE_NAME, self.store.read_baseline(baseline_path)))
        systems.append((SYSTEM_NAME, self.store.read_stitched(inputs["stitched_dir"])))

        with stage_timer(self.metrics, "score"):
            reports = tuple(score_captions(name, captions, references) for name, captions in systems)

        self.store.write_json(config.output_dir / "report.json", {"systems": [report_payload(report) for report in reports]})
        self.store.write_text(config.output_dir / "report.txt", self.renderer.render_evaluation_table(reports))
        if self.metrics is not None:
            self.metrics.record_items(COMMAND, len(references))
        manifest = build_manifest(
            command=COMMAND, config=config, inputs=inputs, store=self.store, started_at=started_at, metrics=self.metrics
        )
        self.store.write_manifest(config.output_dir, manifest)
        for report in reports:
            LOGGER.info(
                "Captions evaluated",
                extra={
                    "component": self.__class__.__name__,
                    "system": report.system,
                    "bleu4": round(report.corpus.bleu4, 6),
                    "cider": round(report.corpus.cider, 6),
                    "meteor_lite": round(report.corpus.meteor_lite, 6),
                },
            )
        return EvaluationSummary(reports=reports, output_dir=config.output_dir)
