"""Average segments per video across score thresholds."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from story_caption.application.dtos import SweepSummary
from story_caption.application.services import build_manifest, load_video_windows, map_ordered, stage_timer, utc_now
from story_caption.domain.services import segment_video, sweep_thresholds, temporal_nms

if TYPE_CHECKING:
    from story_caption.application.dtos import PipelineConfig, VideoWindows
    from story_caption.application.ports.output import ArtifactStorePort, ReportRendererPort, RunMetricsPort
    from story_caption.domain.value_objects import ActionWindow, SegmentationResult

LOGGER = logging.getLogger(__name__)
COMMAND = "sweep"


@dataclass(frozen=True)
class SweepThresholdsUseCase:
    """Write the sweep CSV with its text and SVG plots."""

    store: ArtifactStorePort
    renderer: ReportRendererPort
    metrics: RunMetricsPort | None = None

    def execute(self, config: PipelineConfig) -> SweepSummary:
        """Segment every video at each threshold and average the segment counts."""
        started_at = utc_now()
        videos, inputs = load_video_windows(config, self.store, self.metrics)
        cfg = config.window

        def suppress(video: VideoWindows) -> list[ActionWindow]:
            return temporal_nms(video.windows, cfg.nms_iou, cross_class=cfg.cross_class_nms)

        with stage_timer(self.metrics, "nms"):
            kept = map_ordered(suppress, videos, config.threads)

        results: dict[float, list[SegmentationResult]] = {}
        with stage_timer(self.metrics, "sweep"):
            for threshold in config.sweep_thresholds:
                at_threshold = cfg.with_threshold(threshold)
                results[threshold] = [
                    segment_video(windows, at_threshold, video.end_frame, video_id=video.video_id, start_frame=video.start_frame)
                    for video, windows in zip(videos, kept, strict=True)
                ]
        report = sweep_thresholds(results)

        output_dir = config.output_dir
        files = (
            self.store.write_sweep_csv(output_dir / "sweep.csv", report),
            self.store.write_text(output_dir / "sweep.txt", self.renderer.render_sweep_plot(report)),
            self.store.write_text(output_dir / "sweep.svg", self.renderer.render_sweep_svg(report)),
        )
        if self.metrics is not None:
            self.metrics.record_items(COMMAND, len(videos) * len(config.sweep_thresholds))
        manifest = build_manifest(
            command=COMMAND, config=config, inputs=inputs, store=self.store, started_at=started_at, metrics=self.metrics
        )
        self.store.write_manifest(output_dir, manifest)
        LOGGER.info(
            "Threshold sweep finished",
            extra={"component": self.__class__.__name__, "videos": report.video_count, "thresholds": len(report.points)},
        )
        return SweepSummary(report=report, output_dir=output_dir, files=files)
