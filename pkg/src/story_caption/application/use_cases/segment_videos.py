"""Segment videos into runs of same-class action windows."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from story_caption.application.dtos import SegmentSummary
from story_caption.application.services import build_manifest, load_video_windows, map_ordered, stage_timer, utc_now
from story_caption.domain.services import segment_video, temporal_nms

if TYPE_CHECKING:
    from story_caption.application.dtos import PipelineConfig, VideoWindows
    from story_caption.application.ports.output import ArtifactStorePort, RunMetricsPort
    from story_caption.domain.value_objects import SegmentationResult, SlidingWindowConfig

LOGGER = logging.getLogger(__name__)
COMMAND = "segment"


def segment_windows(video: VideoWindows, cfg: SlidingWindowConfig) -> SegmentationResult:
    """Suppress overlapping windows of one video, then threshold and merge them."""
    kept = temporal_nms(video.windows, cfg.nms_iou, cross_class=cfg.cross_class_nms)
    return segment_video(kept, cfg, video.end_frame, video_id=video.video_id, start_frame=video.start_frame)


@dataclass(frozen=True)
class SegmentVideosUseCase:
    """Write one segmentation file per video plus a summary."""

    store: ArtifactStorePort
    metrics: RunMetricsPort | None = None

    def execute(self, config: PipelineConfig) -> SegmentSummary:
        """Segment every input video at the configured score threshold."""
        started_at = utc_now()
        LOGGER.info("Segmenting videos", extra=self._log_extra(threshold=config.score_threshold, profile=str(config.profile)))
        videos, inputs = load_video_windows(config, self.store, self.metrics)

        with stage_timer(self.metrics, "segment"):
            results = map_ordered(lambda video: segment_windows(video, config.window), videos, config.threads)
        for result in results:
            self.store.write_segmentation(config.output_dir, result)
            if result.fallback_used:
                LOGGER.warning("No window above threshold, using whole video", extra=self._log_extra(video_id=result.video_id))

        summary = SegmentSummary(
            videos=len(results),
            avg_segments=sum(result.reported_segment_count for result in results) / len(results),
            fallback_videos=tuple(result.video_id for result in results if result.fallback_used),
            output_dir=config.output_dir,
        )
        self.store.write_json(config.output_dir / "summary.json", summary.to_dict())
        if self.metrics is not None:
            self.metrics.record_items(COMMAND, len(results))
        manifest = build_manifest(
            command=COMMAND, config=config, inputs=inputs, store=self.store, started_at=started_at, metrics=self.metrics
        )
        self.store.write_manifest(config.output_dir, manifest)
        LOGGER.info(
            "Segmentation finished",
            extra=self._log_extra(videos=summary.videos, avg_segments=round(summary.avg_segments, 4)),
        )
        return summary

    def _log_extra(self, **extra: object) -> dict[str, object]:
        """Build structured log context for this use case."""
        return {"component": self.__class__.__name__, **extra}
