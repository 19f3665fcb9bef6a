"""Scored windows per video, from precomputed scores or from descriptors."""

from __future__ import annotations

import logging
from collections import defaultdict
from functools import partial
from typing import TYPE_CHECKING

from story_caption.application.dtos import VideoWindows
from story_caption.domain.exceptions import DimensionMismatchError, InvalidConfigurationError, InvalidInputError
from story_caption.domain.services import best_class_window, encode_window, generate_windows, score_ovr

from .run_recording import stage_timer
from .worker_pool import map_ordered

if TYPE_CHECKING:
    from pathlib import Path

    from story_caption.application.dtos import PipelineConfig, WindowScore
    from story_caption.application.ports.output import ArtifactStorePort, RunMetricsPort
    from story_caption.domain.value_objects import DescriptorSequence, GmmModel, LinearOvrModel, PcaModel

LOGGER = logging.getLogger(__name__)


def load_video_windows(
    config: PipelineConfig,
    store: ArtifactStorePort,
    metrics: RunMetricsPort | None = None,
) -> tuple[list[VideoWindows], dict[str, Path]]:
    """Return argmax-scored windows of every video plus the inputs that were read.

    Precomputed window scores take precedence over descriptors.
    """
    inputs: dict[str, Path] = {}
    lengths: dict[str, int] = {}
    intervals: dict[str, tuple[int, int]] = {}
    lengths_path = config.optional_path("video_lengths")
    if lengths_path is not None:
        inputs["video_lengths"] = lengths_path
        lengths = store.read_video_lengths(lengths_path)
    intervals_path = config.optional_path("intervals")
    if intervals_path is not None:
        inputs["intervals"] = intervals_path
        intervals = store.read_intervals(intervals_path)

    scores_path = config.optional_path("window_scores")
    if scores_path is not None:
        inputs["window_scores"] = scores_path
        with stage_timer(metrics, "read_window_scores"):
            videos = _from_window_scores(store.read_window_scores(scores_path), lengths, intervals)
    else:
        descriptors_dir = config.optional_path("descriptors_dir")
        if descriptors_dir is None:
            msg = "Segmentation needs either window_scores or descriptors_dir"
            raise InvalidConfigurationError(msg)
        models_dir = config.require_path("models_dir")
        inputs["descriptors_dir"] = descriptors_dir
        inputs["models_dir"] = models_dir
        sequences = store.read_descriptor_sequences(descriptors_dir)
        pca, gmm, classifier = store.read_models(models_dir)
        for sequence in sequences:
            if sequence.frames and sequence.dimension != pca.input_dim:
                msg = (
                    f"{descriptors_dir}: field vec of video {sequence.video_id} has dimension {sequence.dimension} "
                    f"but pca.json input_dim={pca.input_dim}"
                )
                raise DimensionMismatchError(msg)
        score = partial(_score_sequence, config=config, models=(pca, gmm, classifier), lengths=lengths, intervals=intervals)
        with stage_timer(metrics, "encode_windows"):
            videos = map_ordered(score, sequences, config.threads)

    if not videos:
        msg = "No video found in the segmentation inputs"
        raise InvalidInputError(msg)
    LOGGER.info(
        "Video windows loaded",
        extra={"component": "load_video_windows", "videos": len(videos), "windows": sum(len(video.windows) for video in videos)},
    )
    return videos, inputs


def _frame_range(video_id: str, natural_end: int, lengths: dict[str, int], intervals: dict[str, tuple[int, int]]) -> tuple[int, int]:
    if video_id in intervals:
        return intervals[video_id]
    return 0, lengths.get(video_id, natural_end)


def _from_window_scores(
    rows: list[WindowScore],
    lengths: dict[str, int],
    intervals: dict[str, tuple[int, int]],
) -> list[VideoWindows]:
    class_indices = {name: index for index, name in enumerate(sorted({row.class_id for row in rows}))}
    grouped: dict[str, dict[tuple[int, int], list[tuple[str, float]]]] = defaultdict(lambda: defaultdict(list))
    for row in rows:
        grouped[row.video_id][(row.start_frame, row.end_frame)].append((row.class_id, row.score))

    videos = []
    for video_id in sorted(set(grouped) | set(lengths) | set(intervals)):
        spans = grouped.get(video_id, {})
        natural_end = max((end for _, end in spans), default=0)
        start, end = _frame_range(video_id, natural_end, lengths, intervals)
        windows = []
        for (window_start, window_end), scores in sorted(spans.items()):
            if window_start < start or window_end > end:
                continue
            ordered = sorted(scores, key=lambda item: class_indices[item[0]])
            windows.append(best_class_window(window_start, window_end, ordered, class_indices))
        videos.append(VideoWindows(video_id=video_id, start_frame=start, end_frame=end, windows=tuple(windows)))
    return videos


def _score_sequence(
    sequence: DescriptorSequence,
    *,
    config: PipelineConfig,
    models: tuple[PcaModel, GmmModel, LinearOvrModel],
    lengths: dict[str, int],
    intervals: dict[str, tuple[int, int]],
) -> VideoWindows:
    pca, gmm, classifier = models
    start, end = _frame_range(sequence.video_id, sequence.length, lengths, intervals)
    windows = []
    for window_start, window_end in generate_windows(end, config.window, start_frame=start):
        fv = encode_window(sequence.window(window_start, window_end), pca, gmm)
        if fv is None:
            continue
        windows.append(best_class_window(window_start, window_end, score_ovr(classifier, fv)))
    LOGGER.debug(
        "Video encoded",
        extra={"component": "load_video_windows", "video_id": sequence.video_id, "windows": len(windows)},
    )
    return VideoWindows(video_id=sequence.video_id, start_frame=start, end_frame=end, windows=tuple(windows))
