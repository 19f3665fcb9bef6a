"""Temporal localization: sliding windows, suppression, thresholding and segment merging."""

from __future__ import annotations

from collections import defaultdict
from typing import TYPE_CHECKING

from story_caption.domain.exceptions import InsufficientDataError, InvalidInputError, VideoSetMismatchError
from story_caption.domain.value_objects import (
    ActionWindow,
    Segment,
    SegmentationResult,
    SlidingWindowConfig,
    SweepPoint,
    SweepReport,
)

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence


def generate_windows(video_length: int, cfg: SlidingWindowConfig, *, start_frame: int = 0) -> list[tuple[int, int]]:
    """Enumerate ``[start, start + L)`` windows on the stride grid that fit inside the video."""
    windows: dict[tuple[int, int], None] = {}
    start = start_frame
    lengths = sorted(set(cfg.lengths))
    while start + lengths[0] <= video_length:
        for length in lengths:
            if start + length <= video_length:
                windows[(start, start + length)] = None
        start += cfg.stride
    return list(windows)


def best_class_window(
    start: int,
    end: int,
    scores: Sequence[tuple[str, float]],
    class_indices: Mapping[str, int] | None = None,
) -> ActionWindow:
    """Keep only the argmax class of a scored window; ties go to the earlier score.

    ``class_indices`` maps class names to global indices; by default the
    position in ``scores`` is the class index.
    """
    if not scores:
        msg = f"Window [{start}, {end}) has no class score"
        raise InvalidInputError(msg)
    best_index = 0
    for index, (_, score) in enumerate(scores):
        if score > scores[best_index][1]:
            best_index = index
    name, score = scores[best_index]
    class_index = best_index if class_indices is None else class_indices[name]
    return ActionWindow(start_frame=start, end_frame=end, class_id=name, score=score, class_index=class_index)


def temporal_iou(first: ActionWindow, second: ActionWindow) -> float:
    """Return intersection frames over union frames."""
    intersection = max(0, min(first.end_frame, second.end_frame) - max(first.start_frame, second.start_frame))
    union = first.length + second.length - intersection
    return intersection / union


def _suppression_order(window: ActionWindow) -> tuple[float, int, int, int]:
    return (-window.score, window.start_frame, window.length, window.class_index)


def _output_order(window: ActionWindow) -> tuple[int, int, int, float]:
    return (window.start_frame, window.end_frame, window.class_index, -window.score)


def temporal_nms(windows: Iterable[ActionWindow], iou_threshold: float, *, cross_class: bool = False) -> list[ActionWindow]:
    """Greedy per-class suppression of windows overlapping a better one by more than ``iou_threshold``.

    Scores are left untouched; suppressed windows are removed.
    """
    kept: dict[str, list[ActionWindow]] = defaultdict(list)
    for window in sorted(windows, key=_suppression_order):
        group = "" if cross_class else window.class_id
        if all(temporal_iou(window, other) <= iou_threshold for other in kept[group]):
            kept[group].append(window)
    return sorted((window for group in kept.values() for window in group), key=_output_order)


def segment_video(
    windows: Iterable[ActionWindow],
    cfg: SlidingWindowConfig,
    video_length: int,
    *,
    video_id: str,
    start_frame: int = 0,
) -> SegmentationResult:
    """Threshold windows and merge adjacent same-class runs into segments.

    A window overlapping a segment of another class starts where that segment
    ends; a window it fully covers is absorbed. Without any surviving window
    the whole interval ``[start_frame, video_length)`` becomes one segment.
    """
    if video_length <= start_frame:
        msg = f"Video {video_id} has an empty frame range [{start_frame}, {video_length})"
        raise InvalidInputError(msg)
    surviving = []
    for window in windows:
        if window.end_frame > video_length or window.start_frame < start_frame:
            msg = f"Window [{window.start_frame}, {window.end_frame}) lies outside video {video_id}"
            raise InvalidInputError(msg)
        if not window.score < cfg.score_threshold:
            surviving.append(window)
    surviving.sort(key=_output_order)

    if not surviving:
        fallback = Segment(start_frame=start_frame, end_frame=video_length, class_id=None)
        return SegmentationResult(video_id=video_id, segments=(fallback,), fallback_used=True)

    runs: list[tuple[int, int, str, list[ActionWindow]]] = []
    for window in surviving:
        if runs:
            run_start, run_end, run_class, sources = runs[-1]
            if window.class_id == run_class and window.start_frame <= run_end:
                sources.append(window)
                runs[-1] = (run_start, max(run_end, window.end_frame), run_class, sources)
                continue
            if window.end_frame <= run_end:
                continue
            runs.append((max(window.start_frame, run_end), window.end_frame, window.class_id, [window]))
        else:
            runs.append((window.start_frame, window.end_frame, window.class_id, [window]))

    segments = tuple(
        Segment(start_frame=start, end_frame=end, class_id=name, source_windows=tuple(sources)) for start, end, name, sources in runs
    )
    return SegmentationResult(video_id=video_id, segments=segments, fallback_used=False)


def sweep_thresholds(results_per_threshold: Mapping[float, Sequence[SegmentationResult]]) -> SweepReport:
    """Average segments per video at each threshold, counting zero for fallback videos."""
    if not results_per_threshold:
        msg = "Threshold sweep needs at least one threshold"
        raise InsufficientDataError(msg)
    reference_ids: set[str] | None = None
    points = []
    for threshold in sorted(results_per_threshold, reverse=True):
        results = results_per_threshold[threshold]
        video_ids = {result.video_id for result in results}
        if reference_ids is None:
            reference_ids = video_ids
        elif video_ids != reference_ids:
            difference = sorted(video_ids ^ reference_ids)
            msg = f"Video sets differ at threshold {threshold}: {', '.join(difference)}"
            raise VideoSetMismatchError(msg)
        total = sum(result.reported_segment_count for result in results)
        average = total / len(results) if results else 0.0
        points.append(SweepPoint(threshold=threshold, avg_segments=average))
    return SweepReport(points=tuple(points), video_count=len(reference_ids or ()))
