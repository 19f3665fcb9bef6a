"""Application data transfer objects."""

from .pipeline_config import DEFAULT_SWEEP_THRESHOLDS, EncodingConfig, InputPaths, PipelineConfig
from .run_manifest import RunManifest
from .run_results import (
    BankSummary,
    EvaluationSummary,
    SegmentSummary,
    StitchSummary,
    SweepSummary,
    TrainSummary,
    VideoWindows,
    WindowScore,
)

__all__ = [
    "DEFAULT_SWEEP_THRESHOLDS",
    "BankSummary",
    "EncodingConfig",
    "EvaluationSummary",
    "InputPaths",
    "PipelineConfig",
    "RunManifest",
    "SegmentSummary",
    "StitchSummary",
    "SweepSummary",
    "TrainSummary",
    "VideoWindows",
    "WindowScore",
]
