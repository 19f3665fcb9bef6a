"""Application ports."""

from .input import (
    BuildConnectiveBankPort,
    EvaluateCaptionsPort,
    SegmentVideosPort,
    StitchCaptionsPort,
    SweepThresholdsPort,
    TrainEncoderPort,
)
from .output import ArtifactStorePort, ReportRendererPort, RunMetricsPort

__all__ = [
    "ArtifactStorePort",
    "BuildConnectiveBankPort",
    "EvaluateCaptionsPort",
    "ReportRendererPort",
    "RunMetricsPort",
    "SegmentVideosPort",
    "StitchCaptionsPort",
    "SweepThresholdsPort",
    "TrainEncoderPort",
]
