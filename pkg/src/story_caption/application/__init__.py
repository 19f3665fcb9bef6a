"""Application layer for story-caption."""

from .use_cases import (
    BuildConnectiveBankUseCase,
    EvaluateCaptionsUseCase,
    SegmentVideosUseCase,
    StitchCaptionsUseCase,
    SweepThresholdsUseCase,
    TrainEncoderUseCase,
)

__all__ = [
    "BuildConnectiveBankUseCase",
    "EvaluateCaptionsUseCase",
    "SegmentVideosUseCase",
    "StitchCaptionsUseCase",
    "SweepThresholdsUseCase",
    "TrainEncoderUseCase",
]
