"""Application use cases."""

from .build_connective_bank import BuildConnectiveBankUseCase
from .evaluate_captions import EvaluateCaptionsUseCase
from .segment_videos import SegmentVideosUseCase
from .stitch_captions import StitchCaptionsUseCase
from .sweep_thresholds import SweepThresholdsUseCase
from .train_encoder import TrainEncoderUseCase

__all__ = [
    "BuildConnectiveBankUseCase",
    "EvaluateCaptionsUseCase",
    "SegmentVideosUseCase",
    "StitchCaptionsUseCase",
    "SweepThresholdsUseCase",
    "TrainEncoderUseCase",
]
