"""Input ports for the application layer."""

from .build_connective_bank_port import BuildConnectiveBankPort
from .evaluate_captions_port import EvaluateCaptionsPort
from .segment_videos_port import SegmentVideosPort
from .stitch_captions_port import StitchCaptionsPort
from .sweep_thresholds_port import SweepThresholdsPort
from .train_encoder_port import TrainEncoderPort

__all__ = [
    "BuildConnectiveBankPort",
    "EvaluateCaptionsPort",
    "SegmentVideosPort",
    "StitchCaptionsPort",
    "SweepThresholdsPort",
    "TrainEncoderPort",
]
