"""Pipeline settings model and validation."""

from __future__ import annotations

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from story_caption.application.dtos.pipeline_config import DEFAULT_SWEEP_THRESHOLDS
from story_caption.domain.exceptions import InvalidConfigurationError
from story_caption.domain.value_objects import DatasetProfile
from story_caption.domain.value_objects.windows import DEFAULT_NMS_IOU, DEFAULT_STRIDE, DEFAULT_WINDOW_LENGTHS

ENV_PREFIX = "STORY_CAPTION_"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class WindowSettings(_Section):
    """``[window]`` section."""

    lengths: list[int] = Field(default_factory=lambda: list(DEFAULT_WINDOW_LENGTHS), min_length=1)
    stride: int = Field(default=DEFAULT_STRIDE, ge=1)
    nms_iou: float = Field(default=DEFAULT_NMS_IOU, ge=0.0, le=1.0)
    score_threshold: float | None = Field(default=None, allow_inf_nan=False)
    cross_class_nms: bool = False


class EncodingSettings(_Section):
    """``[encoding]`` section."""

    pca_dim: int | None = Field(default=None, ge=1)
    pca_whiten: bool = False
    gmm_components: int = Field(default=256, ge=1, le=4096)
    gmm_iterations: int = Field(default=100, ge=1, le=10000)
    variance_floor: float = Field(default=1e-6, gt=0.0)
    svm_c: float = Field(default=100.0, gt=0.0)
    svm_epochs: int = Field(default=100, ge=1, le=10000)


class InputSettings(_Section):
    """``[inputs]`` section: artifact paths."""

    descriptors_dir: Path | None = None
    window_scores: Path | None = None
    video_lengths: Path | None = None
    intervals: Path | None = None
    models_dir: Path | None = None
    labels: Path | None = None
    captions: Path | None = None
    segments_dir: Path | None = None
    tagger_lexicon: Path | None = None
    gender_lexicon: Path | None = None
    lemma_exceptions: Path | None = None
    embeddings: Path | None = None
    grammar: Path | None = None
    tagged_corpus: Path | None = None
    bank: Path | None = None
    references: Path | None = None
    stitched_dir: Path | None = None
    baseline_captions: Path | None = None


class PipelineSettings(BaseSettings):
    """Validated settings from init overrides, ``STORY_CAPTION_*`` variables and a config file."""

    model_config = SettingsConfigDict(env_prefix=ENV_PREFIX, env_nested_delimiter="__", extra="forbid")

    profile: str = Field(default=DatasetProfile.MONTREAL.value)
    window: WindowSettings = Field(default_factory=WindowSettings)
    encoding: EncodingSettings = Field(default_factory=EncodingSettings)
    inputs: InputSettings = Field(default_factory=InputSettings)
    seed: int = Field(default=0, ge=0, le=2**32 - 1)
    threads: int = Field(default=1, ge=1, le=64)
    output_dir: Path = Field(default=Path("./out"))
    grammar_strict: bool = False
    bank_max_instances: int = Field(default=500, ge=1)
    boundary_token: str = Field(default="</s>", min_length=1)
    missing_caption_policy: Literal["skip", "passthrough"] = "skip"
    sweep_thresholds: list[float] = Field(default_factory=lambda: list(DEFAULT_SWEEP_THRESHOLDS), min_length=1)
    log_level: str = "INFO"
    log_format: str = "text"

    def model_post_init(self, __context: object, /) -> None:
        """Validate and normalize values after parsing."""
        self.profile = DatasetProfile.from_raw(self.profile).value
        self.log_level = self._normalize_log_level(self.log_level)
        self.log_format = self._normalize_log_format(self.log_format)

    @staticmethod
    def _normalize_log_level(value: str) -> str:
        allowed = {"DEBUG", "INFO", "WARNING", "ERROR"}
        normalized = value.strip().upper()
        if normalized not in allowed:
            message = f"LOG_LEVEL must be one of {', '.join(sorted(allowed))}"
            raise InvalidConfigurationError(message)
        return normalized

    @staticmethod
    def _normalize_log_format(value: str) -> str:
        allowed = {"text", "json"}
        normalized = value.strip().lower()
        if normalized not in allowed:
            message = f"LOG_FORMAT must be one of {', '.join(sorted(allowed))}"
            raise InvalidConfigurationError(message)
        return normalized
