"""Pydantic schemas of the on-disk artifact formats."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, RootModel


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class DescriptorRow(_Strict):
    """One line of a ``<id>.jsonl`` descriptor file."""

    frame: int = Field(ge=0)
    vec: list[float] = Field(min_length=2)


class WindowScoreRow(_Strict):
    """One row of the window-score CSV."""

    video_id: str = Field(min_length=1)
    start: int = Field(ge=0)
    end: int = Field(gt=0)
    class_id: str = Field(alias="class", min_length=1)
    score: float = Field(allow_inf_nan=False)


class VideoLengthRow(_Strict):
    """One row of the video-length CSV."""

    video_id: str = Field(min_length=1)
    length: int = Field(gt=0)


class IntervalRow(_Strict):
    """One row of the annotated sub-interval CSV."""

    video_id: str = Field(min_length=1)
    start: int = Field(ge=0)
    end: int = Field(gt=0)


class LabelRow(_Strict):
    """One row of the training label CSV."""

    clip_id: str = Field(min_length=1)
    class_id: str = Field(alias="class", min_length=1)


class PcaFile(_Strict):
    """Serialized PCA model."""

    input_dim: int = Field(ge=1)
    output_dim: int = Field(ge=1)
    mean: list[float]
    projection: list[list[float]]
    eigenvalues: list[float]
    scale: list[float]


class GmmFile(_Strict):
    """Serialized diagonal GMM."""

    components: int = Field(ge=1)
    dim: int = Field(ge=1)
    weights: list[float]
    means: list[list[float]]
    variances: list[list[float]]
    variance_floor: float = Field(gt=0)


class ClassifierFile(_Strict):
    """Serialized one-vs-rest linear scorers."""

    dim: int = Field(ge=1)
    classes: list[str] = Field(min_length=2)
    weights: list[list[float]]
    biases: list[float]
    c: float = Field(gt=0)


class SegmentEntry(_Strict):
    """One segment of a segmentation file."""

    start: int = Field(ge=0)
    end: int = Field(gt=0)
    class_id: str | None = Field(alias="class")
    keyframe: int = Field(ge=0)


class SegmentationFile(_Strict):
    """Per-video segmentation output."""

    video_id: str = Field(min_length=1)
    fallback: bool
    segments: list[SegmentEntry] = Field(min_length=1)


class CaptionEntry(_Strict):
    """Caption of one segment."""

    segment_index: int = Field(ge=0)
    text: str


class CaptionsEntry(_Strict):
    """Per-segment captions of one video."""

    video_id: str = Field(min_length=1)
    captions: list[CaptionEntry]


class CaptionsFile(RootModel[list[CaptionsEntry]]):
    """Captions of every video."""


class BankEntry(_Strict):
    """One connective instance."""

    connective: str = Field(min_length=1)
    vec: list[float] = Field(min_length=1)


class BankFile(RootModel[list[BankEntry]]):
    """Connective bank."""


class StitchedFile(_Strict):
    """Per-video stitched caption output."""

    video_id: str = Field(min_length=1)
    sentences: list[str]
    stitched: str


class ReferencesFile(RootModel[dict[str, list[str]]]):
    """Reference captions keyed by video id."""


class BaselineFile(RootModel[dict[str, str]]):
    """One baseline caption per video."""
