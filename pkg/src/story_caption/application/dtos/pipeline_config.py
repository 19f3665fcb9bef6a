"""Resolved pipeline configuration."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING

from story_caption.domain.exceptions import InvalidConfigurationError, InvalidInputError

if TYPE_CHECKING:
    from story_caption.domain.value_objects import DatasetProfile, SlidingWindowConfig

DEFAULT_SWEEP_THRESHOLDS = tuple(round(-0.1 * step, 1) for step in range(1, 11))

# Settings that cannot change any output byte stay out of the config hash.
_UNHASHED_FIELDS = frozenset({"threads", "output_dir", "log_level", "log_format"})


@dataclass(frozen=True)
class EncodingConfig:
    """PCA, GMM and classifier training parameters."""

    pca_dim: int | None = None
    pca_whiten: bool = False
    gmm_components: int = 256
    gmm_iterations: int = 100
    variance_floor: float = 1e-6
    svm_c: float = 100.0
    svm_epochs: int = 100


@dataclass(frozen=True)
class InputPaths:
    """Input artifacts; each subcommand requires only some of them."""

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


@dataclass(frozen=True)
class PipelineConfig:
    """Everything a subcommand needs, with the profile threshold already resolved."""

    profile: DatasetProfile
    window: SlidingWindowConfig
    inputs: InputPaths = field(default_factory=InputPaths)
    encoding: EncodingConfig = field(default_factory=EncodingConfig)
    seed: int = 0
    threads: int = 1
    output_dir: Path = Path("./out")
    grammar_strict: bool = False
    bank_max_instances: int = 500
    boundary_token: str = "</s>"  # noqa: S105
    missing_caption_policy: str = "skip"
    sweep_thresholds: tuple[float, ...] = DEFAULT_SWEEP_THRESHOLDS
    log_level: str = "INFO"
    log_format: str = "text"

    def __post_init__(self) -> None:
        """Validate ranges not covered by the settings model."""
        if not 1 <= self.threads <= 64:  # noqa: PLR2004
            msg = f"threads must be in [1, 64], got {self.threads}"
            raise InvalidConfigurationError(msg)
        if self.missing_caption_policy not in {"skip", "passthrough"}:
            msg = f"missing_caption_policy must be skip or passthrough, got {self.missing_caption_policy!r}"
            raise InvalidConfigurationError(msg)
        if not self.sweep_thresholds:
            msg = "sweep_thresholds must not be empty"
            raise InvalidConfigurationError(msg)

    @property
    def score_threshold(self) -> float:
        """Return the resolved window score threshold."""
        return self.window.score_threshold

    def optional_path(self, name: str) -> Path | None:
        """Return an input path when configured, checking that it exists."""
        path: Path | None = getattr(self.inputs, name)
        if path is not None and not path.exists():
            msg = f"Input {name} does not exist: {path}"
            raise InvalidInputError(msg)
        return path

    def require_path(self, name: str) -> Path:
        """Return a configured, existing input path."""
        path = self.optional_path(name)
        if path is None:
            msg = f"Input {name} is required for this command"
            raise InvalidConfigurationError(msg)
        return path

    def to_canonical_dict(self) -> dict[str, object]:
        """Return a JSON-safe view of every setting that influences outputs."""
        payload = asdict(self)
        payload["profile"] = str(self.profile)
        # Only which inputs are set; input_digests pin their bytes.
        payload["inputs"] = sorted(key for key, value in payload["inputs"].items() if value is not None)
        for name in _UNHASHED_FIELDS:
            payload.pop(name, None)
        return payload
