"""Caption evaluation scores."""

from __future__ import annotations

import math
from dataclasses import dataclass

from story_caption.domain.exceptions import InvalidInputError


@dataclass(frozen=True)
class CaptionScores:
    """BLEU-4, CIDEr and METEOR-lite for one caption set."""

    bleu4: float
    cider: float
    meteor_lite: float

    def __post_init__(self) -> None:
        """Scores must be finite and non-negative."""
        for name in ("bleu4", "cider", "meteor_lite"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                msg = f"Score {name} must be finite and non-negative, got {value}"
                raise InvalidInputError(msg)


@dataclass(frozen=True)
class EvaluationReport:
    """Per-video and corpus-level scores of one system."""

    system: str
    per_video: dict[str, CaptionScores]
    corpus: CaptionScores
    avg_length: float
