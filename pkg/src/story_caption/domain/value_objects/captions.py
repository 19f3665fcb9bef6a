"""Caption documents and noun-phrase mention chains."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

from story_caption.domain.exceptions import InvalidInputError

from .tokens import TaggedToken


@dataclass(frozen=True)
class CaptionDoc:
    """Ordered per-segment sentences of one video."""

    video_id: str
    sentences: tuple[tuple[TaggedToken, ...], ...]
    stitched: str | None = None

    def __post_init__(self) -> None:
        """Require at least one non-empty sentence."""
        object.__setattr__(self, "sentences", tuple(tuple(sentence) for sentence in self.sentences))
        if not self.sentences:
            msg = f"Caption document {self.video_id} has no sentence"
            raise InvalidInputError(msg)
        for index, sentence in enumerate(self.sentences):
            if not sentence:
                msg = f"Sentence {index} of {self.video_id} is empty"
                raise InvalidInputError(msg)

    def replace_sentences(self, sentences: tuple[tuple[TaggedToken, ...], ...], stitched: str | None = None) -> CaptionDoc:
        """Return a copy holding other sentences."""
        return CaptionDoc(video_id=self.video_id, sentences=sentences, stitched=stitched)


class Slot(StrEnum):
    """Grammatical slot of a mention."""

    SUBJECT = "subject"
    OBJECT = "object"


@dataclass(frozen=True)
class Mention:
    """Noun phrase occurrence at ``tokens[start:end]`` of one sentence."""

    sentence_index: int
    start: int
    end: int
    slot: Slot

    @property
    def length(self) -> int:
        """Return the mention length in tokens."""
        return self.end - self.start


@dataclass(frozen=True)
class MentionChain:
    """Mentions sharing a lemmatized head noun and number."""

    head: str
    plural: bool
    mentions: tuple[Mention, ...]

    def __post_init__(self) -> None:
        """Require mentions in strictly increasing sentence order."""
        object.__setattr__(self, "mentions", tuple(self.mentions))
        previous = -1
        for mention in self.mentions:
            if mention.sentence_index <= previous:
                msg = f"Mentions of {self.head!r} must be in strictly increasing sentence order"
                raise InvalidInputError(msg)
            previous = mention.sentence_index

    @property
    def later_mentions(self) -> tuple[Mention, ...]:
        """Return every mention after the first."""
        return self.mentions[1:]
