"""Tagged tokens shared by the grammar and stitching modules."""

from __future__ import annotations

from dataclasses import dataclass

from story_caption.domain.exceptions import InvalidInputError

NOUN_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS"})
PLURAL_NOUN_TAGS = frozenset({"NNS", "NNPS"})
PROPER_NOUN_TAGS = frozenset({"NNP", "NNPS"})
DETERMINER_TAGS = frozenset({"DT", "CD", "PRP$"})
ADJECTIVE_TAGS = frozenset({"JJ", "JJR", "JJS", "VBN"})
PUNCTUATION_TAGS = frozenset({".", ",", ":", "``", "''", "-LRB-", "-RRB-"})
PRONOUN_TAGS = frozenset({"PRP"})


@dataclass(frozen=True)
class TaggedToken:
    """Word with its part-of-speech tag."""

    text: str
    tag: str

    def __post_init__(self) -> None:
        """Reject empty words or tags."""
        if not self.text or not self.tag:
            msg = f"Tagged token needs text and tag, got {self.text!r}/{self.tag!r}"
            raise InvalidInputError(msg)

    @classmethod
    def from_raw(cls, raw: str) -> TaggedToken:
        """Parse ``word_TAG``; the tag is the suffix after the last underscore."""
        word, sep, tag = raw.rpartition("_")
        if not sep or not word or not tag:
            msg = f"Token {raw!r} is not in word_TAG form"
            raise InvalidInputError(msg)
        return cls(text=word, tag=tag)

    @property
    def lower(self) -> str:
        """Return the lowercased word."""
        return self.text.lower()

    @property
    def is_noun(self) -> bool:
        """Return whether the tag is a noun tag."""
        return self.tag in NOUN_TAGS

    @property
    def is_verb(self) -> bool:
        """Return whether the tag is a verb or modal tag."""
        return self.tag.startswith("VB") or self.tag == "MD"

    @property
    def is_punctuation(self) -> bool:
        """Return whether the tag marks punctuation."""
        return self.tag in PUNCTUATION_TAGS

    def with_text(self, text: str) -> TaggedToken:
        """Return the same tag over another surface form."""
        return TaggedToken(text=text, tag=self.tag)
