"""Caption tokenization, detokenization and noun lemmatization."""

from __future__ import annotations

import re
from typing import TYPE_CHECKING

from story_caption.domain.value_objects import TaggedToken

if TYPE_CHECKING:
    from collections.abc import Sequence

    from story_caption.domain.value_objects import LemmaTable, TaggerLexicon

_TOKEN_PATTERN = re.compile(r"[A-Za-z0-9]+(?:'[A-Za-z]+)*|[^\sA-Za-z0-9]")
_CLOSING = frozenset({".", ",", "!", "?", ";", ":", ")"})
_MIN_STEM = 3

# suffix -> replacement, first match wins
_SUFFIX_RULES: tuple[tuple[str, str], ...] = (
    ("ies", "y"),
    ("ves", "f"),
    ("sses", "ss"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("xes", "x"),
)
_KEEP_S = ("ss", "us", "is")


def _default_tag(text: str, position: int) -> str | None:
    if text == ",":
        return ","
    if not text[0].isalnum():
        return "."
    if text.isdigit():
        return "CD"
    if position > 0 and text[0].isupper():
        return "NNP"
    return None


def tokenize_caption(text: str, lexicon: TaggerLexicon) -> tuple[TaggedToken, ...]:
    """Split a caption into words and punctuation and tag them from the lexicon."""
    tokens = []
    for position, word in enumerate(_TOKEN_PATTERN.findall(text)):
        tag = lexicon.lookup(word) or _default_tag(word, position) or lexicon.default_tag
        tokens.append(TaggedToken(text=word, tag=tag))
    return tuple(tokens)


def detokenize(tokens: Sequence[TaggedToken]) -> str:
    """Join tokens with spaces, attaching punctuation to the token before it."""
    parts: list[str] = []
    for token in tokens:
        if parts and (token.text in _CLOSING or token.is_punctuation):
            parts[-1] += token.text
        else:
            parts.append(token.text)
    return " ".join(parts)


def lemmatize(token: str, table: LemmaTable) -> str:
    """Return the lemma of a noun: exception table first, then suffix rules."""
    word = token.lower()
    exception = table.exceptions.get(word)
    if exception is not None:
        return exception
    for suffix, replacement in _SUFFIX_RULES:
        if word.endswith(suffix) and len(word) - len(suffix) >= _MIN_STEM - 1:
            return word[: -len(suffix)] + replacement
    if word.endswith("s") and not word.endswith(_KEEP_S) and len(word) > _MIN_STEM:
        return word[:-1]
    return word
