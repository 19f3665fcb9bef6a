"""Lexical resources: gender lexicon, tagger lexicon, lemma exceptions and embeddings."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING

import numpy as np

from story_caption.domain.exceptions import DimensionMismatchError, InvalidInputError

from .arrays import frozen_array

if TYPE_CHECKING:
    from collections.abc import Mapping

    from numpy.typing import NDArray

DEFAULT_EMBEDDING_DIM = 300


class Gender(StrEnum):
    """Gender assigned to a noun lemma."""

    MALE = "male"
    FEMALE = "female"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class GenderLexicon:
    """Lemma to gender map plus plural overrides and proper names."""

    genders: Mapping[str, Gender]
    plural_overrides: frozenset[str] = frozenset()
    names: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        """Lowercase keys and freeze the mapping."""
        normalized: dict[str, Gender] = {}
        for token, gender in self.genders.items():
            key = token.strip().lower()
            if key in normalized and normalized[key] != gender:
                msg = f"Token {key!r} maps to two genders"
                raise InvalidInputError(msg)
            normalized[key] = Gender(gender)
        object.__setattr__(self, "genders", dict(normalized))
        object.__setattr__(self, "plural_overrides", frozenset(item.lower() for item in self.plural_overrides))
        object.__setattr__(self, "names", frozenset(item.lower() for item in self.names))

    def gender_of(self, lemma: str) -> Gender:
        """Return the lemma's gender, neutral when unknown."""
        return self.genders.get(lemma.lower(), Gender.NEUTRAL)

    def is_plural(self, lemma: str) -> bool:
        """Return whether the lexicon forces a plural reading."""
        return lemma.lower() in self.plural_overrides

    def is_name(self, token: str) -> bool:
        """Return whether the token is a known proper name."""
        return token.lower() in self.names


@dataclass(frozen=True)
class TaggerLexicon:
    """Token to part-of-speech tag map used by the caption tokenizer."""

    tags: Mapping[str, str]
    default_tag: str = "NN"

    def __post_init__(self) -> None:
        """Lowercase keys."""
        object.__setattr__(self, "tags", {token.lower(): tag for token, tag in self.tags.items()})

    def lookup(self, token: str) -> str | None:
        """Return the listed tag, or None."""
        return self.tags.get(token.lower())


@dataclass(frozen=True)
class LemmaTable:
    """Irregular inflection exceptions: surface form to lemma."""

    exceptions: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Lowercase entries."""
        object.__setattr__(self, "exceptions", {key.lower(): value.lower() for key, value in self.exceptions.items()})


@dataclass(frozen=True)
class EmbeddingTable:
    """Token vectors of one uniform dimension."""

    vectors: Mapping[str, NDArray[np.float64]]
    dimension: int = DEFAULT_EMBEDDING_DIM

    def __post_init__(self) -> None:
        """Check dimensions and finiteness."""
        frozen: dict[str, NDArray[np.float64]] = {}
        for token, vector in self.vectors.items():
            array = frozen_array(vector, ndim=1)
            if array.shape[0] != self.dimension:
                msg = f"Embedding for {token!r} has dimension {array.shape[0]}, expected {self.dimension}"
                raise DimensionMismatchError(msg)
            if not all(math.isfinite(value) for value in array):
                msg = f"Embedding for {token!r} has non-finite values"
                raise InvalidInputError(msg)
            frozen[token] = array
        object.__setattr__(self, "vectors", frozen)

    def get(self, token: str) -> NDArray[np.float64] | None:
        """Return the vector for ``token``, trying the lowercased form second."""
        vector = self.vectors.get(token)
        if vector is None:
            vector = self.vectors.get(token.lower())
        return vector

    def __len__(self) -> int:
        """Return the vocabulary size."""
        return len(self.vectors)
