"""Averaged word-vector sentence embeddings."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from story_caption.domain.value_objects import EmbeddingTable

DEFAULT_BOUNDARY_TOKEN = "</s>"  # noqa: S105


def embed_sentence(tokens: Sequence[str], table: EmbeddingTable) -> NDArray[np.float64]:
    """Average the vectors of in-vocabulary tokens; all-OOV input gives the zero vector."""
    vectors = [vector for vector in (table.get(token) for token in tokens) if vector is not None]
    if not vectors:
        return np.zeros(table.dimension)
    return np.mean(np.vstack(vectors), axis=0)


def embed_pair(
    previous: Sequence[str],
    following: Sequence[str],
    table: EmbeddingTable,
    boundary: str = DEFAULT_BOUNDARY_TOKEN,
) -> NDArray[np.float64]:
    """Embed two adjacent sentences joined by a boundary token."""
    return embed_sentence([*previous, boundary, *following], table)
