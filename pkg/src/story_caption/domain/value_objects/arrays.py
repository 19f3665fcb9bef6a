"""Read-only numpy array helpers for value objects."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from story_caption.domain.exceptions import InvalidInputError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray


def frozen_array(values: ArrayLike, *, ndim: int) -> NDArray[np.float64]:
    """Return a float64 copy of ``values`` that cannot be written to."""
    array = np.array(values, dtype=np.float64, copy=True)
    if array.ndim != ndim:
        msg = f"Expected a {ndim}-dimensional array, got {array.ndim} dimensions"
        raise InvalidInputError(msg)
    array.flags.writeable = False
    return array
