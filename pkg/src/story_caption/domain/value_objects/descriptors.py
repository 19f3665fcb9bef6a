"""Per-frame local motion descriptors for one video."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from story_caption.domain.exceptions import DimensionMismatchError, InvalidInputError

from .arrays import frozen_array

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

MIN_DESCRIPTOR_DIM = 2


@dataclass(frozen=True)
class DescriptorFrame:
    """One frame's descriptor."""

    frame_index: int
    descriptor: NDArray[np.float64]

    def __post_init__(self) -> None:
        """Validate the frame index and freeze the descriptor."""
        if self.frame_index < 0:
            msg = f"Frame index must be non-negative, got {self.frame_index}"
            raise InvalidInputError(msg)
        object.__setattr__(self, "descriptor", frozen_array(self.descriptor, ndim=1))


@dataclass(frozen=True)
class DescriptorSequence:
    """Time-indexed descriptors of a single video."""

    video_id: str
    frames: tuple[DescriptorFrame, ...]

    def __post_init__(self) -> None:
        """Validate ordering and shared even dimension."""
        if not self.video_id.strip():
            msg = "Descriptor sequence needs a video id"
            raise InvalidInputError(msg)
        object.__setattr__(self, "frames", tuple(self.frames))
        previous = -1
        dims = {frame.descriptor.shape[0] for frame in self.frames}
        if len(dims) > 1:
            msg = f"Descriptors of video {self.video_id} have mixed dimensions {sorted(dims)}"
            raise DimensionMismatchError(msg)
        for frame in self.frames:
            if frame.frame_index <= previous:
                msg = f"Frame indices of video {self.video_id} must be strictly increasing (frame {frame.frame_index})"
                raise InvalidInputError(msg)
            previous = frame.frame_index
        if dims:
            (dim,) = dims
            if dim < MIN_DESCRIPTOR_DIM or dim % 2:
                msg = f"Descriptor dimension must be even and at least {MIN_DESCRIPTOR_DIM}, got {dim}"
                raise DimensionMismatchError(msg)

    @classmethod
    def from_rows(cls, video_id: str, rows: Sequence[tuple[int, Sequence[float]]]) -> DescriptorSequence:
        """Build a sequence from ``(frame, vector)`` rows."""
        return cls(
            video_id=video_id,
            frames=tuple(DescriptorFrame(frame_index=frame, descriptor=np.asarray(vec)) for frame, vec in rows),
        )

    @property
    def dimension(self) -> int:
        """Return D_raw, or 0 for an empty sequence."""
        return int(self.frames[0].descriptor.shape[0]) if self.frames else 0

    @property
    def length(self) -> int:
        """Return the video length in frames implied by the last frame index."""
        return self.frames[-1].frame_index + 1 if self.frames else 0

    def matrix(self) -> NDArray[np.float64]:
        """Stack all descriptors row-wise."""
        if not self.frames:
            return np.zeros((0, 0))
        return np.vstack([frame.descriptor for frame in self.frames])

    def window(self, start: int, end: int) -> NDArray[np.float64]:
        """Stack descriptors whose frame lies in ``[start, end)``."""
        rows = [frame.descriptor for frame in self.frames if start <= frame.frame_index < end]
        if not rows:
            return np.zeros((0, self.dimension))
        return np.vstack(rows)
