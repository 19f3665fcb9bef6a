"""Dataset profiles selecting default score thresholds."""

from __future__ import annotations

from enum import StrEnum

from story_caption.domain.exceptions import InvalidConfigurationError


class DatasetProfile(StrEnum):
    """Known dataset profiles."""

    MONTREAL = "montreal"
    MPII = "mpii"
    LONGFORM = "longform"
    CUSTOM = "custom"

    @classmethod
    def from_raw(cls, value: str) -> DatasetProfile:
        """Parse a profile name case-insensitively."""
        normalized = value.strip().lower()
        try:
            return cls(normalized)
        except ValueError as err:
            allowed = ", ".join(member.value for member in cls)
            msg = f"Profile must be one of: {allowed}"
            raise InvalidConfigurationError(msg) from err

    @property
    def default_threshold(self) -> float | None:
        """Return the profile's score threshold, or None for custom."""
        return _PROFILE_THRESHOLDS.get(self)

    def resolve_threshold(self, override: float | None) -> float:
        """Return the explicit override or the profile default."""
        if override is not None:
            return override
        threshold = self.default_threshold
        if threshold is None:
            msg = "Profile 'custom' requires an explicit score_threshold"
            raise InvalidConfigurationError(msg)
        return threshold


_PROFILE_THRESHOLDS: dict[DatasetProfile, float] = {
    DatasetProfile.MONTREAL: -0.5,
    DatasetProfile.MPII: -1.0,
    DatasetProfile.LONGFORM: -0.1,
}
