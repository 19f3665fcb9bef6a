"""Run manifest written next to every subcommand's outputs."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class RunManifest:
    """Determinism audit record: same hash and digests means same outputs."""

    command: str
    config_hash: str
    input_digests: dict[str, str]
    artifact_versions: dict[str, str]
    started_at: str
    finished_at: str
    score_threshold: float
    profile: str
    seed: int
    timings: dict[str, dict[str, float]] = field(default_factory=dict)

    def to_dict(self) -> dict[str, object]:
        """Return a JSON-safe mapping."""
        return {
            "command": self.command,
            "config_hash": self.config_hash,
            "input_digests": dict(sorted(self.input_digests.items())),
            "artifact_versions": dict(sorted(self.artifact_versions.items())),
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "score_threshold": self.score_threshold,
            "profile": self.profile,
            "seed": self.seed,
            "timings": self.timings,
        }
