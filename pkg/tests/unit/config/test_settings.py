"""Unit tests for the pipeline settings adapter."""

from __future__ import annotations

from pathlib import Path

import pytest

from story_caption.adapters.input.env import SettingsAdapter
from story_caption.domain.exceptions import InvalidConfigurationError
from story_caption.domain.value_objects import DatasetProfile

TOML_CONFIG = """
profile = "mpii"
seed = 7

[window]
lengths = [15, 30]
stride = 15

[inputs]
window_scores = "scores.csv"
"""

YAML_CONFIG = """
profile: longform
seed: 7
window:
  lengths: [15, 30]
  stride: 15
inputs:
  window_scores: scores.csv
"""


@pytest.fixture(autouse=True)
def _clear_pipeline_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep developer environment variables out of these tests."""
    for name in ("STORY_CAPTION_PROFILE", "STORY_CAPTION_SEED", "STORY_CAPTION_LOG_LEVEL", "STORY_CAPTION_THREADS"):
        monkeypatch.delenv(name, raising=False)


def test_settings_loads_defaults() -> None:
    """Use the montreal profile and its threshold by default."""
    config = SettingsAdapter().load()

    assert config.profile is DatasetProfile.MONTREAL
    assert config.score_threshold == -0.5
    assert config.window.lengths == (30, 60, 90, 120)
    assert config.window.stride == 30
    assert config.window.nms_iou == 0.2
    assert config.seed == 0
    assert config.threads == 1
    assert config.bank_max_instances == 500
    assert config.missing_caption_policy == "skip"
    assert config.log_format == "text"


@pytest.mark.parametrize(
    ("profile", "expected"),
    [("montreal", -0.5), ("MPII", -1.0), (" longform ", -0.1)],
)
def test_settings_resolve_profile_thresholds(profile: str, expected: float) -> None:
    """Map each dataset profile to its default threshold."""
    assert SettingsAdapter().load(overrides={"profile": profile}).score_threshold == expected


def test_settings_explicit_threshold_beats_profile() -> None:
    """Prefer an explicit score threshold over the profile default."""
    config = SettingsAdapter().load(overrides={"profile": "mpii", "window": {"score_threshold": -0.3}})

    assert config.profile is DatasetProfile.MPII
    assert config.score_threshold == -0.3


def test_settings_custom_profile_requires_threshold() -> None:
    """Reject the custom profile without an explicit threshold."""
    with pytest.raises(InvalidConfigurationError, match="custom"):
        SettingsAdapter().load(overrides={"profile": "custom"})


def test_settings_rejects_unknown_profile() -> None:
    """Reject profile names outside the known set."""
    with pytest.raises(InvalidConfigurationError, match="Profile must be one of"):
        SettingsAdapter().load(overrides={"profile": "youtube"})


@pytest.mark.parametrize(("name", "content"), [("config.toml", TOML_CONFIG), ("config.yaml", YAML_CONFIG)])
def test_settings_read_config_file(tmp_path: Path, name: str, content: str) -> None:
    """Read nested sections from TOML and YAML files."""
    path = tmp_path / name
    path.write_text(content, encoding="utf-8")

    config = SettingsAdapter().load(path)

    assert config.seed == 7
    assert config.window.lengths == (15, 30)
    assert config.window.stride == 15
    assert config.inputs.window_scores == Path("scores.csv")


def test_settings_precedence_is_overrides_then_env_then_file(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Let flags beat environment variables and environment variables beat the file."""
    path = tmp_path / "config.toml"
    path.write_text(TOML_CONFIG, encoding="utf-8")
    monkeypatch.setenv("STORY_CAPTION_SEED", "11")
    monkeypatch.setenv("STORY_CAPTION_PROFILE", "longform")

    config = SettingsAdapter().load(path, {"seed": 13})

    assert config.seed == 13
    assert config.profile is DatasetProfile.LONGFORM
    assert config.window.stride == 15


def test_settings_read_nested_environment_variables(monkeypatch: pytest.MonkeyPatch) -> None:
    """Read nested fields through the double-underscore delimiter."""
    monkeypatch.setenv("STORY_CAPTION_WINDOW__NMS_IOU", "0.5")

    assert SettingsAdapter().load().window.nms_iou == 0.5


def test_settings_config_hash_ignores_threads() -> None:
    """Keep thread count and output location out of the canonical form."""
    first = SettingsAdapter().load(overrides={"threads": 1, "output_dir": "a"}).to_canonical_dict()
    second = SettingsAdapter().load(overrides={"threads": 8, "output_dir": "b"}).to_canonical_dict()

    assert first == second


def test_settings_config_hash_ignores_input_locations() -> None:
    """Hash which inputs are set, not where they live."""
    first = SettingsAdapter().load(overrides={"inputs": {"segments_dir": "/runs/a/segments", "bank": "a/bank.json"}})
    second = SettingsAdapter().load(overrides={"inputs": {"segments_dir": "/runs/b/segments", "bank": "b/bank.json"}})
    fewer = SettingsAdapter().load(overrides={"inputs": {"segments_dir": "/runs/a/segments"}})

    assert first.to_canonical_dict() == second.to_canonical_dict()
    assert first.to_canonical_dict()["inputs"] == ["bank", "segments_dir"]
    assert fewer.to_canonical_dict() != first.to_canonical_dict()


@pytest.mark.parametrize("name", ["config.ini", "config.json"])
def test_settings_reject_unsupported_config_suffix(tmp_path: Path, name: str) -> None:
    """Accept only TOML and YAML config files."""
    path = tmp_path / name
    path.write_text("", encoding="utf-8")

    with pytest.raises(InvalidConfigurationError, match=".toml, .yaml or .yml"):
        SettingsAdapter().load(path)


def test_settings_reject_missing_config_file(tmp_path: Path) -> None:
    """Reject a config path that does not exist."""
    with pytest.raises(InvalidConfigurationError, match="does not exist"):
        SettingsAdapter().load(tmp_path / "absent.toml")


def test_settings_reject_unknown_keys(tmp_path: Path) -> None:
    """Reject keys the settings model does not know."""
    path = tmp_path / "config.toml"
    path.write_text("[window]\nwidth = 3\n", encoding="utf-8")

    with pytest.raises(InvalidConfigurationError, match="Invalid configuration"):
        SettingsAdapter().load(path)


@pytest.mark.parametrize("overrides", [{"threads": 0}, {"threads": 65}, {"window": {"stride": 7}}, {"seed": -1}])
def test_settings_reject_out_of_range_values(overrides: dict[str, object]) -> None:
    """Reject thread counts, window geometry and seeds out of range."""
    with pytest.raises(InvalidConfigurationError):
        SettingsAdapter().load(overrides=overrides)


def test_settings_rejects_invalid_log_level(monkeypatch: pytest.MonkeyPatch) -> None:
    """Raise when the log level is not allowed."""
    monkeypatch.setenv("STORY_CAPTION_LOG_LEVEL", "verbose")

    with pytest.raises(InvalidConfigurationError):
        SettingsAdapter().load()


def test_settings_normalizes_log_level_and_format() -> None:
    """Normalize the log level to upper case and the format to lower case."""
    config = SettingsAdapter().load(overrides={"log_level": "warning", "log_format": "JSON"})

    assert config.log_level == "WARNING"
    assert config.log_format == "json"
