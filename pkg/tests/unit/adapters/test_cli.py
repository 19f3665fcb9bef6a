"""Unit tests for the command-line adapter."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from story_caption.adapters.input.cli import app
from story_caption.adapters.input.cli.app import build_parser, collect_overrides, run


def _last_stderr_line(captured: pytest.CaptureResult[str]) -> dict[str, str]:
    return json.loads(captured.err.strip().splitlines()[-1])


def test_collect_overrides_keeps_only_given_flags() -> None:
    """Leave unset flags out so lower-precedence sources still apply."""
    args = build_parser().parse_args(
        ["--seed", "3", "segment", "--profile", "mpii", "--window-scores", "s.csv", "--score-threshold", "-0.7"]
    )

    assert collect_overrides(args) == {
        "seed": 3,
        "profile": "mpii",
        "inputs": {"window_scores": Path("s.csv")},
        "window": {"score_threshold": -0.7},
    }


def test_collect_overrides_maps_command_specific_flags() -> None:
    """Map bank and sweep flags onto their settings keys."""
    bank = build_parser().parse_args(["build-bank", "--strict-grammar", "--max-instances", "5", "--threads", "4"])
    sweep = build_parser().parse_args(["sweep", "--thresholds=-0.2,-0.4", "--output-dir", "out"])
    stitch = build_parser().parse_args(["stitch", "--missing-captions", "passthrough"])

    assert collect_overrides(bank) == {"threads": 4, "bank_max_instances": 5, "grammar_strict": True}
    assert collect_overrides(sweep) == {"output_dir": Path("out"), "sweep_thresholds": [-0.2, -0.4]}
    assert collect_overrides(stitch) == {"missing_caption_policy": "passthrough"}


def test_collect_overrides_maps_training_options() -> None:
    """Nest encoder flags under the encoding section."""
    args = build_parser().parse_args(["train", "--pca-dim", "16", "--labels", "labels.csv"])

    assert collect_overrides(args) == {"inputs": {"labels": Path("labels.csv")}, "encoding": {"pca_dim": 16}}


@pytest.mark.parametrize(
    "argv",
    [[], ["segment", "--missing-captions", "skip"], ["sweep", "--thresholds=a,b"], ["stitch", "--missing-captions", "drop"]],
)
def test_run_exits_on_usage_errors(argv: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    """End usage errors with exit code two and the JSON error line."""
    with pytest.raises(SystemExit) as excinfo:
        run(argv)

    assert excinfo.value.code == 2
    assert _last_stderr_line(capsys.readouterr())["error"] == "ArgumentError"


def test_run_reports_invalid_flag_values_as_json(capsys: pytest.CaptureFixture[str]) -> None:
    """Name the subcommand, flag and rejected value in the error line."""
    with pytest.raises(SystemExit) as excinfo:
        run(["segment", "--threads", "abc"])

    captured = capsys.readouterr()
    assert excinfo.value.code == 2
    assert captured.err.startswith("usage: story-caption segment")
    assert _last_stderr_line(captured) == {
        "error": "ArgumentError",
        "message": "story-caption segment: argument --threads: invalid int value: 'abc'",
    }


def test_run_segments_fixture_videos(fixtures_dir: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Print a summary and return zero on success."""
    code = run(
        [
            "segment",
            "--log-level",
            "ERROR",
            "--window-scores",
            str(fixtures_dir / "window_scores.csv"),
            "--video-lengths",
            str(fixtures_dir / "video_lengths.csv"),
            "--output-dir",
            str(tmp_path),
        ]
    )

    lines = capsys.readouterr().out.splitlines()
    assert code == 0
    assert lines[0] == "Segmented 3 videos at threshold -0.5: 1.33 segments per video"
    assert lines[1] == "Whole-video fallback: v2"
    assert lines[2] == f"Output: {tmp_path}"


def test_run_reports_domain_errors_with_exit_code_two(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Print a JSON error line and return 2 for rejected input."""
    code = run(["segment", "--log-level", "ERROR", "--output-dir", str(tmp_path)])

    assert code == 2
    error = _last_stderr_line(capsys.readouterr())
    assert error["error"] == "InvalidConfigurationError"
    assert "window_scores or descriptors_dir" in error["message"]


def test_run_reports_configuration_errors(capsys: pytest.CaptureFixture[str]) -> None:
    """Reject the custom profile without a threshold before running anything."""
    code = run(["segment", "--profile", "custom"])

    assert code == 2
    assert _last_stderr_line(capsys.readouterr())["error"] == "InvalidConfigurationError"


def test_run_reports_unexpected_errors_with_exit_code_one(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    """Return 1 and name the exception type for internal failures."""

    class _ExplodingUseCase:
        def __init__(self, **_: object) -> None:
            pass

        def execute(self, config: object) -> None:
            _ = config
            msg = "boom"
            raise RuntimeError(msg)

    monkeypatch.setattr(app, "SegmentVideosUseCase", _ExplodingUseCase)

    code = run(["segment", "--log-level", "ERROR", "--output-dir", str(tmp_path)])

    assert code == 1
    assert _last_stderr_line(capsys.readouterr()) == {"error": "RuntimeError", "message": "boom"}
