"""Integration tests importing the package and running the console entry point."""

from __future__ import annotations

import importlib
import json
import os
import pkgutil
import subprocess
import sys
from pathlib import Path

import pytest

import story_caption
import story_caption.main

pytestmark = pytest.mark.integration

SOURCE_ROOT = Path(story_caption.__file__).resolve().parents[1]


def _module_names() -> list[str]:
    return sorted(info.name for info in pkgutil.walk_packages(story_caption.__path__, prefix="story_caption."))


def _segment_argv(fixtures_dir: Path, output_dir: Path) -> list[str]:
    return [
        "segment",
        "--log-level",
        "ERROR",
        "--window-scores",
        str(fixtures_dir / "window_scores.csv"),
        "--video-lengths",
        str(fixtures_dir / "video_lengths.csv"),
        "--output-dir",
        str(output_dir),
    ]


def _run_console(argv: list[str]) -> subprocess.CompletedProcess[str]:
    env = {**os.environ, "PYTHONPATH": os.pathsep.join(filter(None, [str(SOURCE_ROOT), os.environ.get("PYTHONPATH")]))}
    return subprocess.run(  # noqa: S603
        [sys.executable, "-m", "story_caption.main", *argv],
        capture_output=True,
        check=False,
        env=env,
        text=True,
        timeout=300,
    )


@pytest.mark.parametrize("module_name", _module_names())
def test_every_module_imports(module_name: str) -> None:
    """Import each package module without errors."""
    assert importlib.import_module(module_name).__name__ == module_name


def test_main_runs_a_subcommand_from_sys_argv(
    fixtures_dir: Path, tmp_path: Path, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    """Read the command line from ``sys.argv`` and exit with status zero."""
    monkeypatch.setattr(sys, "argv", ["story-caption", *_segment_argv(fixtures_dir, tmp_path)])

    with pytest.raises(SystemExit) as excinfo:
        story_caption.main.main()

    assert excinfo.value.code == 0
    assert capsys.readouterr().out.splitlines()[0].startswith("Segmented 3 videos")
    assert (tmp_path / "manifest.json").is_file()


def test_console_module_segments_in_a_fresh_interpreter(fixtures_dir: Path, tmp_path: Path) -> None:
    """Run the entry module as a separate process."""
    completed = _run_console(_segment_argv(fixtures_dir, tmp_path))

    assert completed.returncode == 0, completed.stderr
    assert completed.stdout.startswith("Segmented 3 videos")
    assert sorted(path.name for path in tmp_path.iterdir()) == ["manifest.json", "summary.json", "v1.json", "v2.json", "v3.json"]


def test_console_module_reports_bad_flags_as_json(tmp_path: Path) -> None:
    """Exit with status two and a JSON error line for invalid flag values."""
    completed = _run_console(["segment", "--threads", "abc", "--output-dir", str(tmp_path)])

    assert completed.returncode == 2
    assert json.loads(completed.stderr.strip().splitlines()[-1])["error"] == "ArgumentError"
