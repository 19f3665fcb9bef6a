"""Integration tests running the command line over the fixture mini-dataset."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import pytest

from story_caption.adapters.input.cli import run

pytestmark = pytest.mark.integration

if TYPE_CHECKING:
    from pathlib import Path

V1_STITCHED = "A man walks into the kitchen. Then, he sits at a table. Then, he eats food at it."
QUIET = ["--log-level", "ERROR"]


def _read_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def _outputs(directory: Path) -> dict[str, bytes]:
    return {
        str(path.relative_to(directory)): path.read_bytes()
        for path in sorted(directory.rglob("*"))
        if path.is_file() and path.name != "manifest.json"
    }


def _run_pipeline(fixtures_dir: Path, root: Path, threads: int) -> None:
    common = [*QUIET, "--threads", str(threads)]
    assert (
        run(
            [
                "segment",
                *common,
                "--window-scores",
                str(fixtures_dir / "window_scores.csv"),
                "--video-lengths",
                str(fixtures_dir / "video_lengths.csv"),
                "--output-dir",
                str(root / "segments"),
            ]
        )
        == 0
    )
    assert (
        run(
            [
                "stitch",
                *common,
                "--captions",
                str(fixtures_dir / "captions.json"),
                "--segments-dir",
                str(root / "segments"),
                "--tagger-lexicon",
                str(fixtures_dir / "tagger_lexicon.tsv"),
                "--gender-lexicon",
                str(fixtures_dir / "gender_lexicon.tsv"),
                "--lemma-exceptions",
                str(fixtures_dir / "lemma_exceptions.tsv"),
                "--embeddings",
                str(fixtures_dir / "embeddings.txt"),
                "--bank",
                str(fixtures_dir / "bank_then.json"),
                "--output-dir",
                str(root / "stitched"),
            ]
        )
        == 0
    )
    assert (
        run(
            [
                "evaluate",
                *common,
                "--stitched-dir",
                str(root / "stitched"),
                "--references",
                str(fixtures_dir / "references.json"),
                "--baseline-captions",
                str(fixtures_dir / "baseline_captions.json"),
                "--output-dir",
                str(root / "report"),
            ]
        )
        == 0
    )


def test_pipeline_segments_stitches_and_evaluates(fixtures_dir: Path, tmp_path: Path) -> None:
    """Run segment, stitch and evaluate end to end."""
    _run_pipeline(fixtures_dir, tmp_path, threads=1)

    assert _read_json(tmp_path / "segments" / "summary.json") == {
        "videos": 3,
        "avg_segments": pytest.approx(4 / 3),
        "fallback_videos": ["v2"],
    }
    assert _read_json(tmp_path / "stitched" / "v1.json")["stitched"] == V1_STITCHED
    assert _read_json(tmp_path / "stitched" / "summary.json")["avg_length"] == pytest.approx(28 / 3)
    table = (tmp_path / "report" / "report.txt").read_text(encoding="utf-8").splitlines()
    assert table[0].split() == ["System", "BLEU-4", "CIDEr", "METEOR", "Avg.", "Length"]
    assert [line.split()[0] for line in table[1:]] == ["Mid-frame", "Ours"]
    assert table[2].split()[-1] == "9.33"
    for stage in ("segments", "stitched", "report"):
        manifest = _read_json(tmp_path / stage / "manifest.json")
        assert manifest["seed"] == 0
        assert manifest["profile"] == "montreal"
        assert len(manifest["config_hash"]) == 64


def test_pipeline_outputs_do_not_depend_on_threads_or_reruns(fixtures_dir: Path, tmp_path: Path) -> None:
    """Write byte-identical outputs across reruns and thread counts."""
    _run_pipeline(fixtures_dir, tmp_path / "first", threads=1)
    _run_pipeline(fixtures_dir, tmp_path / "again", threads=1)
    _run_pipeline(fixtures_dir, tmp_path / "threaded", threads=8)

    first = _outputs(tmp_path / "first")
    assert first
    assert _outputs(tmp_path / "again") == first
    assert _outputs(tmp_path / "threaded") == first
    for stage in ("segments", "stitched", "report"):
        hashes = {_read_json(tmp_path / run_dir / stage / "manifest.json")["config_hash"] for run_dir in ("first", "threaded")}
        assert len(hashes) == 1


@pytest.mark.parametrize(
    ("profile", "threshold", "avg_segments"),
    [("montreal", -0.5, 4 / 3), ("mpii", -1.0, 7 / 3), ("longform", -0.1, 4 / 3)],
)
def test_segment_applies_profile_threshold(
    fixtures_dir: Path, tmp_path: Path, profile: str, threshold: float, avg_segments: float
) -> None:
    """Pick the score threshold from the dataset profile."""
    code = run(
        [
            "segment",
            *QUIET,
            "--profile",
            profile,
            "--window-scores",
            str(fixtures_dir / "window_scores.csv"),
            "--video-lengths",
            str(fixtures_dir / "video_lengths.csv"),
            "--output-dir",
            str(tmp_path),
        ]
    )

    assert code == 0
    assert _read_json(tmp_path / "manifest.json")["score_threshold"] == threshold
    assert _read_json(tmp_path / "summary.json")["avg_segments"] == pytest.approx(avg_segments)


def test_build_bank_collects_fixture_connectives(fixtures_dir: Path, tmp_path: Path) -> None:
    """Build the bank from the tagged fixture corpus."""
    code = run(
        [
            "build-bank",
            *QUIET,
            "--tagged-corpus",
            str(fixtures_dir / "tagged_corpus.txt"),
            "--grammar",
            str(fixtures_dir / "grammar.pcfg"),
            "--embeddings",
            str(fixtures_dir / "embeddings.txt"),
            "--output-dir",
            str(tmp_path),
        ]
    )

    assert code == 0
    bank = json.loads((tmp_path / "bank.json").read_text(encoding="utf-8"))
    assert [entry["connective"] for entry in bank] == ["then", "later", "suddenly", "happy"]
    assert set(_read_json(tmp_path / "manifest.json")["input_digests"]) == {"embeddings", "grammar", "tagged_corpus"}


def test_sweep_writes_csv_plot_and_svg(fixtures_dir: Path, tmp_path: Path) -> None:
    """Write one CSV row per threshold plus the text and SVG plots."""
    code = run(
        [
            "sweep",
            *QUIET,
            "--window-scores",
            str(fixtures_dir / "window_scores.csv"),
            "--video-lengths",
            str(fixtures_dir / "video_lengths.csv"),
            "--thresholds=-0.5,-1.0",
            "--output-dir",
            str(tmp_path),
        ]
    )

    assert code == 0
    assert (tmp_path / "sweep.csv").read_text(encoding="utf-8").splitlines() == [
        "threshold,avg_segments",
        f"-0.5,{4 / 3!r}",
        f"-1.0,{7 / 3!r}",
    ]
    assert "Average segments per video (3 videos)" in (tmp_path / "sweep.txt").read_text(encoding="utf-8")
    assert (tmp_path / "sweep.svg").read_text(encoding="utf-8").startswith("<svg")
