"""Command-line interface for the caption pipeline."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any, NoReturn

from story_caption.adapters.input.env import SettingsAdapter
from story_caption.adapters.output.filesystem import FilesystemArtifactStore
from story_caption.adapters.output.metrics import InMemoryRunMetricsAdapter
from story_caption.adapters.output.report import JinjaReportRenderer
from story_caption.application import (
    BuildConnectiveBankUseCase,
    EvaluateCaptionsUseCase,
    SegmentVideosUseCase,
    StitchCaptionsUseCase,
    SweepThresholdsUseCase,
    TrainEncoderUseCase,
)
from story_caption.config import LoggingSettings, configure_logging
from story_caption.domain.exceptions import DomainError

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from story_caption.application.dtos import (
        BankSummary,
        EvaluationSummary,
        SegmentSummary,
        StitchSummary,
        SweepSummary,
        TrainSummary,
    )

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL_ERROR = 1
EXIT_BAD_INPUT = 2

# (flag, settings key) per subcommand; keys under ``inputs`` are artifact paths.
_PATH_FLAGS: dict[str, tuple[tuple[str, str], ...]] = {
    "train": (("--descriptors-dir", "descriptors_dir"), ("--labels", "labels")),
    "segment": (
        ("--window-scores", "window_scores"),
        ("--descriptors-dir", "descriptors_dir"),
        ("--models-dir", "models_dir"),
        ("--video-lengths", "video_lengths"),
        ("--intervals", "intervals"),
    ),
    "build-bank": (("--tagged-corpus", "tagged_corpus"), ("--grammar", "grammar"), ("--embeddings", "embeddings")),
    "stitch": (
        ("--captions", "captions"),
        ("--segments-dir", "segments_dir"),
        ("--tagger-lexicon", "tagger_lexicon"),
        ("--gender-lexicon", "gender_lexicon"),
        ("--lemma-exceptions", "lemma_exceptions"),
        ("--embeddings", "embeddings"),
        ("--bank", "bank"),
    ),
    "evaluate": (("--stitched-dir", "stitched_dir"), ("--references", "references"), ("--baseline-captions", "baseline_captions")),
}
_PATH_FLAGS["sweep"] = _PATH_FLAGS["segment"]


def _echo(message: str = "") -> None:
    """Write a user-facing message to stdout."""
    sys.stdout.write(f"{message}\n")


def _thresholds(value: str) -> list[float]:
    try:
        return [float(item) for item in value.split(",") if item.strip()]
    except ValueError as err:
        msg = f"expected comma-separated numbers, got {value!r}"
        raise argparse.ArgumentTypeError(msg) from err


class _JsonErrorParser(argparse.ArgumentParser):
    """Argument parser that ends usage errors with the JSON error line."""

    def error(self, message: str) -> NoReturn:
        """Print usage and the JSON error line, then exit with the bad-input code."""
        self.print_usage(sys.stderr)
        sys.stderr.write(json.dumps({"error": "ArgumentError", "message": f"{self.prog}: {message}"}) + "\n")
        self.exit(EXIT_BAD_INPUT)


def _global_options() -> argparse.ArgumentParser:
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--config", type=Path, default=argparse.SUPPRESS, help="TOML or YAML config file.")
    options.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Random seed (default: 0).")
    options.add_argument(
        "--profile",
        default=argparse.SUPPRESS,
        help="Dataset profile: montreal (-0.5), mpii (-1.0), longform (-0.1) or custom.",
    )
    options.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="Worker threads, 1..64 (default: 1).")
    options.add_argument("--log-level", default=argparse.SUPPRESS, help="DEBUG, INFO, WARNING or ERROR.")
    options.add_argument("--log-format", default=argparse.SUPPRESS, help="text or json.")
    return options


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per pipeline step."""
    options = _global_options()
    parser = _JsonErrorParser(
        prog="story-caption",
        description="Localize actions in videos and stitch per-segment captions into one story-like paragraph.",
        parents=[options],
    )
    commands = parser.add_subparsers(dest="command", required=True)
    helps = {
        "train": "Fit PCA, GMM and one-vs-rest classifiers on labeled clips.",
        "segment": "Segment videos into runs of same-class action windows.",
        "build-bank": "Collect connective instances from a tagged corpus.",
        "stitch": "Stitch per-segment captions into one caption per video.",
        "evaluate": "Score stitched captions against references.",
        "sweep": "Average segments per video over several score thresholds.",
    }
    for command, help_text in helps.items():
        sub = commands.add_parser(command, help=help_text, description=help_text, parents=[options])
        for flag, _ in _PATH_FLAGS.get(command, ()):
            sub.add_argument(flag, type=Path, default=None)
        sub.add_argument("--output-dir", type=Path, default=None, help="Directory for outputs and manifest.json.")
        if command in {"segment", "sweep"}:
            sub.add_argument("--score-threshold", type=float, default=None, help="Override the profile threshold.")
        if command == "sweep":
            sub.add_argument("--thresholds", type=_thresholds, default=None, help="Comma-separated thresholds.")
        if command == "train":
            sub.add_argument("--pca-dim", type=int, default=None)
            sub.add_argument("--gmm-components", type=int, default=None)
        if command == "build-bank":
            sub.add_argument("--max-instances", type=int, default=None, help="Bank size cap (default: 500).")
            sub.add_argument("--strict-grammar", action="store_true", default=None, help="Reject rule mass above 1.")
        if command == "stitch":
            sub.add_argument("--missing-captions", choices=["skip", "passthrough"], default=None)
    return parser


def collect_overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Turn parsed flags into nested settings overrides, leaving unset flags out."""
    overrides: dict[str, Any] = {}
    for name in ("seed", "profile", "threads", "log_level", "log_format"):
        if hasattr(args, name):
            overrides[name] = getattr(args, name)
    inputs = {key: getattr(args, key) for _, key in _PATH_FLAGS.get(args.command, ()) if getattr(args, key) is not None}
    if inputs:
        overrides["inputs"] = inputs
    scalar_flags = {
        "output_dir": "output_dir",
        "thresholds": "sweep_thresholds",
        "max_instances": "bank_max_instances",
        "strict_grammar": "grammar_strict",
        "missing_captions": "missing_caption_policy",
    }
    for flag, key in scalar_flags.items():
        value = getattr(args, flag, None)
        if value is not None:
            overrides[key] = value
    window = {"score_threshold": getattr(args, "score_threshold", None)}
    encoding = {"pca_dim": getattr(args, "pca_dim", None), "gmm_components": getattr(args, "gmm_components", None)}
    for section, values in (("window", window), ("encoding", encoding)):
        present = {key: value for key, value in values.items() if value is not None}
        if present:
            overrides[section] = present
    return overrides


def _run_command(command: str, config_args: argparse.Namespace) -> None:
    config = SettingsAdapter().load(getattr(config_args, "config", None), collect_overrides(config_args))
    configure_logging(LoggingSettings(level=config.log_level, log_format=config.log_format))
    store = FilesystemArtifactStore()
    renderer = JinjaReportRenderer()
    metrics = InMemoryRunMetricsAdapter()
    LOGGER.info(
        "Command started",
        extra={"component": "cli", "command": command, "profile": str(config.profile), "threads": config.threads},
    )
    runners: dict[str, Callable[[], None]] = {
        "train": lambda: _echo_train(TrainEncoderUseCase(store=store, metrics=metrics).execute(config)),
        "segment": lambda: _echo_segment(SegmentVideosUseCase(store=store, metrics=metrics).execute(config), config.score_threshold),
        "build-bank": lambda: _echo_bank(BuildConnectiveBankUseCase(store=store, metrics=metrics).execute(config)),
        "stitch": lambda: _echo_stitch(StitchCaptionsUseCase(store=store, metrics=metrics).execute(config)),
        "evaluate": lambda: _echo_evaluation(
            EvaluateCaptionsUseCase(store=store, renderer=renderer, metrics=metrics).execute(config), renderer
        ),
        "sweep": lambda: _echo_sweep(SweepThresholdsUseCase(store=store, renderer=renderer, metrics=metrics).execute(config), renderer),
    }
    runners[command]()


def _echo_train(summary: TrainSummary) -> None:
    _echo(f"Trained {len(summary.classes)} classes on {summary.clips} clips (PCA {summary.pca_dim}, GMM {summary.gmm_components})")
    _echo(f"Models: {summary.output_dir}")


def _echo_segment(summary: SegmentSummary, threshold: float) -> None:
    _echo(f"Segmented {summary.videos} videos at threshold {threshold}: {summary.avg_segments:.2f} segments per video")
    if summary.fallback_videos:
        _echo(f"Whole-video fallback: {', '.join(summary.fallback_videos)}")
    _echo(f"Output: {summary.output_dir}")


def _echo_bank(summary: BankSummary) -> None:
    counts = ", ".join(f"{word} {count}" for word, count in sorted(summary.connectives.items()))
    _echo(f"Connective bank: {summary.instances} instances from {summary.pairs} pairs ({counts})")
    _echo(f"Bank: {summary.bank_path}")


def _echo_stitch(summary: StitchSummary) -> None:
    _echo(f"Stitched {summary.videos} videos, average length {summary.avg_length:.2f} tokens")
    if summary.skipped_videos:
        _echo(f"Skipped: {', '.join(summary.skipped_videos)}")
    _echo(f"Output: {summary.output_dir}")


def _echo_evaluation(summary: EvaluationSummary, renderer: JinjaReportRenderer) -> None:
    sys.stdout.write(renderer.render_evaluation_table(summary.reports))
    _echo(f"Report: {summary.output_dir}")


def _echo_sweep(summary: SweepSummary, renderer: JinjaReportRenderer) -> None:
    sys.stdout.write(renderer.render_sweep_plot(summary.report))
    _echo(f"Output: {summary.output_dir}")


def _fail(error: BaseException) -> None:
    sys.stderr.write(json.dumps({"error": type(error).__name__, "message": str(error)}) + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    try:
        _run_command(args.command, args)
    except DomainError as err:
        LOGGER.debug("Command rejected", extra={"component": "cli", "command": args.command, "error_type": type(err).__name__})
        _fail(err)
        return EXIT_BAD_INPUT
    except Exception as err:
        LOGGER.exception("Command failed", extra={"component": "cli", "command": args.command})
        _fail(err)
        return EXIT_INTERNAL_ERROR
    return EXIT_OK
