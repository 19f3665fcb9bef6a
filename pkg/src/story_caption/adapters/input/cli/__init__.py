"""Argparse command-line adapter."""

from .app import build_parser, collect_overrides, run

__all__ = ["build_parser", "collect_overrides", "run"]
