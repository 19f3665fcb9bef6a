"""Console entry point for the story caption pipeline."""

from __future__ import annotations

import sys

from story_caption.adapters.input.cli import run


def main() -> None:
    """Run the ``story-caption`` command line."""
    sys.exit(run())


if __name__ == "__main__":
    main()
