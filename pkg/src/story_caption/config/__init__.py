"""Configuration helpers for the caption pipeline."""

from .logging_config import LoggingSettings, configure_logging

__all__ = ["LoggingSettings", "configure_logging"]
