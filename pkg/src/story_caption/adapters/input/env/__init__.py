"""Settings input adapter."""

from .adapter import SettingsAdapter
from .settings import PipelineSettings

__all__ = ["PipelineSettings", "SettingsAdapter"]
