"""Application services."""

from .run_recording import build_manifest, config_hash, stage_timer, utc_now
from .window_sources import load_video_windows
from .worker_pool import map_ordered

__all__ = ["build_manifest", "config_hash", "load_video_windows", "map_ordered", "stage_timer", "utc_now"]
