"""Output ports for the application layer."""

from .artifact_store_port import ArtifactStorePort
from .report_renderer_port import ReportRendererPort
from .run_metrics_port import RunMetricsPort

__all__ = ["ArtifactStorePort", "ReportRendererPort", "RunMetricsPort"]
