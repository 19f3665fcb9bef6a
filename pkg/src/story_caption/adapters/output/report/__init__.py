"""Jinja2 report renderer."""

from .adapter import JinjaReportRenderer
from .exceptions import ReportRenderError

__all__ = ["JinjaReportRenderer", "ReportRenderError"]
