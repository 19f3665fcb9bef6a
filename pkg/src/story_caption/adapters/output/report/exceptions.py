"""Report adapter-specific errors."""

from story_caption.domain.exceptions import DomainError


class ReportRenderError(DomainError):
    """Raised when a report template cannot be loaded or rendered."""
