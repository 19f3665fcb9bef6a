"""Domain-specific errors."""


class DomainError(Exception):
    """Base class for domain errors."""


class InvalidConfigurationError(DomainError):
    """Raised when pipeline configuration is invalid."""


class InvalidInputError(DomainError):
    """Raised when an input artifact is malformed or missing."""


class DimensionMismatchError(InvalidInputError):
    """Raised when vector or model dimensions disagree."""


class InsufficientDataError(DomainError):
    """Raised when an operation receives too little data to be defined."""


class DegenerateDataError(DomainError):
    """Raised when data has no variance along a required direction."""


class GrammarError(DomainError):
    """Raised when a grammar text fails validation."""


class EmptyBankError(DomainError):
    """Raised when no connective instance could be collected."""


class VideoSetMismatchError(DomainError):
    """Raised when two inputs disagree on their set of video ids."""
