"""Filesystem artifact store adapter."""

from .adapter import FilesystemArtifactStore

__all__ = ["FilesystemArtifactStore"]
