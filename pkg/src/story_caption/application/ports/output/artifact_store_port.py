"""Artifact store port contract."""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence
    from pathlib import Path

    from story_caption.application.dtos import RunManifest, WindowScore
    from story_caption.domain.value_objects import (
        ConnectiveInstance,
        DescriptorSequence,
        EmbeddingTable,
        GenderLexicon,
        GmmModel,
        LemmaTable,
        LinearOvrModel,
        PcaModel,
        SegmentationResult,
        SweepReport,
        TaggerLexicon,
    )


class ArtifactStorePort(Protocol):
    """Read and write every pipeline file format."""

    def read_text(self, path: Path) -> str:
        """Return the text content of a file."""

    def digest(self, path: Path) -> dict[str, str]:
        """Return sha256 digests of a file, or of every file under a directory."""

    def read_window_scores(self, path: Path) -> list[WindowScore]:
        """Read the precomputed window-score CSV."""

    def read_video_lengths(self, path: Path) -> dict[str, int]:
        """Read ``video_id,length`` rows."""

    def read_intervals(self, path: Path) -> dict[str, tuple[int, int]]:
        """Read ``video_id,start,end`` rows."""

    def read_descriptor_sequences(self, directory: Path) -> list[DescriptorSequence]:
        """Read every ``<id>.jsonl`` descriptor file, sorted by id."""

    def read_labels(self, path: Path) -> dict[str, str]:
        """Read ``clip_id,class`` rows."""

    def read_models(self, directory: Path) -> tuple[PcaModel, GmmModel, LinearOvrModel]:
        """Read the trained PCA, GMM and classifier."""

    def write_models(self, directory: Path, pca: PcaModel, gmm: GmmModel, classifier: LinearOvrModel) -> list[Path]:
        """Write the trained models."""

    def write_segmentation(self, directory: Path, result: SegmentationResult) -> Path:
        """Write one ``<video_id>.json`` segmentation."""

    def read_segmentations(self, directory: Path) -> dict[str, SegmentationResult]:
        """Read every segmentation file of a directory."""

    def read_captions(self, path: Path) -> dict[str, dict[int, str]]:
        """Read per-segment captions keyed by video and segment index."""

    def read_tagger_lexicon(self, path: Path) -> TaggerLexicon:
        """Read the token-to-tag lexicon."""

    def read_gender_lexicon(self, path: Path) -> GenderLexicon:
        """Read the gender lexicon."""

    def read_lemma_table(self, path: Path) -> LemmaTable:
        """Read lemma exceptions."""

    def read_embeddings(self, path: Path) -> EmbeddingTable:
        """Read a text embedding table."""

    def read_bank(self, path: Path) -> list[ConnectiveInstance]:
        """Read a connective bank."""

    def write_bank(self, path: Path, bank: Sequence[ConnectiveInstance]) -> Path:
        """Write a connective bank."""

    def write_stitched(self, directory: Path, video_id: str, sentences: Sequence[str], stitched: str) -> Path:
        """Write one stitched caption file."""

    def read_stitched(self, directory: Path) -> dict[str, str]:
        """Read stitched captions keyed by video id."""

    def read_references(self, path: Path) -> dict[str, list[str]]:
        """Read reference captions keyed by video id."""

    def read_baseline(self, path: Path) -> dict[str, str]:
        """Read one baseline caption per video."""

    def write_sweep_csv(self, path: Path, report: SweepReport) -> Path:
        """Write ``threshold,avg_segments`` rows."""

    def write_json(self, path: Path, payload: Mapping[str, object]) -> Path:
        """Write a JSON document."""

    def write_text(self, path: Path, content: str) -> Path:
        """Write a text document."""

    def write_manifest(self, directory: Path, manifest: RunManifest) -> Path:
        """Write ``manifest.json``."""
