"""Shared pytest fixtures."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING

import pytest

from story_caption.adapters.output.filesystem import FilesystemArtifactStore
from story_caption.domain.services import load_grammar, read_tagged_corpus
from story_caption.domain.value_objects import EmbeddingTable, GenderLexicon, LemmaTable, Pcfg, TaggerLexicon

if TYPE_CHECKING:
    from collections.abc import Iterator

FIXTURES_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def _restore_root_logging() -> Iterator[None]:
    """Undo handler changes made by configure_logging."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
    logging.captureWarnings(capture=False)


@pytest.fixture
def fixtures_dir() -> Path:
    """Provide the directory of the shipped mini-dataset."""
    return FIXTURES_DIR


@pytest.fixture
def store() -> FilesystemArtifactStore:
    """Provide a filesystem artifact store."""
    return FilesystemArtifactStore()


@pytest.fixture
def fixture_grammar() -> Pcfg:
    """Provide the toy connective grammar."""
    return load_grammar((FIXTURES_DIR / "grammar.pcfg").read_text(encoding="utf-8"))


@pytest.fixture
def fixture_corpus() -> list:
    """Provide the 10-pair tagged corpus."""
    return read_tagged_corpus((FIXTURES_DIR / "tagged_corpus.txt").read_text(encoding="utf-8"))


@pytest.fixture
def embeddings(store: FilesystemArtifactStore) -> EmbeddingTable:
    """Provide the 4-dimensional fixture embeddings."""
    return store.read_embeddings(FIXTURES_DIR / "embeddings.txt")


@pytest.fixture
def tagger(store: FilesystemArtifactStore) -> TaggerLexicon:
    """Provide the fixture tagger lexicon."""
    return store.read_tagger_lexicon(FIXTURES_DIR / "tagger_lexicon.tsv")


@pytest.fixture
def gender_lexicon(store: FilesystemArtifactStore) -> GenderLexicon:
    """Provide the fixture gender lexicon."""
    return store.read_gender_lexicon(FIXTURES_DIR / "gender_lexicon.tsv")


@pytest.fixture
def lemma_table(store: FilesystemArtifactStore) -> LemmaTable:
    """Provide the fixture lemma exceptions."""
    return store.read_lemma_table(FIXTURES_DIR / "lemma_exceptions.tsv")
