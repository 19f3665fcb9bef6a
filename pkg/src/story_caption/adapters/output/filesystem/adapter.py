"""Filesystem artifact store."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
from typing import TYPE_CHECKING, TypeVar
from uuid import uuid4

import numpy as np
from pydantic import BaseModel, ValidationError

from story_caption.application.dtos import WindowScore
from story_caption.application.ports.output import ArtifactStorePort
from story_caption.domain.exceptions import DimensionMismatchError, DomainError, InvalidInputError
from story_caption.domain.value_objects import (
    ConnectiveInstance,
    DescriptorSequence,
    EmbeddingTable,
    Gender,
    GenderLexicon,
    GmmModel,
    LemmaTable,
    LinearOvrModel,
    PcaModel,
    Segment,
    SegmentationResult,
    TaggerLexicon,
)

from .schemas import (
    BankEntry,
    BankFile,
    BaselineFile,
    CaptionsFile,
    ClassifierFile,
    DescriptorRow,
    GmmFile,
    IntervalRow,
    LabelRow,
    PcaFile,
    ReferencesFile,
    SegmentationFile,
    SegmentEntry,
    StitchedFile,
    VideoLengthRow,
    WindowScoreRow,
)

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator, Mapping, Sequence
    from pathlib import Path

    from story_caption.application.dtos import RunManifest
    from story_caption.domain.value_objects import SweepReport

LOGGER = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)
DomainT = TypeVar("DomainT")

PCA_FILE = "pca.json"
GMM_FILE = "gmm.json"
CLASSIFIER_FILE = "classifier.json"
MANIFEST_FILE = "manifest.json"
SUMMARY_FILE = "summary.json"
_RESERVED_JSON = frozenset({MANIFEST_FILE, SUMMARY_FILE})
_NAME_FLAG = "name"
_PLURAL_FLAG = "plural"


def _describe(exc: ValidationError) -> str:
    first = exc.errors()[0]
    field = ".".join(str(part) for part in first["loc"]) or "<root>"
    return f"field {field}: {first['msg']}"


def _check_model_dimensions(directory: Path, pca: PcaFile, gmm: GmmFile, classifier: ClassifierFile) -> None:
    """Check each model file against its declared dimensions, then the files against each other."""
    pca_path, gmm_path, clf_path = directory / PCA_FILE, directory / GMM_FILE, directory / CLASSIFIER_FILE
    fisher_dim = 2 * gmm.components * gmm.dim
    checks: list[tuple[Path, str, int, str, int]] = [
        (pca_path, "len(mean)", len(pca.mean), "input_dim", pca.input_dim),
        (pca_path, "len(projection)", len(pca.projection), "input_dim", pca.input_dim),
        *((pca_path, f"len(projection[{index}])", len(row), "output_dim", pca.output_dim) for index, row in enumerate(pca.projection)),
        (pca_path, "len(eigenvalues)", len(pca.eigenvalues), "output_dim", pca.output_dim),
        (pca_path, "len(scale)", len(pca.scale), "output_dim", pca.output_dim),
        (gmm_path, "len(weights)", len(gmm.weights), "components", gmm.components),
        (gmm_path, "len(means)", len(gmm.means), "components", gmm.components),
        (gmm_path, "len(variances)", len(gmm.variances), "components", gmm.components),
        *((gmm_path, f"len(means[{index}])", len(row), "dim", gmm.dim) for index, row in enumerate(gmm.means)),
        *((gmm_path, f"len(variances[{index}])", len(row), "dim", gmm.dim) for index, row in enumerate(gmm.variances)),
        (clf_path, "len(weights)", len(classifier.weights), "len(classes)", len(classifier.classes)),
        (clf_path, "len(biases)", len(classifier.biases), "len(classes)", len(classifier.classes)),
        *((clf_path, f"len(weights[{index}])", len(row), "dim", classifier.dim) for index, row in enumerate(classifier.weights)),
        (gmm_path, "dim", gmm.dim, f"{PCA_FILE} output_dim", pca.output_dim),
        (clf_path, "dim", classifier.dim, f"2*components*dim of {GMM_FILE}", fisher_dim),
    ]
    for path, field, actual, expected_name, expected in checks:
        if actual != expected:
            msg = f"{path}: {field}={actual} but {expected_name}={expected}"
            raise DimensionMismatchError(msg)


class FilesystemArtifactStore(ArtifactStorePort):
    """Read and write pipeline artifacts as JSON, JSONL, CSV and TSV files."""

    def read_text(self, path: Path) -> str:
        """Return the text content of a file."""
        try:
            return path.read_text(encoding="utf-8")
        except OSError as err:
            msg = f"Cannot read {path}: {err.strerror}"
            raise InvalidInputError(msg) from err

    def digest(self, path: Path) -> dict[str, str]:
        """Return sha256 digests of a file, or of every file under a directory."""
        if path.is_dir():
            return {
                child.relative_to(path).as_posix(): hashlib.sha256(child.read_bytes()).hexdigest()
                for child in sorted(path.rglob("*"))
                if child.is_file()
            }
        return {"": hashlib.sha256(path.read_bytes()).hexdigest()}

    # -- localization inputs -------------------------------------------------

    def read_window_scores(self, path: Path) -> list[WindowScore]:
        """Read ``video_id,start,end,class,score`` rows."""
        rows = [self._validate(WindowScoreRow, row, path, line) for line, row in self._csv_rows(path)]
        scores = []
        for line, row in enumerate(rows, start=2):
            if row.end <= row.start:
                msg = f"{path}:{line}: field end: window [{row.start}, {row.end}) is empty"
                raise InvalidInputError(msg)
            scores.append(
                WindowScore(video_id=row.video_id, start_frame=row.start, end_frame=row.end, class_id=row.class_id, score=row.score)
            )
        return scores

    def read_video_lengths(self, path: Path) -> dict[str, int]:
        """Read ``video_id,length`` rows."""
        return {row.video_id: row.length for row in (self._validate(VideoLengthRow, raw, path, line) for line, raw in self._csv_rows(path))}

    def read_intervals(self, path: Path) -> dict[str, tuple[int, int]]:
        """Read ``video_id,start,end`` rows."""
        intervals = {}
        for line, raw in self._csv_rows(path):
            row = self._validate(IntervalRow, raw, path, line)
            if row.end <= row.start:
                msg = f"{path}:{line}: field end: interval [{row.start}, {row.end}) is empty"
                raise InvalidInputError(msg)
            intervals[row.video_id] = (row.start, row.end)
        return intervals

    def read_descriptor_sequences(self, directory: Path) -> list[DescriptorSequence]:
        """Read every ``<id>.jsonl`` descriptor file, sorted by id."""
        files = sorted(directory.glob("*.jsonl"))
        if not files:
            msg = f"{directory}: no .jsonl descriptor file"
            raise InvalidInputError(msg)
        sequences = []
        for path in files:
            rows = []
            for line, text in enumerate(self.read_text(path).splitlines(), start=1):
                if text.strip():
                    row = self._validate_json(DescriptorRow, text, path, line)
                    rows.append((row.frame, row.vec))
            sequences.append(self._domain(path, lambda rows=rows, video_id=path.stem: DescriptorSequence.from_rows(video_id, rows)))
        return sequences

    def read_labels(self, path: Path) -> dict[str, str]:
        """Read ``clip_id,class`` rows."""
        return {row.clip_id: row.class_id for row in (self._validate(LabelRow, raw, path, line) for line, raw in self._csv_rows(path))}

    # -- encoding models -----------------------------------------------------

    def read_models(self, directory: Path) -> tuple[PcaModel, GmmModel, LinearOvrModel]:
        """Read the trained PCA, GMM and classifier, checking their dimensions against each other."""
        pca_file = self._validate_json(PcaFile, self.read_text(directory / PCA_FILE), directory / PCA_FILE)
        gmm_file = self._validate_json(GmmFile, self.read_text(directory / GMM_FILE), directory / GMM_FILE)
        clf_file = self._validate_json(ClassifierFile, self.read_text(directory / CLASSIFIER_FILE), directory / CLASSIFIER_FILE)
        _check_model_dimensions(directory, pca_file, gmm_file, clf_file)
        pca = self._domain(
            directory / PCA_FILE,
            lambda: PcaModel(
                mean=np.asarray(pca_file.mean),
                projection=np.asarray(pca_file.projection),
                eigenvalues=np.asarray(pca_file.eigenvalues),
                scale=np.asarray(pca_file.scale),
            ),
        )
        gmm = self._domain(
            directory / GMM_FILE,
            lambda: GmmModel(
                weights=np.asarray(gmm_file.weights),
                means=np.asarray(gmm_file.means),
                variances=np.asarray(gmm_file.variances),
                variance_floor=gmm_file.variance_floor,
            ),
        )
        classifier = self._domain(
            directory / CLASSIFIER_FILE,
            lambda: LinearOvrModel(
                classes=tuple(clf_file.classes),
                weights=np.asarray(clf_file.weights),
                biases=np.asarray(clf_file.biases),
                c=clf_file.c,
            ),
        )
        return pca, gmm, classifier

    def write_models(self, directory: Path, pca: PcaModel, gmm: GmmModel, classifier: LinearOvrModel) -> list[Path]:
        """Write the trained models."""
        documents: list[tuple[str, BaseModel]] = [
            (
                PCA_FILE,
                PcaFile(
                    input_dim=pca.input_dim,
                    output_dim=pca.output_dim,
                    mean=pca.mean.tolist(),
                    projection=pca.projection.tolist(),
                    eigenvalues=pca.eigenvalues.tolist(),
                    scale=pca.scale.tolist(),
                ),
            ),
            (
                GMM_FILE,
                GmmFile(
                    components=gmm.components,
                    dim=gmm.dimension,
                    weights=gmm.weights.tolist(),
                    means=gmm.means.tolist(),
                    variances=gmm.variances.tolist(),
                    variance_floor=gmm.variance_floor,
                ),
            ),
            (
                CLASSIFIER_FILE,
                ClassifierFile(
                    dim=classifier.dimension,
                    classes=list(classifier.classes),
                    weights=classifier.weights.tolist(),
                    biases=classifier.biases.tolist(),
                    c=classifier.c,
                ),
            ),
        ]
        return [self._write_atomic(directory / name, document.model_dump_json(indent=2) + "\n") for name, document in documents]

    # -- segmentation ----------------------------------------------------------

    def write_segmentation(self, directory: Path, result: SegmentationResult) -> Path:
        """Write one ``<video_id>.json`` segmentation."""
        document = SegmentationFile(
            video_id=result.video_id,
            fallback=result.fallback_used,
            segments=[
                SegmentEntry(start=segment.start_frame, end=segment.end_frame, class_id=segment.class_id, keyframe=segment.keyframe)
                for segment in result.segments
            ],
        )
        return self._write_atomic(directory / f"{result.video_id}.json", document.model_dump_json(indent=2, by_alias=True) + "\n")

    def read_segmentations(self, directory: Path) -> dict[str, SegmentationResult]:
        """Read every segmentation file of a directory."""
        results = {}
        for path in self._json_outputs(directory):
            document = self._validate_json(SegmentationFile, self.read_text(path), path)
            results[document.video_id] = self._domain(
                path,
                lambda document=document: SegmentationResult(
                    video_id=document.video_id,
                    segments=tuple(
                        Segment(start_frame=entry.start, end_frame=entry.end, class_id=entry.class_id) for entry in document.segments
                    ),
                    fallback_used=document.fallback,
                ),
            )
        return results

    # -- stitching inputs ------------------------------------------------------

    def read_captions(self, path: Path) -> dict[str, dict[int, str]]:
        """Read per-segment captions keyed by video and segment index."""
        document = self._validate_json(CaptionsFile, self.read_text(path), path)
        captions: dict[str, dict[int, str]] = {}
        for entry in document.root:
            if entry.video_id in captions:
                msg = f"{path}: field video_id: {entry.video_id} appears twice"
                raise InvalidInputError(msg)
            texts: dict[int, str] = {}
            for caption in entry.captions:
                if caption.segment_index in texts:
                    msg = f"{path}: field captions.segment_index: {entry.video_id} repeats segment {caption.segment_index}"
                    raise InvalidInputError(msg)
                texts[caption.segment_index] = caption.text
            captions[entry.video_id] = texts
        return captions

    def read_tagger_lexicon(self, path: Path) -> TaggerLexicon:
        """Read ``token<TAB>TAG`` lines."""
        tags = {}
        for line, fields in self._tsv_rows(path, min_fields=2):
            token, tag = fields[0], fields[1]
            if not token or not tag:
                msg = f"{path}:{line}: empty token or tag"
                raise InvalidInputError(msg)
            tags[token] = tag
        return TaggerLexicon(tags=tags)

    def read_gender_lexicon(self, path: Path) -> GenderLexicon:
        """Read ``token<TAB>gender[<TAB>name|plural]`` lines."""
        genders: dict[str, Gender] = {}
        names: set[str] = set()
        plurals: set[str] = set()
        for line, fields in self._tsv_rows(path, min_fields=2):
            token = fields[0]
            try:
                genders_value = Gender(fields[1].strip().lower())
            except ValueError as err:
                msg = f"{path}:{line}: field gender: {fields[1]!r} is not male, female or neutral"
                raise InvalidInputError(msg) from err
            if token.lower() in genders and genders[token.lower()] != genders_value:
                msg = f"{path}:{line}: token {token!r} maps to two genders"
                raise InvalidInputError(msg)
            genders[token.lower()] = genders_value
            for flag in fields[2:]:
                if flag == _NAME_FLAG:
                    names.add(token)
                elif flag == _PLURAL_FLAG:
                    plurals.add(token)
                else:
                    msg = f"{path}:{line}: field flag: unknown flag {flag!r}"
                    raise InvalidInputError(msg)
        return GenderLexicon(genders=genders, plural_overrides=frozenset(plurals), names=frozenset(names))

    def read_lemma_table(self, path: Path) -> LemmaTable:
        """Read ``surface<TAB>lemma`` lines."""
        return LemmaTable(exceptions={fields[0]: fields[1] for _, fields in self._tsv_rows(path, min_fields=2)})

    def read_embeddings(self, path: Path) -> EmbeddingTable:
        """Read a ``count dim`` header followed by ``token v1 ... vD`` lines."""
        lines = [line for line in self.read_text(path).splitlines() if line.strip()]
        if not lines:
            msg = f"{path}: empty embedding file"
            raise InvalidInputError(msg)
        try:
            count, dimension = (int(value) for value in lines[0].split())
        except ValueError as err:
            msg = f"{path}:1: header must be 'count dim'"
            raise InvalidInputError(msg) from err
        vectors = {}
        for line_number, line in enumerate(lines[1:], start=2):
            token, *values = line.rstrip().split(" ")
            if len(values) != dimension:
                msg = f"{path}:{line_number}: token {token!r} has {len(values)} values, header says {dimension}"
                raise InvalidInputError(msg)
            try:
                vectors[token] = np.asarray([float(value) for value in values])
            except ValueError as err:
                msg = f"{path}:{line_number}: token {token!r} has a non-numeric value"
                raise InvalidInputError(msg) from err
        if len(vectors) != count:
            msg = f"{path}: header announces {count} vectors, found {len(vectors)}"
            raise InvalidInputError(msg)
        return self._domain(path, lambda: EmbeddingTable(vectors=vectors, dimension=dimension))

    # -- connective bank -------------------------------------------------------

    def read_bank(self, path: Path) -> list[ConnectiveInstance]:
        """Read a connective bank."""
        document = self._validate_json(BankFile, self.read_text(path), path)
        dims = {len(entry.vec) for entry in document.root}
        if len(dims) > 1:
            msg = f"{path}: field vec: bank vectors have mixed dimensions {sorted(dims)}"
            raise InvalidInputError(msg)
        return [
            ConnectiveInstance(connective=entry.connective, vector=tuple(entry.vec), source_pair_id=index)
            for index, entry in enumerate(document.root)
        ]

    def write_bank(self, path: Path, bank: Sequence[ConnectiveInstance]) -> Path:
        """Write a connective bank."""
        document = BankFile([BankEntry(connective=instance.connective, vec=list(instance.vector)) for instance in bank])
        return self._write_atomic(path, document.model_dump_json(indent=2) + "\n")

    # -- stitched captions and evaluation --------------------------------------

    def write_stitched(self, directory: Path, video_id: str, sentences: Sequence[str], stitched: str) -> Path:
        """Write one stitched caption file."""
        document = StitchedFile(video_id=video_id, sentences=list(sentences), stitched=stitched)
        return self._write_atomic(directory / f"{video_id}.json", document.model_dump_json(indent=2) + "\n")

    def read_stitched(self, directory: Path) -> dict[str, str]:
        """Read stitched captions keyed by video id."""
        stitched = {}
        for path in self._json_outputs(directory):
            document = self._validate_json(StitchedFile, self.read_text(path), path)
            stitched[document.video_id] = document.stitched
        if not stitched:
            msg = f"{directory}: no stitched caption file"
            raise InvalidInputError(msg)
        return stitched

    def read_references(self, path: Path) -> dict[str, list[str]]:
        """Read reference captions keyed by video id."""
        document = self._validate_json(ReferencesFile, self.read_text(path), path)
        for video_id, references in document.root.items():
            if not references:
                msg = f"{path}: field {video_id}: no reference caption"
                raise InvalidInputError(msg)
        return dict(document.root)

    def read_baseline(self, path: Path) -> dict[str, str]:
        """Read one baseline caption per video."""
        return dict(self._validate_json(BaselineFile, self.read_text(path), path).root)

    # -- generic writers -------------------------------------------------------

    def write_sweep_csv(self, path: Path, report: SweepReport) -> Path:
        """Write ``threshold,avg_segments`` rows."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["threshold", "avg_segments"])
        for point in report.points:
            writer.writerow([repr(point.threshold), repr(point.avg_segments)])
        return self._write_atomic(path, buffer.getvalue())

    def write_json(self, path: Path, payload: Mapping[str, object]) -> Path:
        """Write a JSON document."""
        return self._write_atomic(path, json.dumps(payload, indent=2, ensure_ascii=False) + "\n")

    def write_text(self, path: Path, content: str) -> Path:
        """Write a text document."""
        return self._write_atomic(path, content)

    def write_manifest(self, directory: Path, manifest: RunManifest) -> Path:
        """Write ``manifest.json``."""
        return self.write_json(directory / MANIFEST_FILE, manifest.to_dict())

    # -- helpers ---------------------------------------------------------------

    def _csv_rows(self, path: Path) -> Iterator[tuple[int, dict[str, str]]]:
        reader = csv.DictReader(io.StringIO(self.read_text(path)))
        for line, row in enumerate(reader, start=2):
            yield line, {key.strip(): (value or "").strip() for key, value in row.items() if key is not None}

    def _tsv_rows(self, path: Path, *, min_fields: int) -> Iterator[tuple[int, list[str]]]:
        for line, text in enumerate(self.read_text(path).splitlines(), start=1):
            if not text.strip() or text.startswith("#"):
                continue
            fields = [field.strip() for field in text.split("\t")]
            if len(fields) < min_fields:
                msg = f"{path}:{line}: expected at least {min_fields} TAB-separated fields"
                raise InvalidInputError(msg)
            yield line, fields

    def _json_outputs(self, directory: Path) -> list[Path]:
        return [path for path in sorted(directory.glob("*.json")) if path.name not in _RESERVED_JSON]

    @staticmethod
    def _validate(model: type[ModelT], data: Mapping[str, object], path: Path, line: int) -> ModelT:
        try:
            return model.model_validate(data)
        except ValidationError as err:
            msg = f"{path}:{line}: {_describe(err)}"
            raise InvalidInputError(msg) from err

    @staticmethod
    def _validate_json(model: type[ModelT], text: str, path: Path, line: int | None = None) -> ModelT:
        try:
            return model.model_validate_json(text)
        except ValidationError as err:
            where = f"{path}:{line}" if line is not None else str(path)
            msg = f"{where}: {_describe(err)}"
            raise InvalidInputError(msg) from err

    @staticmethod
    def _domain(path: Path, build: Callable[[], DomainT]) -> DomainT:
        try:
            return build()
        except DomainError as err:
            msg = f"{path}: {err}"
            raise type(err)(msg) from err

    def _write_atomic(self, path: Path, content: str) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        temp_path = path.with_name(f".{path.name}.{uuid4().hex}.tmp")
        try:
            temp_path.write_text(content, encoding="utf-8")
            temp_path.replace(path)
        except OSError as err:
            temp_path.unlink(missing_ok=True)
            LOGGER.exception(
                "Artifact write failed",
                extra={"component": self.__class__.__name__, "output_path": str(path), "error_type": type(err).__name__},
            )
            msg = f"Failed to write {path}"
            raise InvalidInputError(msg) from err
        LOGGER.debug("Artifact written", extra={"component": self.__class__.__name__, "output_path": str(path)})
        return path
