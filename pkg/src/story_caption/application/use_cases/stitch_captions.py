"""Stitch per-segment captions of each video into one passage."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from story_caption.application.dtos import StitchSummary
from story_caption.application.services import build_manifest, map_ordered, stage_timer, utc_now
from story_caption.domain.exceptions import InvalidInputError
from story_caption.domain.services import detokenize, metric_tokens, stitch, tokenize_caption
from story_caption.domain.value_objects import CaptionDoc, LemmaTable

if TYPE_CHECKING:
    from pathlib import Path

    from story_caption.application.dtos import PipelineConfig
    from story_caption.application.ports.output import ArtifactStorePort, RunMetricsPort
    from story_caption.domain.value_objects import SegmentationResult, TaggerLexicon

LOGGER = logging.getLogger(__name__)
COMMAND = "stitch"


@dataclass(frozen=True)
class StitchCaptionsUseCase:
    """Resolve coreference and insert connectives, one output file per video."""

    store: ArtifactStorePort
    metrics: RunMetricsPort | None = None

    def execute(self, config: PipelineConfig) -> StitchSummary:
        """Stitch every captioned video."""
        started_at = utc_now()
        inputs: dict[str, Path] = {
            name: config.require_path(name) for name in ("captions", "tagger_lexicon", "gender_lexicon", "embeddings", "bank")
        }
        for name in ("lemma_exceptions", "segments_dir"):
            path = config.optional_path(name)
            if path is not None:
                inputs[name] = path

        captions = self.store.read_captions(inputs["captions"])
        if not captions:
            msg = f"{inputs['captions']}: no captioned video"
            raise InvalidInputError(msg)
        tagger = self.store.read_tagger_lexicon(inputs["tagger_lexicon"])
        gender = self.store.read_gender_lexicon(inputs["gender_lexicon"])
        table = self.store.read_embeddings(inputs["embeddings"])
        bank = self.store.read_bank(inputs["bank"])
        lemmas = self.store.read_lemma_table(inputs["lemma_exceptions"]) if "lemma_exceptions" in inputs else LemmaTable()
        segmentations = self.store.read_segmentations(inputs["segments_dir"]) if "segments_dir" in inputs else None

        docs: list[CaptionDoc] = []
        skipped: list[str] = []
        for video_id in sorted(captions):
            texts = self._ordered_texts(video_id, captions[video_id], segmentations, config.missing_caption_policy)
            if texts is None:
                skipped.append(video_id)
                continue
            docs.append(self._build_doc(video_id, texts, tagger))

        def run(doc: CaptionDoc) -> CaptionDoc:
            return stitch(doc, gender, table, bank, lemmas=lemmas, boundary=config.boundary_token)

        with stage_timer(self.metrics, "stitch"):
            stitched = map_ordered(run, docs, config.threads)

        lengths = []
        for doc in stitched:
            text = doc.stitched or ""
            self.store.write_stitched(config.output_dir, doc.video_id, [detokenize(sentence) for sentence in doc.sentences], text)
            lengths.append(len(metric_tokens(text)))
        summary = StitchSummary(
            videos=len(stitched),
            avg_length=sum(lengths) / len(lengths) if lengths else 0.0,
            skipped_videos=tuple(skipped),
            output_dir=config.output_dir,
        )
        self.store.write_json(config.output_dir / "summary.json", summary.to_dict())
        if self.metrics is not None:
            self.metrics.record_items(COMMAND, len(stitched))
        manifest = build_manifest(
            command=COMMAND, config=config, inputs=inputs, store=self.store, started_at=started_at, metrics=self.metrics
        )
        self.store.write_manifest(config.output_dir, manifest)
        LOGGER.info(
            "Captions stitched",
            extra=self._log_extra(videos=summary.videos, skipped=len(skipped), avg_length=round(summary.avg_length, 4)),
        )
        return summary

    def _ordered_texts(
        self,
        video_id: str,
        texts: dict[int, str],
        segmentations: dict[str, SegmentationResult] | None,
        policy: str,
    ) -> list[str] | None:
        """Return captions in segment order, or None when the video is skipped."""
        missing: list[int] = []
        if segmentations is not None:
            result = segmentations.get(video_id)
            if result is None:
                missing = [-1]
            else:
                missing = [index for index in range(len(result.segments)) if index not in texts]
        if missing:
            LOGGER.warning(
                "Captions missing for segments",
                extra=self._log_extra(video_id=video_id, missing_segments=missing, policy=policy),
            )
            if policy == "skip":
                return None
        return [texts[index] for index in sorted(texts)]

    @staticmethod
    def _build_doc(video_id: str, texts: list[str], tagger: TaggerLexicon) -> CaptionDoc:
        sentences = []
        for index, text in enumerate(texts):
            tokens = tokenize_caption(text, tagger)
            if not tokens:
                msg = f"Caption {index} of video {video_id} has no token"
                raise InvalidInputError(msg)
            sentences.append(tokens)
        return CaptionDoc(video_id=video_id, sentences=tuple(sentences))

    def _log_extra(self, **extra: object) -> dict[str, object]:
        """Build structured log context for this use case."""
        return {"component": self.__class__.__name__, **extra}
