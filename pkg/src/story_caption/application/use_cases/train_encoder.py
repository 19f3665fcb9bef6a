"""Train PCA, GMM and the one-vs-rest window classifier from labeled clips."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from story_caption.application.dtos import TrainSummary
from story_caption.application.services import build_manifest, map_ordered, stage_timer, utc_now
from story_caption.domain.exceptions import InsufficientDataError, InvalidInputError
from story_caption.domain.services import encode_window, fit_gmm, fit_pca, project_descriptors, train_ovr_linear

if TYPE_CHECKING:
    from story_caption.application.dtos import PipelineConfig
    from story_caption.application.ports.output import ArtifactStorePort, RunMetricsPort
    from story_caption.domain.value_objects import DescriptorSequence, FisherVector

LOGGER = logging.getLogger(__name__)
COMMAND = "train"


@dataclass(frozen=True)
class TrainEncoderUseCase:
    """Fit the encoding models and write them as JSON."""

    store: ArtifactStorePort
    metrics: RunMetricsPort | None = None

    def execute(self, config: PipelineConfig) -> TrainSummary:
        """Fit PCA on all clip descriptors, a GMM on the projections and one scorer per class."""
        started_at = utc_now()
        labels_path = config.require_path("labels")
        descriptors_dir = config.require_path("descriptors_dir")
        labels = self.store.read_labels(labels_path)
        sequences = {sequence.video_id: sequence for sequence in self.store.read_descriptor_sequences(descriptors_dir)}
        missing = sorted(set(labels) - set(sequences))
        if missing:
            msg = f"{labels_path}: no descriptor file for clips {', '.join(missing)}"
            raise InvalidInputError(msg)
        clips = [sequences[clip_id] for clip_id in sorted(labels)]
        encoding = config.encoding

        with stage_timer(self.metrics, "fit_pca"):
            stacked = np.vstack([clip.matrix() for clip in clips if clip.frames])
            pca_dim = encoding.pca_dim or stacked.shape[1] // 2
            pca = fit_pca(stacked, pca_dim, whiten=encoding.pca_whiten)
        with stage_timer(self.metrics, "fit_gmm"):
            gmm = fit_gmm(
                project_descriptors(stacked, pca),
                encoding.gmm_components,
                seed=config.seed,
                iterations=encoding.gmm_iterations,
                variance_floor=encoding.variance_floor,
            )

        def encode(clip: DescriptorSequence) -> FisherVector:
            fv = encode_window(clip.matrix(), pca, gmm) if clip.frames else None
            if fv is None:
                msg = f"Clip {clip.video_id} has no descriptor"
                raise InsufficientDataError(msg)
            return fv

        with stage_timer(self.metrics, "encode_clips"):
            features = map_ordered(encode, clips, config.threads)
        with stage_timer(self.metrics, "train_classifier"):
            classifier = train_ovr_linear(
                features,
                [labels[clip.video_id] for clip in clips],
                encoding.svm_c,
                seed=config.seed,
                epochs=encoding.svm_epochs,
            )

        self.store.write_models(config.output_dir, pca, gmm, classifier)
        if self.metrics is not None:
            self.metrics.record_items(COMMAND, len(clips))
        manifest = build_manifest(
            command=COMMAND,
            config=config,
            inputs={"labels": labels_path, "descriptors_dir": descriptors_dir},
            store=self.store,
            started_at=started_at,
            metrics=self.metrics,
        )
        self.store.write_manifest(config.output_dir, manifest)
        LOGGER.info(
            "Encoder trained",
            extra={"component": self.__class__.__name__, "clips": len(clips), "classes": len(classifier.classes), "pca_dim": pca_dim},
        )
        return TrainSummary(
            clips=len(clips),
            classes=classifier.classes,
            pca_dim=pca_dim,
            gmm_components=gmm.components,
            output_dir=config.output_dir,
        )
