"""Pure domain services."""

from .embedding import embed_pair, embed_sentence
from .encoding import (
    encode_window,
    fisher_encode,
    fit_gmm,
    fit_pca,
    gmm_posteriors,
    power_l2_normalize,
    project_descriptors,
    score_ovr,
    train_ovr_linear,
)
from .grammar import (
    ConnectiveMatch,
    build_connective_bank,
    cky_parse,
    load_grammar,
    matches_connective_pattern,
    read_tagged_corpus,
    tree_probability,
)
from .localization import best_class_window, generate_windows, segment_video, sweep_thresholds, temporal_iou, temporal_nms
from .metrics import bleu4, cider, cider_scores, meteor_lite, metric_tokens, score_captions
from .stitching import find_connective, insert_connective, resolve_backward_coreference, stitch
from .text import detokenize, lemmatize, tokenize_caption

__all__ = [
    "ConnectiveMatch",
    "best_class_window",
    "bleu4",
    "build_connective_bank",
    "cider",
    "cider_scores",
    "cky_parse",
    "detokenize",
    "embed_pair",
    "embed_sentence",
    "encode_window",
    "find_connective",
    "fisher_encode",
    "fit_gmm",
    "fit_pca",
    "generate_windows",
    "gmm_posteriors",
    "insert_connective",
    "lemmatize",
    "load_grammar",
    "matches_connective_pattern",
    "meteor_lite",
    "metric_tokens",
    "power_l2_normalize",
    "project_descriptors",
    "read_tagged_corpus",
    "resolve_backward_coreference",
    "score_captions",
    "score_ovr",
    "segment_video",
    "stitch",
    "sweep_thresholds",
    "temporal_iou",
    "temporal_nms",
    "tokenize_caption",
    "train_ovr_linear",
    "tree_probability",
]
