"""Caption metrics: corpus BLEU-4, CIDEr and a simplified METEOR.

All scorers take pre-tokenized, lowercased token lists; ``metric_tokens``
produces them from raw caption text.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from collections.abc import Sequence
from functools import lru_cache
from typing import TYPE_CHECKING, TypeAlias

from nltk.stem import PorterStemmer

from story_caption.domain.exceptions import InsufficientDataError, InvalidInputError, VideoSetMismatchError
from story_caption.domain.value_objects import CaptionScores, EvaluationReport

if TYPE_CHECKING:
    from collections.abc import Mapping

MAX_ORDER = 4
CIDER_SCALE = 10.0
METEOR_BETA = 3.0
METEOR_GAMMA = 0.5

_WORD = re.compile(r"[a-z0-9']+")
_STEMMER = PorterStemmer()

Tokens: TypeAlias = Sequence[str]


def metric_tokens(text: str) -> list[str]:
    """Lowercase and keep alphanumeric runs; punctuation is dropped."""
    return _WORD.findall(text.lower())


def ngrams(tokens: Tokens, order: int) -> Counter[tuple[str, ...]]:
    """Count the n-grams of one order."""
    return Counter(tuple(tokens[index : index + order]) for index in range(len(tokens) - order + 1))


def _check_corpus(hypotheses: Sequence[Tokens], references: Sequence[Sequence[Tokens]]) -> None:
    if not hypotheses:
        msg = "Cannot score an empty hypothesis set"
        raise InsufficientDataError(msg)
    if len(hypotheses) != len(references):
        msg = f"Got {len(hypotheses)} hypotheses but {len(references)} reference lists"
        raise InvalidInputError(msg)
    for index, refs in enumerate(references):
        if not refs:
            msg = f"Hypothesis {index} has no reference"
            raise InvalidInputError(msg)


def modified_precision(hypothesis: Tokens, references: Sequence[Tokens], order: int) -> tuple[int, int]:
    """Return (clipped matches, candidate n-grams) of one hypothesis."""
    counts = ngrams(hypothesis, order)
    max_ref: Counter[tuple[str, ...]] = Counter()
    for reference in references:
        max_ref |= ngrams(reference, order)
    clipped = sum(min(count, max_ref[gram]) for gram, count in counts.items())
    return clipped, sum(counts.values())


def _closest_length(hyp_len: int, references: Sequence[Tokens]) -> int:
    return min((abs(len(reference) - hyp_len), len(reference)) for reference in references)[1]


def bleu4(hypotheses: Sequence[Tokens], references: Sequence[Sequence[Tokens]]) -> float:
    """Unsmoothed corpus BLEU-4 with the closest-reference brevity penalty.

    Orders without any candidate n-gram in the corpus are left out of the mean.
    """
    _check_corpus(hypotheses, references)
    matches = [0] * MAX_ORDER
    totals = [0] * MAX_ORDER
    hyp_length = 0
    ref_length = 0
    for hypothesis, refs in zip(hypotheses, references, strict=True):
        hyp_length += len(hypothesis)
        ref_length += _closest_length(len(hypothesis), refs)
        for order in range(1, MAX_ORDER + 1):
            clipped, total = modified_precision(hypothesis, refs, order)
            matches[order - 1] += clipped
            totals[order - 1] += total

    log_precisions = []
    for clipped, total in zip(matches, totals, strict=True):
        if total == 0:
            continue
        if clipped == 0:
            return 0.0
        log_precisions.append(math.log(clipped / total))
    if not log_precisions or hyp_length == 0:
        return 0.0
    brevity = 1.0 if hyp_length > ref_length else math.exp(1.0 - ref_length / hyp_length)
    return brevity * math.exp(sum(log_precisions) / len(log_precisions))


def _tfidf(tokens: Tokens, order: int, document_frequency: Counter[tuple[str, ...]], log_corpus: float) -> dict[tuple[str, ...], float]:
    return {
        gram: count * (log_corpus - math.log(max(1.0, float(document_frequency[gram]))))
        for gram, count in ngrams(tokens, order).items()
    }


def _cosine(first: dict[tuple[str, ...], float], second: dict[tuple[str, ...], float]) -> float:
    norm_first = math.sqrt(sum(value * value for value in first.values()))
    norm_second = math.sqrt(sum(value * value for value in second.values()))
    if norm_first == 0.0 or norm_second == 0.0:
        return 0.0
    dot = sum(value * second.get(gram, 0.0) for gram, value in first.items())
    return dot / (norm_first * norm_second)


def cider_scores(hypotheses: Sequence[Tokens], references: Sequence[Sequence[Tokens]]) -> list[float]:
    """Return per-hypothesis CIDEr with document frequencies from the reference corpus.

    A single-video corpus gives every n-gram zero weight, hence zero scores.
    """
    _check_corpus(hypotheses, references)
    log_corpus = math.log(float(len(references)))
    frequencies: list[Counter[tuple[str, ...]]] = []
    for order in range(1, MAX_ORDER + 1):
        frequency: Counter[tuple[str, ...]] = Counter()
        for refs in references:
            frequency.update({gram for reference in refs for gram in ngrams(reference, order)})
        frequencies.append(frequency)

    scores = []
    for hypothesis, refs in zip(hypotheses, references, strict=True):
        per_order = []
        for order, frequency in enumerate(frequencies, start=1):
            hyp_vector = _tfidf(hypothesis, order, frequency, log_corpus)
            similarities = [_cosine(hyp_vector, _tfidf(reference, order, frequency, log_corpus)) for reference in refs]
            per_order.append(sum(similarities) / len(similarities))
        scores.append(CIDER_SCALE * sum(per_order) / MAX_ORDER)
    return scores


def cider(hypotheses: Sequence[Tokens], references: Sequence[Sequence[Tokens]]) -> float:
    """Return the corpus mean of ``cider_scores``."""
    scores = cider_scores(hypotheses, references)
    return sum(scores) / len(scores)


@lru_cache(maxsize=4096)
def _stem(token: str) -> str:
    return _STEMMER.stem(token)


def align(hypothesis: Tokens, reference: Tokens) -> list[tuple[int, int]]:
    """Greedy unigram alignment: exact matches first, then stem matches.

    Each hypothesis token takes the earliest unused reference token.
    """
    used = [False] * len(reference)
    pairs: dict[int, int] = {}
    stages = ((lambda token: token), _stem)
    for normalize in stages:
        reference_keys = [normalize(token) for token in reference]
        for hyp_index, token in enumerate(hypothesis):
            if hyp_index in pairs:
                continue
            key = normalize(token)
            for ref_index, ref_key in enumerate(reference_keys):
                if not used[ref_index] and ref_key == key:
                    used[ref_index] = True
                    pairs[hyp_index] = ref_index
                    break
    return sorted(pairs.items())


def count_chunks(alignment: Sequence[tuple[int, int]]) -> int:
    """Count runs of aligned pairs adjacent in both sentences."""
    chunks = 0
    previous: tuple[int, int] | None = None
    for hyp_index, ref_index in alignment:
        if previous is None or hyp_index != previous[0] + 1 or ref_index != previous[1] + 1:
            chunks += 1
        previous = (hyp_index, ref_index)
    return chunks


def _meteor_single(hypothesis: Tokens, reference: Tokens) -> float:
    alignment = align(hypothesis, reference)
    matched = len(alignment)
    if matched == 0:
        return 0.0
    precision = matched / len(hypothesis)
    recall = matched / len(reference)
    fmean = 10.0 * precision * recall / (recall + 9.0 * precision)
    penalty = METEOR_GAMMA * (count_chunks(alignment) / matched) ** METEOR_BETA
    return fmean * (1.0 - penalty)


def meteor_lite(hypothesis: Tokens, references: Sequence[Tokens]) -> float:
    """Best score over references of exact-plus-stem METEOR with the fragmentation penalty."""
    if not references:
        msg = "METEOR needs at least one reference"
        raise InvalidInputError(msg)
    return max(_meteor_single(hypothesis, reference) for reference in references)


def score_captions(system: str, captions: Mapping[str, str], references: Mapping[str, Sequence[str]]) -> EvaluationReport:
    """Score raw caption strings of one system against raw references.

    Per-video BLEU-4 treats each video as a one-item corpus; corpus CIDEr and
    METEOR-lite are per-video means.
    """
    missing = sorted(set(captions) ^ set(references))
    if missing:
        msg = f"Captions of {system} and references disagree on videos: {', '.join(missing)}"
        raise VideoSetMismatchError(msg)
    video_ids = sorted(captions)
    hypotheses = [metric_tokens(captions[video_id]) for video_id in video_ids]
    reference_tokens = [[metric_tokens(text) for text in references[video_id]] for video_id in video_ids]
    ciders = cider_scores(hypotheses, reference_tokens)
    per_video = {}
    for video_id, hypothesis, refs, cider_value in zip(video_ids, hypotheses, reference_tokens, ciders, strict=True):
        per_video[video_id] = CaptionScores(
            bleu4=bleu4([hypothesis], [refs]),
            cider=cider_value,
            meteor_lite=meteor_lite(hypothesis, refs),
        )
    corpus = CaptionScores(
        bleu4=bleu4(hypotheses, reference_tokens),
        cider=sum(ciders) / len(ciders),
        meteor_lite=sum(scores.meteor_lite for scores in per_video.values()) / len(per_video),
    )
    return EvaluationReport(
        system=system,
        per_video=per_video,
        corpus=corpus,
        avg_length=sum(len(hypothesis) for hypothesis in hypotheses) / len(hypotheses),
    )
