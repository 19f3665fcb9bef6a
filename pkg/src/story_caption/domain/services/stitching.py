"""Caption stitching: backward coreference, connective lookup and insertion."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from story_caption.domain.exceptions import DimensionMismatchError, EmptyBankError, InvalidInputError
from story_caption.domain.value_objects import Gender, LemmaTable, Mention, MentionChain, Slot, TaggedToken
from story_caption.domain.value_objects.tokens import ADJECTIVE_TAGS, DETERMINER_TAGS, PLURAL_NOUN_TAGS, PROPER_NOUN_TAGS

from .embedding import DEFAULT_BOUNDARY_TOKEN, embed_pair, embed_sentence
from .text import detokenize, lemmatize

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike

    from story_caption.domain.value_objects import CaptionDoc, ConnectiveInstance, EmbeddingTable, GenderLexicon

__all__ = [
    "embed_pair",
    "embed_sentence",
    "find_connective",
    "insert_connective",
    "mention_chains",
    "noun_phrase_spans",
    "pronoun_for",
    "resolve_backward_coreference",
    "stitch",
]

LOGGER = logging.getLogger(__name__)

PLURAL = "plural"
CONNECTIVE_TAG = "RB"

_PRONOUNS: dict[tuple[str, Slot], str] = {
    (Gender.MALE, Slot.SUBJECT): "he",
    (Gender.MALE, Slot.OBJECT): "him",
    (Gender.FEMALE, Slot.SUBJECT): "she",
    (Gender.FEMALE, Slot.OBJECT): "her",
    (Gender.NEUTRAL, Slot.SUBJECT): "it",
    (Gender.NEUTRAL, Slot.OBJECT): "it",
    (PLURAL, Slot.SUBJECT): "they",
    (PLURAL, Slot.OBJECT): "them",
}
_PRONOUN_CLASSES = {
    "he": Gender.MALE,
    "him": Gender.MALE,
    "she": Gender.FEMALE,
    "her": Gender.FEMALE,
    "it": Gender.NEUTRAL,
    "they": PLURAL,
    "them": PLURAL,
}


class _Candidate(NamedTuple):
    chain: MentionChain
    mention: Mention
    pronoun_class: str


def noun_phrase_spans(sentence: Sequence[TaggedToken]) -> list[tuple[int, int]]:
    """Chunk ``(DT|CD|PRP$)? JJ* noun+`` spans left to right."""
    spans = []
    index = 0
    size = len(sentence)
    while index < size:
        cursor = index
        if sentence[cursor].tag in DETERMINER_TAGS:
            cursor += 1
        while cursor < size and sentence[cursor].tag in ADJECTIVE_TAGS:
            cursor += 1
        head_end = cursor
        while head_end < size and sentence[head_end].is_noun:
            head_end += 1
        if head_end > cursor:
            spans.append((index, head_end))
            index = head_end
        else:
            index += 1
    return spans


def _first_verb(sentence: Sequence[TaggedToken]) -> int:
    return next((index for index, token in enumerate(sentence) if token.is_verb), len(sentence))


def mention_chains(sentences: Sequence[Sequence[TaggedToken]], lex: GenderLexicon, lemmas: LemmaTable) -> list[MentionChain]:
    """Group noun phrases by lemmatized head and number, keeping one mention per sentence."""
    grouped: dict[tuple[str, bool], list[Mention]] = {}
    for sentence_index, sentence in enumerate(sentences):
        verb = _first_verb(sentence)
        for start, end in noun_phrase_spans(sentence):
            head = sentence[end - 1]
            lemma = lemmatize(head.text, lemmas)
            plural = head.tag in PLURAL_NOUN_TAGS or lex.is_plural(lemma)
            mentions = grouped.setdefault((lemma, plural), [])
            if mentions and mentions[-1].sentence_index == sentence_index:
                continue
            slot = Slot.SUBJECT if start < verb else Slot.OBJECT
            mentions.append(Mention(sentence_index=sentence_index, start=start, end=end, slot=slot))
    return [MentionChain(head=lemma, plural=plural, mentions=tuple(mentions)) for (lemma, plural), mentions in grouped.items()]


def pronoun_for(gender: Gender, *, plural: bool, slot: Slot) -> str:
    """Return the third-person pronoun for gender, number and slot."""
    return _PRONOUNS[(PLURAL if plural else gender, slot)]


def _pronoun_class(chain: MentionChain, lex: GenderLexicon) -> str:
    return PLURAL if chain.plural else lex.gender_of(chain.head)


def resolve_backward_coreference(
    doc: CaptionDoc,
    lex: GenderLexicon,
    lemmas: LemmaTable | None = None,
) -> CaptionDoc:
    """Replace every repeated noun-phrase mention after the first by a pronoun.

    Within one sentence a pronoun class already present, or already produced,
    leaves later mentions of that class untouched.
    """
    lemma_table = lemmas or LemmaTable()
    chains = mention_chains(doc.sentences, lex, lemma_table)
    by_sentence: dict[int, list[_Candidate]] = {}
    for chain in chains:
        for mention in chain.later_mentions:
            by_sentence.setdefault(mention.sentence_index, []).append(_Candidate(chain, mention, _pronoun_class(chain, lex)))

    sentences = list(doc.sentences)
    replaced = 0
    for sentence_index, candidates in sorted(by_sentence.items()):
        sentence = sentences[sentence_index]
        used = {_PRONOUN_CLASSES[token.lower] for token in sentence if token.lower in _PRONOUN_CLASSES}
        chosen: list[tuple[Mention, str]] = []
        for candidate in sorted(candidates, key=lambda item: item.mention.start):
            if candidate.pronoun_class in used:
                LOGGER.debug(
                    "Ambiguous pronoun left unresolved",
                    extra={"component": "resolve_backward_coreference", "video_id": doc.video_id, "head": candidate.chain.head},
                )
                continue
            used.add(candidate.pronoun_class)
            gender = lex.gender_of(candidate.chain.head)
            chosen.append((candidate.mention, pronoun_for(gender, plural=candidate.chain.plural, slot=candidate.mention.slot)))

        tokens = list(sentence)
        for mention, pronoun in sorted(chosen, key=lambda item: item[0].start, reverse=True):
            text = pronoun.capitalize() if mention.start == 0 else pronoun
            tokens[mention.start : mention.end] = [TaggedToken(text=text, tag="PRP")]
        sentences[sentence_index] = tuple(tokens)
        replaced += len(chosen)

    if not replaced:
        return doc
    LOGGER.debug("Coreference resolved", extra={"component": "resolve_backward_coreference", "video_id": doc.video_id, "replaced": replaced})
    return doc.replace_sentences(tuple(sentences))


def find_connective(query: ArrayLike, bank: Sequence[ConnectiveInstance]) -> str:
    """Return the connective of the bank instance nearest to ``query`` in L2; ties go to the lowest index."""
    if not bank:
        msg = "Connective bank is empty"
        raise EmptyBankError(msg)
    vector = np.asarray(query, dtype=np.float64)
    matrix = np.asarray([instance.vector for instance in bank], dtype=np.float64)
    if vector.ndim != 1 or vector.shape[0] != matrix.shape[1]:
        msg = f"Query has dimension {vector.shape}, bank vectors have {matrix.shape[1]}"
        raise DimensionMismatchError(msg)
    distances = np.linalg.norm(matrix - vector, axis=1)
    return bank[int(np.argmin(distances))].connective


def _lowercase_opening(token: TaggedToken, lex: GenderLexicon | None) -> TaggedToken:
    if token.tag in PROPER_NOUN_TAGS or (lex is not None and lex.is_name(token.text)):
        return token
    return token.with_text(token.text[0].lower() + token.text[1:])


def insert_connective(
    doc: CaptionDoc,
    choices: Sequence[str | None],
    lex: GenderLexicon | None = None,
) -> CaptionDoc:
    """Prefix each later sentence with ``Connective,``; empty choices leave the sentence alone."""
    gaps = len(doc.sentences) - 1
    if len(choices) != gaps:
        msg = f"Video {doc.video_id} has {gaps} sentence gaps but {len(choices)} connective choices"
        raise InvalidInputError(msg)
    sentences = [doc.sentences[0]]
    for sentence, choice in zip(doc.sentences[1:], choices, strict=True):
        if not choice or sentence[0].lower == choice.lower():
            sentences.append(sentence)
            continue
        opening = (TaggedToken(text=choice.capitalize(), tag=CONNECTIVE_TAG), TaggedToken(text=",", tag=","))
        sentences.append((*opening, _lowercase_opening(sentence[0], lex), *sentence[1:]))
    return doc.replace_sentences(tuple(sentences))


def stitch(
    doc: CaptionDoc,
    lex: GenderLexicon,
    table: EmbeddingTable,
    bank: Sequence[ConnectiveInstance],
    *,
    lemmas: LemmaTable | None = None,
    boundary: str = DEFAULT_BOUNDARY_TOKEN,
) -> CaptionDoc:
    """Resolve coreference, pick a connective per sentence gap and join the passage."""
    resolved = resolve_backward_coreference(doc, lex, lemmas)
    choices = []
    for previous, following in zip(resolved.sentences, resolved.sentences[1:], strict=False):
        query = embed_pair([token.text for token in previous], [token.text for token in following], table, boundary)
        choices.append(find_connective(query, bank))
    connected = insert_connective(resolved, choices, lex)
    text = " ".join(detokenize(sentence) for sentence in connected.sentences)
    return connected.replace_sentences(connected.sentences, stitched=text)
