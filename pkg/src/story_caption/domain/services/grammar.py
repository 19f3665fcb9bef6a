"""PCFG loading, CKY parsing and connective-bank extraction."""

from __future__ import annotations

import logging
import re
from collections import defaultdict
from typing import TYPE_CHECKING, NamedTuple

from story_caption.domain.exceptions import EmptyBankError, GrammarError, InvalidInputError
from story_caption.domain.value_objects import BinaryRule, ConnectiveInstance, LexicalRule, ParseTree, Pcfg, TaggedToken

from .embedding import DEFAULT_BOUNDARY_TOKEN, embed_pair

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator, Sequence

    from story_caption.domain.value_objects import EmbeddingTable

LOGGER = logging.getLogger(__name__)

PROBABILITY_MASS_TOLERANCE = 1e-6
DEFAULT_BANK_SIZE = 500
CONNECTIVE_PHRASES = frozenset({"ADJP", "ADVP"})
CONNECTIVE_TAGS = frozenset({"JJ", "RB"})
BINARIZATION_MARKER = "|"

_RULE_PATTERN = re.compile(r"^\s*(?P<lhs>\S+)\s*->\s*(?P<rhs>.+?)\s+(?P<prob>\S+)\s*$")
_QUOTED = re.compile(r"^'(?P<word>.+)'$|^\"(?P<dword>.+)\"$")

TaggedSentence = tuple[TaggedToken, ...]
SentencePair = tuple[TaggedSentence, TaggedSentence]


class ConnectiveMatch(NamedTuple):
    """Connective word and the token span of the sentence that follows it."""

    connective: str
    remainder: tuple[int, int]


class _RawRule(NamedTuple):
    line: int
    lhs: str
    rhs: tuple[str, ...]
    probability: float


def _parse_rule_line(line_number: int, line: str) -> _RawRule:
    match = _RULE_PATTERN.match(line)
    if match is None:
        msg = f"Line {line_number}: cannot parse rule {line.strip()!r}"
        raise GrammarError(msg)
    try:
        probability = float(match.group("prob"))
    except ValueError as exc:
        msg = f"Line {line_number}: probability {match.group('prob')!r} is not a number"
        raise GrammarError(msg) from exc
    if not 0.0 < probability <= 1.0:
        msg = f"Line {line_number}: probability {probability} is outside (0, 1]"
        raise GrammarError(msg)
    rhs = tuple(match.group("rhs").split())
    if len(rhs) not in (1, 2):
        msg = f"Line {line_number}: rule {line.strip()!r} is not in Chomsky normal form"
        raise GrammarError(msg)
    return _RawRule(line=line_number, lhs=match.group("lhs"), rhs=rhs, probability=probability)


def load_grammar(text: str, *, strict: bool = False) -> Pcfg:
    """Parse and validate a CNF grammar; the first left-hand side is the start symbol.

    A single unquoted right-hand symbol is a part-of-speech tag unless it is a
    nonterminal, in which case the unary rule is rejected.
    """
    raw_rules: list[_RawRule] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        raw_rules.append(_parse_rule_line(line_number, stripped))
    if not raw_rules:
        msg = "Grammar has no rule"
        raise GrammarError(msg)

    nonterminals = {rule.lhs for rule in raw_rules}
    binary: list[BinaryRule] = []
    lexical: list[LexicalRule] = []
    mass: dict[str, float] = defaultdict(float)
    for rule in raw_rules:
        mass[rule.lhs] += rule.probability
        if len(rule.rhs) == 2:  # noqa: PLR2004
            for symbol in rule.rhs:
                if _QUOTED.match(symbol) or symbol not in nonterminals:
                    msg = f"Line {rule.line}: unknown symbol {symbol!r} on the right-hand side"
                    raise GrammarError(msg)
            binary.append(BinaryRule(lhs=rule.lhs, left=rule.rhs[0], right=rule.rhs[1], probability=rule.probability))
            continue
        symbol = rule.rhs[0]
        quoted = _QUOTED.match(symbol)
        if quoted:
            word = quoted.group("word") or quoted.group("dword")
            lexical.append(LexicalRule(lhs=rule.lhs, terminal=word, is_tag=False, probability=rule.probability))
        elif symbol in nonterminals:
            msg = f"Line {rule.line}: unary rule {rule.lhs} -> {symbol} is not in Chomsky normal form"
            raise GrammarError(msg)
        else:
            lexical.append(LexicalRule(lhs=rule.lhs, terminal=symbol, is_tag=True, probability=rule.probability))

    for lhs, total in sorted(mass.items()):
        if total > 1.0 + PROBABILITY_MASS_TOLERANCE:
            msg = f"Rules of {lhs} have total probability {total:.6f} > 1"
            if strict:
                raise GrammarError(msg)
            LOGGER.warning(msg, extra={"component": "load_grammar", "lhs": lhs, "mass": total})

    grammar = Pcfg(start=raw_rules[0].lhs, binary_rules=tuple(binary), lexical_rules=tuple(lexical))
    LOGGER.debug(
        "Grammar loaded",
        extra={"component": "load_grammar", "rules": grammar.rule_count, "nonterminals": len(grammar.nonterminals)},
    )
    return grammar


def cky_parse(tokens: Sequence[TaggedToken], grammar: Pcfg) -> ParseTree | None:
    """Return the most probable parse rooted at the start symbol, or None.

    Ties prefer the lower split point, then the lexicographically smaller rule.
    """
    size = len(tokens)
    if size == 0:
        return None
    chart: dict[tuple[int, int], dict[str, ParseTree]] = defaultdict(dict)

    for index, token in enumerate(tokens):
        cell = chart[(index, index + 1)]
        for rule in grammar.lexical_rules:
            if not rule.matches(token):
                continue
            current = cell.get(rule.lhs)
            if current is None or rule.log_probability > current.log_probability:
                cell[rule.lhs] = ParseTree(
                    label=rule.lhs, start=index, end=index + 1, log_probability=rule.log_probability, token=token, rule=rule
                )
        if not cell:
            return None

    for span in range(2, size + 1):
        for start in range(size - span + 1):
            end = start + span
            cell = chart[(start, end)]
            for split in range(start + 1, end):
                left_cell = chart.get((start, split))
                right_cell = chart.get((split, end))
                if not left_cell or not right_cell:
                    continue
                for rule in grammar.binary_rules:
                    left = left_cell.get(rule.left)
                    right = right_cell.get(rule.right)
                    if left is None or right is None:
                        continue
                    score = rule.log_probability + left.log_probability + right.log_probability
                    current = cell.get(rule.lhs)
                    if current is None or score > current.log_probability:
                        cell[rule.lhs] = ParseTree(
                            label=rule.lhs, start=start, end=end, log_probability=score, children=(left, right), rule=rule
                        )

    return chart[(0, size)].get(grammar.start)


def tree_probability(tree: ParseTree, grammar: Pcfg) -> float:
    """Recompute the log probability of ``tree`` from the grammar rules it uses."""
    known = set(grammar.binary_rules) | set(grammar.lexical_rules)
    total = 0.0
    for rule in tree.rules():
        if rule not in known:
            msg = f"Rule {rule} is not part of the grammar"
            raise GrammarError(msg)
        total += rule.log_probability
    return total


def _constituents(tree: ParseTree) -> Iterator[ParseTree]:
    """Yield children, looking through binarization nodes."""
    for child in tree.children:
        if BINARIZATION_MARKER in child.label:
            yield from _constituents(child)
        else:
            yield child


def _is_punctuation(node: ParseTree) -> bool:
    return all(token.is_punctuation for token in node.leaves())


def matches_connective_pattern(tree: ParseTree) -> ConnectiveMatch | None:
    """Match a one-word ADJP/ADVP (JJ or RB) followed directly by ``S -> NP VP``.

    Punctuation between the two constituents is skipped; the remainder span runs
    from the start of the ``S`` to the end of the sentence.
    """
    constituents = list(_constituents(tree))
    if len(constituents) < 2:  # noqa: PLR2004
        return None
    head = constituents[0]
    if head.label not in CONNECTIVE_PHRASES or head.end - head.start != 1:
        return None
    (word,) = head.leaves()
    if word.tag not in CONNECTIVE_TAGS:
        return None
    candidate = next((node for node in constituents[1:] if not _is_punctuation(node)), None)
    if candidate is None or candidate.label != "S":
        return None
    if [child.label for child in _constituents(candidate)] != ["NP", "VP"]:
        return None
    return ConnectiveMatch(connective=word.lower, remainder=(candidate.start, tree.end))


def read_tagged_corpus(text: str) -> list[SentencePair]:
    """Read one TAB-separated pair of ``word_TAG`` sentences per line."""
    pairs: list[SentencePair] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 2:  # noqa: PLR2004
            msg = f"Corpus line {line_number}: expected two TAB-separated sentences, got {len(parts)}"
            raise InvalidInputError(msg)
        try:
            first, second = (tuple(TaggedToken.from_raw(raw) for raw in part.split()) for part in parts)
        except InvalidInputError as exc:
            msg = f"Corpus line {line_number}: {exc}"
            raise InvalidInputError(msg) from exc
        if not first or not second:
            msg = f"Corpus line {line_number}: empty sentence"
            raise InvalidInputError(msg)
        pairs.append((first, second))
    return pairs


def extract_connective(
    pair_id: int,
    pair: SentencePair,
    grammar: Pcfg,
    table: EmbeddingTable,
    boundary: str = DEFAULT_BOUNDARY_TOKEN,
) -> ConnectiveInstance | None:
    """Embed one corpus pair when its second sentence opens with a connective."""
    first, second = pair
    tree = cky_parse(second, grammar)
    if tree is None:
        return None
    match = matches_connective_pattern(tree)
    if match is None:
        return None
    start, end = match.remainder
    vector = embed_pair([token.text for token in first], [token.text for token in second[start:end]], table, boundary)
    LOGGER.debug("Connective instance", extra={"component": "build_connective_bank", "pair_id": pair_id, "connective": match.connective})
    return ConnectiveInstance(connective=match.connective, vector=tuple(vector), source_pair_id=pair_id)


def build_connective_bank(
    pairs: Sequence[SentencePair],
    grammar: Pcfg,
    table: EmbeddingTable,
    max_instances: int = DEFAULT_BANK_SIZE,
    *,
    boundary: str = DEFAULT_BOUNDARY_TOKEN,
    mapper: Callable[..., Iterable[ConnectiveInstance | None]] = map,
) -> list[ConnectiveInstance]:
    """Collect up to ``max_instances`` connective instances in corpus order.

    ``mapper`` has the signature of the builtin ``map`` and must preserve order.
    """
    if max_instances <= 0:
        msg = f"Bank size must be positive, got {max_instances}"
        raise InvalidInputError(msg)

    def extract(pair_id: int, pair: SentencePair) -> ConnectiveInstance | None:
        return extract_connective(pair_id, pair, grammar, table, boundary)

    bank: list[ConnectiveInstance] = []
    for instance in mapper(extract, range(len(pairs)), pairs):
        if instance is None:
            continue
        bank.append(instance)
        if len(bank) >= max_instances:
            break
    if not bank:
        msg = f"No connective instance found in {len(pairs)} sentence pairs; supply a larger tagged corpus"
        raise EmptyBankError(msg)
    LOGGER.info("Connective bank built", extra={"component": "build_connective_bank", "pairs": len(pairs), "instances": len(bank)})
    return bank
