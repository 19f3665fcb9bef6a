"""Unit tests for grammar loading, CKY parsing and connective-bank extraction."""

from __future__ import annotations

import functools
import logging
import math
import random
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from story_caption.domain.exceptions import EmptyBankError, GrammarError, InvalidInputError
from story_caption.domain.services import (
    build_connective_bank,
    cky_parse,
    embed_pair,
    load_grammar,
    matches_connective_pattern,
    read_tagged_corpus,
    tree_probability,
)
from story_caption.domain.value_objects import BinaryRule, EmbeddingTable, LexicalRule, Pcfg, TaggedToken

ORACLE_INSTANCES = 50
MAX_TREES = 20_000
LOG_TOLERANCE = 1e-12
FIXTURE_MATCHES = [(0, "then"), (2, "later"), (5, "suddenly"), (8, "happy")]
SIMPLE_GRAMMAR = """
S -> NP VP 1.0
NP -> 'a' 0.5
NP -> 'b' 0.5
VP -> 'runs' 1.0
"""
AMBIGUOUS_GRAMMAR = """
S -> A C 0.3
S -> D E 0.2
C -> B E 0.4
D -> A B 0.4
A -> 'x' 1.0
B -> 'y' 1.0
E -> 'z' 1.0
"""


def _tokens(raw: str) -> tuple[TaggedToken, ...]:
    return tuple(TaggedToken.from_raw(item) for item in raw.split())


def _words(*words: str) -> tuple[TaggedToken, ...]:
    return tuple(TaggedToken(text=word, tag="W") for word in words)


def test_load_grammar_reads_binary_and_lexical_rules() -> None:
    """Load a CNF grammar whose first left-hand side is the start symbol."""
    grammar = load_grammar(SIMPLE_GRAMMAR)

    assert grammar.start == "S"
    assert grammar.rule_count == 4
    assert grammar.nonterminals == {"S", "NP", "VP"}


def test_load_grammar_skips_comments_and_accepts_double_quotes() -> None:
    """Ignore comment lines and read double-quoted terminals."""
    grammar = load_grammar('# comment\n\nS -> NP VP 1.0\nNP -> "a" 1.0\nVP -> VBZ 1.0\n')

    assert {(rule.terminal, rule.is_tag) for rule in grammar.lexical_rules} == {("a", False), ("VBZ", True)}


def test_load_grammar_rejects_ternary_rule() -> None:
    """Reject right-hand sides with three symbols, naming the line."""
    with pytest.raises(GrammarError, match=r"Line 1: .*Chomsky normal form"):
        load_grammar("S -> NP VP PP 1.0")


def test_load_grammar_rejects_unary_nonterminal_rule() -> None:
    """Reject unary rules between nonterminals."""
    with pytest.raises(GrammarError, match="unary rule S -> NP"):
        load_grammar("S -> NP 1.0\nNP -> 'a' 1.0")


def test_load_grammar_rejects_unknown_right_hand_symbol() -> None:
    """Reject binary rules using a symbol without rules."""
    with pytest.raises(GrammarError, match="unknown symbol 'VP'"):
        load_grammar("S -> NP VP 1.0\nNP -> 'a' 1.0")


@pytest.mark.parametrize("probability", ["0", "1.5", "-0.1"])
def test_load_grammar_rejects_probability_outside_unit_interval(probability: str) -> None:
    """Require rule probabilities in (0, 1]."""
    with pytest.raises(GrammarError, match="outside"):
        load_grammar(f"S -> 'a' {probability}")


def test_load_grammar_rejects_non_numeric_probability() -> None:
    """Report probabilities that are not numbers."""
    with pytest.raises(GrammarError, match="not a number"):
        load_grammar("S -> 'a' high")


def test_load_grammar_warns_on_excess_mass(caplog: pytest.LogCaptureFixture) -> None:
    """Warn when a left-hand side's probabilities sum above one."""
    with caplog.at_level(logging.WARNING):
        grammar = load_grammar("S -> 'a' 0.6\nS -> 'b' 0.6")

    assert grammar.rule_count == 2
    assert "total probability 1.200000" in caplog.text


def test_load_grammar_strict_rejects_excess_mass() -> None:
    """Turn excess probability mass into an error in strict mode."""
    with pytest.raises(GrammarError, match="Rules of S"):
        load_grammar("S -> 'a' 0.6\nS -> 'b' 0.6", strict=True)


def test_load_grammar_rejects_empty_text() -> None:
    """Require at least one rule."""
    with pytest.raises(GrammarError, match="no rule"):
        load_grammar("# nothing here\n")


def test_cky_parse_returns_single_parse_probability() -> None:
    """Parse 'a runs' with probability one half."""
    tree = cky_parse(_words("a", "runs"), load_grammar(SIMPLE_GRAMMAR))

    assert tree is not None
    assert tree.probability == pytest.approx(0.5, abs=LOG_TOLERANCE)
    assert [token.text for token in tree.leaves()] == ["a", "runs"]


def test_cky_parse_prefers_more_probable_of_two_parses() -> None:
    """Pick the 0.12 parse over the 0.08 parse."""
    tree = cky_parse(_words("x", "y", "z"), load_grammar(AMBIGUOUS_GRAMMAR))

    assert tree is not None
    assert tree.probability == pytest.approx(0.12, abs=LOG_TOLERANCE)
    assert [child.label for child in tree.children] == ["A", "C"]


def test_cky_parse_returns_none_for_uncovered_token() -> None:
    """Fail when a token has no lexical rule."""
    assert cky_parse(_words("a", "sleeps"), load_grammar(SIMPLE_GRAMMAR)) is None


def test_cky_parse_returns_none_for_empty_sentence() -> None:
    """Return no parse for zero tokens."""
    assert cky_parse((), load_grammar(SIMPLE_GRAMMAR)) is None


def test_tree_probability_rejects_foreign_rule() -> None:
    """Reject trees using rules outside the grammar."""
    tree = cky_parse(_words("a", "runs"), load_grammar(SIMPLE_GRAMMAR))
    assert tree is not None

    with pytest.raises(GrammarError, match="not part of the grammar"):
        tree_probability(tree, load_grammar("S -> 'a' 1.0"))


def test_parse_tree_renders_bracketed_string(fixture_grammar: Pcfg) -> None:
    """Render a Penn-style single-line bracketing."""
    tree = cky_parse(_tokens("A_DT man_NN sits_VBZ ._."), fixture_grammar)
    assert tree is not None

    assert tree.to_bracketed() == "(ROOT (S (NP (Det (DT A)) (Noun (NN man))) (VP (VBZ sits))) (PERIOD (. .)))"


NONTERMINALS = ("S", "A", "B", "C")
TAGS = ("X", "Y")


def _random_grammar(rng: random.Random) -> Pcfg:
    binary = {(rng.choice(NONTERMINALS), rng.choice(NONTERMINALS), rng.choice(NONTERMINALS)) for _ in range(rng.randint(3, 12))}
    lexical = {("S", rng.choice(TAGS))} | {(rng.choice(NONTERMINALS), rng.choice(TAGS)) for _ in range(rng.randint(2, 7))}
    return Pcfg(
        start="S",
        binary_rules=tuple(BinaryRule(lhs, left, right, rng.uniform(0.05, 1.0)) for lhs, left, right in binary),
        lexical_rules=tuple(LexicalRule(lhs, tag, is_tag=True, probability=rng.uniform(0.05, 1.0)) for lhs, tag in lexical),
    )


def _enumerate_parses(grammar: Pcfg, tokens: tuple[TaggedToken, ...]) -> tuple[int, list[float]]:
    """Count every parse, and list their log probabilities when the count is small."""

    @functools.cache
    def count(symbol: str, start: int, end: int) -> int:
        if end - start == 1:
            return sum(1 for rule in grammar.lexical_rules if rule.lhs == symbol and rule.matches(tokens[start]))
        return sum(
            count(rule.left, start, split) * count(rule.right, split, end)
            for rule in grammar.binary_rules
            if rule.lhs == symbol
            for split in range(start + 1, end)
        )

    @functools.cache
    def parses(symbol: str, start: int, end: int) -> tuple[float, ...]:
        if end - start == 1:
            return tuple(rule.log_probability for rule in grammar.lexical_rules if rule.lhs == symbol and rule.matches(tokens[start]))
        return tuple(
            rule.log_probability + left + right
            for rule in grammar.binary_rules
            if rule.lhs == symbol
            for split in range(start + 1, end)
            for left in parses(rule.left, start, split)
            for right in parses(rule.right, split, end)
        )

    total = count(grammar.start, 0, len(tokens))
    if total > MAX_TREES:
        return total, []
    return total, list(parses(grammar.start, 0, len(tokens)))


@pytest.mark.slow
def test_cky_parse_matches_exhaustive_enumeration() -> None:
    """Find the maximum-probability parse and report its exact rule product."""
    checked = 0
    for seed in range(5000):
        rng = random.Random(seed)
        grammar = _random_grammar(rng)
        tokens = tuple(TaggedToken(text=f"w{index}", tag=rng.choice(TAGS)) for index in range(rng.randint(1, 7)))
        total, log_probabilities = _enumerate_parses(grammar, tokens)
        if total > MAX_TREES:
            continue

        tree = cky_parse(tokens, grammar)

        if total == 0:
            assert tree is None, f"seed {seed}"
            continue
        assert tree is not None, f"seed {seed}"
        assert tree.log_probability == pytest.approx(max(log_probabilities), abs=LOG_TOLERANCE), f"seed {seed}"
        assert tree_probability(tree, grammar) == pytest.approx(tree.log_probability, abs=LOG_TOLERANCE), f"seed {seed}"
        assert len(tree.leaves()) == len(tokens)
        checked += 1
        if checked == ORACLE_INSTANCES:
            break

    assert checked == ORACLE_INSTANCES


def test_matches_connective_pattern_extracts_then(fixture_grammar: Pcfg) -> None:
    """Match ADVP(RB) followed by S(NP VP) and return the remainder span."""
    tokens = _tokens("Then_RB ,_, a_DT man_NN sits_VBZ ._.")
    tree = cky_parse(tokens, fixture_grammar)
    assert tree is not None

    match = matches_connective_pattern(tree)

    assert match is not None
    assert match.connective == "then"
    start, end = match.remainder
    assert [token.text for token in tokens[start:end]] == ["a", "man", "sits", "."]


@pytest.mark.parametrize(
    "sentence",
    [
        "A_DT man_NN sits_VBZ ._.",
        "Very_RB quickly_RB ,_, he_PRP runs_VBZ ._.",
        "Earlier_RBR ,_, he_PRP runs_VBZ ._.",
        "In_IN the_DT room_NN ,_, he_PRP sits_VBZ ._.",
    ],
)
def test_matches_connective_pattern_rejects_other_openings(fixture_grammar: Pcfg, sentence: str) -> None:
    """Reject NP-initial, two-word, non-JJ/RB and PP openings."""
    tree = cky_parse(_tokens(sentence), fixture_grammar)
    assert tree is not None

    assert matches_connective_pattern(tree) is None


def test_matches_connective_pattern_accepts_adjective(fixture_grammar: Pcfg) -> None:
    """Accept a single JJ heading an ADJP."""
    tree = cky_parse(_tokens("Happy_JJ ,_, she_PRP dances_VBZ ._."), fixture_grammar)
    assert tree is not None

    match = matches_connective_pattern(tree)

    assert match is not None
    assert match.connective == "happy"


def test_read_tagged_corpus_splits_pairs_on_tab() -> None:
    """Read two tagged sentences per line, splitting tags on the last underscore."""
    pairs = read_tagged_corpus("New_York_NNP wins_VBZ\tThen_RB ._.\n\n")

    assert len(pairs) == 1
    assert pairs[0][0][0] == TaggedToken(text="New_York", tag="NNP")


def test_read_tagged_corpus_rejects_single_sentence_line() -> None:
    """Report lines without a TAB-separated pair."""
    with pytest.raises(InvalidInputError, match="Corpus line 1"):
        read_tagged_corpus("A_DT man_NN")


def test_read_tagged_corpus_rejects_untagged_token() -> None:
    """Report tokens without a tag."""
    with pytest.raises(InvalidInputError, match="Corpus line 1"):
        read_tagged_corpus("A_DT man\tHe_PRP runs_VBZ")


def test_build_connective_bank_keeps_fixture_matches_in_order(fixture_grammar: Pcfg, fixture_corpus: list, embeddings: EmbeddingTable) -> None:
    """Collect exactly the four pairs the per-pair matcher accepts."""
    bank = build_connective_bank(fixture_corpus, fixture_grammar, embeddings)

    oracle = []
    for pair_id, (_, second) in enumerate(fixture_corpus):
        tree = cky_parse(second, fixture_grammar)
        match = None if tree is None else matches_connective_pattern(tree)
        if match is not None:
            oracle.append((pair_id, match.connective))
    assert oracle == FIXTURE_MATCHES
    assert [(instance.source_pair_id, instance.connective) for instance in bank] == FIXTURE_MATCHES
    assert {instance.dimension for instance in bank} == {4}


def test_build_connective_bank_embeds_pair_without_connective(fixture_grammar: Pcfg, fixture_corpus: list, embeddings: EmbeddingTable) -> None:
    """Embed the first sentence, the boundary and the remainder of the second."""
    bank = build_connective_bank(fixture_corpus, fixture_grammar, embeddings, max_instances=1)

    expected = embed_pair(["A", "man", "enters", "."], ["a", "man", "sits", "."], embeddings)
    np.testing.assert_allclose(bank[0].vector, expected, atol=LOG_TOLERANCE)
    np.testing.assert_allclose(bank[0].vector, [0.45, 0.1, 0.225, 0.375], atol=LOG_TOLERANCE)


def test_build_connective_bank_truncates_in_corpus_order(fixture_grammar: Pcfg, fixture_corpus: list, embeddings: EmbeddingTable) -> None:
    """Keep the first matches when capped."""
    bank = build_connective_bank(fixture_corpus, fixture_grammar, embeddings, max_instances=2)

    assert [instance.connective for instance in bank] == ["then", "later"]


def test_build_connective_bank_is_identical_with_thread_pool(fixture_grammar: Pcfg, fixture_corpus: list, embeddings: EmbeddingTable) -> None:
    """Produce the same bank with an order-preserving parallel mapper."""
    with ThreadPoolExecutor(max_workers=4) as executor:
        parallel = build_connective_bank(fixture_corpus, fixture_grammar, embeddings, mapper=executor.map)

    assert parallel == build_connective_bank(fixture_corpus, fixture_grammar, embeddings)


def test_build_connective_bank_rejects_corpus_without_match(fixture_grammar: Pcfg, fixture_corpus: list, embeddings: EmbeddingTable) -> None:
    """Advise a larger corpus when nothing matches."""
    no_match = [pair for pair_id, pair in enumerate(fixture_corpus) if pair_id not in {0, 2, 5, 8}]

    with pytest.raises(EmptyBankError, match="larger tagged corpus"):
        build_connective_bank(no_match, fixture_grammar, embeddings)


def test_build_connective_bank_rejects_empty_corpus(fixture_grammar: Pcfg, embeddings: EmbeddingTable) -> None:
    """Fail on an empty corpus."""
    with pytest.raises(EmptyBankError):
        build_connective_bank([], fixture_grammar, embeddings)


def test_rule_log_probability_is_natural_log() -> None:
    """Store probabilities and expose their natural logarithm."""
    assert BinaryRule("S", "A", "B", 0.25).log_probability == pytest.approx(math.log(0.25))
