"""Probabilistic grammar in Chomsky normal form and its parse trees."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from nltk import Tree

from story_caption.domain.exceptions import GrammarError

if TYPE_CHECKING:
    from .tokens import TaggedToken


@dataclass(frozen=True, order=True)
class BinaryRule:
    """``lhs -> left right``."""

    lhs: str
    left: str
    right: str
    probability: float = field(compare=False)

    @property
    def log_probability(self) -> float:
        """Return the natural log of the rule probability."""
        return math.log(self.probability)

    def __str__(self) -> str:
        """Render the rule in grammar-file syntax."""
        return f"{self.lhs} -> {self.left} {self.right} {self.probability}"


@dataclass(frozen=True, order=True)
class LexicalRule:
    """``lhs -> 'word'`` when ``is_tag`` is false, ``lhs -> TAG`` otherwise."""

    lhs: str
    terminal: str
    is_tag: bool
    probability: float = field(compare=False)

    @property
    def log_probability(self) -> float:
        """Return the natural log of the rule probability."""
        return math.log(self.probability)

    def matches(self, token: TaggedToken) -> bool:
        """Return whether this rule can emit ``token``."""
        if self.is_tag:
            return token.tag == self.terminal
        return token.lower == self.terminal.lower()

    def __str__(self) -> str:
        """Render the rule in grammar-file syntax."""
        rhs = self.terminal if self.is_tag else f"'{self.terminal}'"
        return f"{self.lhs} -> {rhs} {self.probability}"


@dataclass(frozen=True)
class Pcfg:
    """Validated CNF grammar."""

    start: str
    binary_rules: tuple[BinaryRule, ...]
    lexical_rules: tuple[LexicalRule, ...]

    def __post_init__(self) -> None:
        """Sort rules so iteration order is the lexicographic tie-break order."""
        object.__setattr__(self, "binary_rules", tuple(sorted(self.binary_rules)))
        object.__setattr__(self, "lexical_rules", tuple(sorted(self.lexical_rules)))
        if self.start not in self.nonterminals:
            msg = f"Start symbol {self.start} has no rule"
            raise GrammarError(msg)

    @property
    def nonterminals(self) -> frozenset[str]:
        """Return every left-hand-side symbol."""
        return frozenset(rule.lhs for rule in self.binary_rules) | frozenset(rule.lhs for rule in self.lexical_rules)

    @property
    def rule_count(self) -> int:
        """Return the total number of rules."""
        return len(self.binary_rules) + len(self.lexical_rules)


@dataclass(frozen=True)
class ParseTree:
    """Binary or lexical parse node over the token span ``[start, end)``."""

    label: str
    start: int
    end: int
    log_probability: float
    children: tuple[ParseTree, ...] = ()
    token: TaggedToken | None = None
    rule: BinaryRule | LexicalRule | None = None

    @property
    def is_leaf(self) -> bool:
        """Return whether this node emits a token."""
        return self.token is not None

    @property
    def probability(self) -> float:
        """Return the tree probability."""
        return math.exp(self.log_probability)

    def leaves(self) -> tuple[TaggedToken, ...]:
        """Return the covered tokens left to right."""
        if self.token is not None:
            return (self.token,)
        return tuple(token for child in self.children for token in child.leaves())

    def rules(self) -> tuple[BinaryRule | LexicalRule, ...]:
        """Return the rules used, pre-order."""
        own = (self.rule,) if self.rule is not None else ()
        return own + tuple(rule for child in self.children for rule in child.rules())

    def to_nltk(self) -> Tree:
        """Convert to an ``nltk.Tree``."""
        if self.token is not None:
            return Tree(self.label, [Tree(self.token.tag, [self.token.text])])
        return Tree(self.label, [child.to_nltk() for child in self.children])

    def to_bracketed(self) -> str:
        """Render a single-line Penn-style bracketing."""
        return " ".join(self.to_nltk().pformat(margin=10**6).split())


@dataclass(frozen=True)
class ConnectiveInstance:
    """Connective word with the pair embedding of its context."""

    connective: str
    vector: tuple[float, ...]
    source_pair_id: int

    def __post_init__(self) -> None:
        """Store the connective lowercased and the vector as a tuple."""
        object.__setattr__(self, "connective", self.connective.lower())
        object.__setattr__(self, "vector", tuple(float(value) for value in self.vector))

    @property
    def dimension(self) -> int:
        """Return the vector dimension."""
        return len(self.vector)
