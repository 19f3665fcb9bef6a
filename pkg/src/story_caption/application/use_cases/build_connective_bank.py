"""Build the connective-instance bank from a tagged corpus."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import partial
from typing import TYPE_CHECKING

from story_caption.application.dtos import BankSummary
from story_caption.application.services import build_manifest, map_ordered, stage_timer, utc_now
from story_caption.domain.services import build_connective_bank, load_grammar, read_tagged_corpus

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

    from story_caption.application.dtos import PipelineConfig
    from story_caption.application.ports.output import ArtifactStorePort, RunMetricsPort

LOGGER = logging.getLogger(__name__)
COMMAND = "build-bank"
BANK_FILE = "bank.json"


def _ordered_mapper(threads: int) -> Callable[..., Iterable[object]]:
    def mapper(fn: Callable[..., object], *columns: Iterable[object]) -> list[object]:
        return map_ordered(lambda args: fn(*args), list(zip(*columns, strict=True)), threads)

    return mapper


@dataclass(frozen=True)
class BuildConnectiveBankUseCase:
    """Parse corpus pairs and keep those whose second sentence opens with a connective."""

    store: ArtifactStorePort
    metrics: RunMetricsPort | None = None

    def execute(self, config: PipelineConfig) -> BankSummary:
        """Write ``bank.json`` with at most ``bank_max_instances`` entries."""
        started_at = utc_now()
        inputs = {name: config.require_path(name) for name in ("tagged_corpus", "grammar", "embeddings")}
        grammar = load_grammar(self.store.read_text(inputs["grammar"]), strict=config.grammar_strict)
        pairs = read_tagged_corpus(self.store.read_text(inputs["tagged_corpus"]))
        table = self.store.read_embeddings(inputs["embeddings"])

        build = partial(
            build_connective_bank,
            max_instances=config.bank_max_instances,
            boundary=config.boundary_token,
        )
        with stage_timer(self.metrics, "parse_corpus"):
            if config.threads > 1:
                bank = build(pairs, grammar, table, mapper=_ordered_mapper(config.threads))
            else:
                bank = build(pairs, grammar, table)

        bank_path = self.store.write_bank(config.output_dir / BANK_FILE, bank)
        if self.metrics is not None:
            self.metrics.record_items(COMMAND, len(pairs))
        manifest = build_manifest(
            command=COMMAND, config=config, inputs=inputs, store=self.store, started_at=started_at, metrics=self.metrics
        )
        self.store.write_manifest(config.output_dir, manifest)
        connectives = Counter(instance.connective for instance in bank)
        LOGGER.info(
            "Connective bank written",
            extra={"component": self.__class__.__name__, "pairs": len(pairs), "instances": len(bank), "path": str(bank_path)},
        )
        return BankSummary(pairs=len(pairs), instances=len(bank), connectives=dict(connectives), bank_path=bank_path)
