"""Bounded, order-preserving worker pool."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, TypeVar

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """Apply ``fn`` to every item, returning results in input order.

    Runs inline for a single thread; the first raised exception propagates.
    """
    materialized = list(items)
    if threads <= 1 or len(materialized) <= 1:
        return [fn(item) for item in materialized]
    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="story-caption") as executor:
        return list(executor.map(fn, materialized))
