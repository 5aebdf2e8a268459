# pcenters/parallel.py
"""Ordered thread-pool map for pure numerical work.

numpy releases the GIL in the heavy kernels, so threads are enough.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from pcenters.config import settings

log = logging.getLogger("pc")

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> List[R]:
    """Apply ``fn`` to every item; results come back in input order."""
    items = list(items)
    n = settings.THREADS if threads is None else threads
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
