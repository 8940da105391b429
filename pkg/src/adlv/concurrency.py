"""Worker-count handling.

ADLV_THREADS caps the worker count for embarrassingly parallel sweeps.
Results are assembled in input order, so parallel runs are
indistinguishable from serial ones; shared caches are read-mostly dicts
whose entries are idempotent, so a duplicated computation is the worst
a race can produce.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    raw = os.environ.get("ADLV_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def parallel_map(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    """Order-preserving map honoring ADLV_THREADS."""
    n = worker_count()
    if n <= 1 or len(items) < 32:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
