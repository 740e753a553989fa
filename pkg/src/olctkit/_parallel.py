"""Deterministic chunked thread parallelism.

Work is always cut into the same fixed-size chunks, whatever the worker
count, so every chunk sees identical array shapes and results are bitwise
independent of the number of threads.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "OLCT_KIT_THREADS"

_default_threads: int | None = None


def set_default_threads(n: int | None) -> None:
    global _default_threads
    _default_threads = n


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        threads = _default_threads
    if threads is None:
        env = os.environ.get(ENV_THREADS)
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(threads))


def chunk_slices(n: int, chunk: int) -> list[slice]:
    return [slice(i, min(i + chunk, n)) for i in range(0, n, chunk)]


def map_chunks(fn, n: int, chunk: int, threads: int | None = None) -> list:
    """Apply ``fn(slice)`` to fixed chunks of ``range(n)``; results in order."""
    slices = chunk_slices(n, chunk)
    workers = min(resolve_threads(threads), len(slices))
    if workers <= 1:
        return [fn(s) for s in slices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, slices))
