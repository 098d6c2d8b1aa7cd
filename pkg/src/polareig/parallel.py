"""Deterministic work splitting for the oracle's exhaustive scans.

Work is cut into contiguous index chunks, one per worker; chunk results are
concatenated in chunk order and the caller sorts canonically, so output is
identical for any worker count.
"""

from __future__ import annotations

import multiprocessing


def chunk_ranges(n: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, n)) if n else 1
    step, extra = divmod(n, workers)
    out = []
    lo = 0
    for i in range(workers):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def run_chunked(worker, payloads: list, workers: int) -> list:
    """Apply `worker` to each payload, serially or in a fork pool."""
    if workers <= 1 or len(payloads) <= 1:
        return [worker(p) for p in payloads]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(min(workers, len(payloads))) as pool:
        return pool.map(worker, payloads)
