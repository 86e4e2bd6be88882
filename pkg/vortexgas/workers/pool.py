# vortexgas/workers/pool.py
# -----------------------------------------------
# Fan-out for independent jobs (temperature points, beta points).
# Results always come back in input order, so artifacts do not depend
# on how many workers ran them.
# -----------------------------------------------

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

from vortexgas.settings import S

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def worker_count(n_jobs: int, threads: int | None = None) -> int:
    cap = S.threads if threads is None else threads
    return max(1, min(int(cap), n_jobs))


def parallel_map(fn: Callable[[T], R], jobs: Sequence[T], *, threads: int | None = None) -> list[R]:
    """
    Map `fn` over `jobs` with at most `threads` processes (default VORTEXGAS_THREADS).

    A cap of 1 runs inline. `fn` and the jobs must be picklable otherwise.
    The first failing job's exception propagates.
    """
    jobs = list(jobs)
    n = worker_count(len(jobs), threads)
    if n <= 1:
        return [fn(job) for job in jobs]
    logger.info("fanning out %d jobs over %d workers", len(jobs), n)
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, jobs))
