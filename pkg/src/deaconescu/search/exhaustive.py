"""Sieve-driven scan of every n <= limit."""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterator, Optional

import numpy as np

from ..arith import check_memory, sieve_array
from ..kernels import classify_arrays, linear_sieve, segment_totients
from ..props import ClassificationRecord
from .checkpoint import write_checkpoint
from .config import SearchConfig
from .report import SearchReport, merge_all

SEGMENT = 1 << 18


def _records(ns, phi, s2, prime, mult, leh, dea, idx) -> list[ClassificationRecord]:
    return [
        ClassificationRecord(
            n=int(ns[i]),
            phi=int(phi[i]),
            s2=int(s2[i]),
            is_prime=bool(prime[i]),
            is_lehmer=bool(leh[i]),
            is_deaconescu=bool(dea[i]),
            multiplier=None if mult[i] < 0 else int(mult[i]),
        )
        for i in idx
    ]


def _tables(lo: int, hi: int, base: np.ndarray):
    phi, s2 = segment_totients(lo, hi, base)
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    return (ns, phi, s2) + classify_arrays(ns, phi, s2)


def scan_block(lo: int, hi: int, base: Optional[np.ndarray] = None) -> SearchReport:
    """Report for ``n`` in ``[lo, hi]``; the unit of work handed to workers."""
    if base is None:
        base = sieve_array(math.isqrt(hi) + 1)
    report = SearchReport(cursor=hi + 1)
    for a in range(lo, hi + 1, SEGMENT):
        b = min(a + SEGMENT - 1, hi)
        ns, phi, s2, prime, mult, leh, dea = _tables(a, b, base)
        report.examined += len(ns)
        report.primes += int(prime.sum())
        report.primes_m1 += int((prime & (mult == 1)).sum())
        report.witnesses += _records(ns, phi, s2, prime, mult, leh, dea, np.flatnonzero(dea))
        report.lehmer_witnesses += _records(ns, phi, s2, prime, mult, leh, dea, np.flatnonzero(leh))
    return report


def classify_range(lo: int, hi: int) -> Iterator[ClassificationRecord]:
    """One record per n in ``[lo, hi]``, in order, via a segmented sieve."""
    if lo < 2 or hi < lo:
        raise ValueError("need 2 <= lo <= hi")
    base = sieve_array(math.isqrt(hi) + 1)
    for a in range(lo, hi + 1, SEGMENT):
        b = min(a + SEGMENT - 1, hi)
        tabs = _tables(a, b, base)
        yield from _records(*tabs, range(b - a + 1))


def sieve_tables(limit: int):
    """Full phi/S2 tables for ``0..limit`` from the linear smallest-prime-factor sieve."""
    check_memory(24 * (limit + 1), f"sieve tables to {limit}")
    _, phi, s2 = linear_sieve(limit)
    return phi, s2


def _blocks(start: int, limit: int, step: int):
    lo = start
    while lo <= limit:
        hi = min(lo + step - 1, limit)
        yield lo, hi
        lo = hi + 1


def _run_block(args):
    return scan_block(*args)


def run_exhaustive(
    config: SearchConfig,
    initial: Optional[SearchReport] = None,
    stop_at: Optional[int] = None,
    on_block: Optional[Callable[[SearchReport], None]] = None,
) -> SearchReport:
    """Scan ``n`` from the cursor of ``initial`` (default 2) up to ``config.limit``.

    Blocks of ``checkpoint_every`` numbers are processed (in parallel when
    ``worker_count > 1``) and folded in order; a checkpoint is written after
    each block.  ``stop_at`` halts at the first block boundary ``>= stop_at``.
    """
    limit = config.limit
    check_memory(64 * min(config.checkpoint_every, SEGMENT) * config.worker_count, "scan blocks")
    report = initial if initial is not None else SearchReport(cursor=2)
    start = report.cursor if report.cursor is not None else 2
    if start > limit:
        return report
    base = sieve_array(math.isqrt(limit) + 1)
    blocks = list(_blocks(start, limit, config.checkpoint_every))
    t0 = time.perf_counter()
    elapsed0 = report.elapsed_seconds

    def fold(block_report: SearchReport) -> bool:
        nonlocal report
        report = report.merge(block_report)
        report.elapsed_seconds = elapsed0 + time.perf_counter() - t0
        if config.checkpoint_path:
            write_checkpoint(config.checkpoint_path, config, report)
        if on_block is not None:
            on_block(report)
        return stop_at is not None and report.cursor >= stop_at

    if config.worker_count == 1:
        for lo, hi in blocks:
            if fold(scan_block(lo, hi, base)):
                break
        return report

    with ProcessPoolExecutor(max_workers=config.worker_count) as ex:
        for block_report in ex.map(_run_block, [(lo, hi, base) for lo, hi in blocks]):
            if fold(block_report):
                ex.shutdown(wait=False, cancel_futures=True)
                break
    return report


def sieve_scan(limit: int, workers: int = 1, **kw) -> SearchReport:
    """Check ``M S2(n) = phi(n) - 1`` and ``phi(n) | n - 1`` for every composite n <= limit."""
    config = SearchConfig(mode="exhaustive", limit=limit, worker_count=workers, **kw)
    return run_exhaustive(config)


__all__ = ["classify_range", "merge_all", "run_exhaustive", "scan_block", "sieve_scan", "sieve_tables"]
