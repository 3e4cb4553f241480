"""Pruned depth-first search over increasing tuples of odd primes.

A tuple ``p_1 < ... < p_K`` stands for the odd squarefree ``n = p_1 ... p_K``,
for which ``phi = prod(p - 1)`` and ``S2 = prod(p - 2)``.  Children are tried
smallest prime first, and three cuts apply at each node:

* ratio: ``phi/S2`` must end strictly above the smallest admissible M.  The
  best completion uses the next consecutive pool primes, because
  ``(p - 1)/(p - 2)`` falls as p grows.
* bound: the product of the tuple and its smallest completion must stay
  below ``min(n_cap + 1, deaconescu_upper_bound(K))``.
* mod 3: once ``p_1 = 3`` the multiplier 3 is impossible and is dropped.

Both the best ratio and the minimal product are monotone in the next prime,
so a failing cut ends the loop over siblings.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Callable, Iterator, Optional, Sequence

from ..arith import sieve_primes
from ..bounds import deaconescu_upper_bound
from ..props import ClassificationRecord, divides
from .checkpoint import write_checkpoint
from .config import SearchConfig
from .report import SearchReport


@dataclass
class Trace:
    """Optional bookkeeping for tests: evaluated leaves and cut points."""

    leaves: dict[tuple[int, ...], Optional[int]] = field(default_factory=dict)
    # (prefix, first pool index cut off, primes still to add after it, reason)
    cuts: list[tuple[tuple[int, ...], int, int, str]] = field(default_factory=list)


def odd_prime_pool(limit: int) -> list[int]:
    return [p for p in sieve_primes(limit) if p != 2]


def leaf_multiplier(primes: Sequence[int]) -> Optional[int]:
    """M solving ``M * S2 = phi - 1`` for the product of distinct odd primes, or None."""
    phi = math.prod(p - 1 for p in primes)
    s2 = math.prod(p - 2 for p in primes)
    if not divides(s2, phi - 1):
        return None
    return (phi - 1) // s2


def witness_record(primes: Sequence[int], m: int) -> ClassificationRecord:
    n = math.prod(primes)
    phi = math.prod(p - 1 for p in primes)
    return ClassificationRecord(
        n=n,
        phi=phi,
        s2=math.prod(p - 2 for p in primes),
        is_prime=False,
        is_lehmer=divides(phi, n - 1),
        is_deaconescu=True,
        multiplier=m,
    )


class TupleSearch:
    """DFS for one tuple length K over a fixed pool of odd primes."""

    def __init__(
        self,
        pool: Sequence[int],
        k: int,
        m_candidates: Optional[Sequence[int]],
        n_cap: int,
        trace: Optional[Trace] = None,
    ):
        self.pool = list(pool)
        self.k = k
        self.m_set = None if m_candidates is None else frozenset(m_candidates)
        self.cap = min(n_cap + 1, deaconescu_upper_bound(k))
        if self.m_set is None:
            self.m_min = 3
            self.m_min_3 = 5
        else:
            self.m_min = min(self.m_set)
            rest = self.m_set - {3}
            self.m_min_3 = min(rest) if rest else None
        self.trace = trace
        self._windows: dict[tuple[int, int], tuple[int, int, int]] = {}

    def window(self, i: int, r: int) -> tuple[int, int, int]:
        """(prod(p-1), prod(p-2), prod(p)) over ``pool[i:i+r]``."""
        key = (i, r)
        w = self._windows.get(key)
        if w is None:
            ps = self.pool[i : i + r]
            w = (math.prod(p - 1 for p in ps), math.prod(p - 2 for p in ps), math.prod(ps))
            self._windows[key] = w
        return w

    def _cut(self, rep, reason, prefix, i, r):
        setattr(rep, reason, getattr(rep, reason) + 1)
        if self.trace is not None:
            self.trace.cuts.append((tuple(prefix), i, r, reason))

    def step(self, rep: SearchReport, prefix: list[int], num: int, den: int, prod: int, i: int) -> str:
        """Decide the child ``pool[i]`` of ``prefix``.

        Returns ``"ok"``, ``"skip"`` (this child cut, later siblings may live)
        or ``"stop"`` (this and every later sibling cut).
        """
        r = self.k - len(prefix) - 1
        if i + r >= len(self.pool):
            rep.pool_exhausted += 1
            return "stop"
        p = self.pool[i]
        wn, wd, wp = self.window(i + 1, r)
        if prod * p * wp >= self.cap:
            self._cut(rep, "pruned_bound", prefix, i, r)
            return "stop"
        best_num = num * (p - 1) * wn
        best_den = den * (p - 2) * wd
        if best_num <= self.m_min * best_den:
            self._cut(rep, "pruned_ratio", prefix, i, r)
            return "stop"
        in_3_branch = (prefix[0] if prefix else p) == 3
        if in_3_branch and (self.m_min_3 is None or best_num <= self.m_min_3 * best_den):
            self._cut(rep, "pruned_mod3", prefix, i, r)
            return "skip" if not prefix else "stop"
        return "ok"

    def subtree(self, rep: SearchReport, prefix: list[int], num: int, den: int, prod: int, i0: int) -> None:
        """Explore the children of ``prefix`` starting at pool index ``i0``."""
        depth = len(prefix)
        for i in range(i0, len(self.pool)):
            verdict = self.step(rep, prefix, num, den, prod, i)
            if verdict == "stop":
                return
            if verdict == "skip":
                continue
            p = self.pool[i]
            prefix.append(p)
            if depth + 1 == self.k:
                self.leaf(rep, prefix)
            else:
                self.subtree(rep, prefix, num * (p - 1), den * (p - 2), prod * p, i + 1)
            prefix.pop()

    def leaf(self, rep: SearchReport, primes: list[int]) -> None:
        rep.examined += 1
        m = leaf_multiplier(primes)
        if self.trace is not None:
            self.trace.leaves[tuple(primes)] = m
        if m is not None and (self.m_set is None or m in self.m_set):
            rep.witnesses.append(witness_record(primes, m))

    def root(self, i: int) -> tuple[SearchReport, bool]:
        """Search everything with ``p_1 = pool[i]``; second value False ends the K."""
        rep = SearchReport()
        verdict = self.step(rep, [], 1, 1, 1, i)
        if verdict == "ok":
            p = self.pool[i]
            if self.k == 1:
                self.leaf(rep, [p])
            else:
                self.subtree(rep, [p], p - 1, p - 2, p, i + 1)
        return rep, verdict != "stop"


# ---------------------------------------------------------------- driver

_WORKER_STATE: dict = {}


def _init_worker(pool, m_candidates, n_cap):
    _WORKER_STATE.update(pool=pool, m=m_candidates, cap=n_cap, searches={})


def _worker_root(task):
    k, i = task
    searches = _WORKER_STATE["searches"]
    if k not in searches:
        searches[k] = TupleSearch(_WORKER_STATE["pool"], k, _WORKER_STATE["m"], _WORKER_STATE["cap"])
    return searches[k].root(i)[0]


def _position(config: SearchConfig, pool_len: int, k: int, i: int) -> int:
    return (k - config.k_range[0]) * pool_len + i


def _root_tasks(config, pool, start) -> Iterator[tuple[int, int, int]]:
    n = len(pool)
    k_lo, k_hi = config.k_range
    for k in range(k_lo, k_hi + 1):
        base = (k - k_lo) * n
        if base + n <= start:
            continue
        for i in range(max(0, start - base), n):
            yield k, i, base + i


def run_dfs(
    config: SearchConfig,
    initial: Optional[SearchReport] = None,
    stop_at: Optional[int] = None,
    trace: Optional[Trace] = None,
    on_root: Optional[Callable[[SearchReport], None]] = None,
) -> SearchReport:
    """Run (or continue) the DFS described by ``config``.

    Work is split by first prime; the cursor counts root positions
    ``(K, index of p_1)`` already settled.  When a root reports that every
    later first prime is cut, the cursor jumps to the next K.
    """
    pool = odd_prime_pool(config.prime_pool_limit)
    n = len(pool)
    end = (config.k_range[1] - config.k_range[0] + 1) * n
    report = initial if initial is not None else SearchReport(cursor=0)
    start = report.cursor or 0
    if start >= end:
        return report
    t0 = time.perf_counter()
    elapsed0 = report.elapsed_seconds
    since = 0
    searches: dict[int, TupleSearch] = {}

    def search_for(k):
        if k not in searches:
            searches[k] = TupleSearch(pool, k, config.m_candidates, config.n_cap, trace)
        return searches[k]

    def fold(rep: SearchReport, cursor: int) -> bool:
        nonlocal report, since
        rep.cursor = cursor
        report = report.merge(rep)
        report.elapsed_seconds = elapsed0 + time.perf_counter() - t0
        since += rep.examined + 1
        stopping = stop_at is not None and cursor >= stop_at
        if config.checkpoint_path and (since >= config.checkpoint_every or cursor >= end or stopping):
            write_checkpoint(config.checkpoint_path, config, report)
            since = 0
        if on_root is not None:
            on_root(report)
        return stopping

    def next_k_start(k):
        return _position(config, n, k + 1, 0)

    if config.worker_count == 1:
        skip_to = None
        for k, i, pos in _root_tasks(config, pool, start):
            if skip_to is not None and pos < skip_to:
                continue
            rep, alive = search_for(k).root(i)
            cursor = pos + 1 if alive else next_k_start(k)
            skip_to = cursor
            if fold(rep, cursor):
                break
        else:
            if report.cursor is None or report.cursor < end:
                report.cursor = end
        return report

    # Parallel: root cuts are cheap, so the driver settles them itself and only
    # ships surviving first primes to workers, then folds results in order.
    tasks: list[tuple[int, int, int, Optional[SearchReport]]] = []
    skip_to = None
    for k, i, pos in _root_tasks(config, pool, start):
        if skip_to is not None and pos < skip_to:
            continue
        rep = SearchReport()
        verdict = search_for(k).step(rep, [], 1, 1, 1, i)
        if verdict == "ok":
            tasks.append((k, i, pos + 1, None))
            skip_to = pos + 1
        else:
            cursor = pos + 1 if verdict == "skip" else next_k_start(k)
            tasks.append((k, i, cursor, rep))
            skip_to = cursor
    with ProcessPoolExecutor(
        max_workers=config.worker_count,
        initializer=_init_worker,
        initargs=(pool, config.m_candidates, config.n_cap),
    ) as ex:
        live = [(k, i) for k, i, _, rep in tasks if rep is None]
        results = iter(ex.map(_worker_root, live))
        for k, i, cursor, rep in tasks:
            if rep is None:
                rep = next(results)
            if fold(rep, cursor):
                ex.shutdown(wait=False, cancel_futures=True)
                break
        else:
            if report.cursor is None or report.cursor < end:
                report.cursor = end
    return report


def dfs_search(config: SearchConfig, trace: Optional[Trace] = None) -> SearchReport:
    if config.mode != "dfs":
        config = replace(config, mode="dfs")
    return run_dfs(config, trace=trace)


def brute_force_tuples(
    pool: Sequence[int], k: int, m_candidates: Optional[Sequence[int]] = None
) -> tuple[list[ClassificationRecord], dict[tuple[int, ...], Optional[int]]]:
    """Evaluate every K-subset of ``pool`` with no cuts at all (the oracle for :func:`dfs_search`)."""
    allowed = None if m_candidates is None else set(m_candidates)
    witnesses = []
    leaves = {}
    for combo in combinations(pool, k):
        m = leaf_multiplier(combo)
        leaves[combo] = m
        if m is not None and (allowed is None or m in allowed):
            witnesses.append(witness_record(combo, m))
    witnesses.sort(key=lambda r: r.n)
    return witnesses, leaves
