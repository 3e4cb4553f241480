"""Counterexample search: exhaustive sieve scan and pruned prime-tuple DFS."""
from __future__ import annotations

from typing import Optional, Union

from .checkpoint import read_checkpoint, validate_checkpoint, write_checkpoint
from .config import SearchConfig, parse_natural
from .dfs import Trace, TupleSearch, brute_force_tuples, dfs_search, odd_prime_pool, run_dfs
from .exhaustive import classify_range, run_exhaustive, scan_block, sieve_scan, sieve_tables
from .report import SearchReport, merge_all


def run(config: SearchConfig, initial: Optional[SearchReport] = None, stop_at: Optional[int] = None) -> SearchReport:
    if config.mode == "exhaustive":
        return run_exhaustive(config, initial=initial, stop_at=stop_at)
    return run_dfs(config, initial=initial, stop_at=stop_at)


def resume(checkpoint: Union[str, dict], config: SearchConfig, stop_at: Optional[int] = None) -> SearchReport:
    """Continue from a checkpoint (path or loaded token).

    The returned report already includes the checkpoint's partial counters, so
    it equals what an uninterrupted run would have produced.  Resuming a
    finished search does no further work.
    """
    token = read_checkpoint(checkpoint) if isinstance(checkpoint, str) else checkpoint
    partial = validate_checkpoint(token, config)
    return run(config, initial=partial, stop_at=stop_at)


__all__ = [
    "SearchConfig",
    "SearchReport",
    "Trace",
    "TupleSearch",
    "brute_force_tuples",
    "classify_range",
    "dfs_search",
    "merge_all",
    "odd_prime_pool",
    "parse_natural",
    "read_checkpoint",
    "resume",
    "run",
    "run_dfs",
    "run_exhaustive",
    "scan_block",
    "sieve_scan",
    "sieve_tables",
    "validate_checkpoint",
    "write_checkpoint",
]
