"""SearchReport: the mergeable summary produced by every scan and DFS."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from ..props import ClassificationRecord

COUNTERS = ("examined", "pruned_ratio", "pruned_bound", "pruned_mod3", "pool_exhausted", "primes", "primes_m1")


@dataclass
class SearchReport:
    """Counters, witnesses and a resumption cursor.

    Reports over disjoint pieces of work form a commutative monoid under
    :meth:`merge`: counters add, witness lists are concatenated and kept
    sorted by n, and the cursor is the furthest position reached.
    """

    examined: int = 0
    pruned_ratio: int = 0
    pruned_bound: int = 0
    pruned_mod3: int = 0
    pool_exhausted: int = 0
    primes: int = 0
    primes_m1: int = 0
    witnesses: list[ClassificationRecord] = field(default_factory=list)
    lehmer_witnesses: list[ClassificationRecord] = field(default_factory=list)
    elapsed_seconds: float = 0.0
    cursor: Optional[int] = None

    def merge(self, other: "SearchReport") -> "SearchReport":
        cursors = [c for c in (self.cursor, other.cursor) if c is not None]
        out = SearchReport(
            witnesses=sorted(self.witnesses + other.witnesses, key=_key),
            lehmer_witnesses=sorted(self.lehmer_witnesses + other.lehmer_witnesses, key=_key),
            elapsed_seconds=self.elapsed_seconds + other.elapsed_seconds,
            cursor=max(cursors) if cursors else None,
        )
        for name in COUNTERS:
            setattr(out, name, getattr(self, name) + getattr(other, name))
        return out

    __add__ = merge

    @property
    def witness_count(self) -> int:
        return len(self.witnesses) + len(self.lehmer_witnesses)

    def to_dict(self, elapsed: bool = True) -> dict:
        d = {name: getattr(self, name) for name in COUNTERS}
        d["witnesses"] = [vars(w).copy() for w in self.witnesses]
        d["lehmer_witnesses"] = [vars(w).copy() for w in self.lehmer_witnesses]
        d["cursor"] = self.cursor
        if elapsed:
            d["elapsed_seconds"] = self.elapsed_seconds
        return d

    def to_json(self, elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(elapsed), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "SearchReport":
        return cls(
            **{name: int(d.get(name, 0)) for name in COUNTERS},
            witnesses=[ClassificationRecord.from_dict(w) for w in d.get("witnesses", [])],
            lehmer_witnesses=[ClassificationRecord.from_dict(w) for w in d.get("lehmer_witnesses", [])],
            elapsed_seconds=float(d.get("elapsed_seconds", 0.0)),
            cursor=d.get("cursor"),
        )


def _key(r: ClassificationRecord) -> tuple[int, int]:
    return (r.n, -1 if r.multiplier is None else r.multiplier)


def merge_all(reports) -> SearchReport:
    out = SearchReport()
    for r in reports:
        out = out.merge(r)
    return out
