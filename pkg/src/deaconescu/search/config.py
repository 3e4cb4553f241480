"""Search configuration and its stable hash."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, fields
from decimal import Decimal, InvalidOperation
from typing import Optional

MODES = ("exhaustive", "dfs")
DEFAULT_M = (3, 5, 7)

# fields that change the result; worker count and checkpoint placement do not
_IDENTITY = ("mode", "limit", "k_range", "m_candidates", "n_cap", "prime_pool_limit")


def parse_natural(text) -> int:
    """Parse ``"1000"``, ``"1e18"`` or ``"10**6"`` exactly into an int."""
    if isinstance(text, int):
        return text
    s = str(text).strip().replace("_", "")
    if "**" in s:
        base, exp = s.split("**", 1)
        return parse_natural(base) ** parse_natural(exp)
    if "^" in s:
        base, exp = s.split("^", 1)
        return parse_natural(base) ** parse_natural(exp)
    try:
        d = Decimal(s)
    except InvalidOperation:
        raise ValueError(f"not a natural number: {text!r}") from None
    if d != d.to_integral_value() or d < 0:
        raise ValueError(f"not a natural number: {text!r}")
    return int(d)


@dataclass(frozen=True)
class SearchConfig:
    mode: str = "exhaustive"
    limit: int = 10**7
    k_range: tuple[int, int] = (7, 7)
    m_candidates: Optional[tuple[int, ...]] = DEFAULT_M  # None means "all"
    n_cap: int = 10**18
    prime_pool_limit: int = 10**5
    worker_count: int = 1
    checkpoint_path: Optional[str] = None
    checkpoint_every: int = 10**6

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.limit < 2:
            raise ValueError("limit must be >= 2")
        lo, hi = self.k_range
        if lo < 2 or hi < lo:
            raise ValueError("k_range must satisfy 2 <= low <= high")
        if self.m_candidates is not None:
            if not self.m_candidates:
                raise ValueError("m_candidates must be non-empty or 'all'")
            for m in self.m_candidates:
                if m < 3 or m % 2 == 0:
                    raise ValueError(f"multiplier candidates must be odd and >= 3, got {m}")
            object.__setattr__(self, "m_candidates", tuple(sorted(set(self.m_candidates))))
        if self.n_cap < 1:
            raise ValueError("n_cap must be >= 1")
        if self.prime_pool_limit < 3:
            raise ValueError("prime_pool_limit must be >= 3")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        if self.checkpoint_every < 1:
            raise ValueError("checkpoint_every must be >= 1")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["n_cap"] = str(self.n_cap)
        d["k_range"] = list(self.k_range)
        d["m_candidates"] = "all" if self.m_candidates is None else list(self.m_candidates)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SearchConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kw = dict(d)
        for key in ("limit", "n_cap", "prime_pool_limit", "worker_count", "checkpoint_every"):
            if key in kw:
                kw[key] = parse_natural(kw[key])
        if "k_range" in kw:
            kr = kw["k_range"]
            kw["k_range"] = (int(kr), int(kr)) if isinstance(kr, (int, str)) else tuple(int(x) for x in kr)
        if "m_candidates" in kw:
            mc = kw["m_candidates"]
            kw["m_candidates"] = None if mc in (None, "all") else tuple(int(x) for x in mc)
        return cls(**kw)

    @classmethod
    def load(cls, path: str) -> "SearchConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def config_hash(self) -> str:
        d = self.to_dict()
        ident = {k: d[k] for k in _IDENTITY}
        if self.mode == "exhaustive":
            ident = {"mode": self.mode, "limit": self.limit}
        else:
            ident.pop("limit")
            ident["n_cap"] = str(self.n_cap)
        blob = json.dumps(ident, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]
