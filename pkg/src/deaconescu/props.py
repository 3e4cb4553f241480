"""Lehmer / Deaconescu predicates and the odd-squarefree-omega>=7 filter."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .arith import Factorization, check_memory, euler_phi, factorize, is_squarefree, omega, schemmel_s2
from .kernels import classify_arrays, linear_sieve

RECORD_FIELDS = ("n", "phi", "s2", "is_prime", "is_lehmer", "is_deaconescu", "multiplier")


@dataclass(frozen=True)
class ClassificationRecord:
    n: int
    phi: int
    s2: int
    is_prime: bool
    is_lehmer: bool
    is_deaconescu: bool
    multiplier: Optional[int]

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ClassificationRecord":
        return cls.from_dict(json.loads(line))

    @classmethod
    def from_dict(cls, d: dict) -> "ClassificationRecord":
        if set(d) != set(RECORD_FIELDS):
            raise ValueError(f"record fields must be exactly {RECORD_FIELDS}")
        return cls(**d)


@dataclass(frozen=True)
class FilterVerdict:
    n: int
    fails_odd: bool
    fails_squarefree: bool
    fails_omega7: bool

    @property
    def passes_all(self) -> bool:
        return not (self.fails_odd or self.fails_squarefree or self.fails_omega7)


def divides(d: int, x: int) -> bool:
    """True iff ``k * d == x`` for some integer k; zero divides only zero."""
    if d == 0:
        return x == 0
    return x % d == 0


def _require_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")


def multiplier_from(phi: int, s2: int) -> Optional[int]:
    """M with ``M * s2 = phi - 1``, if any.

    ``s2 = 0`` admits a multiplier only when ``phi = 1`` (n = 2); that case is
    reported as M = 1, matching the prime family.
    """
    if not divides(s2, phi - 1):
        return None
    if s2 == 0:
        return 1
    return (phi - 1) // s2


def deaconescu_multiplier(n: int) -> Optional[int]:
    _require_n(n)
    f = factorize(n)
    return multiplier_from(euler_phi(f), schemmel_s2(f))


def _is_composite(f: Factorization) -> bool:
    return not (len(f.factors) == 1 and f.factors[0][1] == 1)


def is_deaconescu_number(n: int) -> bool:
    _require_n(n)
    f = factorize(n)
    return _is_composite(f) and multiplier_from(euler_phi(f), schemmel_s2(f)) is not None


def is_lehmer_number(n: int) -> bool:
    _require_n(n)
    f = factorize(n)
    return _is_composite(f) and divides(euler_phi(f), n - 1)


def classify(n: int) -> ClassificationRecord:
    _require_n(n)
    f = factorize(n)
    phi, s2 = euler_phi(f), schemmel_s2(f)
    prime = not _is_composite(f)
    m = multiplier_from(phi, s2)
    return ClassificationRecord(
        n=n,
        phi=phi,
        s2=s2,
        is_prime=prime,
        is_lehmer=not prime and divides(phi, n - 1),
        is_deaconescu=not prime and m is not None,
        multiplier=m,
    )


def structural_filter(f: Factorization) -> FilterVerdict:
    """Flag each necessary condition (odd, squarefree, omega >= 7) that n violates."""
    if f.value < 2:
        raise ValueError("structural_filter needs n >= 2")
    return FilterVerdict(
        n=f.value,
        fails_odd=f.value % 2 == 0,
        fails_squarefree=not is_squarefree(f),
        fails_omega7=omega(f) < 7,
    )


@dataclass
class D1Report:
    """Result of scanning ``2..limit`` for the M = 1 family."""

    limit: int
    primes_checked: int = 0
    violations: list[int] = field(default_factory=list)  # composites with M = 1
    primes_without_m1: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.primes_without_m1


def check_d1_is_primes(limit: int) -> D1Report:
    """Exhaustively confirm that the n <= limit with M = 1 are exactly the primes."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    check_memory(24 * (limit + 1), f"check_d1_is_primes({limit})")
    _, phi, s2 = linear_sieve(limit)
    ns = np.arange(2, limit + 1, dtype=np.int64)
    is_prime, mult, _, _ = classify_arrays(ns, phi[2:], s2[2:])
    m1 = mult == 1
    return D1Report(
        limit=limit,
        primes_checked=int(is_prime.sum()),
        violations=ns[m1 & ~is_prime].tolist(),
        primes_without_m1=ns[is_prime & ~m1].tolist(),
    )
