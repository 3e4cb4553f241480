"""Integer foundations: primes, factorization, totients, exceptional units."""
from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import ResourceLimitError

MEMORY_BUDGET_ENV = "DEACONESCU_MEMORY_BUDGET"
DEFAULT_MEMORY_BUDGET = 2 * 1024**3  # bytes
DEFAULT_BRUTE_FORCE_BUDGET = 10**6

TRIAL_CUTOFF = 1 << 12
MAX_FACTOR = 1 << 64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# deterministic for every n below this with the bases above
_MR_DETERMINISTIC = 3317044064679887385961981
_RHO_SEED = 0x5EED


def memory_budget() -> int:
    raw = os.environ.get(MEMORY_BUDGET_ENV)
    if raw:
        return int(float(raw))
    return DEFAULT_MEMORY_BUDGET


def check_memory(nbytes: int, what: str) -> None:
    budget = memory_budget()
    if nbytes > budget:
        raise ResourceLimitError(
            f"{what} needs ~{nbytes} bytes, budget is {budget} (set {MEMORY_BUDGET_ENV})"
        )


# ------------------------------------------------------------------- primes


def sieve_primes(limit: int) -> list[int]:
    """All primes ``<= limit`` in ascending order."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit < 2:
        return []
    check_memory(limit + 1, f"sieve_primes({limit})")
    return sieve_array(limit).tolist()


def sieve_array(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(sieve_array(TRIAL_CUTOFF).tolist())


def is_prime(n: int) -> bool:
    """Miller-Rabin, deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_DETERMINISTIC:
        raise ValueError("primality check is only deterministic below 3.3e24")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, rng: random.Random) -> int:
    # Pollard rho, Brent's cycle variant with batched gcds.
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out, rng)
        _split(r, out, rng)
        return
    d = _brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


# ------------------------------------------------------------ factorization


@dataclass(frozen=True)
class Factorization:
    """Canonical prime-power decomposition ``value = prod(p**e)``."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError("value must be >= 1")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor entry ({p}, {e})")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prod *= p**e
            last = p
        if prod != self.value:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")

    @classmethod
    def from_primes(cls, primes: Iterable[int]) -> "Factorization":
        """Build from a multiset of primes (any order, repeats allowed)."""
        counts: dict[int, int] = {}
        for p in primes:
            counts[p] = counts.get(p, 0) + 1
        value = 1
        for p, e in counts.items():
            value *= p**e
        return cls(value, tuple(sorted(counts.items())))

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def factorize(n: int) -> Factorization:
    """Factor ``1 <= n < 2**64``.

    Trial division by primes below 4096, then Brent-Pollard rho with a fixed
    seed, so the result (and the work done) is reproducible.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if n >= MAX_FACTOR:
        raise ValueError("factorize supports n < 2**64")
    found: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        if m < TRIAL_CUTOFF * TRIAL_CUTOFF:
            found[m] = found.get(m, 0) + 1
        else:
            _split(m, found, random.Random(_RHO_SEED ^ m))
    return Factorization(n, tuple(sorted(found.items())))


# ----------------------------------------------------------------- totients


def euler_phi(f: Factorization) -> int:
    out = 1
    for p, e in f.factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def schemmel_s2(f: Factorization) -> int:
    """Schemmel's totient ``n * prod(1 - 2/p)``; 0 for even n, 1 for n = 1."""
    out = 1
    for p, e in f.factors:
        out *= p ** (e - 1) * (p - 2)
    return out


def omega(f: Factorization) -> int:
    return len(f.factors)


def is_squarefree(f: Factorization) -> bool:
    return all(e == 1 for _, e in f.factors)


# -------------------------------------------------------- exceptional units


@dataclass(frozen=True)
class ExceptionalUnitSet:
    modulus: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        m = self.modulus
        for a in self.members:
            if not (0 <= a < m) or math.gcd(a, m) != 1 or math.gcd(a - 1, m) != 1:
                raise ValueError(f"{a} is not an exceptional unit mod {m}")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: object) -> bool:
        return a in self.members


def _check_brute_budget(n: int, budget: int) -> None:
    if n > budget:
        raise ResourceLimitError(f"brute-force scan of {n} residues exceeds budget {budget}")


def exceptional_units(n: int, budget: int = DEFAULT_BRUTE_FORCE_BUDGET) -> ExceptionalUnitSet:
    """Residues ``a`` mod n with ``gcd(a, n) = gcd(a - 1, n) = 1``, by direct gcd scan.

    ``gcd(0, n) = n``, so ``a = 1`` is never exceptional once ``n > 1``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_brute_budget(n, budget)
    a = np.arange(n, dtype=np.int64)
    ok = (np.gcd(a, n) == 1) & (np.gcd(a - 1, n) == 1)
    return ExceptionalUnitSet(n, tuple(np.flatnonzero(ok).tolist()))


def count_exceptional(n: int, budget: int = DEFAULT_BRUTE_FORCE_BUDGET) -> int:
    """``|Z_n^**|``, the independent check on :func:`schemmel_s2`."""
    return len(exceptional_units(n, budget).members)


def count_exceptional_table(limit: int) -> np.ndarray:
    """``out[n] = |Z_n^**|`` for ``0 <= n <= limit`` (``out[0] = 0``).

    Bulk variant of :func:`count_exceptional`: residues sharing a prime with n
    are marked, then pairs of unmarked neighbours are counted.
    """
    from .kernels import count_exceptional_range, linear_sieve

    if limit < 1:
        return np.zeros(max(limit + 1, 0), dtype=np.int64)
    check_memory(40 * (limit + 1), f"count_exceptional_table({limit})")
    spf, _, _ = linear_sieve(limit)
    out = np.zeros(limit + 1, dtype=np.int64)
    out[1:] = count_exceptional_range(1, limit, spf)
    return out
