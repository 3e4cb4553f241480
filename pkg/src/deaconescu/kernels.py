"""Hot loops over integer ranges.

Every public function here dispatches to a numba-compiled kernel or to a
pure-numpy fallback (see :mod:`deaconescu._accel`).  Both paths return
identical ``int64`` arrays; the test-suite checks them against each other.

All values stay below ``2**62`` because callers cap ``limit`` through the
memory budget long before that.
"""
from __future__ import annotations

import numpy as np

from ._accel import njit, use_numba

INT = np.int64


# ---------------------------------------------------------------- linear sieve


@njit
def _linear_sieve_nb(limit):
    spf = np.zeros(limit + 1, np.int64)
    phi = np.zeros(limit + 1, np.int64)
    s2 = np.zeros(limit + 1, np.int64)
    primes = np.empty(limit // 2 + 2, np.int64)
    count = 0
    if limit >= 1:
        phi[1] = 1
        s2[1] = 1
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = i
            phi[i] = i - 1
            s2[i] = i - 2
            primes[count] = i
            count += 1
        si = spf[i]
        for k in range(count):
            p = primes[k]
            if p > si or i * p > limit:
                break
            ip = i * p
            spf[ip] = p
            if p == si:
                phi[ip] = phi[i] * p
                s2[ip] = s2[i] * p
            else:
                phi[ip] = phi[i] * (p - 1)
                s2[ip] = s2[i] * (p - 2)
    return spf, phi, s2


def _linear_sieve_np(limit):
    spf = np.zeros(limit + 1, INT)
    r = int(limit**0.5) + 1
    for p in range(2, r + 1):
        if p <= limit and spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.arange(limit + 1, dtype=INT)
    fresh = spf == 0
    spf[fresh] = idx[fresh]
    spf[:2] = 0
    primes = np.flatnonzero(spf == idx)
    primes = primes[primes >= 2]
    phi = idx.copy()
    s2 = idx.copy()
    for p in primes.tolist():
        view = phi[p::p]
        view -= view // p
        view = s2[p::p]
        view //= p
        view *= p - 2
    if limit >= 1:
        phi[1] = s2[1] = 1
    phi[0] = s2[0] = 0
    return spf, phi, s2


def linear_sieve(limit: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smallest prime factor, phi and S2 tables for ``0..limit``.

    Index 0 holds zeros; index 1 holds ``spf=0, phi=1, s2=1``.
    """
    if limit < 0:
        raise ValueError("limit must be non-negative")
    if use_numba():
        return _linear_sieve_nb(limit)
    return _linear_sieve_np(limit)


# ------------------------------------------------------------ segmented sieve


@njit
def _segment_nb(lo, hi, base_primes):
    size = hi - lo + 1
    rem = np.arange(lo, hi + 1).astype(np.int64)
    phi = np.ones(size, np.int64)
    s2 = np.ones(size, np.int64)
    for p in base_primes:
        if p * p > hi:
            break
        start = ((lo + p - 1) // p) * p
        for m in range(start, hi + 1, p):
            j = m - lo
            r = rem[j] // p
            pk = 1
            while r % p == 0:
                r //= p
                pk *= p
            rem[j] = r
            phi[j] *= (p - 1) * pk
            s2[j] *= (p - 2) * pk
    for j in range(size):
        r = rem[j]
        if r > 1:
            phi[j] *= r - 1
            s2[j] *= r - 2
    return phi, s2


def _segment_np(lo, hi, base_primes):
    size = hi - lo + 1
    rem = np.arange(lo, hi + 1, dtype=INT)
    phi = np.ones(size, INT)
    s2 = np.ones(size, INT)
    for p in base_primes.tolist():
        if p * p > hi:
            break
        q = p
        first = True
        while q <= hi:
            start = ((lo + q - 1) // q) * q - lo
            if start >= size:
                break
            sl = slice(start, size, q)
            rem[sl] //= p
            if first:
                phi[sl] *= p - 1
                s2[sl] *= p - 2
                first = False
            else:
                phi[sl] *= p
                s2[sl] *= p
            q *= p
    big = rem > 1
    phi[big] *= rem[big] - 1
    s2[big] *= rem[big] - 2
    return phi, s2


def segment_totients(lo: int, hi: int, base_primes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """phi and S2 for every n in ``[lo, hi]``.

    ``base_primes`` must contain every prime up to ``isqrt(hi)``, ascending.
    """
    if lo < 1 or hi < lo:
        raise ValueError(f"bad segment [{lo}, {hi}]")
    base_primes = np.asarray(base_primes, dtype=INT)
    if use_numba():
        return _segment_nb(lo, hi, base_primes)
    return _segment_np(lo, hi, base_primes)


# ------------------------------------------------- exceptional-unit counting


@njit
def _count_exceptional_nb(lo, hi, spf):
    out = np.zeros(hi - lo + 1, np.int64)
    mask = np.zeros(hi + 1, np.bool_)
    for n in range(lo, hi + 1):
        for a in range(n):
            mask[a] = False
        m = n
        while m > 1:
            p = spf[m]
            for a in range(0, n, p):
                mask[a] = True
            while m % p == 0:
                m //= p
        c = 0
        prev = mask[n - 1]
        for a in range(n):
            cur = mask[a]
            if not cur and not prev:
                c += 1
            prev = cur
        out[n - lo] = c
    return out


def _count_exceptional_np(lo, hi, spf):
    out = np.zeros(hi - lo + 1, INT)
    for n in range(lo, hi + 1):
        shares = np.zeros(n, dtype=bool)
        m = n
        while m > 1:
            p = int(spf[m])
            shares[::p] = True
            while m % p == 0:
                m //= p
        ok = ~shares
        out[n - lo] = np.count_nonzero(ok & np.roll(ok, 1))
    return out


def count_exceptional_range(lo: int, hi: int, spf: np.ndarray) -> np.ndarray:
    """Count exceptional units mod n for every n in ``[lo, hi]`` by residue scan.

    For each n the residues sharing a prime with n are marked (``spf`` supplies
    the primes), then ``a`` is counted when neither ``a`` nor ``a - 1 mod n``
    is marked.  No product formula is involved.
    """
    if lo < 1 or hi < lo or hi >= len(spf):
        raise ValueError(f"bad range [{lo}, {hi}]")
    spf = np.asarray(spf, dtype=INT)
    if use_numba():
        return _count_exceptional_nb(lo, hi, spf)
    return _count_exceptional_np(lo, hi, spf)


# ------------------------------------------------------------ classification


def classify_arrays(ns: np.ndarray, phi: np.ndarray, s2: np.ndarray):
    """Vectorised verdicts for ``n >= 2``.

    Returns ``(is_prime, multiplier, is_lehmer, is_deaconescu)`` where an
    absent multiplier is encoded as ``-1``.
    """
    ns = np.asarray(ns, dtype=INT)
    is_prime = phi == ns - 1
    pm1 = phi - 1
    safe = np.where(s2 > 0, s2, 1)
    multiplier = np.where((s2 > 0) & (pm1 % safe == 0), pm1 // safe, -1)
    # n = 2: S2 = 0 = phi - 1, taken as M = 1
    multiplier = np.where((s2 == 0) & (pm1 == 0), 1, multiplier)
    composite = ~is_prime
    is_lehmer = composite & ((ns - 1) % np.where(phi > 0, phi, 1) == 0)
    is_deaconescu = composite & (multiplier >= 0)
    return is_prime, multiplier, is_lehmer, is_deaconescu
