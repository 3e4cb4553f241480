"""Deliberately naive reference implementations used as test oracles.

Nothing here imports the package under test.
"""
from math import gcd


def trial_division(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime_naive(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def primes_upto_naive(n):
    return [k for k in range(2, n + 1) if is_prime_naive(k)]


def phi_by_count(n):
    return sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)


def exceptional_by_gcd(n):
    # gcd(0, n) = n, so residue 1 is excluded for n > 1
    return [a for a in range(n) if gcd(a, n) == 1 and gcd(a - 1, n) == 1]


def multiplier_naive(n):
    """Smallest M >= 1 with M * S2 = phi - 1, S2 counted by brute force; None if no M."""
    phi = phi_by_count(n)
    s2 = len(exceptional_by_gcd(n))
    for m in range(1, phi + 1):
        if m * s2 == phi - 1:
            return m
        if m * s2 > phi - 1:
            break
    return None
