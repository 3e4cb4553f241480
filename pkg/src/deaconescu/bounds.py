"""Exact rational / big-integer checks of the proof arithmetic.

No floating point is used anywhere in this module: rationals are
:class:`fractions.Fraction` (always reduced, arbitrary precision) and big
naturals are plain Python ints.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arith import Factorization, euler_phi, is_prime, is_squarefree, schemmel_s2, sieve_primes
from .errors import ResourceLimitError

ExactRational = Fraction
BigNat = int

# largest allowed log2 of an exponent, i.e. 2**r with r <= 20
EXPONENT_BUDGET = 20


def _check_exponent(r: int, budget: int) -> None:
    if r > budget:
        raise ResourceLimitError(f"exponent 2^{r} exceeds budget 2^{budget}")


def _require_odd_squarefree(f: Factorization) -> None:
    if f.value % 2 == 0:
        raise ValueError(f"{f.value} is even")
    if not is_squarefree(f):
        raise ValueError(f"{f.value} is not squarefree")


def ratio_phi_over_s2(f: Factorization) -> Fraction:
    """phi(n)/S2(n) = prod (p - 1)/(p - 2) for odd squarefree n."""
    _require_odd_squarefree(f)
    num = math.prod(p - 1 for p in f.primes)
    den = math.prod(p - 2 for p in f.primes)
    return Fraction(num, den)


def ratio_exceeds(f: Factorization, m: int) -> bool:
    """Strict ``phi(n)/S2(n) > M``; equality counts as failure."""
    return ratio_phi_over_s2(f) > m


def odd_primes(r: int) -> list[int]:
    """First r odd primes 3, 5, 7, ..."""
    if r < 0:
        raise ValueError("r must be >= 0")
    limit = 16
    while True:
        ps = sieve_primes(limit)[1:]
        if len(ps) >= r:
            return ps[:r]
        limit *= 2


def _ratio_product(primes: Sequence[int]) -> Fraction:
    return Fraction(math.prod(q - 1 for q in primes), math.prod(q - 2 for q in primes))


def q_product(r: int) -> Fraction:
    """Q_r: prod (q - 1)/(q - 2) over the first r odd primes."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return _ratio_product(odd_primes(r))


def skip3_product(r: int) -> Fraction:
    """As :func:`q_product` but over the r odd primes starting at 5."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return _ratio_product(odd_primes(r + 1)[1:])


def omega2_scan(prime_limit: int) -> list[tuple[int, int, int]]:
    """Odd-prime pairs p1 < p2 <= prime_limit solving the omega = 2 equation with odd M >= 3.

    For n = p1*p2 the equation reads ``M (p1-2)(p2-2) = (p1-1)(p2-1) - 1``.
    """
    if prime_limit < 5:
        raise ValueError("prime_limit must be >= 5")
    ps = sieve_primes(prime_limit)[1:]
    out = []
    for i, p1 in enumerate(ps):
        a = p1 - 2
        for p2 in ps[i + 1 :]:
            b = p2 - 2
            num = (p1 - 1) * (p2 - 1) - 1
            den = a * b
            if num % den:
                continue
            m = num // den
            # same equation, rearranged: (M - 1) = 1/a + 1/b
            assert Fraction(m - 1) == Fraction(1, a) + Fraction(1, b)
            if m >= 3 and m % 2 == 1:
                out.append((p1, p2, m))
    return out


def mod3_obstruction_check(primes: Sequence[int]) -> bool:
    """True iff ``3 prod(p-2) = 2 prod(p-1) - 1`` is impossible modulo 3.

    That is the equation for n = 3 * prod(primes) with M = 3.  The left side
    is 0 mod 3, so the check holds iff ``prod(p-1) mod 3 != 2``.
    """
    ps = list(primes)
    if len(set(ps)) != len(ps):
        raise ValueError("primes must be distinct")
    for p in ps:
        if p == 3 or p % 2 == 0 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime >= 5")
    rhs = (2 * math.prod(p - 1 for p in ps) - 1) % 3
    return rhs != 0


def _one_minus_inv_product(xs: Sequence[int]) -> Fraction:
    return Fraction(math.prod(x - 1 for x in xs), math.prod(xs))


def nielsen_precondition(xs: Sequence[int], a: int, b: int) -> bool:
    """``prod_{j<=r}(1 - 1/x_j) <= a/b < prod_{j<r}(1 - 1/x_j)`` (empty product = 1)."""
    xs = list(xs)
    if not xs:
        raise ValueError("xs must be non-empty")
    if xs[0] <= 1 or any(x <= y for x, y in zip(xs[1:], xs)):
        raise ValueError("xs must be strictly increasing integers > 1")
    if a < 1 or b < 1:
        raise ValueError("a and b must be >= 1")
    ab = Fraction(a, b)
    return _one_minus_inv_product(xs) <= ab < _one_minus_inv_product(xs[:-1])


def nielsen_bound(a: int, r: int, budget: int = EXPONENT_BUDGET) -> int:
    """``(a+1)**(2**r) - (a+1)**(2**(r-1))``."""
    if a < 1 or r < 1:
        raise ValueError("a and r must be >= 1")
    _check_exponent(r, budget)
    half = (a + 1) ** (1 << (r - 1))
    return half * half - half


def deaconescu_upper_bound(k: int, budget: int = EXPONENT_BUDGET) -> int:
    """``2**(2**K + K) - 2**(2**(K-1) + K)``."""
    if k < 1:
        raise ValueError("K must be >= 1")
    _check_exponent(k, budget)
    return (1 << ((1 << k) + k)) - (1 << ((1 << (k - 1)) + k))


def upper_bound_exponents(k: int) -> tuple[int, int]:
    """(e1, e2) with the bound equal to ``2**e1 - 2**e2``."""
    if k < 1:
        raise ValueError("K must be >= 1")
    return (1 << k) + k, (1 << (k - 1)) + k


@dataclass(frozen=True)
class NielsenInstance:
    """Every quantity touched when the omega-K sandwich is fed to Nielsen's lemma."""

    n: int
    k: int
    xs: tuple[int, ...]
    lower: Fraction
    middle: Fraction
    upper: Fraction
    a: int
    b: int
    precondition: bool
    lhs: int
    bound: int
    theorem12_applies: bool
    theorem12_ok: Optional[bool]

    @property
    def sandwich(self) -> bool:
        return self.lower < self.middle < self.upper

    @property
    def consistent(self) -> bool:
        if not (self.sandwich and self.precondition and self.lhs <= self.bound):
            return False
        return self.theorem12_ok is not False


def nielsen_instance(f: Factorization, phi_minus1: int, s2: int) -> NielsenInstance:
    """Instantiate the lemma with ``x_j = p_j - 1`` and ``a/b = S2/(phi - 1)`` reduced.

    With ``x_j = p_j - 1`` the lower product is exactly ``S2/phi``.  When the
    reduced numerator is 1 (n a Deaconescu number) this is the K-prime bound
    and ``n`` is also checked against :func:`deaconescu_upper_bound`.
    """
    _require_odd_squarefree(f)
    k = len(f.factors)
    if k < 2:
        raise ValueError("need omega(n) >= 2")
    if s2 < 1:
        raise ValueError("s2 must be >= 1")
    if phi_minus1 != euler_phi(f) - 1 or s2 != schemmel_s2(f):
        raise ValueError("phi_minus1 / s2 do not match the factorization")
    xs = tuple(p - 1 for p in f.primes)
    middle = Fraction(s2, phi_minus1)
    a, b = middle.numerator, middle.denominator
    pre = nielsen_precondition(xs, a, b)
    lhs = a * math.prod(xs)
    applies = a == 1
    return NielsenInstance(
        n=f.value,
        k=k,
        xs=xs,
        lower=_one_minus_inv_product(xs),
        middle=middle,
        upper=_one_minus_inv_product(xs[:-1]),
        a=a,
        b=b,
        precondition=pre,
        lhs=lhs,
        bound=nielsen_bound(a, k),
        theorem12_applies=applies,
        theorem12_ok=(f.value < deaconescu_upper_bound(k)) if applies else None,
    )


def verify_nielsen_instance(f: Factorization, phi_minus1: int, s2: int) -> bool:
    return nielsen_instance(f, phi_minus1, s2).consistent


def theorem13_residue(coeffs: Sequence[int], m: int) -> int:
    """``S = sum_j a_j M^j (-1)^(d-j)`` for the monic ``X^d + a_1 X^(d-1) + ... + a_d``.

    ``coeffs`` is ``[a_1, ..., a_d]``; the leading 1 is implicit.
    """
    a = [1, *coeffs]
    d = len(a) - 1
    if d < 1:
        raise ValueError("polynomial degree must be >= 1")
    return sum(aj * m**j * (-1) ** (d - j) for j, aj in enumerate(a))


def theorem13_residue_rational(coeffs: Sequence[int], m: int) -> Fraction:
    """``M^d * P(-1/M)`` by Horner's rule in exact rationals."""
    d = len(coeffs)
    if d < 1:
        raise ValueError("polynomial degree must be >= 1")
    x = Fraction(-1, m)
    acc = Fraction(1)
    for c in coeffs:
        acc = acc * x + c
    return acc * Fraction(m) ** d
