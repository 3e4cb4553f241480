"""Machine checks of the computable claims, grouped into suites.

Each suite returns a list of :class:`Check`; the CLI prints one line per
check and the acceptance tests reuse the same functions.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import bounds
from .arith import Factorization, count_exceptional_table, euler_phi, schemmel_s2
from .kernels import linear_sieve
from .props import check_d1_is_primes

SEED = 20220622


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def suite_oracle(limit: int = 10**4) -> list[Check]:
    """S2 from the product formula equals the exceptional-unit count for n <= limit."""
    counts = count_exceptional_table(limit)
    _, _, s2 = linear_sieve(limit)
    bad = np.flatnonzero(counts[1:] != s2[1:]) + 1
    detail = f"n <= {limit}" if not len(bad) else f"first mismatch at n={int(bad[0])}"
    return [Check("oracle.s2_equals_exceptional_count", not len(bad), detail)]


def suite_lemma21(limit: int = 10**5) -> list[Check]:
    rep = check_d1_is_primes(limit)
    return [
        Check("lemma21.no_composite_with_m1", not rep.violations,
              f"n <= {limit}" if not rep.violations else f"violations {rep.violations[:5]}"),
        Check("lemma21.every_prime_has_m1", not rep.primes_without_m1,
              f"{rep.primes_checked} primes" if not rep.primes_without_m1 else f"{rep.primes_without_m1[:5]}"),
    ]


def mod3_tuples(lo: int = 5, hi: int = 100, max_len: int = 6):
    ps = [p for p in range(lo, hi + 1) if p != 3 and p % 2 and all(p % q for q in range(2, math.isqrt(p) + 1))]
    for r in range(1, max_len + 1):
        yield from combinations(ps, r)


def suite_thm11(limit: int = 10**4) -> list[Check]:
    checks = []
    q6 = bounds.q_product(6)
    checks.append(Check("thm11.q6_exact", q6 == Fraction(2048, 495), f"Q_6 = {q6}"))
    small = all(bounds.q_product(r) < 5 for r in range(3, 7))
    checks.append(Check("thm11.q_r_below_5", small, "Q_r < 5 for 3 <= r <= 6"))
    s6 = bounds.skip3_product(6)
    checks.append(Check("thm11.skip3_exact", s6 == Fraction(2048, 935), f"{s6}"))
    checks.append(Check("thm11.skip3_below_3", s6 < 3, f"{s6} < 3"))
    f = Factorization.from_primes(bounds.odd_primes(6))
    checks.append(Check("thm11.ratio_matches_q6", bounds.ratio_phi_over_s2(f) == q6,
                        f"phi/S2({f.value}) = Q_6"))
    sols = bounds.omega2_scan(limit)
    checks.append(Check("thm11.omega2_no_solution", not sols, f"primes <= {limit}" if not sols else f"{sols[:3]}"))
    bad = [t for t in mod3_tuples() if not bounds.mod3_obstruction_check(t)]
    checks.append(Check("thm11.mod3_obstruction", not bad, "all <=6-tuples of primes in [5, 100]" if not bad else f"{bad[:3]}"))
    return checks


def random_odd_squarefree(rng: random.Random, min_k: int = 2, max_k: int = 7, prime_limit: int = 1000) -> Factorization:
    pool = bounds.sieve_primes(prime_limit)[1:]
    k = rng.randint(min_k, max_k)
    return Factorization.from_primes(rng.sample(pool, k))


def random_nielsen_instance(rng: random.Random, max_x: int = 50, max_r: int = 6, max_a: int = 5):
    """Draw ``(xs, a, b)`` meeting the lemma's hypothesis.

    ``xs`` and ``a`` are random; ``b`` is chosen so that ``a/b`` lands in the
    half-open interval, which is always possible because the interval
    ``[L, U)`` is non-empty.  Returns None when no integer b fits.
    """
    r = rng.randint(1, max_r)
    xs = sorted(rng.sample(range(2, max_x + 1), r))
    a = rng.randint(1, max_a)
    lower = Fraction(math.prod(x - 1 for x in xs), math.prod(xs))
    upper = Fraction(math.prod(x - 1 for x in xs[:-1]), math.prod(xs[:-1]))
    # a/b <= upper-exclusive  <=>  b > a/upper ; a/b >= lower <=> b <= a/lower
    b_min = math.floor(a / upper) + 1
    b_max = math.floor(a / lower)
    if b_min > b_max:
        return None
    return xs, a, rng.randint(b_min, b_max)


def nielsen_cases(count: int, seed: int = SEED):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        inst = random_nielsen_instance(rng)
        if inst is not None:
            out.append(inst)
    return out


def suite_nielsen(count: int = 1000) -> list[Check]:
    bad = []
    for xs, a, b in nielsen_cases(count):
        if not bounds.nielsen_precondition(xs, a, b):
            bad.append(("precondition", xs, a, b))
        elif a * math.prod(xs) > bounds.nielsen_bound(a, len(xs)):
            bad.append(("conclusion", xs, a, b))
    return [Check("nielsen.random_instances", not bad, f"{count} instances" if not bad else f"{bad[:3]}")]


def suite_thm12(count: int = 100) -> list[Check]:
    checks = []
    ub7 = bounds.deaconescu_upper_bound(7)
    checks.append(Check("thm12.bound_k7", ub7 == 2**135 - 2**71, "2^135 - 2^71"))
    rng = random.Random(SEED + 1)
    bad = []
    for _ in range(count):
        f = random_odd_squarefree(rng)
        if not bounds.verify_nielsen_instance(f, euler_phi(f) - 1, schemmel_s2(f)):
            bad.append(f.value)
    checks.append(Check("thm12.nielsen_instances", not bad, f"{count} random n" if not bad else f"{bad[:3]}"))
    return checks


def random_poly(rng: random.Random, max_d: int = 6, max_coeff: int = 10) -> list[int]:
    d = rng.randint(1, max_d)
    return [rng.randint(-max_coeff, max_coeff) for _ in range(d)]


def suite_thm13(count: int = 500) -> list[Check]:
    rng = random.Random(SEED + 2)
    bad = []
    for _ in range(count):
        coeffs = random_poly(rng)
        m = rng.randrange(3, 100, 2)
        s = bounds.theorem13_residue(coeffs, m)
        if Fraction(s) != bounds.theorem13_residue_rational(coeffs, m) or s == 0:
            bad.append((coeffs, m, s))
    return [Check("thm13.residue_identity", not bad, f"{count} polynomials" if not bad else f"{bad[:3]}")]


SUITES = {
    "oracle": suite_oracle,
    "lemma21": suite_lemma21,
    "thm11": suite_thm11,
    "nielsen": suite_nielsen,
    "thm12": suite_thm12,
    "thm13": suite_thm13,
}

# suites whose single numeric argument is a range limit (the rest take a count)
LIMIT_SUITES = {"oracle", "lemma21", "thm11"}


def run_suite(name: str, limit: int | None = None) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in run_suite(key, limit if key in LIMIT_SUITES else None)]
    fn = SUITES[name]
    return fn() if limit is None else fn(limit)
