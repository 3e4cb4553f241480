import math
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deaconescu import bounds
from deaconescu.arith import Factorization, euler_phi, factorize, schemmel_s2
from deaconescu.errors import ResourceLimitError
from deaconescu.verify import nielsen_cases, random_odd_squarefree

from oracles import primes_upto_naive


def test_ratio_examples():
    assert bounds.ratio_phi_over_s2(factorize(15)) == Fraction(8, 3)
    assert bounds.ratio_phi_over_s2(factorize(3)) == Fraction(2)
    r = bounds.ratio_phi_over_s2(factorize(105))
    # (2)(4/3)(6/5) = 48/15, the same value as Q_3
    assert (r.numerator, r.denominator) == (16, 5)


@pytest.mark.parametrize("n", [10, 9, 45, 1])
def test_ratio_rejects_bad_shapes(n):
    if n == 1:
        assert bounds.ratio_phi_over_s2(factorize(1)) == 1
        return
    with pytest.raises(ValueError):
        bounds.ratio_phi_over_s2(factorize(n))


def test_ratio_equals_phi_over_s2():
    for n in range(3, 3000, 2):
        f = factorize(n)
        if all(e == 1 for _, e in f.factors):
            assert bounds.ratio_phi_over_s2(f) == Fraction(euler_phi(f), schemmel_s2(f))


def test_q_product_examples():
    assert bounds.q_product(1) == 2
    assert bounds.q_product(3) == Fraction(16, 5)
    assert bounds.q_product(6) == Fraction(2048, 495)
    assert bounds.q_product(6) < 5


def test_skip3_examples():
    assert bounds.skip3_product(1) == Fraction(4, 3)
    assert bounds.skip3_product(2) == Fraction(8, 5)
    assert bounds.skip3_product(6) == Fraction(2048, 935)
    assert bounds.skip3_product(6) < 3


def test_products_against_naive_primes():
    odd = primes_upto_naive(200)[1:]
    for r in range(1, 20):
        q = math.prod(Fraction(p - 1, p - 2) for p in odd[:r])
        s = math.prod(Fraction(p - 1, p - 2) for p in odd[1 : r + 1])
        assert bounds.q_product(r) == q
        assert bounds.skip3_product(r) == s


def test_product_monotonicity():
    qs = [bounds.q_product(r) for r in range(1, 21)]
    assert all(a < b for a, b in zip(qs, qs[1:]))
    for r in range(1, 21):
        assert bounds.skip3_product(r) < bounds.q_product(r)
    for r in range(3, 7):
        assert bounds.q_product(r) < 5


def test_omega2_scan():
    assert bounds.omega2_scan(5) == []
    assert bounds.omega2_scan(100) == []
    with pytest.raises(ValueError):
        bounds.omega2_scan(3)


def test_omega2_brute_force_all_integer_multipliers():
    # oracle: evaluate the original equation for every pair, any integer M
    ps = primes_upto_naive(300)[1:]
    sols = [
        (p, q)
        for p, q in combinations(ps, 2)
        if ((p - 1) * (q - 1) - 1) % ((p - 2) * (q - 2)) == 0
    ]
    assert sols == []


def test_mod3_examples():
    assert bounds.mod3_obstruction_check([5, 7])
    assert bounds.mod3_obstruction_check([7, 13])
    assert bounds.mod3_obstruction_check([7])
    for bad in ([3, 5], [5, 8], [5, 5], [9]):
        with pytest.raises(ValueError):
            bounds.mod3_obstruction_check(bad)


def test_mod3_agrees_with_direct_equation():
    ps = primes_upto_naive(60)[2:]
    for r in (1, 2, 3):
        for t in combinations(ps, r):
            lhs = 3 * math.prod(p - 2 for p in t)
            rhs = 2 * math.prod(p - 1 for p in t) - 1
            assert bounds.mod3_obstruction_check(t) == ((lhs - rhs) % 3 != 0)


def test_nielsen_precondition_examples():
    assert bounds.nielsen_precondition([2], 1, 2)
    assert bounds.nielsen_precondition([2, 3], 1, 3)
    assert not bounds.nielsen_precondition([2, 3], 1, 1)
    with pytest.raises(ValueError):
        bounds.nielsen_precondition([3, 3], 1, 1)
    with pytest.raises(ValueError):
        bounds.nielsen_precondition([1, 3], 1, 1)


def test_nielsen_bound_examples():
    assert bounds.nielsen_bound(1, 1) == 2
    assert bounds.nielsen_bound(1, 2) == 12
    assert bounds.nielsen_bound(2, 2) == 72
    with pytest.raises(ResourceLimitError):
        bounds.nielsen_bound(1, 21)


def test_nielsen_lemma_random_instances():
    cases = nielsen_cases(1000, seed=99)
    for xs, a, b in cases:
        assert bounds.nielsen_precondition(xs, a, b)
        assert a * math.prod(xs) <= bounds.nielsen_bound(a, len(xs))


def test_nielsen_lemma_exhaustive_small():
    # every (xs, a, b) with xs from 2..12, r <= 3, a <= 3 satisfying the hypothesis
    hits = 0
    for r in (1, 2, 3):
        for xs in combinations(range(2, 13), r):
            for a in (1, 2, 3):
                for b in range(1, 4 * a * math.prod(xs) + 1):
                    if bounds.nielsen_precondition(xs, a, b):
                        hits += 1
                        assert a * math.prod(xs) <= bounds.nielsen_bound(a, r)
    assert hits > 100


def test_verify_nielsen_examples():
    for n in (15, 105, 3 * 5 * 7 * 11 * 13 * 17 * 19):
        f = factorize(n)
        inst = bounds.nielsen_instance(f, euler_phi(f) - 1, schemmel_s2(f))
        assert inst.sandwich and inst.precondition and inst.consistent
        assert bounds.verify_nielsen_instance(f, euler_phi(f) - 1, schemmel_s2(f))
    inst = bounds.nielsen_instance(factorize(105), 47, 15)
    assert inst.xs == (2, 4, 6) and inst.lhs == inst.a * 48
    assert inst.lower == Fraction(15, 48)


def test_verify_nielsen_rejects_bad_input():
    f = factorize(15)
    with pytest.raises(ValueError):
        bounds.verify_nielsen_instance(f, 8, 3)
    with pytest.raises(ValueError):
        bounds.verify_nielsen_instance(factorize(7), 5, 5)
    with pytest.raises(ValueError):
        bounds.verify_nielsen_instance(factorize(45), 23, 9)


def test_nielsen_instance_general_numerator():
    # a synthetic check of the a = 1 branch: the sandwich middle is S2/(phi-1);
    # when it reduces to 1/b the conclusion is prod(p-1) <= 2^(2^K) - 2^(2^(K-1))
    f = factorize(15)
    inst = bounds.nielsen_instance(f, 7, 3)
    assert inst.a == 3 and not inst.theorem12_applies and inst.theorem12_ok is None


def test_verify_nielsen_random():
    rng = random.Random(5)
    for _ in range(100):
        f = random_odd_squarefree(rng)
        assert bounds.verify_nielsen_instance(f, euler_phi(f) - 1, schemmel_s2(f))


def test_upper_bound_examples():
    assert bounds.deaconescu_upper_bound(1) == 4
    assert bounds.deaconescu_upper_bound(2) == 48
    assert bounds.deaconescu_upper_bound(7) == 2**135 - 2**71
    assert bounds.upper_bound_exponents(7) == (135, 71)
    with pytest.raises(ResourceLimitError):
        bounds.deaconescu_upper_bound(21)
    assert bounds.deaconescu_upper_bound(20).bit_length() == 2**20 + 20


def test_theorem13_examples():
    assert bounds.theorem13_residue([1], 3) == 2
    assert bounds.theorem13_residue([0, 0], 5) == 1
    assert bounds.theorem13_residue([-1], 3) == -4
    with pytest.raises(ValueError):
        bounds.theorem13_residue([], 3)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(-10, 10), min_size=1, max_size=6), st.integers(1, 49).map(lambda k: 2 * k + 1))
def test_theorem13_identity(coeffs, m):
    s = bounds.theorem13_residue(coeffs, m)
    assert Fraction(s) == bounds.theorem13_residue_rational(coeffs, m)
    # -1/M is never a root of a monic integer polynomial for M >= 3
    assert s != 0


def test_ratio_exceeds_is_strict():
    f = factorize(15)
    assert bounds.ratio_exceeds(f, 2)
    assert not bounds.ratio_exceeds(Factorization.from_primes([3]), 2)
