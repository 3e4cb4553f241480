import numpy as np
import pytest

from deaconescu import kernels
from deaconescu.arith import count_exceptional_table, euler_phi, factorize, schemmel_s2, sieve_array

from oracles import exceptional_by_gcd


def _both(fn, *args):
    mp = pytest.MonkeyPatch()
    try:
        mp.setenv("DEACONESCU_DISABLE_NUMBA", "0")
        a = fn(*args)
        mp.setenv("DEACONESCU_DISABLE_NUMBA", "1")
        b = fn(*args)
    finally:
        mp.undo()
    return a, b


@pytest.mark.parametrize("limit", [0, 1, 2, 3, 10, 97, 1000, 65537])
def test_linear_sieve_paths_agree(limit):
    a, b = _both(kernels.linear_sieve, limit)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)


def test_linear_sieve_matches_factorization(backend):
    spf, phi, s2 = kernels.linear_sieve(5000)
    for n in range(1, 5001):
        f = factorize(n)
        assert phi[n] == euler_phi(f)
        assert s2[n] == schemmel_s2(f)
        if n > 1:
            assert spf[n] == f.primes[0]


@pytest.mark.parametrize("lo, hi", [(1, 1), (1, 500), (2, 2), (997, 2003), (10**6 - 50, 10**6 + 50), (99991, 99991)])
def test_segment_matches_linear(backend, lo, hi):
    _, phi, s2 = kernels.linear_sieve(hi)
    base = sieve_array(int(hi**0.5) + 1)
    sphi, ss2 = kernels.segment_totients(lo, hi, base)
    np.testing.assert_array_equal(sphi, phi[lo : hi + 1])
    np.testing.assert_array_equal(ss2, s2[lo : hi + 1])


def test_count_exceptional_paths_agree():
    spf, _, _ = kernels.linear_sieve(1500)
    a, b = _both(kernels.count_exceptional_range, 1, 1500, spf)
    np.testing.assert_array_equal(a, b)


def test_count_exceptional_table_matches_gcd_scan(backend):
    table = count_exceptional_table(300)
    assert table[0] == 0
    for n in range(1, 301):
        assert table[n] == len(exceptional_by_gcd(n))


def test_classify_arrays_n2_and_evens():
    ns = np.array([2, 3, 4, 9, 15, 561], dtype=np.int64)
    _, phi, s2 = kernels.linear_sieve(561)
    prime, mult, leh, dea = kernels.classify_arrays(ns, phi[ns], s2[ns])
    assert prime.tolist() == [True, True, False, False, False, False]
    assert mult.tolist() == [1, 1, -1, -1, -1, -1]
    assert not leh.any() and not dea.any()
