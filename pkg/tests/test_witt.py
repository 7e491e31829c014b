from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from milnorkit.witt import (WittTable, divisors, m_growth_floor, milnor_module_rank, moebius,
                            witt_rank, witt_sum)


def moebius_bruteforce(d):
    # count prime factors by trial division
    primes = []
    m = d
    p = 2
    while m > 1:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            primes.append(p)
        else:
            p += 1
    return (-1) ** len(primes)


def necklace_count(w, k):
    """Aperiodic necklaces of length w: Lyndon words by rotation-minimality."""
    count = 0
    for word in product(range(k), repeat=w):
        rots = [word[i:] + word[:i] for i in range(w)]
        if all(word < r for r in rots[1:]):
            count += 1
    return count


@pytest.mark.parametrize("d,expected", [(1, 1), (4, 0), (6, 1), (2, -1), (30, -1), (12, 0)])
def test_moebius_values(d, expected):
    assert moebius(d) == expected


def test_moebius_rejects_zero():
    with pytest.raises(ValueError):
        moebius(0)


@given(st.integers(1, 3000))
def test_moebius_matches_trial_division(d):
    assert moebius(d) == moebius_bruteforce(d)


@given(st.integers(2, 500))
def test_moebius_sums_to_zero_over_divisors(n):
    assert sum(moebius(d) for d in divisors(n)) == 0


@pytest.mark.parametrize("k", [1, 2, 3, 4, 7])
def test_weight_one_is_k(k):
    assert witt_rank(1, k) == k


@pytest.mark.parametrize("w,k,expected", [(2, 3, 3), (3, 2, 2), (3, 3, 8), (4, 2, 3), (6, 2, 9)])
def test_witt_rank_values(w, k, expected):
    assert witt_rank(w, k) == expected


@pytest.mark.parametrize("w,k", [(w, k) for k in (1, 2, 3) for w in range(1, 8) if k ** w <= 3 ** 7])
def test_witt_rank_counts_lyndon_words(w, k):
    assert witt_rank(w, k) == necklace_count(w, k)


@given(st.integers(1, 40), st.integers(1, 12))
def test_divisor_sum_divisible(w, k):
    assert witt_sum(w, k) % w == 0


def test_large_values_are_exact():
    # 2^61 - 1 is prime, so N_61(2) = (2^61 - 2) / 61
    assert witt_rank(61, 2) == (2 ** 61 - 2) // 61


@pytest.mark.parametrize("k,n,expected", [(3, 2, 1), (2, 2, 0), (2, 3, 1), (4, 2, 4), (3, 3, 6)])
def test_milnor_module_rank(k, n, expected):
    assert milnor_module_rank(k, n) == expected


def test_milnor_module_rank_rejects_small_n():
    with pytest.raises(ValueError, match="n >= 2"):
        milnor_module_rank(3, 1)


@pytest.mark.parametrize("n,expected", [(2, Fraction(1)), (3, Fraction(3, 2)), (5, Fraction(625, 120))])
def test_growth_floor(n, expected):
    assert m_growth_floor(n) == expected


def test_witt_table():
    t = WittTable.build(2, 3)
    assert t.to_json() == {"k": 2, "max_weight": 3, "ranks": {"1": 2, "2": 1, "3": 2}}
