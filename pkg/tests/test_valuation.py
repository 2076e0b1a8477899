import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from digitbounds.valuation import (
    PrimeBase,
    binomial,
    digit_sum_lower_bound_check,
    is_prime,
    kummer_carries,
    legendre_valuation,
    p_adic_valuation,
    sun_divisibility_check,
)


def count_factor(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def brute_factorial_valuation(n, p):
    """Count factors of p in each of 1..n separately."""
    return sum(count_factor(i, p) for i in range(1, n + 1))


def test_is_prime_matches_sieve():
    limit = 2000
    sieve = [True] * (limit + 1)
    sieve[0] = sieve[1] = False
    for i in range(2, limit + 1):
        if sieve[i]:
            for j in range(i * i, limit + 1, i):
                sieve[j] = False
    assert [is_prime(i) for i in range(limit + 1)] == sieve


@pytest.mark.parametrize("p", [0, 1, 4, 9, 91])
def test_prime_base_rejects_composites(p):
    with pytest.raises(ValueError):
        PrimeBase(p)
    with pytest.raises(ValueError):
        legendre_valuation(10, p)


@pytest.mark.parametrize("a, b, expected", [(6, 3, 20), (9, 0, 1), (4, 7, 0), (0, 0, 1)])
def test_binomial_examples(a, b, expected):
    assert binomial(a, b) == expected


@given(st.integers(0, 400), st.integers(0, 450))
def test_binomial_matches_math_comb(a, b):
    assert binomial(a, b) == math.comb(a, b)


@pytest.mark.parametrize("n, p, expected", [(10, 2, 8), (0, 3, 0), (25, 5, 6)])
def test_legendre_examples(n, p, expected):
    assert legendre_valuation(n, p) == expected
    assert legendre_valuation(n, PrimeBase(p)) == expected


@pytest.mark.parametrize("a, b, p, expected", [(3, 3, 2, 2), (0, 17, 5, 0), (5, 5, 3, 2)])
def test_kummer_examples(a, b, p, expected):
    assert kummer_carries(a, b, p) == expected
    assert count_factor(math.comb(a + b, a), p) == expected


@given(st.integers(0, 10**9), st.integers(0, 10**9), st.sampled_from([2, 3, 5, 7, 11, 13, 97]))
def test_kummer_symmetric(a, b, p):
    assert kummer_carries(a, b, p) == kummer_carries(b, a, p)


def test_p_adic_valuation():
    assert p_adic_valuation(20, 2) == 2
    assert p_adic_valuation(-48, 3) == 1
    with pytest.raises(ValueError):
        p_adic_valuation(0, 2)


@pytest.mark.parametrize(
    "n, k, numerator, divisor, quotient",
    [(1, 2, 20, 4, 5), (2, 2, 2772, 12, 231)],
)
def test_divisibility_spot_values(n, k, numerator, divisor, quotient):
    inst = sun_divisibility_check(n, k)
    assert (inst.numerator, inst.divisor, inst.quotient) == (numerator, divisor, quotient)
    assert inst.holds


@pytest.mark.parametrize("n", range(1, 12))
def test_divisibility_k1_is_trivial(n):
    inst = sun_divisibility_check(n, 1)
    assert inst.prefactor == 1
    assert inst.numerator == math.comb(2 * n, n) == inst.divisor
    assert inst.quotient == 1


def test_divisibility_quotient_valuation_vs_binary_digit_sum():
    for n in range(1, 30):
        for k in range(1, 6):
            inst = sun_divisibility_check(n, k)
            assert inst.holds
            assert p_adic_valuation(inst.quotient, 2) >= 0
            assert bin((2**k - 1) * n).count("1") >= k


@pytest.mark.parametrize(
    "n, p, k, observed",
    [(3, 2, 4, 4), (1, 3, 2, 4), (1, 2, 1, 1)],
)
def test_prime_digit_sum_bound(n, p, k, observed):
    rec = digit_sum_lower_bound_check(n, p, k)
    assert rec.observed == observed and rec.required == k * (p - 1) and rec.holds


def test_prime_digit_sum_bound_rejects_composite_base():
    with pytest.raises(ValueError):
        digit_sum_lower_bound_check(1, 10, 2)
