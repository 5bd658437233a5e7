"""Integer helpers against brute force."""

import math

import pytest

from capelli.intops import (
    distinct_prime_factors,
    divisors,
    factor_integer,
    is_prime,
    mobius,
    primes_up_to,
)


def _is_prime_brute(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, math.isqrt(n) + 1))


def test_is_prime_exhaustive_small():
    for n in range(10_000):
        assert is_prime(n) == _is_prime_brute(n), n


def test_is_prime_large_cases():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
    assert is_prime(18_446_744_073_709_551_557)  # largest prime below 2^64
    # strong pseudoprime to several bases, composite
    assert not is_prime(3_215_031_751)
    # Carmichael numbers
    for n in (561, 1105, 41041, 825265):
        assert not is_prime(n)


def test_factor_integer_examples():
    assert factor_integer(12) == [2, 2, 3]
    assert factor_integer(1) == []
    assert factor_integer(97) == [97]


def test_factor_integer_exhaustive():
    for n in range(1, 10_001):
        factors = factor_integer(n)
        assert math.prod(factors) == n
        assert all(is_prime(f) for f in factors)


def test_factor_integer_semiprimes():
    n = 1_000_003 * 1_000_033
    assert factor_integer(n) == [1_000_003, 1_000_033]
    n = (2**31 - 1) * (2**31 - 1)
    assert factor_integer(n) == [2**31 - 1, 2**31 - 1]
    n = 999_999_937 * 999_999_893
    assert factor_integer(n) == [999_999_893, 999_999_937]


def test_factor_integer_rejects_zero():
    with pytest.raises(ValueError):
        factor_integer(0)


def test_distinct_prime_factors():
    assert distinct_prime_factors(360) == (2, 3, 5)
    assert distinct_prime_factors(1) == ()


def test_mobius_small():
    expected = {1: 1, 2: -1, 3: -1, 4: 0, 5: -1, 6: 1, 12: 0, 30: -1, 210: 1}
    for n, mu in expected.items():
        assert mobius(n) == mu


def test_divisors():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(97) == [1, 97]


def test_primes_up_to():
    assert primes_up_to(30) == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
    assert primes_up_to(1) == ()
    assert len(primes_up_to(1000)) == 168
