"""Exact integer helpers: primality testing, factorization, small primes.

Everything here is deterministic. Primality uses the Miller-Rabin witness
set that is proven exhaustive for inputs below 3.3e24, which covers the
64-bit moduli this package accepts.
"""

from __future__ import annotations

import math
from functools import lru_cache

# Witnesses proven sufficient for all n < 3_317_044_064_679_887_385_961_981.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_DIVISION_LIMIT = 10**6

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n below 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n >= 3_317_044_064_679_887_385_961_981:
        raise ValueError(f"{n} exceeds the proven deterministic witness range")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


def _pollard_rho(n: int) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"pollard rho failed on {n}")  # pragma: no cover


def factor_integer(n: int) -> list[int]:
    """Prime factorization of n >= 1 with multiplicity, sorted ascending.

    Trial division up to 10^6, Pollard rho beyond. The empty list is the
    factorization of 1.
    """
    if n < 1:
        raise ValueError("factor_integer requires n >= 1")
    factors: list[int] = []
    for p in (2, 3, 5):
        while n % p == 0:
            factors.append(p)
            n //= p
    f = 7
    # wheel over 7, 11, 13, ... avoiding multiples of 2, 3, 5
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f <= _TRIAL_DIVISION_LIMIT:
        while n % f == 0:
            factors.append(f)
            n //= f
        f += increments[i]
        i = (i + 1) % 8
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                factors.append(m)
                continue
            d = _pollard_rho(m)
            stack.append(d)
            stack.append(m // d)
    factors.sort()
    return factors


@lru_cache(maxsize=4096)
def distinct_prime_factors(n: int) -> tuple[int, ...]:
    """Distinct primes dividing n, ascending."""
    return tuple(sorted(set(factor_integer(n))))


def mobius(n: int) -> int:
    """Moebius function: 0 on non-squarefree n, else (-1)^(number of primes)."""
    if n < 1:
        raise ValueError("mobius requires n >= 1")
    factors = factor_integer(n)
    if len(set(factors)) != len(factors):
        return 0
    return -1 if len(factors) % 2 else 1


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p in distinct_prime_factors(n):
        mult = p
        pk = []
        m = n
        while m % p == 0:
            pk.append(mult)
            mult *= p
            m //= p
        divs = [d * e for d in divs for e in [1] + pk]
    return sorted(divs)


@lru_cache(maxsize=64)
def primes_up_to(bound: int) -> tuple[int, ...]:
    """Primes <= bound via a plain sieve."""
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i in range(bound + 1) if sieve[i])
