"""Shared helpers: building the field of a given prime-power order."""

from functools import lru_cache

from capelli import ExtensionField, PrimeField, enumerate_irreducibles, factor_integer


@lru_cache(maxsize=None)
def field_of_order(q: int):
    """F_q for a prime power q, using the first irreducible modulus when q = p^m."""
    factors = factor_integer(q)
    p = factors[0]
    if any(f != p for f in factors):
        raise ValueError(f"{q} is not a prime power")
    m = len(factors)
    base = PrimeField(p)
    if m == 1:
        return base
    modulus = next(enumerate_irreducibles(base, m))
    return ExtensionField(base, modulus, trusted=True)


def prime_powers_up_to(bound: int, min_q: int = 2) -> list[int]:
    out = []
    for q in range(min_q, bound + 1):
        factors = factor_integer(q)
        if len(set(factors)) == 1:
            out.append(q)
    return out
