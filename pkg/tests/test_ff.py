"""Field and polynomial arithmetic: spec'd examples plus algebraic laws."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capelli import (
    Element,
    ExtensionField,
    FieldMismatchError,
    Poly,
    PrimeField,
    ReducibleModulusError,
    compose_power,
    count_mults,
    ext_pow,
    poly_gcd,
    poly_powmod,
)

from conftest import field_of_order, prime_powers_up_to

F2 = PrimeField(2)
F3 = PrimeField(3)
F7 = PrimeField(7)


# --- field construction ------------------------------------------------------


def test_prime_field_rejects_composites():
    for bad in (0, 1, 4, 9, 15, 2**31):
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_prime_field_rejects_oversized():
    with pytest.raises(ValueError):
        PrimeField(2**64 + 13)


def test_extension_rejects_reducible_modulus():
    with pytest.raises(ReducibleModulusError):
        ExtensionField(F2, [1, 0, 1])  # x^2+1 = (x+1)^2 over F_2
    # trusted skips the check entirely
    ExtensionField(F2, [1, 0, 1], trusted=True)


def test_extension_requires_monic():
    with pytest.raises(ValueError):
        ExtensionField(F3, [1, 0, 2])


def test_extension_orders():
    F9 = ExtensionField(F3, [1, 0, 1])
    assert F9.order == 9
    assert F9.order_minus_one == 8
    assert F9.degree == 2
    F8 = ExtensionField(F2, [1, 1, 0, 1])
    assert F8.order_minus_one == 7


def test_from_index_roundtrip():
    for q in (7, 9, 8, 27, 25):
        K = field_of_order(q)
        seen = set()
        for i in range(q):
            v = K.from_index(i)
            assert K.to_index(v) == i
            seen.add(v)
        assert len(seen) == q


# --- spec'd arithmetic examples ----------------------------------------------


def test_char2_square():
    assert (Poly(F2, [1, 1]) * Poly(F2, [1, 1])).coeffs == (1, 0, 1)


def test_gcd_common_root():
    g = poly_gcd(Poly(F7, [6, 0, 1]), Poly(F7, [6, 1]))
    assert g.coeffs == (6, 1)  # x - 1


def test_division_with_multiply_back():
    a = Poly(F3, [1, 0, 0, 0, 1])  # x^4 + 1
    b = Poly(F3, [2, 1, 1])  # x^2 + x + 2
    q, r = divmod(a, b)
    assert q.coeffs == (2, 2, 1)
    assert r.is_zero
    assert q * b + r == a


def test_powmod_examples():
    assert poly_powmod(Poly.x(F3), 1, Poly(F3, [1, 0, 1])).coeffs == (0, 1)
    assert poly_powmod(Poly.x(F3), 4, Poly(F3, [1, 0, 1])).coeffs == (1,)
    assert poly_powmod(Poly.x(F2), 8, Poly(F2, [1, 1, 1])).coeffs == (1, 1)


def test_powmod_validations():
    with pytest.raises(ZeroDivisionError):
        poly_powmod(Poly.x(F3), 2, Poly.zero(F3))
    with pytest.raises(ValueError):
        poly_powmod(Poly.x(F3), 2, Poly.one(F3))
    with pytest.raises(ValueError):
        poly_powmod(Poly.x(F3), -1, Poly(F3, [1, 0, 1]))


def test_ext_pow_examples():
    F9 = ExtensionField(F3, [1, 0, 1])
    a = Element(F9, F9.gen())
    assert ext_pow(a, 4) == 1
    F9b = ExtensionField(F3, [2, 1, 1])
    b = Element(F9b, F9b.gen())
    assert ext_pow(b, 4) == 2
    # cross-check by repeated multiplication
    acc = b
    for _ in range(7):
        acc = acc * b
    assert acc == ext_pow(b, 8)


def test_ext_pow_lagrange_exhaustive():
    """a^(q-1) = 1 for every nonzero a, every field of order q <= 49."""
    for q in prime_powers_up_to(49):
        K = field_of_order(q)
        for i in range(1, q):
            assert K.pow(K.from_index(i), q - 1) == K.one, (q, i)


def test_compose_power_examples():
    assert compose_power(Poly(F2, [1, 1, 1]), 3).coeffs == (1, 0, 0, 1, 0, 0, 1)
    assert compose_power(Poly(F3, [1, 0, 1]), 2).coeffs == (1, 0, 0, 0, 1)
    b = Poly(F7, [3, 1, 0, 5])
    assert compose_power(b, 1) is b
    with pytest.raises(ValueError):
        compose_power(b, 0)


def test_compose_power_preserves_terms_and_degree():
    rng = random.Random(5)
    for _ in range(200):
        q = rng.choice([2, 3, 5, 9, 8])
        K = field_of_order(q)
        deg = rng.randrange(1, 8)
        b = Poly.monic_from_index(K, deg, rng.randrange(q**deg))
        d = rng.randrange(2, 7)
        c = compose_power(b, d)
        assert c.degree == d * b.degree
        assert c.term_count() == b.term_count()


def test_compose_power_evaluation_identity():
    """b(x^d) at gamma equals b at gamma^d."""
    rng = random.Random(11)
    for _ in range(300):
        q = rng.choice([3, 4, 5, 7, 9, 27, 25])
        K = field_of_order(q)
        deg = rng.randrange(1, 6)
        b = Poly.monic_from_index(K, deg, rng.randrange(q**deg))
        d = rng.randrange(1, 9)
        gamma = K.from_index(rng.randrange(q))
        lhs = compose_power(b, d).evaluate(gamma)
        rhs = b.evaluate(K.pow(gamma, d))
        assert lhs == rhs


# --- algebraic laws -----------------------------------------------------------


@st.composite
def _poly_pair(draw):
    p = draw(st.sampled_from([2, 3, 5, 7, 13]))
    K = PrimeField(p)
    mk = lambda: Poly(K, draw(st.lists(st.integers(0, p - 1), max_size=9)))
    return K, mk(), mk(), mk()


@given(_poly_pair())
@settings(max_examples=150, deadline=None)
def test_ring_axioms(data):
    _, a, b, c = data
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    one = Poly.one(a.field)
    assert a * one == a
    assert a - a == Poly.zero(a.field)


@given(_poly_pair())
@settings(max_examples=150, deadline=None)
def test_division_invariant(data):
    _, a, b, _ = data
    if b.is_zero:
        with pytest.raises(ZeroDivisionError):
            divmod(a, b)
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(_poly_pair())
@settings(max_examples=100, deadline=None)
def test_gcd_divides_both(data):
    _, a, b, _ = data
    if a.is_zero and b.is_zero:
        with pytest.raises(ZeroDivisionError):
            poly_gcd(a, b)
        return
    g = poly_gcd(a, b)
    assert g.is_monic
    for f in (a, b):
        if not f.is_zero:
            assert (f % g).is_zero


def test_ring_axioms_extension_coefficients():
    F9 = field_of_order(9)
    rng = random.Random(3)
    for _ in range(60):
        mk = lambda: Poly(F9, [F9.from_index(rng.randrange(9)) for _ in range(rng.randrange(7))])
        a, b, c = mk(), mk(), mk()
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        if not b.is_zero:
            q, r = divmod(a, b)
            assert q * b + r == a and r.degree < b.degree


def test_powmod_matches_naive():
    rng = random.Random(7)
    for _ in range(80):
        q = rng.choice([2, 3, 5, 9])
        K = field_of_order(q)
        mod = Poly.monic_from_index(K, rng.randrange(1, 5), rng.randrange(q ** 1))
        base = Poly(K, [K.from_index(rng.randrange(q)) for _ in range(4)])
        e = rng.randrange(0, 40)
        expect = Poly.one(K)
        for _ in range(e):
            expect = (expect * base) % mod
        assert poly_powmod(base, e, mod) == expect % mod


def test_field_mismatch_raises():
    with pytest.raises(FieldMismatchError):
        Poly(F2, [1, 1]) + Poly(F3, [1, 1])
    with pytest.raises(FieldMismatchError):
        Element(F2, 1) * Element(F3, 1)


def test_zero_polynomial_degree_marker():
    z = Poly.zero(F7)
    assert z.degree == -1
    assert z.coeffs == ()
    assert not z
    assert Poly(F7, [3]).degree == 0


def test_element_operators():
    F9 = field_of_order(9)
    a = Element(F9, F9.gen())
    assert a - a == 0
    assert a + 0 == a
    assert (a * a) / a == a
    assert -(-a) == a
    assert bool(a) and not bool(a - a)
    with pytest.raises(ZeroDivisionError):
        a / (a - a)


def test_work_meter_counts_something():
    b = Poly(F7, [1, 2, 3, 4, 5])
    with count_mults() as work:
        _ = b * b
    assert work() >= 25


def test_large_degree_numpy_path_consistency():
    """The numpy kernels and the pure-python kernels agree."""
    rng = random.Random(42)
    p = 13
    K = PrimeField(p)
    a = Poly(K, [rng.randrange(p) for _ in range(60)])
    b = Poly(K, [rng.randrange(p) for _ in range(50)])
    # schoolbook reference
    ref = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        for j, bj in enumerate(b.coeffs):
            ref[i + j] = (ref[i + j] + ai * bj) % p
    while ref and ref[-1] == 0:
        ref.pop()
    assert list((a * b).coeffs) == ref

    mod_sparse = Poly(K, [5] + [0] * 39 + [7] + [0] * 19 + [1])  # sparse, degree 60
    mod_dense = Poly(K, [rng.randrange(p) for _ in range(60)] + [1])
    for mod in (mod_sparse, mod_dense):
        got = poly_powmod(a, 3, mod)
        expect = ((a * a) % mod * a) % mod
        assert got == expect
