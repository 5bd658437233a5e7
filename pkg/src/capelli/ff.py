"""Exact arithmetic: prime fields, extension fields, and dense polynomials.

Representation choices:

 - Group orders and exponents are plain Python ints; they are exact at any
   size, so q - 1 for q = p^m needs no special big-integer type.
 - A prime-field element is an int in [0, p). An extension-field element is
   a fixed-length tuple of ints: the little-endian coefficients of its
   residue polynomial. Both are immutable and hashable.
 - ``Poly`` stores a normalized little-endian coefficient tuple over its
   field. The zero polynomial has an empty tuple and degree -1, which acts
   as the "minus infinity" degree: it compares below every real degree.
 - Fields expose arithmetic on the raw values (``field.mul(a, b)`` etc.);
   ``Element`` wraps a raw value with operator sugar.

The inner loops that dominate large computations (polynomial products and
modular reductions over F_p) switch to numpy kernels when the operands are
big enough and the coefficient magnitudes cannot overflow int64. Moduli
with few nonzero terms get a cheap folding reduction, which is what makes
high-degree sparse towers fast.

A per-thread work meter tallies coefficient multiplications (bulk counts
for the vectorized kernels). It is diagnostic instrumentation: results of
all operations are independent of it.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import FieldMismatchError, ReducibleModulusError
from .intops import is_prime

__all__ = [
    "PrimeField",
    "ExtensionField",
    "Element",
    "Poly",
    "poly_gcd",
    "poly_powmod",
    "compose_power",
    "ext_pow",
    "count_mults",
    "WorkMeter",
]

_NP_MUL_MIN_WORK = 256  # len(a)*len(b) below this: pure python wins
_NP_POWMOD_MIN_DEG = 16
_ROWS_MAX_DEG = 32  # extension fields up to this degree precompute fold rows


class WorkMeter:
    """Per-thread tally of coefficient-field multiplications."""

    __slots__ = ("mults",)

    def __init__(self) -> None:
        self.mults = 0


_METER_LOCAL = threading.local()


def _meter() -> WorkMeter:
    m = getattr(_METER_LOCAL, "meter", None)
    if m is None:
        m = _METER_LOCAL.meter = WorkMeter()
    return m


@contextmanager
def count_mults():
    """Yield a zero-arg callable reporting multiplications since entry.

    Counts model schoolbook coefficient multiplications in the current
    thread, including bulk-equivalent counts for the numpy kernels. Inside
    the block the reading is live; once the block exits it freezes, so work
    done afterwards never leaks into the figure.
    """
    m = _meter()
    start = m.mults
    frozen: list = []

    def reading() -> int:
        return (frozen[0] if frozen else m.mults) - start

    try:
        yield reading
    finally:
        frozen.append(m.mults)


def _np_safe(p: int, width: int) -> bool:
    # int64 accumulation headroom for convolutions and fold sums
    return (p - 1) * (p - 1) * (width + 1) < (1 << 62)


def _strip(coeffs: list, zero) -> list:
    while coeffs and coeffs[-1] == zero:
        coeffs.pop()
    return coeffs


# ---------------------------------------------------------------------------
# prime-field kernels (coefficients are plain ints mod p)
# ---------------------------------------------------------------------------


def _pf_mul(p: int, a: list[int], b: list[int]) -> list[int]:
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    meter = _meter()
    meter.mults += la * lb
    if la * lb >= _NP_MUL_MIN_WORK and _np_safe(p, min(la, lb)):
        out = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return _strip((out % p).tolist(), 0)
    out = [0] * (la + lb - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _strip([v % p for v in out], 0)


def _pf_divmod(p: int, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    lb = len(b)
    if lb == 0:
        raise ZeroDivisionError("division by zero polynomial")
    la = len(a)
    if la < lb:
        return [], _strip(list(a), 0)
    inv_lead = pow(b[-1], -1, p)
    r = list(a)
    q = [0] * (la - lb + 1)
    meter = _meter()
    meter.mults += (la - lb + 1) * lb
    use_np = lb >= 64 and _np_safe(p, lb)
    if use_np:
        rn = np.asarray(r, dtype=np.int64)
        bn = np.asarray(b[:-1], dtype=np.int64)
        for k in range(la - 1, lb - 2, -1):
            c = int(rn[k]) * inv_lead % p
            if c:
                q[k - lb + 1] = c
                rn[k - lb + 1 : k] = (rn[k - lb + 1 : k] - c * bn) % p
        r = rn[: lb - 1].tolist()
    else:
        for k in range(la - 1, lb - 2, -1):
            c = r[k] * inv_lead % p
            if c:
                q[k - lb + 1] = c
                for i in range(lb - 1):
                    r[k - lb + 1 + i] = (r[k - lb + 1 + i] - c * b[i]) % p
        r = r[: lb - 1]
    return _strip(q, 0), _strip(r, 0)


class _PrimeModReducer:
    """Reduction modulo one fixed monic modulus over F_p.

    Precomputes the low part t(x) with x^n = t(x) (mod f) and decides once
    whether folding by t (cheap when t has few terms) beats plain synthetic
    division.
    """

    __slots__ = ("p", "n", "mod", "low_nz", "maxnz", "sparse_ok", "np_ok")

    def __init__(self, p: int, mod: Sequence[int]):
        n = len(mod) - 1
        if n < 1:
            raise ValueError("modulus must have degree >= 1")
        if mod[-1] != 1:
            raise ValueError("reducer requires a monic modulus")
        self.p = p
        self.n = n
        self.mod = list(mod)
        low = [(-c) % p for c in mod[:n]]
        self.low_nz = tuple((j, c) for j, c in enumerate(low) if c)
        self.maxnz = max((j for j, _ in self.low_nz), default=-1)
        gap = n - self.maxnz
        folds = 1 + max(0, n - 2) // gap
        self.sparse_ok = len(self.low_nz) * folds * 4 <= max(8, n)
        self.np_ok = _np_safe(p, n + 1)

    def reduce_np(self, r: np.ndarray) -> np.ndarray:
        """Reduce an int64 array with entries in [0, p); returns length <= n."""
        p, n = self.p, self.n
        meter = _meter()
        while r.shape[0] > n:
            hi = r[n:]
            if self.sparse_ok:
                length = max(n, hi.shape[0] + self.maxnz + 1)
                acc = np.zeros(length, dtype=np.int64)
                acc[:n] += r[:n]
                for j, c in self.low_nz:
                    acc[j : j + hi.shape[0]] += hi * c
                    meter.mults += hi.shape[0]
                acc %= p
                k = acc.shape[0]
                while k > n and acc[k - 1] == 0:
                    k -= 1
                r = acc[:k]
            else:
                r = r.copy()
                mod_low = np.asarray(self.mod[:n], dtype=np.int64)
                meter.mults += (r.shape[0] - n) * n
                for k in range(r.shape[0] - 1, n - 1, -1):
                    c = r[k]
                    if c:
                        r[k - n : k] = (r[k - n : k] - c * mod_low) % p
                r = r[:n]
        return r

    def rem_list(self, a: list[int]) -> list[int]:
        p, n = self.p, self.n
        if len(a) <= n:
            return _strip(list(a), 0)
        if self.np_ok and len(a) > 64:
            out = self.reduce_np(np.asarray(a, dtype=np.int64))
            return _strip(out.tolist(), 0)
        _, r = _pf_divmod(p, list(a), self.mod)
        return r


def _pf_powmod(p: int, base: list[int], e: int, mod: list[int]) -> list[int]:
    red = _PrimeModReducer(p, mod)
    base = red.rem_list(base)
    n = red.n
    if e == 0:
        return [1] if n >= 1 else []
    if not base:
        return []
    if n == 1:
        # residues are constants; hand the ladder to the native int pow
        _meter().mults += (e.bit_length() * 3) // 2
        out = pow(base[0], e, p)
        return [out] if out else []
    if red.np_ok and n >= _NP_POWMOD_MIN_DEG:
        meter = _meter()
        r = np.asarray(base, dtype=np.int64)
        b0 = r
        for bit in bin(e)[3:]:
            meter.mults += r.shape[0] * r.shape[0]
            r = red.reduce_np(np.convolve(r, r) % p)
            if bit == "1":
                meter.mults += r.shape[0] * b0.shape[0]
                r = red.reduce_np(np.convolve(r, b0) % p)
            if r.shape[0] == 0:
                return []
        return _strip(r.tolist(), 0)
    r = list(base)
    for bit in bin(e)[3:]:
        r = red.rem_list(_pf_mul(p, r, r))
        if bit == "1":
            r = red.rem_list(_pf_mul(p, r, base))
        if not r:
            return []
    return r


# ---------------------------------------------------------------------------
# generic kernels (coefficients live in any field object)
# ---------------------------------------------------------------------------


def _gen_mul(K, a: list, b: list) -> list:
    if not a or not b:
        return []
    zero = K.zero
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai != zero:
            for j, bj in enumerate(b):
                if bj != zero:
                    out[i + j] = K.add(out[i + j], K.mul(ai, bj))
    return _strip(out, zero)


def _gen_divmod(K, a: list, b: list) -> tuple[list, list]:
    lb = len(b)
    if lb == 0:
        raise ZeroDivisionError("division by zero polynomial")
    la = len(a)
    zero = K.zero
    if la < lb:
        return [], _strip(list(a), zero)
    inv_lead = K.inv(b[-1])
    r = list(a)
    q = [zero] * (la - lb + 1)
    for k in range(la - 1, lb - 2, -1):
        c = K.mul(r[k], inv_lead)
        if c != zero:
            q[k - lb + 1] = c
            for i in range(lb - 1):
                r[k - lb + 1 + i] = K.sub(r[k - lb + 1 + i], K.mul(c, b[i]))
            r[k] = zero
    return _strip(q, zero), _strip(r[: lb - 1], zero)


def _mul_raw(K, a: list, b: list) -> list:
    if isinstance(K, PrimeField):
        return _pf_mul(K.p, a, b)
    return _gen_mul(K, a, b)


def _divmod_raw(K, a: list, b: list) -> tuple[list, list]:
    if isinstance(K, PrimeField):
        return _pf_divmod(K.p, a, b)
    return _gen_divmod(K, a, b)


def _powmod_raw(K, base: list, e: int, mod: list) -> list:
    if isinstance(K, PrimeField):
        return _pf_powmod(K.p, base, e, mod)
    # extension-coefficient polynomials stay small; a plain ladder suffices
    _, r = _divmod_raw(K, base, mod)
    if e == 0:
        return [K.one]
    if not r:
        return []
    out = list(r)
    for bit in bin(e)[3:]:
        out = _divmod_raw(K, _gen_mul(K, out, out), mod)[1]
        if bit == "1":
            out = _divmod_raw(K, _gen_mul(K, out, r), mod)[1]
        if not out:
            return []
    return out


def _gcd_raw(K, a: list, b: list) -> list:
    zero = K.zero
    a, b = list(a), list(b)
    while b:
        a, b = b, _divmod_raw(K, a, b)[1]
    if not a:
        raise ZeroDivisionError("gcd(0, 0) is undefined")
    inv_lead = K.inv(a[-1])
    if a[-1] != K.one:
        a = [K.mul(c, inv_lead) for c in a]
    return a


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


class PrimeField:
    """The prime field F_p. Raw elements are ints in [0, p).

    The modulus must be a prime fitting in 64 bits; compositeness is
    rejected at construction.
    """

    __slots__ = ("p", "order", "order_minus_one", "zero", "one")

    degree = 1

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise ValueError("p must be an int")
        if p < 2:
            raise ValueError("p must be at least 2")
        if p.bit_length() > 64:
            raise ValueError("p must fit in 64 bits")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.order = p
        self.order_minus_one = p - 1
        self.zero = 0
        self.one = 1

    # raw-value arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        _meter().mults += 1
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("exponent must be non-negative")
        _meter().mults += (e.bit_length() * 3) // 2
        return pow(a, e, self.p)

    # conversions and iteration ----------------------------------------------

    def coerce(self, value) -> int:
        if isinstance(value, Element):
            if value.field != self:
                raise FieldMismatchError("element from a different field")
            return value.value
        if isinstance(value, int) and not isinstance(value, bool):
            return value % self.p
        raise TypeError(f"cannot interpret {value!r} as an element of {self!r}")

    def scalar(self, c: int) -> int:
        return c % self.p

    def from_index(self, i: int) -> int:
        if not 0 <= i < self.order:
            raise ValueError("index out of range")
        return i

    def to_index(self, a: int) -> int:
        return a

    def elements(self) -> Iterator["Element"]:
        for i in range(self.p):
            yield Element(self, i)

    def random_element(self, rng) -> "Element":
        return Element(self, rng.randrange(self.order))

    def __call__(self, value) -> "Element":
        return Element(self, self.coerce(value))

    def poly(self, coeffs: Sequence) -> "Poly":
        return Poly(self, coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


class ExtensionField:
    """F_p[x]/(b(x)) for a monic irreducible b of degree m >= 2.

    Raw elements are m-tuples of ints (little-endian residue coefficients).
    The modulus is verified irreducible at construction unless
    ``trusted=True`` is passed by a caller who has already certified it.
    """

    __slots__ = (
        "base",
        "p",
        "modulus",
        "degree",
        "order",
        "order_minus_one",
        "zero",
        "one",
        "_rows",
        "_reducer",
    )

    def __init__(self, base: Union[PrimeField, int], modulus, *, trusted: bool = False):
        if isinstance(base, int):
            base = PrimeField(base)
        if not isinstance(base, PrimeField):
            raise ValueError("extension base must be a prime field")
        if isinstance(modulus, Poly):
            if modulus.field != base:
                raise FieldMismatchError("modulus is not over the base field")
            mod_coeffs = list(modulus.coeffs)
        else:
            mod_coeffs = _strip([base.coerce(c) for c in modulus], 0)
        m = len(mod_coeffs) - 1
        if m < 2:
            raise ValueError("extension modulus must have degree >= 2 (use PrimeField for m = 1)")
        if mod_coeffs[-1] != 1:
            raise ValueError("extension modulus must be monic")
        self.base = base
        self.p = base.p
        self.modulus = tuple(mod_coeffs)
        self.degree = m
        self.order = base.p**m
        self.order_minus_one = self.order - 1
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)
        self._reducer = _PrimeModReducer(base.p, mod_coeffs)
        self._rows = self._build_rows() if m <= _ROWS_MAX_DEG else None
        if not trusted:
            from .oracle import rabin_test  # deferred: oracle builds on this module

            verdict = rabin_test(Poly(base, mod_coeffs))
            if not verdict.irreducible:
                raise ReducibleModulusError(
                    f"modulus {mod_coeffs} is reducible over GF({base.p})"
                )

    def _build_rows(self) -> tuple[tuple[int, ...], ...]:
        # rows[t] = coefficients of x^(m+t) reduced mod the modulus
        p, m = self.p, self.degree
        rows = []
        row = [(-c) % p for c in self.modulus[:m]]
        rows.append(tuple(row))
        for _ in range(m - 2):
            top = row[m - 1]
            row = [0] + row[: m - 1]
            if top:
                r0 = rows[0]
                row = [(row[j] + top * r0[j]) % p for j in range(m)]
            rows.append(tuple(row))
        return tuple(rows)

    # raw-value arithmetic ---------------------------------------------------

    def add(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: tuple) -> tuple:
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a: tuple, b: tuple) -> tuple:
        p, m = self.p, self.degree
        meter = _meter()
        if self._rows is not None:
            prod = [0] * (2 * m - 1)
            for i in range(m):
                ai = a[i]
                if ai:
                    for j in range(m):
                        bj = b[j]
                        if bj:
                            prod[i + j] += ai * bj
            meter.mults += m * m
            rows = self._rows
            for i in range(2 * m - 2, m - 1, -1):
                c = prod[i] % p
                if c:
                    row = rows[i - m]
                    for j in range(m):
                        rj = row[j]
                        if rj:
                            prod[j] += c * rj
                    meter.mults += m
            return tuple(v % p for v in prod[:m])
        out = self._reducer.rem_list(_pf_mul(p, list(a), list(b)))
        return tuple(out) + (0,) * (m - len(out))

    def inv(self, a: tuple) -> tuple:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        # extended Euclid keeping s with s*a = r (mod modulus)
        r0, r1 = list(self.modulus), _strip(list(a), 0)
        s0, s1 = [], [1]
        while r1:
            q, r = _pf_divmod(p, r0, r1)
            qs1 = _pf_mul(p, q, s1)
            width = max(len(s0), len(qs1))
            s_new = [
                ((s0[i] if i < len(s0) else 0) - (qs1[i] if i < len(qs1) else 0)) % p
                for i in range(width)
            ]
            r0, r1 = r1, r
            s0, s1 = s1, _strip(s_new, 0)
        # modulus irreducible and a nonzero, so the gcd r0 is a nonzero constant
        c = pow(r0[0], -1, p)
        out = [v * c % p for v in s0]
        return tuple(out) + (0,) * (self.degree - len(out))

    def pow(self, a: tuple, e: int) -> tuple:
        if e < 0:
            raise ValueError("exponent must be non-negative")
        if e == 0:
            return self.one
        r = a
        for bit in bin(e)[3:]:
            r = self.mul(r, r)
            if bit == "1":
                r = self.mul(r, a)
        return r

    # conversions and iteration ----------------------------------------------

    def coerce(self, value) -> tuple:
        if isinstance(value, Element):
            if value.field != self:
                raise FieldMismatchError("element from a different field")
            return value.value
        if isinstance(value, int) and not isinstance(value, bool):
            return self.scalar(value)
        if isinstance(value, (tuple, list)):
            if len(value) > self.degree:
                raise ValueError("residue longer than the field degree")
            vals = [int(v) % self.p for v in value]
            return tuple(vals) + (0,) * (self.degree - len(vals))
        raise TypeError(f"cannot interpret {value!r} as an element of {self!r}")

    def scalar(self, c: int) -> tuple:
        return (c % self.p,) + (0,) * (self.degree - 1)

    def gen(self) -> tuple:
        """The residue class of x, a root of the modulus."""
        return (0, 1) + (0,) * (self.degree - 2)

    def from_index(self, i: int) -> tuple:
        if not 0 <= i < self.order:
            raise ValueError("index out of range")
        p = self.p
        digits = []
        for _ in range(self.degree):
            i, r = divmod(i, p)
            digits.append(r)
        return tuple(digits)

    def to_index(self, a: tuple) -> int:
        out = 0
        for c in reversed(a):
            out = out * self.p + c
        return out

    def elements(self) -> Iterator["Element"]:
        for i in range(self.order):
            yield Element(self, self.from_index(i))

    def random_element(self, rng) -> "Element":
        return Element(self, self.from_index(rng.randrange(self.order)))

    def __call__(self, value) -> "Element":
        return Element(self, self.coerce(value))

    def poly(self, coeffs: Sequence) -> "Poly":
        return Poly(self, coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash(("ExtensionField", self.p, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"


class Element:
    """A field element: a raw value bound to its field, with operator sugar."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    @property
    def is_zero(self) -> bool:
        return self.value == self.field.zero

    def _coerced(self, other):
        if isinstance(other, Element):
            if other.field != self.field:
                raise FieldMismatchError("elements from different fields")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Element(self.field, self.field.add(self.value, self._coerced(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Element(self.field, self.field.sub(self.value, self._coerced(other)))

    def __rsub__(self, other):
        return Element(self.field, self.field.sub(self._coerced(other), self.value))

    def __neg__(self):
        return Element(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return Element(self.field, self.field.mul(self.value, self._coerced(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Element(
            self.field, self.field.mul(self.value, self.field.inv(self._coerced(other)))
        )

    def __pow__(self, e: int):
        return Element(self.field, self.field.pow(self.value, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return other.field == self.field and other.value == self.value
        try:
            return self._coerced(other) == self.value
        except (TypeError, FieldMismatchError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"{self.value!r} in {self.field!r}"


def ext_pow(a: Element, e: int) -> Element:
    """a^e by square-and-multiply in a's field; e is any non-negative int."""
    return Element(a.field, a.field.pow(a.value, e))


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Dense univariate polynomial over a ``PrimeField`` or ``ExtensionField``.

    Coefficients are stored little-endian (index i holds the coefficient of
    x^i) and normalized so the top stored coefficient is nonzero; the zero
    polynomial stores nothing and reports degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Sequence):
        vals = [field.coerce(c) for c in coeffs]
        _strip(vals, field.zero)
        self.field = field
        self.coeffs = tuple(vals)

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field) -> "Poly":
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field) -> "Poly":
        return cls(field, (field.zero, field.one))

    @classmethod
    def monic_from_index(cls, field, degree: int, index: int) -> "Poly":
        """The index-th monic polynomial of the given degree.

        The index is read as little-endian base-q digits for the lower
        coefficients, so index 0 is x^degree and enumeration is total.
        """
        q = field.order
        lower = []
        for _ in range(degree):
            index, r = divmod(index, q)
            lower.append(field.from_index(r))
        if index:
            raise ValueError("index out of range for this degree")
        return cls(field, lower + [field.one])

    # structure ------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def term_count(self) -> int:
        zero = self.field.zero
        return sum(1 for c in self.coeffs if c != zero)

    def _same_field(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError("expected a Poly")
        if other.field != self.field:
            raise FieldMismatchError("polynomials over different fields")

    def _wrap(self, raw: list) -> "Poly":
        out = object.__new__(Poly)
        out.field = self.field
        out.coeffs = tuple(raw)
        return out

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        K = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = K.add(out[i], c)
        return self._wrap(_strip(out, K.zero))

    def __sub__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        K = self.field
        a, b = self.coeffs, other.coeffs
        out = [K.neg(c) for c in b]
        if len(a) > len(out):
            out.extend([K.zero] * (len(a) - len(out)))
        for i, c in enumerate(a):
            out[i] = K.add(out[i], c)
        return self._wrap(_strip(out, K.zero))

    def __neg__(self) -> "Poly":
        K = self.field
        return self._wrap([K.neg(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        return self._wrap(_mul_raw(self.field, list(self.coeffs), list(other.coeffs)))

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._same_field(other)
        q, r = _divmod_raw(self.field, list(self.coeffs), list(other.coeffs))
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        K = self.field
        if self.is_monic:
            return self
        c = K.inv(self.coeffs[-1])
        return self._wrap([K.mul(v, c) for v in self.coeffs])

    def evaluate(self, point) -> Element:
        """Horner evaluation at a field element."""
        K = self.field
        x = K.coerce(point)
        acc = K.zero
        for c in reversed(self.coeffs):
            acc = K.add(K.mul(acc, x), c)
        return Element(K, acc)

    def compose_power(self, d: int) -> "Poly":
        return compose_power(self, d)

    # comparisons ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r} over {self.field!r})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) is an error."""
    a._same_field(b)
    raw = _gcd_raw(a.field, list(a.coeffs), list(b.coeffs))
    return a._wrap(raw)


def poly_powmod(base: Poly, e: int, modulus: Poly) -> Poly:
    """base^e reduced mod modulus, square-and-multiply over the exponent bits.

    The exponent is an arbitrary-size non-negative int; the run costs
    O(bit length of e) modular multiplications.
    """
    base._same_field(modulus)
    if modulus.is_zero:
        raise ZeroDivisionError("zero modulus")
    if modulus.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    if e < 0:
        raise ValueError("exponent must be non-negative")
    raw = _powmod_raw(base.field, list(base.coeffs), e, list(modulus.coeffs))
    return base._wrap(raw)


def compose_power(b: Poly, d: int) -> Poly:
    """b(x^d): coefficient i of b lands on x^(d*i); term count is preserved."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1 or b.is_zero:
        return b
    K = b.field
    out = [K.zero] * (d * b.degree + 1)
    for i, c in enumerate(b.coeffs):
        if c != K.zero:
            out[d * i] = c
    return b._wrap(out)
