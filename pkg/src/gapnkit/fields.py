"""Arithmetic for F_p and F_(p^n) in a polynomial basis.

A field element is its packed index: the element with polynomial-basis
coefficients (c_0, ..., c_(n-1)) is the plain integer sum c_s * p**s, so
element indices run over [0, p**n).  A FieldCtx carries the modulus and,
for orders up to 2**24, discrete log / antilog tables over a fixed
primitive element plus a digit table that backs the vectorized helpers.
Contexts are immutable after construction; every operation is a pure
function of (context, arguments).
"""

from __future__ import annotations

import numpy as np

from .errors import DivisionByZero, NotIrreducible, NotPrime, OrderTooLarge
from .numtheory import factorint, is_prime
from .polyfp import PolyFp, is_irreducible

ORDER_CAP = 1 << 48
TABLE_CAP = 1 << 24


def find_irreducible(p: int, n: int) -> PolyFp:
    """The canonical modulus for F_(p^n): the monic irreducible of degree n
    whose coefficient vector (c_(n-1), ..., c_0) is lexicographically
    smallest.  Enumerating the non-leading coefficients as a base-p counter
    visits candidates in exactly that order."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n == 1:
        return PolyFp.x(p)
    for k in range(p**n):
        coeffs = []
        kk = k
        for _ in range(n):
            coeffs.append(kk % p)
            kk //= p
        coeffs.append(1)
        f = PolyFp(p, coeffs)
        if is_irreducible(f):
            return f
    raise AssertionError("no irreducible of the requested degree (impossible)")


class FieldCtx:
    """Field context: modulus, cached tables, and the arithmetic on indices."""

    __slots__ = (
        "p",
        "n",
        "modulus",
        "order",
        "generator",
        "log_table",
        "antilog_table",
        "_mod_tail",
        "_digits",
        "_pow_vec",
    )

    def __init__(self, p: int, n: int, modulus: PolyFp | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be at least 1")
        order = p**n
        if order > ORDER_CAP:
            raise OrderTooLarge(f"p**n = {order} exceeds the cap 2**48")
        if modulus is None:
            modulus = find_irreducible(p, n)
        else:
            if modulus.p != p:
                raise NotIrreducible("modulus is over the wrong prime field")
            if modulus.degree != n or modulus.lc != 1 or not is_irreducible(modulus):
                raise NotIrreducible(f"{modulus} is not monic irreducible of degree {n}")
        self.p = p
        self.n = n
        self.order = order
        self.modulus = modulus
        self._mod_tail = modulus.coeffs[:n]
        self._pow_vec = np.array([p**s for s in range(n)], dtype=np.int64)
        self._digits = None
        self.generator = None
        self.log_table = None
        self.antilog_table = None
        if order <= TABLE_CAP:
            self._build_tables()

    # ---- encoding ----------------------------------------------------

    def _digits_of_int(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.n):
            out.append(a % p)
            a //= p
        return out

    def _int_of_digits(self, digits) -> int:
        p = self.p
        v = 0
        for c in reversed(digits):
            v = v * p + c
        return v

    def element_from_coeffs(self, coeffs) -> int:
        """Pack polynomial-basis coefficients (c_0, ..., c_(n-1)) into an index."""
        cs = list(coeffs)
        if len(cs) > self.n:
            raise ValueError("too many coefficients")
        cs += [0] * (self.n - len(cs))
        return self._int_of_digits([c % self.p for c in cs])

    def coeffs_of(self, a: int) -> tuple[int, ...]:
        """Unpack an index into its coefficient vector (c_0, ..., c_(n-1))."""
        self._check_element(a)
        return tuple(self._digits_of_int(a))

    def _check_element(self, a: int) -> None:
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element index of this field")

    # ---- scalar arithmetic --------------------------------------------

    def add(self, a: int, b: int) -> int:
        self._check_element(a)
        self._check_element(b)
        p = self.p
        if p == 2:
            return a ^ b
        out, mult = 0, 1
        while a or b:
            out += (a % p + b % p) % p * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        self._check_element(a)
        p = self.p
        if p == 2:
            return a
        out, mult = 0, 1
        while a:
            out += -a % p * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_reduce(self, a: int, b: int) -> int:
        """Schoolbook product of coefficient vectors reduced by the modulus.
        Table-free; this is also what builds the tables."""
        p, n = self.p, self.n
        if n == 1:
            return a * b % p
        da = self._digits_of_int(a)
        db = self._digits_of_int(b)
        prod = [0] * (2 * n - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    if cb:
                        prod[i + j] = (prod[i + j] + ca * cb) % p
        tail = self._mod_tail
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                base = k - n
                for s, ms in enumerate(tail):
                    if ms:
                        prod[base + s] = (prod[base + s] - c * ms) % p
        return self._int_of_digits(prod[:n])

    def mul(self, a: int, b: int) -> int:
        self._check_element(a)
        self._check_element(b)
        if a == 0 or b == 0:
            return 0
        if self.log_table is not None:
            group = self.order - 1
            e = (int(self.log_table[a]) + int(self.log_table[b])) % group
            return int(self.antilog_table[e])
        return self._mul_reduce(a, b)

    def inv(self, a: int) -> int:
        self._check_element(a)
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        if self.log_table is not None:
            group = self.order - 1
            return int(self.antilog_table[-int(self.log_table[a]) % group])
        return self.pow(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        """a**e for e >= 0, with 0**0 = 1."""
        self._check_element(a)
        if e < 0:
            raise ValueError("negative exponent")
        if a == 0:
            return 1 if e == 0 else 0
        if self.log_table is not None:
            group = self.order - 1
            return int(self.antilog_table[int(self.log_table[a]) * (e % group) % group])
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_reduce(result, base)
            base = self._mul_reduce(base, base)
            e >>= 1
        return result

    def frobenius(self, x: int, j: int) -> int:
        """x**(p**j) for 0 <= j < n; an F_p-linear field automorphism."""
        if not 0 <= j < self.n:
            raise ValueError(f"frobenius power {j} outside [0, {self.n})")
        return self.pow(x, self.p**j)

    def embed_prime(self, i: int) -> int:
        """The constant i of the prime subfield, 0 <= i < p."""
        if not 0 <= i < self.p:
            raise ValueError(f"{i} is not a prime-field element")
        return i

    # ---- tables --------------------------------------------------------

    def _pow_notable(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_reduce(result, base)
            base = self._mul_reduce(base, base)
            e >>= 1
        return result

    def _build_tables(self) -> None:
        order = self.order
        group = order - 1
        cofactors = [group // q for q in factorint(group)] if group > 1 else []
        start = self.p if self.n > 1 else 1
        gen = None
        for cand in range(start, order):
            if all(self._pow_notable(cand, cf) != 1 for cf in cofactors):
                gen = cand
                break
        if gen is None:
            raise AssertionError("no primitive element found (impossible)")
        antilog = np.empty(group, dtype=np.int64)
        val = 1
        for e in range(group):
            antilog[e] = val
            val = self._mul_reduce(val, gen)
        if val != 1:
            raise AssertionError("generator is not primitive (table build bug)")
        log = np.full(order, -1, dtype=np.int64)
        log[antilog] = np.arange(group, dtype=np.int64)
        self.generator = gen
        self.antilog_table = antilog
        self.log_table = log

    @property
    def digit_table(self) -> np.ndarray:
        """(order, n) array of base-p digits for every element index."""
        if self._digits is None:
            if self.order > TABLE_CAP:
                raise OrderTooLarge("digit table requested for an order above 2**24")
            dtype = np.uint8 if self.p <= 256 else np.int64
            ds = np.empty((self.order, self.n), dtype=dtype)
            idx = np.arange(self.order, dtype=np.int64)
            for s in range(self.n):
                ds[:, s] = idx % self.p
                idx = idx // self.p
            self._digits = ds
        return self._digits

    # ---- vectorized helpers ---------------------------------------------

    def add_array(self, a, b):
        """Elementwise field addition of index arrays (or array + scalar)."""
        d = self.digit_table
        s = d[a].astype(np.int64) + d[b]
        return (s % self.p) @ self._pow_vec

    def mul_array(self, a, b):
        """Elementwise field multiplication of index arrays via log tables."""
        if self.log_table is None:
            raise OrderTooLarge("mul_array needs log tables (order above 2**24)")
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        group = self.order - 1
        e = (self.log_table[a[nz]] + self.log_table[b[nz]]) % group
        out[nz] = self.antilog_table[e]
        return out

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={self.modulus})"


def make_field(p: int, n: int, modulus: PolyFp | None = None) -> FieldCtx:
    """Build a field context; the modulus defaults to the canonical one."""
    return FieldCtx(p, n, modulus)
