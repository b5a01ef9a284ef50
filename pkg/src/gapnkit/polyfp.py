"""Dense univariate polynomial algebra over a prime field F_p.

Coefficients live in [0, p) and are stored lowest degree first with no
trailing zeros, so the zero polynomial has an empty coefficient tuple and
``degree`` is -1 for it.  On top of the ring operations the module provides
Rabin's irreducibility test, a full factorization pipeline (square-free
split, distinct-degree split, then Cantor-Zassenhaus equal-degree split
driven by a deterministically seeded random stream), and the multiplicative
order of the root of an irreducible polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BothZero, DivisionByZero, FactorizationTooLarge, RootIsZero
from .numtheory import factorint

_ROOT_ORDER_DEG_CAP = 24


class PolyFp:
    """A polynomial over F_p; immutable once built."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        if p < 2:
            raise ValueError("characteristic must be at least 2")
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.p = p
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, p: int) -> "PolyFp":
        return cls(p)

    @classmethod
    def one(cls, p: int) -> "PolyFp":
        return cls(p, (1,))

    @classmethod
    def x(cls, p: int) -> "PolyFp":
        return cls(p, (0, 1))

    @classmethod
    def x_pow(cls, p: int, k: int) -> "PolyFp":
        return cls(p, (0,) * k + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return self.coeffs == (1,)

    @property
    def lc(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    def _check_same_field(self, other: "PolyFp") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed characteristics {self.p} and {other.p}")

    def __add__(self, other: "PolyFp") -> "PolyFp":
        self._check_same_field(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return PolyFp(self.p, out)

    def __neg__(self) -> "PolyFp":
        return PolyFp(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: "PolyFp") -> "PolyFp":
        return self + (-other)

    def __mul__(self, other: "PolyFp") -> "PolyFp":
        self._check_same_field(other)
        if self.is_zero or other.is_zero:
            return PolyFp.zero(self.p)
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return PolyFp(self.p, out)

    def scale(self, c: int) -> "PolyFp":
        """Multiply by the constant c."""
        return PolyFp(self.p, [c * v for v in self.coeffs])

    def shift(self, k: int) -> "PolyFp":
        """Multiply by x**k."""
        if self.is_zero:
            return self
        return PolyFp(self.p, (0,) * k + self.coeffs)

    def __divmod__(self, other: "PolyFp"):
        self._check_same_field(other)
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        p = self.p
        db = other.degree
        inv_lc = pow(other.lc, -1, p)
        rem = list(self.coeffs)
        quo = [0] * max(len(rem) - db, 1)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                q = c * inv_lc % p
                quo[k - db] = q
                for s, mc in enumerate(other.coeffs):
                    rem[k - db + s] = (rem[k - db + s] - q * mc) % p
        return PolyFp(p, quo), PolyFp(p, rem[:db] if db > 0 else [])

    def __floordiv__(self, other: "PolyFp") -> "PolyFp":
        return divmod(self, other)[0]

    def __mod__(self, other: "PolyFp") -> "PolyFp":
        return divmod(self, other)[1]

    def monic(self) -> "PolyFp":
        """Scale so the leading coefficient is 1 (zero stays zero)."""
        if self.is_zero or self.lc == 1:
            return self
        return self.scale(pow(self.lc, -1, self.p))

    def evaluate(self, x: int) -> int:
        """Value at x in F_p, by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def derivative(self) -> "PolyFp":
        return PolyFp(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyFp)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"PolyFp({self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append("x" if c == 1 else f"{c}*x")
            else:
                terms.append(f"x^{k}" if c == 1 else f"{c}*x^{k}")
        return " + ".join(terms)


def divrem(a: PolyFp, b: PolyFp) -> tuple[PolyFp, PolyFp]:
    """Quotient and remainder of a by b; deg(remainder) < deg(b)."""
    return divmod(a, b)


def poly_gcd(a: PolyFp, b: PolyFp) -> PolyFp:
    """Monic greatest common divisor."""
    if a.is_zero and b.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def pow_mod(base: PolyFp, e: int, mod: PolyFp) -> PolyFp:
    """base**e reduced modulo mod, for e >= 0."""
    if e < 0:
        raise ValueError("negative exponent")
    result = PolyFp.one(base.p)
    base = base % mod
    while e:
        if e & 1:
            result = result * base % mod
        base = base * base % mod
        e >>= 1
    return result


def is_irreducible(f: PolyFp) -> bool:
    """Rabin's irreducibility test.

    f of degree n is irreducible over F_p iff x**(p**n) = x mod f and, for
    every prime divisor q of n, gcd(x**(p**(n/q)) - x, f) = 1.
    """
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    p = f.p
    fm = f.monic()
    x = PolyFp.x(p)
    # x**(p**k) mod f by k successive p-th powers
    frob_steps = [x]
    u = x
    for _ in range(n):
        u = pow_mod(u, p, fm)
        frob_steps.append(u)
    if frob_steps[n] != x % fm:
        return False
    for q in factorint(n):
        g = poly_gcd(fm, frob_steps[n // q] - x)
        if not g.is_one:
            return False
    return True


def _pth_root(f: PolyFp) -> PolyFp:
    """For f = g(x**p), return g (the Frobenius is the identity on F_p)."""
    p = f.p
    return PolyFp(p, f.coeffs[::p])


def _squarefree_parts(f: PolyFp) -> list[tuple[PolyFp, int]]:
    """Square-free decomposition of a monic f with deg >= 1.

    Returns pairwise-coprime monic square-free parts with multiplicities
    whose product (with multiplicities) reconstructs f.
    """
    p = f.p
    factors: list[tuple[PolyFp, int]] = []
    n = 1
    while True:
        d = f.derivative()
        done = False
        if not d.is_zero:
            g = poly_gcd(f, d)
            h = f // g
            i = 1
            while not h.is_one:
                gg = poly_gcd(g, h)
                hh = h // gg
                if hh.degree > 0:
                    factors.append((hh, i * n))
                g, h, i = g // gg, gg, i + 1
            if g.is_one:
                done = True
            else:
                f = g
        if done:
            return factors
        f = _pth_root(f)
        n *= p


def _distinct_degree_parts(f: PolyFp) -> list[tuple[PolyFp, int]]:
    """Distinct-degree split of a monic square-free f.

    Returns (product of all irreducible factors of degree d, d) pairs in
    increasing d.
    """
    p = f.p
    out: list[tuple[PolyFp, int]] = []
    x = PolyFp.x(p)
    h = x
    i = 1
    while f.degree >= 2 * i:
        h = pow_mod(h, p, f)
        g = poly_gcd(f, h - x)
        if not g.is_one:
            out.append((g, i))
            f = f // g
            h = h % f
        i += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _random_poly(p: int, deg_below: int, rng: random.Random) -> PolyFp:
    return PolyFp(p, [rng.randrange(p) for _ in range(deg_below)])


def _equal_degree_split(f: PolyFp, d: int, rng: random.Random) -> list[PolyFp]:
    """Cantor-Zassenhaus: split a monic square-free f whose irreducible
    factors all have degree d into those factors."""
    if f.degree == d:
        return [f]
    p = f.p
    while True:
        g = _random_poly(p, f.degree, rng)
        if g.degree < 1:
            continue
        if p == 2:
            # trace map g + g^2 + g^4 + ... splits in characteristic 2
            t = g
            acc = g
            for _ in range(d - 1):
                t = pow_mod(t, 2, f)
                acc = acc + t
            w = poly_gcd(f, acc) if not acc.is_zero else f
        else:
            h = pow_mod(g, (p**d - 1) // 2, f) - PolyFp.one(p)
            w = poly_gcd(f, h) if not h.is_zero else f
        if 0 < w.degree < f.degree:
            return _equal_degree_split(w, d, rng) + _equal_degree_split(f // w, d, rng)


@dataclass(frozen=True)
class Factorization:
    """unit * product of factors**multiplicity, factors monic irreducible,
    sorted by (degree, coefficient tuple)."""

    p: int
    unit: int
    factors: tuple[tuple[PolyFp, int], ...]

    def product(self) -> PolyFp:
        out = PolyFp(self.p, (self.unit,))
        for poly, mult in self.factors:
            for _ in range(mult):
                out = out * poly
        return out


def factorize(f: PolyFp) -> Factorization:
    """Complete factorization into monic irreducibles.

    The equal-degree stage draws from a random stream seeded by the input
    polynomial itself, so repeated calls give identical results.
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    p = f.p
    unit = f.lc
    fm = f.monic()
    if fm.degree == 0:
        return Factorization(p, unit, ())
    rng = random.Random(f"edf:{p}:" + ",".join(map(str, fm.coeffs)))
    parts: list[tuple[PolyFp, int]] = []
    for sq, mult in _squarefree_parts(fm):
        for prod, d in _distinct_degree_parts(sq):
            for irr in _equal_degree_split(prod, d, rng):
                parts.append((irr, mult))
    parts.sort(key=lambda it: (it[0].degree, it[0].coeffs))
    return Factorization(p, unit, tuple(parts))


def root_order(h: PolyFp) -> int:
    """Multiplicative order of the root of a monic irreducible h (h != x).

    This is the order of x in F_p[x]/(h), i.e. the least N >= 1 with the
    root beta of h satisfying beta**N = 1.  Degrees above 24 would force
    factoring p**m - 1 beyond the budget and raise FactorizationTooLarge.
    """
    p = h.p
    m = h.degree
    if h == PolyFp.x(p):
        raise RootIsZero("the root of x is 0; it has no multiplicative order")
    if m < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if m > _ROOT_ORDER_DEG_CAP:
        raise FactorizationTooLarge(f"degree {m} exceeds the cap of {_ROOT_ORDER_DEG_CAP}")
    if h.lc != 1 or not is_irreducible(h):
        raise ValueError("root_order needs a monic irreducible polynomial")
    n_group = p**m - 1
    e = n_group
    x = PolyFp.x(p)
    for q in factorint(n_group):
        while e % q == 0 and pow_mod(x, e // q, h).is_one:
            e //= q
    return e
