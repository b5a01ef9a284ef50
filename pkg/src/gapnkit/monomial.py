"""Exponent analytics for power maps x -> x**d.

Base-p digit bookkeeping (weight, cyclotomic cosets, normalization), the
digit-polynomial criterion and the circulant rank decider for exponents of
digit sum exactly p, exceptionality profiles built from the multiplicative
orders of criterion-polynomial roots, and the named exponent families.

The digit polynomial of d = sum a_s p**s is C(x) = sum a_s x**s.  For a
normalized weight-p exponent the derivative sum along direction 1 is an
F_p-linear map whose matrix, in a normal basis, is the circulant of the
digit vector, and x -> x**d avoids all derivative counts above p exactly
when that map has a kernel of dimension 1.  Equivalently:

    gcd(C(x), x**n - 1) = x - 1, exactly.

x - 1 always divides the gcd because C(1) = p = 0.  When p does not divide
n the polynomial x**n - 1 is square-free and this reduces to "no n-th root
of unity other than 1 is a root of C"; when p divides n, multiplicities
matter (x**n - 1 is a p-th power) and the gcd form is the correct one, so
that is what this module implements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EvenCharacteristic, NotNormalized, WrongWeight
from .numtheory import primes
from .polyfp import PolyFp, factorize, poly_gcd, root_order


def digits_of(d: int, p: int, n: int | None = None) -> tuple[int, ...]:
    """Base-p digits of d, lowest first.

    With n given the result has exactly n entries and d must fit; without
    it the intrinsic digits are returned (empty tuple for d = 0).
    """
    if d < 0:
        raise ValueError("negative exponent")
    out = []
    dd = d
    while dd:
        out.append(dd % p)
        dd //= p
    if n is not None:
        if len(out) > n:
            raise ValueError(f"{d} has base-{p} digits beyond position {n - 1}")
        out += [0] * (n - len(out))
    return tuple(out)


def p_weight(d: int, p: int) -> int:
    """Base-p digit sum of d (the algebraic degree of x -> x**d)."""
    return sum(digits_of(d, p))


def coset_rep(d: int, p: int, n: int) -> int:
    """Smallest member of the cyclotomic coset {d * p**k mod (p**n - 1)}."""
    modulus = p**n - 1
    if not 1 <= d < modulus:
        raise ValueError(f"exponent {d} outside [1, {modulus})")
    best = cur = d
    for _ in range(n - 1):
        cur = cur * p % modulus
        if cur < best:
            best = cur
    return best


def coset_members(d: int, p: int, n: int) -> tuple[int, ...]:
    """All members of the cyclotomic coset of d, sorted."""
    modulus = p**n - 1
    if not 1 <= d < modulus:
        raise ValueError(f"exponent {d} outside [1, {modulus})")
    seen = {d}
    cur = d
    for _ in range(n - 1):
        cur = cur * p % modulus
        seen.add(cur)
    return tuple(sorted(seen))


def normalize_weight_p(d: int, p: int) -> int:
    """Strip factors of p from a weight-p exponent.

    Dividing by p rotates the digit vector, which is composition with a
    field automorphism; the returned exponent has a nonzero constant digit
    and the same behaviour everywhere.
    """
    w = p_weight(d, p)
    if w != p:
        raise WrongWeight(f"digit sum of {d} is {w}, need exactly {p}")
    while d % p == 0:
        d //= p
    return d


def digit_polynomial(d: int, p: int, n: int | None = None) -> PolyFp:
    """The polynomial whose coefficient at x**s is the s-th base-p digit of d.

    Requires a normalized weight-p exponent; with n given, d must satisfy
    d < p**n so the digits fit positions 0..n-1.
    """
    digs = digits_of(d, p, n)
    w = sum(digs)
    if w != p:
        raise WrongWeight(f"digit sum of {d} is {w}, need exactly {p}")
    if d % p == 0:
        raise NotNormalized(f"{d} is divisible by {p}; normalize first")
    return PolyFp(p, digs)


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of the digit-polynomial criterion for one exponent."""

    d: int
    p: int
    n: int
    digit_poly: PolyFp
    gcd: PolyFp
    is_gapn: bool
    offending_factors: tuple[tuple[PolyFp, int], ...]

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "p": self.p,
            "n": self.n,
            "digit_poly": list(self.digit_poly.coeffs),
            "gcd": list(self.gcd.coeffs),
            "is_gapn": self.is_gapn,
            "offending_factors": [
                {"coeffs": list(f.coeffs), "multiplicity": m}
                for f, m in self.offending_factors
            ],
        }


def criterion_gapn(d: int, p: int, n: int) -> CriterionReport:
    """Decide GAPN for a normalized weight-p exponent on F_(p^n).

    x - 1 divides gcd(C, x**n - 1) exactly once when the map is GAPN; every
    additional irreducible factor (a second copy of x - 1 included, which
    can only occur when p divides n) is reported as offending.

    Digits are taken from d itself, so d may exceed p**n; the gcd against
    x**n - 1 folds digit positions modulo n exactly as x**(p**s) collapses
    to x**(p**(s mod n)) on the field.
    """
    if d < 1:
        raise ValueError(f"exponent {d} must be positive")
    digit_poly = digit_polynomial(d, p)
    xn1 = PolyFp.x_pow(p, n) - PolyFp.one(p)
    g = poly_gcd(digit_poly, xn1)
    x_minus_1 = PolyFp(p, (-1, 1))
    offending = []
    for factor, mult in factorize(g).factors:
        if factor == x_minus_1:
            mult -= 1
        if mult > 0:
            offending.append((factor, mult))
    is_gapn = not offending
    assert is_gapn == (g.degree == 1)
    return CriterionReport(d, p, n, digit_poly, g, is_gapn, tuple(offending))


def rank_mod_p(matrix, p: int) -> int:
    """Rank of an integer matrix over F_p by Gaussian elimination."""
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivots = np.nonzero(a[r:, c])[0]
        if pivots.size == 0:
            continue
        i = r + int(pivots[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        below = np.nonzero(a[r + 1 :, c])[0] + r + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        r += 1
    return r


def circulant_rank(d: int, p: int, n: int) -> int:
    """Rank over F_p of the n x n circulant whose first column is the digit
    vector of d.  The derivative-sum map has image of size p**rank, so GAPN
    is equivalent to rank = n - 1."""
    if not 1 <= d < p**n:
        raise ValueError(f"exponent {d} outside [1, {p**n})")
    digs = digits_of(d, p, n)
    w = sum(digs)
    if w != p:
        raise WrongWeight(f"digit sum of {d} is {w}, need exactly {p}")
    if d % p == 0:
        raise NotNormalized(f"{d} is divisible by {p}; normalize first")
    m = [[digs[(i - j) % n] for j in range(n)] for i in range(n)]
    return rank_mod_p(m, p)


@dataclass(frozen=True)
class ExceptionalProfile:
    """Dimension-independent GAPN data for a normalized weight-p exponent.

    root_orders holds the multiplicative orders (all > 1) of the roots of
    the digit polynomial other than 1; unit_root_multiplicity is the
    multiplicity of the root 1.  These determine the GAPN dimensions
    exactly: x**d is GAPN on F_(p^n), for any n with p**n > d, iff no
    root order divides n and (the multiplicity of 1 is one, or p does not
    divide n).  Since only finitely many n are excluded by divisibility,
    every such exponent is GAPN in infinitely many dimensions.
    """

    d: int
    p: int
    root_orders: tuple[int, ...]
    unit_root_multiplicity: int
    witness_n: int

    @property
    def min_n(self) -> int:
        """Smallest dimension the exponent fits in (p**n > d)."""
        return len(digits_of(self.d, self.p))

    def predicts_gapn(self, n: int) -> bool:
        if self.p**n <= self.d:
            raise ValueError(f"{self.d} does not fit in F_({self.p}^{n})")
        if any(n % m == 0 for m in self.root_orders):
            return False
        return self.unit_root_multiplicity == 1 or n % self.p != 0

    def gapn_dimensions(self, n_max: int) -> list[int]:
        return [n for n in range(self.min_n, n_max + 1) if self.predicts_gapn(n)]

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "p": self.p,
            "root_orders": list(self.root_orders),
            "unit_root_multiplicity": self.unit_root_multiplicity,
            "witness_n": self.witness_n,
        }


def exceptional_profile(d: int, p: int) -> ExceptionalProfile:
    """Profile of a normalized weight-p exponent from its intrinsic digits.

    May raise FactorizationTooLarge if the digit polynomial has an
    irreducible factor of degree above 24.
    """
    digs = digits_of(d, p)
    w = sum(digs)
    if w != p:
        raise WrongWeight(f"digit sum of {d} is {w}, need exactly {p}")
    if d % p == 0:
        raise NotNormalized(f"{d} is divisible by {p}; normalize first")
    digit_poly = PolyFp(p, digs)
    x_minus_1 = PolyFp(p, (-1, 1))
    unit_mult = 0
    orders = set()
    for factor, mult in factorize(digit_poly).factors:
        if factor == x_minus_1:
            unit_mult = mult
        else:
            orders.add(root_order(factor))
    assert unit_mult >= 1, "the digit polynomial always vanishes at 1"
    root_orders = tuple(sorted(orders))
    n = len(digs)
    while any(n % m == 0 for m in root_orders) or (unit_mult > 1 and n % p == 0):
        n += 1
    return ExceptionalProfile(d, p, root_orders, unit_mult, n)


def extension_prime(profile: ExceptionalProfile, n: int) -> int:
    """Smallest prime q such that GAPN on F_(p^n) extends to F_(p^(q*n)).

    q must be coprime to every root order (so no order divides q*n) and,
    when the root 1 is multiple, different from p (so p does not divide
    q*n either).
    """
    if not profile.predicts_gapn(n):
        raise ValueError(f"profile of {profile.d} does not predict GAPN in dimension {n}")
    for q in primes():
        if any(m % q == 0 for m in profile.root_orders):
            continue
        if profile.unit_root_multiplicity > 1 and q == profile.p:
            continue
        return q
    raise AssertionError("unreachable")


def welch_exponent(p: int, n: int) -> tuple[int, bool]:
    """The exponent p**t + p + 1 with t = (n-1)/2 for odd n, n/2 for even n,
    together with the predicted GAPN verdict: true exactly for p = 2 with n
    odd, and for p = 3 (every n)."""
    if n < 2:
        raise ValueError("need n >= 2")
    t = (n - 1) // 2 if n % 2 else n // 2
    d = p**t + p + 1
    predicted = (p == 2 and n % 2 == 1) or p == 3
    return d, predicted


def max_degree_family(p: int, n: int) -> list[int]:
    """The exponents p**n - p**j - 1 for j = 0..n-1, all of digit sum
    n*(p-1) - 1, the largest possible for a GAPN power map.  j = 0 gives
    p**n - 2, the inverse exponent.  Odd characteristic only."""
    if p == 2:
        raise EvenCharacteristic("this family needs odd characteristic")
    if n < 1:
        raise ValueError("need n >= 1")
    out = [p**n - p**j - 1 for j in range(n)]
    for d in out:
        assert p_weight(d, p) == n * (p - 1) - 1
    return out


def identify_family(d: int, p: int, n: int) -> list[str]:
    """Names of the classical families d belongs to, empty if none."""
    names = []
    for i in range(1, n):
        if d == p**i + p - 1:
            names.append(f"gold(i={i})")
    if n >= 2:
        wd, _ = welch_exponent(p, n)
        if d == wd:
            t = (n - 1) // 2 if n % 2 else n // 2
            names.append(f"welch(t={t})")
    if p != 2:
        for j in range(n):
            if d == p**n - p**j - 1:
                names.append("inverse" if j == 0 else f"inverse-class(j={j})")
    return names


@dataclass(frozen=True)
class Exponent:
    """An exponent together with its derived bookkeeping."""

    d: int
    p: int
    n: int
    digits: tuple[int, ...]
    weight: int
    coset_rep: int

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "p": self.p,
            "n": self.n,
            "digits": list(self.digits),
            "weight": self.weight,
            "coset_rep": self.coset_rep,
        }


def describe_exponent(d: int, p: int, n: int) -> Exponent:
    """Bundle digits, weight, and coset representative for one exponent."""
    digs = digits_of(d, p, n)
    return Exponent(d, p, n, digs, sum(digs), coset_rep(d, p, n))


__all__ = [
    "CriterionReport",
    "ExceptionalProfile",
    "Exponent",
    "circulant_rank",
    "coset_members",
    "coset_rep",
    "criterion_gapn",
    "describe_exponent",
    "digit_polynomial",
    "digits_of",
    "exceptional_profile",
    "extension_prime",
    "identify_family",
    "max_degree_family",
    "normalize_weight_p",
    "p_weight",
    "rank_mod_p",
    "welch_exponent",
]
