"""Exact arithmetic in k = Q(sqrt 5) and its ring of integers Z[(1+sqrt 5)/2].

Elements are kept on the basis {1, sqrt 5} with rational coordinates. Prime
ideals are described by their residue characteristic and splitting type;
local data at a split prime is computed through the embedding of k into Q_p
that sends sqrt 5 to a Hensel-lifted square root of 5.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Union

from .errors import DyadicPlaceError, InputError

Rational = Union[int, Fraction]

FIXED = "fixed"
CONJUGATE = "conjugate"
EMBEDDINGS = (FIXED, CONJUGATE)

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def rational_valuation(q: Rational, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise InputError("valuation of zero")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def rational_mod(q: Rational, m: int) -> int:
    """Image of a rational with denominator prime to ``m`` in Z/m."""
    q = Fraction(q)
    return q.numerator * pow(q.denominator, -1, m) % m


def rational_sqrt(q: Rational) -> Optional[Fraction]:
    """Non-negative rational square root of ``q``, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True, init=False)
class QuadRat:
    """The element a + b*sqrt(5) of Q(sqrt 5)."""

    a: Fraction
    b: Fraction

    def __init__(self, a: Rational = 0, b: Rational = 0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    @classmethod
    def coerce(cls, x) -> "QuadRat":
        if isinstance(x, QuadRat):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        return NotImplemented

    def __add__(self, other):
        other = QuadRat.coerce(other)
        if other is NotImplemented:
            return other
        return QuadRat(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadRat(-self.a, -self.b)

    def __sub__(self, other):
        other = QuadRat.coerce(other)
        if other is NotImplemented:
            return other
        return QuadRat(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = QuadRat.coerce(other)
        if other is NotImplemented:
            return other
        return QuadRat(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadRat":
        n = norm(self)
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 5)")
        return QuadRat(self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = QuadRat.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadRat.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = QuadRat(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        other = QuadRat.coerce(other)
        if other is NotImplemented:
            return False
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self):
        return format_elem(self)

    def __repr__(self):
        return f"QuadRat({format_elem(self)!r})"


ZERO = QuadRat(0)
ONE = QuadRat(1)
SQRT5 = QuadRat(0, 1)
PHI = QuadRat(Fraction(1, 2), Fraction(1, 2))

_RAT = r"\d+(?:/\d+)?"
_ELEM_RE = re.compile(
    rf"^(?:(?P<a>-?{_RAT})(?:(?P<sign>[+-])(?P<b>{_RAT})\*r)?"
    rf"|(?P<bsign>[+-]?)(?P<b_only>{_RAT})\*r)$"
)
_RAT_RE = re.compile(rf"^-?{_RAT}$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RAT_RE.match(text):
        raise InputError(f"not a rational literal: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise InputError(f"zero denominator in {text!r}") from None


def parse_elem(text: str) -> QuadRat:
    """Parse a literal such as ``3``, ``-1/2+3/2*r`` or ``7*r`` (r = sqrt 5)."""
    t = text.strip().replace(" ", "")
    m = _ELEM_RE.match(t)
    if not m:
        raise InputError(f"not an element literal: {text!r}")
    try:
        if m.group("b_only") is not None:
            b = Fraction(m.group("b_only"))
            return QuadRat(0, -b if m.group("bsign") == "-" else b)
        a = Fraction(m.group("a"))
        if m.group("b") is None:
            return QuadRat(a)
        b = Fraction(m.group("b"))
        return QuadRat(a, -b if m.group("sign") == "-" else b)
    except ZeroDivisionError:
        raise InputError(f"zero denominator in {text!r}") from None


def format_elem(x: QuadRat) -> str:
    if x.b == 0:
        return str(x.a)
    if x.a == 0:
        return f"{x.b}*r"
    sign = "+" if x.b > 0 else "-"
    return f"{x.a}{sign}{abs(x.b)}*r"


def conjugate(x: QuadRat) -> QuadRat:
    return QuadRat(x.a, -x.b)


def norm(x: QuadRat) -> Fraction:
    return x.a * x.a - 5 * x.b * x.b


def trace(x: QuadRat) -> Fraction:
    return 2 * x.a


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def sign_at_embedding(x: QuadRat, emb: str = FIXED) -> int:
    """Exact sign of x at the fixed (sqrt 5 > 0) or conjugate real embedding."""
    if emb not in EMBEDDINGS:
        raise InputError(f"unknown embedding {emb!r}")
    a = x.a
    b = x.b if emb == FIXED else -x.b
    sa, sb = _sign(a), _sign(b)
    if sa >= 0 and sb >= 0:
        return 1 if (sa or sb) else 0
    if sa <= 0 and sb <= 0:
        return -1
    # opposite signs: the larger of |a| and |b|*sqrt5 wins
    return sa if a * a > 5 * b * b else sb


def is_totally_positive(x: QuadRat) -> bool:
    return sign_at_embedding(x, FIXED) > 0 and sign_at_embedding(x, CONJUGATE) > 0


def is_integral(x: QuadRat) -> bool:
    """Membership in Z[(1+sqrt5)/2]: 2a, 2b integers of equal parity."""
    ta, tb = 2 * x.a, 2 * x.b
    return ta.denominator == 1 and tb.denominator == 1 and (ta - tb) % 2 == 0


def is_square_in_k(x: QuadRat) -> Optional[QuadRat]:
    """Return some r with r*r == x, or None when x is not a square in k."""
    if not x:
        return ZERO
    if sign_at_embedding(x, FIXED) < 0 or sign_at_embedding(x, CONJUGATE) < 0:
        return None
    s = rational_sqrt(norm(x))
    if s is None:
        return None
    # r = u + v*sqrt5 has u^2 + 5v^2 = a, 2uv = b, u^2 - 5v^2 = +-s
    for half in ((x.a + s) / 2, (x.a - s) / 2):
        u = rational_sqrt(half)
        if u is None:
            continue
        if u != 0:
            r = QuadRat(u, x.b / (2 * u))
        else:
            v = rational_sqrt(x.a / 5)
            if v is None:
                continue
            r = QuadRat(0, v)
        if r * r == x:
            return r
    return None


def same_square_class(x: QuadRat, y: QuadRat) -> bool:
    if not x or not y:
        raise InputError("square classes are defined for nonzero elements only")
    return is_square_in_k(x * y) is not None


@dataclass(frozen=True)
class PrimeIdeal:
    """A nonzero prime of Z[(1+sqrt5)/2].

    For a split prime, ``c`` is the square root of 5 mod p with 0 < c < p/2
    and ``sign`` picks the ideal: +1 is (p, sqrt5 - c), -1 is (p, sqrt5 + c).
    """

    p: int
    kind: str
    c: Optional[int] = None
    sign: int = 0

    def __post_init__(self):
        expected = _splitting_type(self.p)
        if self.kind != expected:
            raise InputError(f"{self.p} is {expected}, not {self.kind}")
        if self.kind == SPLIT:
            c = _sqrt5_residue(self.p)
            if self.c is None:
                object.__setattr__(self, "c", c)
            elif self.c != c:
                raise InputError(f"sqrt5 residue mod {self.p} is {c}, not {self.c}")
            if self.sign not in (1, -1):
                raise InputError("split ideals need sign +1 or -1")
        elif self.c is not None or self.sign != 0:
            raise InputError("only split ideals carry a residue and sign")

    @property
    def residue_size(self) -> int:
        return self.p * self.p if self.kind == INERT else self.p

    @property
    def ramification(self) -> int:
        return 2 if self.kind == RAMIFIED else 1

    @property
    def residue_degree(self) -> int:
        return 2 if self.kind == INERT else 1

    @property
    def sqrt5_root(self) -> Optional[int]:
        """Image of sqrt 5 in the residue field, for split and ramified primes."""
        if self.kind == SPLIT:
            return self.c if self.sign > 0 else self.p - self.c
        if self.kind == RAMIFIED:
            return 0
        return None

    @property
    def is_dyadic(self) -> bool:
        return self.p == 2

    def spec(self) -> str:
        if self.kind == RAMIFIED:
            return "ram"
        if self.kind == INERT:
            return f"inert:{self.p}"
        return f"split:{self.p}:{'+' if self.sign > 0 else '-'}"

    def __str__(self):
        return self.spec()

    def sort_key(self):
        return (self.residue_size, self.p, -self.sign)


def _splitting_type(p: int) -> str:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if p == 5:
        return RAMIFIED
    if p == 2:
        return INERT
    return SPLIT if pow(5, (p - 1) // 2, p) == 1 else INERT


@lru_cache(maxsize=None)
def _sqrt5_residue(p: int) -> int:
    for c in range(1, (p + 1) // 2):
        if (c * c - 5) % p == 0:
            return c
    raise InputError(f"5 is not a square mod {p}")


def parse_ideal(text: str) -> PrimeIdeal:
    """Parse ``ram``, ``inert:p``, ``split:p:+`` or ``split:p:-``."""
    parts = text.strip().split(":")
    try:
        if parts == ["ram"]:
            return PrimeIdeal(5, RAMIFIED)
        if len(parts) == 2 and parts[0] == INERT:
            return PrimeIdeal(int(parts[1]), INERT)
        if len(parts) == 3 and parts[0] == SPLIT and parts[2] in "+-" and parts[2]:
            return PrimeIdeal(int(parts[1]), SPLIT, sign=1 if parts[2] == "+" else -1)
    except ValueError as exc:
        raise InputError(f"bad ideal spec {text!r}: {exc}") from None
    raise InputError(f"bad ideal spec {text!r}")


def factor_rational_prime(p: int) -> list[PrimeIdeal]:
    kind = _splitting_type(p)
    if kind == SPLIT:
        return [PrimeIdeal(p, SPLIT, sign=1), PrimeIdeal(p, SPLIT, sign=-1)]
    return [PrimeIdeal(p, kind)]


def prime_ideals(norm_bound: int, dyadic: bool = False) -> Iterator[PrimeIdeal]:
    """Prime ideals of norm <= norm_bound, in increasing norm."""
    ideals = []
    for p in primes_up_to(norm_bound):
        if p == 2 and not dyadic:
            continue
        for P in factor_rational_prime(p):
            if P.residue_size <= norm_bound:
                ideals.append(P)
    return iter(sorted(ideals, key=PrimeIdeal.sort_key))


def uniformizer(P: PrimeIdeal) -> QuadRat:
    return SQRT5 if P.kind == RAMIFIED else QuadRat(P.p)


@lru_cache(maxsize=None)
def sqrt5_padic(p: int, sign: int, prec: int) -> int:
    """Square root of 5 mod p**prec congruent to the ideal's residue root."""
    r = _sqrt5_residue(p) if sign > 0 else p - _sqrt5_residue(p)
    mod = p
    while mod < p**prec:
        mod = min(mod * mod, p**prec)
        r = (r - (r * r - 5) * pow(2 * r, -1, mod)) % mod
    return r


@dataclass(frozen=True)
class ResidueElem:
    """u + v*s in the residue field mod p, where s*s = 5.

    v is always 0 unless the residue field is F_{p^2} (inert p).
    """

    u: int
    v: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "u", self.u % self.p)
        object.__setattr__(self, "v", self.v % self.p)

    def __mul__(self, other: "ResidueElem") -> "ResidueElem":
        return ResidueElem(
            self.u * other.u + 5 * self.v * other.v,
            self.u * other.v + self.v * other.u,
            self.p,
        )

    def __neg__(self):
        return ResidueElem(-self.u, -self.v, self.p)

    def __pow__(self, e: int) -> "ResidueElem":
        result, base = ResidueElem(1, 0, self.p), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def is_one(self) -> bool:
        return self.u == 1 and self.v == 0


def _split_local(x: QuadRat, P: PrimeIdeal) -> tuple[int, int]:
    """(valuation, residue of x / p^valuation) at a split ideal."""
    p = P.p
    m = 0
    for coord in (x.a, x.b):
        if coord:
            m = max(m, -rational_valuation(coord, p))
    scaled = x * p**m
    prec = rational_valuation(norm(scaled), p) + 1
    mod = p**prec
    r = sqrt5_padic(p, P.sign, prec)
    image = (rational_mod(scaled.a, mod) + rational_mod(scaled.b, mod) * r) % mod
    t = 0
    while image % p == 0:
        image //= p
        t += 1
    return t - m, image % p


def _local_data(x: QuadRat, P: PrimeIdeal) -> tuple[int, Optional[ResidueElem]]:
    if not x:
        raise InputError("valuation of zero")
    p = P.p
    if P.kind == SPLIT:
        v, unit = _split_local(x, P)
        return v, ResidueElem(unit, 0, p)
    if P.kind == RAMIFIED:
        v = min(
            2 * rational_valuation(c, 5) + shift
            for c, shift in ((x.a, 0), (x.b, 1))
            if c
        )
        y = x / QuadRat(5) ** (v // 2)
        if v % 2:
            y = QuadRat(y.b, y.a / 5)
        return v, ResidueElem(rational_mod(y.a, 5), 0, 5)
    if p == 2:
        # 2 is inert but Z[sqrt5] is not 2-maximal: use the basis {1, phi}
        alpha, beta = x.a - x.b, 2 * x.b
        v = min(rational_valuation(c, 2) for c in (alpha, beta) if c)
        return v, None
    v = min(rational_valuation(c, p) for c in (x.a, x.b) if c)
    y = x / Fraction(p) ** v
    return v, ResidueElem(rational_mod(y.a, p), rational_mod(y.b, p), p)


def valuation(x: QuadRat, P: PrimeIdeal) -> int:
    return _local_data(x, P)[0]


def unit_residue(x: QuadRat, P: PrimeIdeal) -> tuple[int, ResidueElem]:
    """Valuation of x and the residue of x / uniformizer(P)**valuation."""
    if P.is_dyadic:
        raise DyadicPlaceError("residue fields above 2 are not supported")
    v, res = _local_data(x, P)
    return v, res


def residue(x: QuadRat, P: PrimeIdeal) -> ResidueElem:
    if P.is_dyadic:
        raise DyadicPlaceError("residue fields above 2 are not supported")
    if not x:
        return ResidueElem(0, 0, P.p)
    v, unit = _local_data(x, P)
    if v < 0:
        raise InputError(f"{x} has negative valuation {v} at {P}")
    if v > 0:
        return ResidueElem(0, 0, P.p)
    return unit
