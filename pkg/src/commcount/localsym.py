"""Quadratic characters and Hilbert symbols.

Symbols over Q(sqrt 5) use the tame formula at non-dyadic primes. The
Q-level symbol covers every place of Q, including 2 and infinity, so the
product formula can serve as an end-to-end self check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DyadicPlaceError, InputError
from .numfield import (
    PrimeIdeal,
    QuadRat,
    Rational,
    ResidueElem,
    is_prime,
    rational_mod,
    rational_valuation,
    unit_residue,
)

INFINITY = "inf"
RationalPlace = Union[int, str]


@dataclass(frozen=True)
class SquareClass:
    val_parity: int
    unit_char: int

    def is_square(self) -> bool:
        return self.val_parity == 0 and self.unit_char == 1

    def __str__(self):
        return f"{self.val_parity} {self.unit_char:+d}"


def legendre(u: int, p: int) -> int:
    if p == 2 or not is_prime(p):
        raise InputError(f"legendre needs an odd prime, got {p}")
    t = pow(u % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def _require_tame(P: PrimeIdeal) -> None:
    if P.is_dyadic:
        raise DyadicPlaceError(f"{P} is dyadic; the tame symbol does not apply")


def residue_char(e: ResidueElem, P: PrimeIdeal) -> int:
    """Quadratic character of a residue-field element: e^((q-1)/2)."""
    _require_tame(P)
    if e.is_zero():
        return 0
    t = e ** ((P.residue_size - 1) // 2)
    if t.is_one():
        return 1
    if (-t).is_one():
        return -1
    raise AssertionError(f"{e} ** ((q-1)/2) = {t} is not +-1")


def _unit_rational(q: Fraction, p: int) -> tuple[int, Fraction]:
    v = rational_valuation(q, p)
    return v, q / Fraction(p) ** v


def hilbert_Q(a: Rational, b: Rational, place: RationalPlace) -> int:
    """Hilbert symbol (a, b)_v over Q at a prime p or at ``"inf"``."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise InputError("Hilbert symbol needs nonzero arguments")
    if place == INFINITY:
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    if not is_prime(p):
        raise InputError(f"{p} is not a prime place")
    alpha, a0 = _unit_rational(a, p)
    beta, b0 = _unit_rational(b, p)
    if p == 2:
        ua, ub = rational_mod(a0, 8), rational_mod(b0, 8)
        eps_a, eps_b = (ua - 1) // 2 % 2, (ub - 1) // 2 % 2
        om_a, om_b = (ua * ua - 1) // 8 % 2, (ub * ub - 1) // 8 % 2
        e = eps_a * eps_b + alpha * om_b + beta * om_a
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    la = legendre(rational_mod(a0, p), p) if beta % 2 else 1
    lb = legendre(rational_mod(b0, p), p) if alpha % 2 else 1
    return sign * la * lb


def places_of_Q(a: Rational, b: Rational) -> list[RationalPlace]:
    """Places where (a, b)_v can be nontrivial: inf, 2, and primes dividing a or b."""
    primes = {2}
    for q in (Fraction(a), Fraction(b)):
        for n in (abs(q.numerator), q.denominator):
            while n % 2 == 0:
                n //= 2
            d = 3
            while d * d <= n:
                while n % d == 0:
                    primes.add(d)
                    n //= d
                d += 2
            if n > 2:
                primes.add(n)
    return [INFINITY, *sorted(primes)]


def hilbert_at(x: QuadRat, y: QuadRat, P: PrimeIdeal) -> int:
    """Tame Hilbert symbol (x, y) at a non-dyadic prime of Q(sqrt 5)."""
    _require_tame(P)
    if not x or not y:
        raise InputError("Hilbert symbol needs nonzero arguments")
    alpha, x0 = unit_residue(x, P)
    beta, y0 = unit_residue(y, P)
    value = 1
    if alpha % 2 and beta % 2:
        value *= residue_char(ResidueElem(-1, 0, P.p), P)
    if beta % 2:
        value *= residue_char(x0, P)
    if alpha % 2:
        value *= residue_char(y0, P)
    return value


def square_class_local(x: QuadRat, P: PrimeIdeal) -> SquareClass:
    _require_tame(P)
    if not x:
        raise InputError("square class of zero")
    v, unit = unit_residue(x, P)
    return SquareClass(v % 2, residue_char(unit, P))


def is_local_square(x: QuadRat, P: PrimeIdeal) -> bool:
    return square_class_local(x, P).is_square()
