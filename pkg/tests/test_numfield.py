import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from commcount.errors import InputError
from commcount.numfield import (
    CONJUGATE,
    FIXED,
    INERT,
    PHI,
    RAMIFIED,
    SPLIT,
    SQRT5,
    PrimeIdeal,
    QuadRat,
    conjugate,
    factor_rational_prime,
    format_elem,
    is_integral,
    is_square_in_k,
    norm,
    parse_elem,
    parse_ideal,
    prime_ideals,
    rational_valuation,
    residue,
    same_square_class,
    sign_at_embedding,
    valuation,
)

from conftest import TAME_IDEALS, integral_quadrats, nonzero_quadrats, quadrats


def test_conjugate_examples():
    assert conjugate(QuadRat(1)) == QuadRat(1)
    assert conjugate(PHI) == QuadRat(Fraction(1, 2), Fraction(-1, 2))


@given(quadrats)
def test_conjugate_is_involution(x):
    assert conjugate(conjugate(x)) == x


def test_norm_examples():
    assert norm(QuadRat(1)) == 1
    assert norm(PHI) == -1


@given(quadrats, quadrats)
def test_norm_multiplicative(x, y):
    assert norm(x * y) == norm(x) * norm(y)


@given(quadrats)
def test_norm_is_x_times_conjugate(x):
    assert x * conjugate(x) == QuadRat(norm(x))


@pytest.mark.parametrize(
    "x, emb, sign",
    [
        (QuadRat(0), FIXED, 0),
        (PHI, FIXED, 1),
        (PHI, CONJUGATE, -1),
        (QuadRat(-1, 1), FIXED, 1),
        (QuadRat(-1, 1), CONJUGATE, -1),
        (QuadRat(3, -1), FIXED, 1),
        (QuadRat(2, -1), FIXED, -1),
    ],
)
def test_sign_at_embedding(x, emb, sign):
    assert sign_at_embedding(x, emb) == sign


@given(quadrats)
def test_sign_matches_float_away_from_zero(x):
    for emb, s in ((FIXED, 1), (CONJUGATE, -1)):
        approx = float(x.a) + s * float(x.b) * 5**0.5
        if abs(approx) > 1e-6:
            assert sign_at_embedding(x, emb) == (1 if approx > 0 else -1)


def test_square_examples():
    assert is_square_in_k(QuadRat(4)) in (QuadRat(2), QuadRat(-2))
    r = is_square_in_k(QuadRat(Fraction(7, 2), Fraction(3, 2)))
    assert r is not None and r * r == QuadRat(Fraction(7, 2), Fraction(3, 2))
    assert r in (QuadRat(Fraction(3, 2), Fraction(1, 2)), -QuadRat(Fraction(3, 2), Fraction(1, 2)))
    assert is_square_in_k(SQRT5) is None
    assert is_square_in_k(QuadRat(-1)) is None
    assert is_square_in_k(QuadRat(2)) is None


def test_five_is_a_square_in_k():
    # 5 = (sqrt 5)^2, so 5 and 1 share a square class
    assert is_square_in_k(QuadRat(5)) in (SQRT5, -SQRT5)
    assert same_square_class(QuadRat(5), QuadRat(1))
    assert same_square_class(QuadRat(45), QuadRat(5))
    assert not same_square_class(QuadRat(10), QuadRat(1))


@given(nonzero_quadrats)
def test_square_root_of_square(x):
    r = is_square_in_k(x * x)
    assert r in (x, -x)


def test_same_square_class_examples():
    x = QuadRat(3, 7)
    assert same_square_class(x, x)
    assert not same_square_class(QuadRat(2), QuadRat(3))
    with pytest.raises(InputError):
        same_square_class(QuadRat(0), QuadRat(1))


def test_same_square_class_equivalence_relation():
    rng = random.Random(7)
    elems = []
    # include related elements so the relation is not vacuous
    base = [QuadRat(rng.randint(-9, 9) or 1, rng.randint(-9, 9)) for _ in range(8)]
    for x in base:
        elems.append(x)
        elems.append(x * QuadRat(rng.randint(1, 9), rng.randint(-5, 5)) ** 2)
    elems += [QuadRat(5), QuadRat(1), QuadRat(20), QuadRat(2)]
    assert len(elems) == 20
    rel = {(i, j): same_square_class(x, y) for i, x in enumerate(elems) for j, y in enumerate(elems)}
    n = len(elems)
    assert all(rel[(i, i)] for i in range(n))
    assert all(rel[(i, j)] == rel[(j, i)] for i in range(n) for j in range(n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if rel[(i, j)] and rel[(j, k)]:
                    assert rel[(i, k)]
    assert sum(rel.values()) > n


def test_factor_rational_prime():
    assert factor_rational_prime(5) == [PrimeIdeal(5, RAMIFIED)]
    P, Q = factor_rational_prime(11)
    assert (P.kind, P.c, P.sign) == (SPLIT, 4, 1)
    assert (Q.kind, Q.c, Q.sign) == (SPLIT, 4, -1)
    assert factor_rational_prime(3) == [PrimeIdeal(3, INERT)]
    assert factor_rational_prime(2) == [PrimeIdeal(2, INERT)]
    with pytest.raises(InputError):
        factor_rational_prime(15)


@pytest.mark.parametrize("p", [p for p in range(3, 400) if all(p % d for d in range(2, p)) and p != 5])
def test_split_residues_sum_to_p(p):
    ideals = factor_rational_prime(p)
    if len(ideals) == 2:
        P, Q = ideals
        assert P.sqrt5_root != Q.sqrt5_root
        assert P.sqrt5_root + Q.sqrt5_root == p
        assert 0 < P.c < p / 2 and (P.c**2 - 5) % p == 0
        assert P.residue_size == p
    else:
        (P,) = ideals
        assert P.kind == INERT and P.residue_size == p * p
        assert all((c * c - 5) % p for c in range(p))


def test_prime_ideal_invariants():
    with pytest.raises(InputError):
        PrimeIdeal(7, SPLIT, sign=1)
    with pytest.raises(InputError):
        PrimeIdeal(11, INERT)
    with pytest.raises(InputError):
        PrimeIdeal(11, SPLIT, c=3, sign=1)


def test_prime_ideals_sorted_by_norm():
    ideals = list(prime_ideals(200))
    norms = [P.residue_size for P in ideals]
    assert norms == sorted(norms)
    assert ideals[0].spec() == "ram"
    assert all(not P.is_dyadic for P in ideals)
    assert PrimeIdeal(2, INERT) in list(prime_ideals(200, dyadic=True))


def test_valuation_examples():
    for P in TAME_IDEALS:
        if P.p != 7:
            assert valuation(QuadRat(7), P) == 0
    ram = parse_ideal("ram")
    assert valuation(QuadRat(5), ram) == 2
    assert valuation(SQRT5, ram) == 1
    x = QuadRat(4, 1)
    # sqrt5 -> 4 gives 8, sqrt5 -> 7 gives 11: only the "-" ideal divides 4 + sqrt5
    assert valuation(x, parse_ideal("split:11:+")) == 0
    assert valuation(x, parse_ideal("split:11:-")) == 1
    with pytest.raises(InputError):
        valuation(QuadRat(0), ram)


def test_valuation_at_two():
    two = PrimeIdeal(2, INERT)
    assert valuation(QuadRat(2), two) == 1
    assert valuation(PHI, two) == 0
    assert valuation(QuadRat(1, 1), two) == 1  # 1 + sqrt5 = 2 phi


@given(nonzero_quadrats, nonzero_quadrats, st.sampled_from(TAME_IDEALS))
def test_valuation_additive(x, y, P):
    assert valuation(x * y, P) == valuation(x, P) + valuation(y, P)


@given(integral_quadrats)
def test_norm_valuation_is_weighted_sum(x):
    n = norm(x)
    for p in (3, 5, 7, 11, 19, 29, 31, 41):
        total = sum(P.residue_degree * valuation(x, P) for P in factor_rational_prime(p))
        assert total == rational_valuation(n, p)


def test_residue_examples():
    assert residue(QuadRat(7), parse_ideal("inert:3")).u == 1
    assert residue(SQRT5, parse_ideal("split:11:+")).u == 4
    assert residue(SQRT5, parse_ideal("split:11:-")).u == 7
    assert residue(SQRT5, parse_ideal("ram")).is_zero()
    r = residue(QuadRat(2, 4), parse_ideal("inert:3"))
    assert (r.u, r.v) == (2, 1)
    with pytest.raises(InputError):
        residue(QuadRat(Fraction(1, 3)), parse_ideal("inert:3"))


def test_residue_of_fraction_at_split_ideal():
    # 1 / (4 + sqrt5) = (4 - sqrt5) / 11 is a unit at (11, sqrt5 - 4)
    P = parse_ideal("split:11:+")
    x = QuadRat(1) / QuadRat(4, 1)
    assert valuation(x, P) == 0
    assert residue(x, P).u * 8 % 11 == 1


@given(integral_quadrats, integral_quadrats, st.sampled_from(TAME_IDEALS))
def test_residue_is_ring_map(x, y, P):
    assert residue(x * y, P) == residue(x, P) * residue(y, P)
    s, rx, ry = residue(x + y, P), residue(x, P), residue(y, P)
    assert (s.u, s.v) == ((rx.u + ry.u) % P.p, (rx.v + ry.v) % P.p)


def test_integrality():
    assert is_integral(PHI)
    assert is_integral(SQRT5)
    assert not is_integral(QuadRat(Fraction(1, 2)))
    assert not is_integral(QuadRat(0, Fraction(1, 2)))


@pytest.mark.parametrize("text", ["3", "-1/2+3/2*r", "7*r", "-7*r", "0", "1/3-2*r"])
def test_literal_round_trip(text):
    assert format_elem(parse_elem(text)) == text


def test_literal_reduces_fractions():
    assert parse_elem("2/4+6/8*r") == QuadRat(Fraction(1, 2), Fraction(3, 4))
    assert format_elem(parse_elem("4/2")) == "2"


@pytest.mark.parametrize("bad", ["", "r", "1+", "1/0", "2*s", "1.5", "3+-2*r"])
def test_literal_rejects(bad):
    with pytest.raises(InputError):
        parse_elem(bad)


@given(quadrats)
def test_format_parse_identity(x):
    assert parse_elem(format_elem(x)) == x


@pytest.mark.parametrize("spec", ["ram", "inert:3", "inert:2", "split:11:+", "split:11:-", "split:29:-"])
def test_ideal_spec_round_trip(spec):
    assert parse_ideal(spec).spec() == spec


@pytest.mark.parametrize("bad", ["inert:11", "split:7:+", "split:11", "split:11:x", "ram:5", "inert:9"])
def test_ideal_spec_rejects(bad):
    with pytest.raises(InputError):
        parse_ideal(bad)
