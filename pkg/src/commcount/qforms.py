"""Diagonal quadratic forms over Q(sqrt 5) and their local invariants.

Local equivalence at a non-dyadic prime is decided by the classical triple
(rank, discriminant square class, Hasse-Witt invariant). Local similarity
additionally ranges the scaling factor over the four local square classes.
The six-form construction searches prime ideals directly for a place where
two extended forms fail to be similar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import isqrt
from pathlib import Path
from typing import Iterable, Optional, Union

from .errors import InputError, SearchExhausted
from .localsym import SquareClass, hilbert_at, residue_char, square_class_local
from .numfield import (
    CONJUGATE,
    FIXED,
    ONE,
    PHI,
    PrimeIdeal,
    QuadRat,
    format_elem,
    is_totally_positive,
    parse_elem,
    prime_ideals,
    residue,
    same_square_class,
    sign_at_embedding,
    uniformizer,
)


@dataclass(frozen=True)
class DiagForm:
    """The form c_1 x_1^2 + ... + c_r x_r^2."""

    coeffs: tuple[QuadRat, ...]

    def __init__(self, coeffs: Iterable):
        cs = tuple(QuadRat.coerce(c) for c in coeffs)
        if not cs:
            raise InputError("a form needs rank >= 1")
        if any(c is NotImplemented for c in cs):
            raise InputError("coefficients must be elements of Q(sqrt 5)")
        if any(not c for c in cs):
            raise InputError("degenerate form: zero coefficient")
        object.__setattr__(self, "coeffs", cs)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def scale(self, lam: QuadRat) -> "DiagForm":
        return DiagForm(lam * c for c in self.coeffs)

    def __str__(self):
        return "<" + ", ".join(format_elem(c) for c in self.coeffs) + ">"


DEFAULT_FORM = DiagForm([1, 1, 1, 1, -PHI])


def parse_form(text: str) -> DiagForm:
    coeffs = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            coeffs.append(parse_elem(line))
    return DiagForm(coeffs)


def format_form(f: DiagForm) -> str:
    return "".join(format_elem(c) + "\n" for c in f.coeffs)


def load_form(source: Union[str, Path]) -> DiagForm:
    """Read a form file; the name ``default`` gives <1, 1, 1, 1, -phi>."""
    if str(source) == "default":
        return DEFAULT_FORM
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read form file {source}: {exc}") from None
    return parse_form(text)


def signature_at(f: DiagForm, emb: str = FIXED) -> tuple[int, int]:
    signs = [sign_at_embedding(c, emb) for c in f.coeffs]
    return signs.count(1), signs.count(-1)


def is_admissible(f: DiagForm) -> bool:
    n = f.rank - 1
    if n < 1:
        return False
    return signature_at(f, FIXED) == (n, 1) and signature_at(f, CONJUGATE) == (n + 1, 0)


def extend_form(f: DiagForm, d: QuadRat) -> DiagForm:
    """The form d*y^2 + f."""
    d = QuadRat.coerce(d)
    if not d:
        raise InputError("extension coefficient must be nonzero")
    return DiagForm((d, *f.coeffs))


def disc(f: DiagForm) -> QuadRat:
    prod = ONE
    for c in f.coeffs:
        prod = prod * c
    return prod


def hasse_witt(f: DiagForm, P: PrimeIdeal) -> int:
    eps = 1
    for x, y in combinations(f.coeffs, 2):
        eps *= hilbert_at(x, y, P)
    return eps


def local_invariants(f: DiagForm, P: PrimeIdeal) -> tuple[int, SquareClass, int]:
    """(rank, discriminant square class, Hasse-Witt invariant) at P."""
    return f.rank, square_class_local(disc(f), P), hasse_witt(f, P)


def local_equivalent(f: DiagForm, g: DiagForm, P: PrimeIdeal) -> bool:
    if f.rank != g.rank:
        return False
    if not square_class_local(disc(f) * disc(g), P).is_square():
        return False
    return hasse_witt(f, P) == hasse_witt(g, P)


def _small_elements() -> Iterable[QuadRat]:
    """Small integral elements in a fixed order, for residue searches."""
    yield from (QuadRat(a) for a in range(1, 50))
    for h in range(1, 50):
        for a in range(-h, h + 1):
            yield QuadRat(a, h)


def local_units(P: PrimeIdeal, want: int, count: int) -> list[QuadRat]:
    """The first ``count`` units at P whose residue character is ``want``."""
    found = []
    for x in _small_elements():
        r = residue(x, P) if x else None
        if r is None or r.is_zero():
            continue
        # units only: nonzero residue of an integral element
        if residue_char(r, P) == want:
            found.append(x)
            if len(found) == count:
                return found
    raise AssertionError(f"no unit with character {want} found at {P}")


def nonsquare_unit(P: PrimeIdeal) -> QuadRat:
    return local_units(P, -1, 1)[0]


def square_class_representatives(P: PrimeIdeal) -> list[QuadRat]:
    """One element of each local square class: 1, u, pi, u*pi."""
    u, pi = nonsquare_unit(P), uniformizer(P)
    return [ONE, u, pi, u * pi]


def local_similar(f: DiagForm, g: DiagForm, P: PrimeIdeal) -> bool:
    if f.rank != g.rank:
        raise InputError(f"rank mismatch: {f.rank} vs {g.rank}")
    return any(local_equivalent(f, g.scale(lam), P) for lam in square_class_representatives(P))


def similar_by_representatives(f: DiagForm, g: DiagForm, P: PrimeIdeal) -> bool:
    """Second route to local similarity: eight scalings, two per square class.

    Invariants are recomputed from the Hilbert symbols directly rather than
    through local_equivalent.
    """
    if f.rank != g.rank:
        raise InputError(f"rank mismatch: {f.rank} vs {g.rank}")
    squares = local_units(P, 1, 2)
    nonsquares = local_units(P, -1, 2)
    pi = uniformizer(P)
    lams = [*squares, *nonsquares, *(s * pi for s in squares), *(u * pi for u in nonsquares)]

    def triple(h: DiagForm):
        prod = ONE
        for c in h.coeffs:
            prod = prod * c
        eps = 1
        for i in range(h.rank):
            for j in range(i + 1, h.rank):
                eps *= hilbert_at(h.coeffs[i], h.coeffs[j], P)
        return h.rank, square_class_local(prod, P), eps

    target = triple(f)
    return any(triple(g.scale(lam)) == target for lam in lams)


@dataclass(frozen=True)
class PairWitness:
    ideal: PrimeIdeal
    hasse_i: int
    hasse_j: int
    disc_i: SquareClass
    disc_j: SquareClass
    verdict: str = "DISTINGUISHED"


def find_witness_prime(
    f: DiagForm, di: QuadRat, dj: QuadRat, norm_bound: int
) -> Optional[PairWitness]:
    """First non-dyadic prime (by norm) where d_i y^2 + f and d_j y^2 + f are not similar."""
    if same_square_class(di, dj):
        raise InputError(f"{di} and {dj} lie in the same square class")
    qi, qj = extend_form(f, di), extend_form(f, dj)
    for P in prime_ideals(norm_bound):
        if not local_similar(qi, qj, P):
            return PairWitness(
                P,
                hasse_witt(qi, P),
                hasse_witt(qj, P),
                square_class_local(disc(qi), P),
                square_class_local(disc(qj), P),
            )
    return None


@dataclass
class WitnessReport:
    d_values: list[QuadRat] = field(default_factory=list)
    pair_witnesses: dict[tuple[int, int], PairWitness] = field(default_factory=dict)
    complete: bool = False

    def to_text(self) -> str:
        lines = [f"d {i + 1} {format_elem(d)}" for i, d in enumerate(self.d_values)]
        for (i, j), w in sorted(self.pair_witnesses.items()):
            lines.append(
                f"{i + 1} {j + 1} {w.ideal.spec()} {w.hasse_i:+d} {w.hasse_j:+d} {w.verdict}"
            )
        return "".join(line + "\n" for line in lines)


def squarefree(n: int) -> bool:
    return all(n % (q * q) for q in range(2, isqrt(n) + 1))


def select_d_values(
    f: DiagForm, count: int = 6, pool_bound: int = 50, norm_bound: int = 2000
) -> WitnessReport:
    """Greedy choice of ``count`` square-free integers d with pairwise witnesses.

    Raises SearchExhausted (with the partial report attached) when the pool
    runs out first.
    """
    if not is_admissible(f):
        raise InputError(f"{f} is not admissible")
    report = WitnessReport()
    for n in range(1, pool_bound + 1):
        if len(report.d_values) == count:
            break
        if not squarefree(n):
            continue
        d = QuadRat(n)
        if not is_totally_positive(d):
            continue
        if any(same_square_class(d, e) for e in report.d_values):
            continue
        found = {}
        for i, e in enumerate(report.d_values):
            w = find_witness_prime(f, e, d, norm_bound)
            if w is None:
                break
            found[(i, len(report.d_values))] = w
        else:
            report.pair_witnesses.update(found)
            report.d_values.append(d)
    if len(report.d_values) < count:
        raise SearchExhausted(
            f"only {len(report.d_values)} of {count} values found "
            f"(pool {pool_bound}, norms {norm_bound})",
            partial=report,
        )
    report.complete = True
    return report


def verify_report(f: DiagForm, report: WitnessReport) -> list[str]:
    """Recheck every witness through similar_by_representatives; returns problems."""
    problems = []
    k = len(report.d_values)
    for i, j in combinations(range(k), 2):
        w = report.pair_witnesses.get((i, j))
        if w is None:
            problems.append(f"pair {i + 1} {j + 1}: no witness")
            continue
        if w.ideal.is_dyadic:
            problems.append(f"pair {i + 1} {j + 1}: dyadic witness {w.ideal}")
            continue
        qi = extend_form(f, report.d_values[i])
        qj = extend_form(f, report.d_values[j])
        if similar_by_representatives(qi, qj, w.ideal):
            problems.append(f"pair {i + 1} {j + 1}: similar at {w.ideal}")
    return problems


def sw_moduli_dim(c1_sq: int, euler: int, sigma: int) -> int:
    """(c1^2 - 2*euler - 3*sigma) / 4, refusing non-integral results."""
    num = c1_sq - 2 * euler - 3 * sigma
    if num % 4:
        raise InputError(f"c1^2 - 2e - 3sigma = {num} is not divisible by 4")
    return num // 4

