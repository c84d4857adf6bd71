"""Decorated graphs and finite-index subgroups of the free group F(a, b).

A graph on vertices 0..n-1 is a pair of permutations: vertex i has an
a-edge to ``a[i]`` and a b-edge to ``b[i]``. With a single colored vertex
and a transitive action it is the Schreier graph of a subgroup of index n,
the colored vertex playing the role of the trivial coset.

Vertices are 0-based in memory and 1-based in files and on the command line.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, isqrt
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .errors import InputError, ResourceError, SearchExhausted

ENUMERATION_CAP = 7


@dataclass(frozen=True)
class DecoratedGraph:
    n: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    colored: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "colored", frozenset(self.colored))
        for name, perm in (("a", self.a), ("b", self.b)):
            if sorted(perm) != list(range(self.n)):
                raise InputError(f"{name} is not a permutation of {self.n} vertices")
        if not self.colored <= set(range(self.n)):
            raise InputError("colored vertex out of range")

    def neighbors(self, v: int) -> tuple[int, int, int, int]:
        """Targets along a, a^-1, b, b^-1, in canonical traversal priority."""
        return self.a[v], self.a_inv[v], self.b[v], self.b_inv[v]

    @property
    def a_inv(self) -> tuple[int, ...]:
        return _inverse(self.a)

    @property
    def b_inv(self) -> tuple[int, ...]:
        return _inverse(self.b)

    def is_schreier(self) -> bool:
        return len(self.colored) == 1 and is_connected(self)


@lru_cache(maxsize=65536)
def _inverse(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv)


def bouquet(colored: bool = True) -> DecoratedGraph:
    return DecoratedGraph(1, (0,), (0,), {0} if colored else set())


def is_connected(G: DecoratedGraph) -> bool:
    if G.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        for w in G.neighbors(stack.pop()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == G.n


def relabel(G: DecoratedGraph, perm: Sequence[int]) -> DecoratedGraph:
    """Rename vertex i to perm[i]."""
    a, b = [0] * G.n, [0] * G.n
    for i in range(G.n):
        a[perm[i]] = perm[G.a[i]]
        b[perm[i]] = perm[G.b[i]]
    return DecoratedGraph(G.n, a, b, {perm[v] for v in G.colored})


def _bfs_order(G: DecoratedGraph, start: int) -> list[int]:
    order, index = [start], {start: 0}
    for v in order:
        for w in G.neighbors(v):
            if w not in index:
                index[w] = len(order)
                order.append(w)
    return order


def canonical_form(G: DecoratedGraph) -> DecoratedGraph:
    """Relabel by breadth-first traversal from the colored vertex.

    Neighbors are visited in the order a, a^-1, b, b^-1; since every vertex
    has exactly one edge of each kind the traversal, and so the labeling,
    is determined by the basepoint alone.
    """
    if len(G.colored) != 1:
        raise InputError(f"canonical form needs exactly one colored vertex, got {len(G.colored)}")
    (root,) = G.colored
    order = _bfs_order(G, root)
    if len(order) != G.n:
        raise InputError("canonical form needs a connected graph")
    perm = [0] * G.n
    for new, old in enumerate(order):
        perm[old] = new
    return relabel(G, perm)


def is_isomorphic(G1: DecoratedGraph, G2: DecoratedGraph) -> bool:
    return canonical_form(G1) == canonical_form(G2)


def graph_key(G: DecoratedGraph) -> tuple:
    return (G.n, G.a, G.b, tuple(sorted(G.colored)))


def graph_id(G: DecoratedGraph) -> str:
    """Filesystem-safe identifier determined by the labeled graph."""
    a = ".".join(str(i + 1) for i in G.a)
    b = ".".join(str(i + 1) for i in G.b)
    return f"n{G.n}-a{a}-b{b}"


def enumerate_subgroups(n: int, cap: int = ENUMERATION_CAP) -> list[DecoratedGraph]:
    """Canonical Schreier graphs of all index-n subgroups, in lexicographic order.

    Coset tables are filled slot by slot in the same order the canonical
    traversal reads them, so each canonical graph is produced exactly once
    and no deduplication pass is needed.
    """
    if n < 1:
        raise InputError("index must be positive")
    if n > cap:
        raise ResourceError(f"n = {n} exceeds the enumeration cap {cap}")
    out = [DecoratedGraph(n, a, b, {0}) for a, b in _coset_tables(n)]
    out.sort(key=lambda G: (G.a, G.b))
    return out


def _coset_tables(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    # fwd[g][v] = g(v), bwd[g][v] = g^-1(v) for g = a (0), b (1); -1 = unset
    fwd = [[-1] * n, [-1] * n]
    bwd = [[-1] * n, [-1] * n]
    count = 1

    def fill(slot: int):
        nonlocal count
        v, k = divmod(slot, 4)
        if v == count:
            if count == n:
                yield tuple(fwd[0]), tuple(fwd[1])
            return
        g = k // 2
        # forward slot (v -> ?) or backward slot (? -> v)
        out_t, in_t = (fwd[g], bwd[g]) if k % 2 == 0 else (bwd[g], fwd[g])
        if out_t[v] >= 0:
            yield from fill(slot + 1)
            return
        for w in range(count):
            if in_t[w] < 0:
                out_t[v], in_t[w] = w, v
                yield from fill(slot + 1)
                out_t[v] = in_t[w] = -1
        if count < n:
            w = count
            count += 1
            out_t[v], in_t[w] = w, v
            yield from fill(slot + 1)
            out_t[v] = in_t[w] = -1
            count -= 1

    yield from fill(0)


@lru_cache(maxsize=None)
def count_subgroups(n: int) -> int:
    """Number of index-n subgroups of F_2, by Hall's recurrence."""
    if n < 1:
        raise InputError("index must be positive")
    return n * factorial(n) - sum(factorial(n - k) * count_subgroups(k) for k in range(1, n))


def verify_growth_bound(n: int) -> bool:
    """a_n >= n^(n/2), compared exactly as a_n^2 >= n^n."""
    return count_subgroups(n) ** 2 >= n**n


def floor_half_power(n: int) -> int:
    """Largest integer m with m^2 <= n^n (0 for n = 0)."""
    return isqrt(n**n) if n > 0 else 0


def is_decorated_cover(cover: DecoratedGraph, base: DecoratedGraph, m: Sequence[int]) -> bool:
    """True iff m commutes with a and b, has equal fibers, and pulls back the coloring."""
    if len(m) != cover.n or any(not 0 <= x < base.n for x in m):
        return False
    for v in range(cover.n):
        if m[cover.a[v]] != base.a[m[v]] or m[cover.b[v]] != base.b[m[v]]:
            return False
        if (v in cover.colored) != (m[v] in base.colored):
            return False
    fibers = [0] * base.n
    for x in m:
        fibers[x] += 1
    return len(set(fibers)) == 1 and fibers[0] > 0


def compose(outer: Sequence[int], inner: Sequence[int]) -> list[int]:
    """The map v -> outer[inner[v]]."""
    return [outer[x] for x in inner]


@dataclass(frozen=True)
class CommonCover:
    cover: DecoratedGraph
    map1: tuple[int, ...]
    map2: tuple[int, ...]


def product_components(G1: DecoratedGraph, G2: DecoratedGraph) -> list[list[tuple[int, int]]]:
    """Connected components of the label-synchronized product, each in BFS order.

    Components containing a pair of colored vertices come first.
    """
    starts = sorted(
        ((u, v) for u in range(G1.n) for v in range(G2.n)),
        key=lambda uv: (not (uv[0] in G1.colored and uv[1] in G2.colored), uv),
    )
    seen: set[tuple[int, int]] = set()
    comps = []
    for s in starts:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        for u, v in comp:
            for w in zip(G1.neighbors(u), G2.neighbors(v)):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
        comps.append(comp)
    return comps


def _component_graph(comp, G1, G2) -> CommonCover:
    index = {uv: i for i, uv in enumerate(comp)}
    a = [index[(G1.a[u], G2.a[v])] for u, v in comp]
    b = [index[(G1.b[u], G2.b[v])] for u, v in comp]
    colored = {i for i, (u, _) in enumerate(comp) if u in G1.colored}
    cover = DecoratedGraph(len(comp), a, b, colored)
    return CommonCover(cover, tuple(u for u, _ in comp), tuple(v for _, v in comp))


def find_common_cover(
    G1: DecoratedGraph, G2: DecoratedGraph, size_bound: int
) -> Optional[CommonCover]:
    """A connected common decorated cover with at most size_bound vertices, or None.

    Any connected common cover maps onto a component of the synchronized
    product whose vertex pairs agree on color, so scanning the components
    is exhaustive. Raises SearchExhausted if the only candidates exceed the
    bound.
    """
    too_big = False
    for comp in product_components(G1, G2):
        if any((u in G1.colored) != (v in G2.colored) for u, v in comp):
            continue
        if len(comp) > size_bound:
            too_big = True
            continue
        return _component_graph(comp, G1, G2)
    if too_big:
        raise SearchExhausted(f"common covers exist only above size {size_bound}")
    return None


def format_graph(G: DecoratedGraph) -> str:
    return (
        f"n={G.n}\n"
        f"a={' '.join(str(i + 1) for i in G.a)}\n"
        f"b={' '.join(str(i + 1) for i in G.b)}\n"
        f"colored={' '.join(str(v + 1) for v in sorted(G.colored))}\n"
    )


def parse_graph(text: str) -> DecoratedGraph:
    lines = text.splitlines()
    if len(lines) != 4:
        raise InputError(f"graph files have 4 lines, got {len(lines)}")
    fields = {}
    for line, key in zip(lines, ("n", "a", "b", "colored")):
        prefix = key + "="
        if not line.startswith(prefix):
            raise InputError(f"expected {prefix!r}, got {line!r}")
        fields[key] = line[len(prefix):].split()
    try:
        (n,) = (int(x) for x in fields["n"])
        a = [int(x) - 1 for x in fields["a"]]
        b = [int(x) - 1 for x in fields["b"]]
        colored = [int(x) - 1 for x in fields["colored"]]
    except ValueError as exc:
        raise InputError(f"bad graph file: {exc}") from None
    if len(a) != n or len(b) != n:
        raise InputError("permutation length does not match n")
    return DecoratedGraph(n, a, b, colored)


def load_graph(path) -> DecoratedGraph:
    try:
        return parse_graph(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc}") from None
