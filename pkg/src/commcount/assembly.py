"""Symbolic assembly of building blocks along a decorated graph.

Each vertex carries a four-slot block (V1 if colored, V0 otherwise). Each
edge v --g--> w carries a two-slot pair G-, G+ glued in a chain

    (V_v, out_g) -- (G-, 0)   (G-, 1) -- (G+, 0)   (G+, 1) -- (V_w, in_g)

Vertex v owns block id v; the four edge blocks leaving v are n + 4v + 0..3
in the order A-, A+, B-, B+. No geometry is modelled, only slot incidence.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .decgraph import (
    ENUMERATION_CAP,
    DecoratedGraph,
    count_subgroups,
    enumerate_subgroups,
    floor_half_power,
    graph_id,
)
from .errors import InputError

Slot = tuple[int, int]


class BlockType(enum.Enum):
    V0 = "V0"
    V1 = "V1"
    Aplus = "A+"
    Aminus = "A-"
    Bplus = "B+"
    Bminus = "B-"

    @property
    def slots(self) -> int:
        return 4 if self in (BlockType.V0, BlockType.V1) else 2

    def __str__(self):
        return self.value


# generator index -> (minus block, plus block)
EDGE_BLOCKS = ((BlockType.Aminus, BlockType.Aplus), (BlockType.Bminus, BlockType.Bplus))


@dataclass(frozen=True)
class Assembly:
    blocks: tuple[BlockType, ...]
    gluings: tuple[tuple[Slot, Slot], ...]
    source_graph: DecoratedGraph

    def census(self) -> Counter:
        return Counter(self.blocks)


def expected_census(G: DecoratedGraph) -> Counter:
    census = Counter({BlockType.V1: len(G.colored), BlockType.V0: G.n - len(G.colored)})
    for t in (BlockType.Aplus, BlockType.Aminus, BlockType.Bplus, BlockType.Bminus):
        census[t] = G.n
    return +census


def assemble(G: DecoratedGraph) -> Assembly:
    n = G.n
    if n < 1:
        raise InputError("cannot assemble an empty graph")
    blocks = [BlockType.V1 if v in G.colored else BlockType.V0 for v in range(n)]
    gluings = []
    for v in range(n):
        for g, perm in enumerate((G.a, G.b)):
            minus, plus = EDGE_BLOCKS[g]
            m_id = len(blocks)
            blocks += [minus, plus]
            gluings.append(((v, 2 * g), (m_id, 0)))
            gluings.append(((m_id, 1), (m_id + 1, 0)))
            gluings.append(((m_id + 1, 1), (perm[v], 2 * g + 1)))
    return Assembly(tuple(blocks), tuple(gluings), G)


def validation_errors(A: Assembly) -> list[str]:
    """Every violated invariant, starting with slot bookkeeping."""
    errors = []
    used: dict[Slot, Slot] = {}
    for s, t in A.gluings:
        for x in (s, t):
            bid, k = x
            if not 0 <= bid < len(A.blocks) or not 0 <= k < A.blocks[bid].slots:
                errors.append(f"slot {bid}:{k} does not exist")
            elif x in used:
                errors.append(f"slot {bid}:{k} glued twice")
        if s == t:
            errors.append(f"slot {s[0]}:{s[1]} glued to itself")
        used[s], used[t] = t, s
    for bid, bt in enumerate(A.blocks):
        for k in range(bt.slots):
            if (bid, k) not in used:
                errors.append(f"slot {bid}:{k} unmatched")
    if errors:
        return errors

    G = A.source_graph
    if A.census() != expected_census(G):
        errors.append(f"census {_census_text(A.census())} != expected {_census_text(expected_census(G))}")
    for v in range(G.n):
        want = BlockType.V1 if v in G.colored else BlockType.V0
        if A.blocks[v] != want:
            errors.append(f"block {v} is {A.blocks[v]}, vertex {v + 1} needs {want}")
    if errors:
        return errors

    # rebuild each generator's permutation by walking V -> G- -> G+ -> V
    for g, perm in enumerate((G.a, G.b)):
        minus, plus = EDGE_BLOCKS[g]
        for v in range(G.n):
            m_id, mk = used[(v, 2 * g)]
            if A.blocks[m_id] != minus or mk != 0:
                errors.append(f"slot {v}:{2 * g} meets {A.blocks[m_id]} slot {mk}")
                continue
            p_id, pk = used[(m_id, 1)]
            if A.blocks[p_id] != plus or pk != 0:
                errors.append(f"slot {m_id}:1 meets {A.blocks[p_id]} slot {pk}")
                continue
            w, wk = used[(p_id, 1)]
            if w >= G.n or wk != 2 * g + 1:
                errors.append(f"slot {p_id}:1 meets block {w} slot {wk}")
            elif w != perm[v]:
                errors.append(f"edge from vertex {v + 1} lands at {w + 1}, graph says {perm[v] + 1}")
    return errors


def validate(A: Assembly) -> bool:
    return not validation_errors(A)


def _census_text(census: Counter) -> str:
    return " ".join(f"{t}={census.get(t, 0)}" for t in BlockType)


def format_assembly(A: Assembly) -> str:
    lines = [f"blocks {len(A.blocks)}", f"census {_census_text(A.census())}"]
    lines += [f"block {i} {bt}" for i, bt in enumerate(A.blocks)]
    lines += [f"glue {s[0]}:{s[1]} {t[0]}:{t[1]}" for s, t in A.gluings]
    return "".join(line + "\n" for line in lines)


def volume_bound(A: Assembly, block_volume) -> Fraction:
    """5 n V0: n vertex blocks plus four edge blocks per vertex."""
    block_volume = Fraction(block_volume)
    if block_volume <= 0:
        raise InputError("block volume must be positive")
    return 5 * A.source_graph.n * block_volume


def doubled_volume_bound(A: Assembly, block_volume) -> Fraction:
    """Volume bound after the final double cover."""
    return 2 * volume_bound(A, block_volume)


@dataclass(frozen=True)
class CountCertificate:
    volume_budget: Fraction
    block_volume: Fraction
    n: int
    lower_bound: int
    exact_class_count: int
    graph_manifest: Optional[tuple[str, ...]]

    def to_text(self) -> str:
        head = (
            f"v={self.volume_budget} V0={self.block_volume} n={self.n} "
            f"bound={self.lower_bound} exact={self.exact_class_count}\n"
        )
        return head + "".join(f"{name}.graph\n" for name in self.graph_manifest or ())


def vc_lower_bound(volume, block_volume, cap: int = ENUMERATION_CAP) -> CountCertificate:
    """Non-commensurable manifolds guaranteed within the volume budget.

    With n = floor(v / (10 V0)) every index-n subgroup yields one manifold;
    the manifest lists their canonical graphs when n <= cap, else it is None.
    """
    v, v0 = Fraction(volume), Fraction(block_volume)
    if v <= 0 or v0 <= 0:
        raise InputError("volumes must be positive")
    n = v // (10 * v0)
    if n == 0:
        return CountCertificate(v, v0, 0, 0, 0, ())
    manifest = None
    if n <= cap:
        manifest = tuple(graph_id(G) for G in enumerate_subgroups(n, cap))
    return CountCertificate(v, v0, n, floor_half_power(n), count_subgroups(n), manifest)
