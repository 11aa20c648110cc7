"""Reference computations for verification.

Everything here is slow and straightforward:

* standard persistence of the lower-star filtration by column reduction
  over Z2;
* the 0-dimensional level-set zigzag of a level graph from rank counts of
  sub- and superlevel subgraphs;
* ranks of chains and homology classes by Gaussian elimination over Z2.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import networkx as nx
import numpy as np

from .barcodes import Bar, LevelBar
from .categories import NodeKind
from .complex import EmbeddedComplex, SweepOrder
from .generators import boundary

logger = logging.getLogger(__name__)

Cell = tuple[int, int, int]


def faces(k: EmbeddedComplex, dim: int, idx: int) -> list[int]:
    """Indices of the codimension-1 faces of a simplex."""
    match dim:
        case 1:
            return list(k.edges[idx])
        case 2:
            return list(k.triangle_edges(idx))
        case 3:
            return [k.triangle_id(*t) for t in combinations(k.tetrahedra[idx], 3)]
    return []


def lower_star(k: EmbeddedComplex, order: SweepOrder) -> list[Cell]:
    """Simplices as `(rank, dim, index)`, sorted by the rank of their
    highest vertex, faces before cofaces."""
    groups = (
        [(v,) for v in range(len(k.vertices))],
        k.edges,
        k.triangles,
        k.tetrahedra,
    )
    cells = []
    for dim, simplices in enumerate(groups):
        for idx, s in enumerate(simplices):
            cells.append((order.rank(order.highest(s)), dim, idx))
    return sorted(cells)


def reduce_persistence(k: EmbeddedComplex, order: SweepOrder) -> dict[int, list[Bar]]:
    """Sublevel barcodes in dimensions 0, 1 and 2.

    Pairs within one vertex star have zero length and are dropped.
    """
    cells = lower_star(k, order)
    index = {(dim, idx): j for j, (_, dim, idx) in enumerate(cells)}
    columns: dict[int, set[int]] = {}
    low: dict[int, int] = {}
    for j, (_, dim, idx) in enumerate(cells):
        col = {index[(dim - 1, f)] for f in faces(k, dim, idx)}
        while col:
            pivot = max(col)
            if pivot not in low:
                break
            col ^= columns[low[pivot]]
        if col:
            columns[j] = col
            low[max(col)] = j
    m = order.m
    bars: dict[int, list[Bar]] = {0: [], 1: [], 2: []}
    for i, (rank, dim, _) in enumerate(cells):
        if i in columns or dim > 2:
            continue
        if i in low:
            death = cells[low[i]][0]
            if death == rank:
                continue
            bar = Bar(
                dim, order.value(rank), order.value(death), True, False, rank, death
            )
        else:
            bar = Bar(dim, order.value(rank), float("inf"), True, False, rank, m + 1)
        bars[dim].append(bar)
    for dim in bars:
        bars[dim].sort(key=lambda b: b.key)
    logger.debug(
        "Reduced %d cells: %s", len(cells), {d: len(b) for d, b in bars.items()}
    )
    return bars


def _cycle_rank(g: nx.MultiGraph) -> int:
    return g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)


def _sublevel_ranks(g: nx.MultiGraph, nodes: Sequence[Hashable]) -> list[list[int]]:
    """`r[s][t]`: components of the subgraph on the first `t` nodes that
    contain one of the first `s` nodes."""
    n = len(nodes)
    pos = {x: i for i, x in enumerate(nodes, start=1)}
    r = [[0] * (n + 1) for _ in range(n + 1)]
    for t in range(1, n + 1):
        sub = g.subgraph(nodes[:t])
        lows = sorted(min(pos[x] for x in c) for c in nx.connected_components(sub))
        for s in range(1, t + 1):
            r[s][t] = sum(1 for x in lows if x <= s)
    return r


def _ordinary_pairs(
    g: nx.MultiGraph, nodes: Sequence[Hashable]
) -> list[tuple[int, int]]:
    """Finite H0 pairs `(s, t)` of positions, born at `s`, dying at `t`."""
    n = len(nodes)
    r = _sublevel_ranks(g, nodes)

    def rank(s: int, t: int) -> int:
        return r[s][t] if 0 < s <= t else 0

    pairs = []
    for s in range(1, n + 1):
        for t in range(s + 1, n + 1):
            mult = rank(s, t - 1) - rank(s - 1, t - 1) - rank(s, t) + rank(s - 1, t)
            pairs += [(s, t)] * mult
    return pairs


def _loop_pairs(g: nx.MultiGraph, nodes: Sequence[Hashable]) -> list[tuple[int, int]]:
    n = len(nodes)
    cache: dict[tuple[int, int], int] = {}

    def count(a: int, b: int) -> int:
        # loops of the subgraph below b that leave the window [a, b]
        if (a, b) not in cache:
            below = _cycle_rank(g.subgraph(nodes[:b]))
            window = _cycle_rank(g.subgraph(nodes[a - 1 : b])) if a <= b else 0
            cache[(a, b)] = below - window
        return cache[(a, b)]

    pairs = []
    for s in range(1, n + 1):
        for t in range(s + 1, n + 1):
            mult = (
                count(s + 1, t)
                - count(s, t)
                - count(s + 1, t - 1)
                + count(s, t - 1)
            )
            pairs += [(s, t)] * mult
    return pairs


def zigzag_h0(g: nx.MultiGraph) -> list[LevelBar]:
    """Bars of the 0-dimensional level-set zigzag of a level graph.

    Nodes are ordered by level, then by name, exactly like in
    `extract_bars`. Bars touching thread nodes are dropped.
    """
    nodes = sorted(g.nodes, key=lambda x: (g.nodes[x]["level"], x))
    n = len(nodes)

    def at(p: int) -> Hashable:
        return nodes[p - 1]

    def level(p: int) -> int:
        return g.nodes[at(p)]["level"]

    bars = []
    for s, t in _ordinary_pairs(g, nodes):
        bars.append(LevelBar(level(s), level(t), True, False, at(s), at(t)))
    for s, t in _ordinary_pairs(g, nodes[::-1]):
        lo, hi = n + 1 - t, n + 1 - s
        bars.append(LevelBar(level(lo), level(hi), False, True, at(lo), at(hi)))
    pos = {x: i for i, x in enumerate(nodes, start=1)}
    for comp in nx.connected_components(g):
        lo, hi = min(pos[x] for x in comp), max(pos[x] for x in comp)
        bars.append(LevelBar(level(lo), level(hi), True, True, at(lo), at(hi)))
    for s, t in _loop_pairs(g, nodes):
        bars.append(LevelBar(level(s), level(t), False, False, at(s), at(t)))

    def real(x: Hashable) -> bool:
        return g.nodes[x].get("kind") is not NodeKind.THREAD

    result = [b for b in bars if real(b.birth_node) and real(b.death_node)]
    return sorted(result, key=lambda b: (b.birth, b.death, b.kind.title))


def z2_rank(chains: Iterable[Iterable[int]], size: int | None = None) -> int:
    """Rank over Z2 of chains given as sets of simplex indices."""
    rows = [sorted(set(c)) for c in chains]
    rows = [r for r in rows if r]
    if not rows:
        return 0
    if size is None:
        size = max(r[-1] for r in rows) + 1
    m = np.zeros((len(rows), size), dtype=np.uint8)
    for i, r in enumerate(rows):
        m[i, r] = 1
    rank = 0
    for col in range(size):
        below = np.nonzero(m[rank:, col])[0]
        if not len(below):
            continue
        p = rank + below[0]
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        hits = np.nonzero(m[:, col])[0]
        hits = hits[hits != rank]
        m[hits] ^= m[rank]
        rank += 1
        if rank == len(rows):
            break
    return rank


def boundaries(k: EmbeddedComplex, dim: int) -> list[frozenset[int]]:
    """Boundaries of all `dim + 1` simplices as chains of `dim` simplices."""
    count = (len(k.vertices), len(k.edges), len(k.triangles), len(k.tetrahedra))
    if dim + 1 > 3:
        return []
    if dim + 1 == 3:
        return [frozenset(faces(k, 3, i)) for i in range(count[3])]
    return [boundary(k, dim + 1, [i]) for i in range(count[dim + 1])]


def _check_cycle(k: EmbeddedComplex, dim: int, chain: Iterable[int]) -> None:
    if boundary(k, dim, chain):
        raise ValueError("Chain is not a cycle")


def homology_rank(
    k: EmbeddedComplex, cycles: Iterable[Iterable[int]], dim: int = 1
) -> int:
    """Rank of the span of cycles in H_dim of the complex.

    Raises:
        ValueError: some chain is not a cycle.
    """
    cycles = [frozenset(c) for c in cycles]
    for c in cycles:
        _check_cycle(k, dim, c)
    size = (len(k.edges), len(k.triangles))[dim - 1]
    bnd = boundaries(k, dim)
    return z2_rank(bnd + cycles, size) - z2_rank(bnd, size)


@dataclass(frozen=True)
class CycleClass:
    """Homology class of a cycle.

    `coordinates` are the coefficients over the given basis, or `None` if
    the class is outside its span.
    """

    is_boundary: bool
    coordinates: tuple[int, ...] | None


def classify_cycle(
    k: EmbeddedComplex,
    chain: Iterable[int],
    basis: Sequence[Iterable[int]] = (),
    dim: int = 1,
) -> CycleClass:
    """Decide whether a cycle bounds and express its class in a basis.

    Raises:
        ValueError: the chain is not a cycle.
    """
    chain = frozenset(chain)
    _check_cycle(k, dim, chain)
    size = (len(k.edges), len(k.triangles))[dim - 1]
    nb = len(basis)
    pivots: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def vector(c: Iterable[int]) -> np.ndarray:
        v = np.zeros(size, dtype=np.uint8)
        v[sorted(set(c))] = 1
        return v

    rows = [(vector(b), np.zeros(nb, dtype=np.uint8)) for b in boundaries(k, dim)]
    for i, b in enumerate(basis):
        tag = np.zeros(nb, dtype=np.uint8)
        tag[i] = 1
        rows.append((vector(b), tag))
    for v, tag in rows:
        v, tag = _reduce_fully(v, tag, pivots)
        nz = np.nonzero(v)[0]
        if len(nz):
            pivots[int(nz[0])] = (v, tag)
    v, tag = _reduce_fully(vector(chain), np.zeros(nb, dtype=np.uint8), pivots)
    if np.any(v):
        return CycleClass(False, None)
    coordinates = tuple(int(x) for x in tag)
    return CycleClass(not any(coordinates), coordinates)


def _reduce_fully(
    v: np.ndarray, tag: np.ndarray, pivots: dict[int, tuple[np.ndarray, np.ndarray]]
) -> tuple[np.ndarray, np.ndarray]:
    changed = True
    while changed:
        changed = False
        for col in np.nonzero(v)[0]:
            if int(col) in pivots:
                pv, pt = pivots[int(col)]
                v = v ^ pv
                tag = tag ^ pt
                changed = True
                break
    return v, tag
