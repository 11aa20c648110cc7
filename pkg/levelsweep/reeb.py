"""Reeb graph of a height function.

Nodes are vertices of the complex, arcs are components of level sets
between critical values. The graph is built by a sweep that relabels, at
every vertex, the level-set components touching it; every arc remembers
the complex edges it starts and ends with, so that arcs can be lifted
back to paths in the complex.

The 0-dimensional level-set barcode of the complex is the barcode of the
Reeb graph, and its independent loops give the part of H1 that is not
seen by cycles of single level sets.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

import logging
from collections import deque
from dataclasses import dataclass

import networkx as nx
from networkx.utils import UnionFind

from .barcodes import Bar, convert_intervals, extract_bars, to_dot
from .categories import NodeKind
from .complex import (
    EmbeddedComplex,
    StarClassification,
    SweepOrder,
    classify_star,
    crossing_edges,
    level_graph,
)
from .linkcut import LinkCutForest, Node
from .sweep import LevelSweep, SweepSettings, sweep

logger = logging.getLogger(__name__)

ArcKey = tuple[int, int, int]


@dataclass(frozen=True)
class Segment:
    """Piece of an arc between two consecutive vertices.

    `start` is a complex edge leaving `lower` upwards, `end` a complex
    edge arriving at `upper`; both cross every slab of the piece and lie
    in the same level-set component there.
    """

    lower: int
    upper: int
    start: int
    end: int


class ReebGraph:
    """Reeb graph with nodes keyed by vertex index.

    Node attributes: `level` (rank), `value` (critical value) and `kind`.
    Arc attributes: `segments`, a tuple of `Segment` from bottom to top.
    """

    def __init__(self, graph: nx.MultiGraph, order: SweepOrder) -> None:
        self._graph = graph
        self._order = order

    def __repr__(self) -> str:
        return (
            f"ReebGraph({self._graph.number_of_nodes()} nodes, "
            f"{self._graph.number_of_edges()} arcs)"
        )

    @property
    def graph(self) -> nx.MultiGraph:
        return self._graph

    @property
    def order(self) -> SweepOrder:
        return self._order

    @property
    def arcs(self) -> list[ArcKey]:
        return sorted(self._graph.edges(keys=True), key=lambda a: a[2])

    @property
    def betti(self) -> int:
        """Number of independent loops."""
        g = self._graph
        return (
            g.number_of_edges()
            - g.number_of_nodes()
            + nx.number_connected_components(g)
        )

    def components_at(self, slab: int) -> int:
        """Number of level-set components inside a slab."""
        count = 0
        for a, b in self._graph.edges():
            levels = self._graph.nodes[a]["level"], self._graph.nodes[b]["level"]
            lo, hi = sorted(levels)
            if lo <= slab < hi:
                count += 1
        return count

    def to_dot(self) -> str:
        return to_dot(self._graph, "Reeb")


def _neighbours(k: EmbeddedComplex, order: SweepOrder, e: int, slab: int) -> list[int]:
    result = []
    for t in k.edge_triangles(e):
        pair = crossing_edges(k, order, t, slab)
        if pair is not None:
            result.append(pair[1] if pair[0] == e else pair[0])
    return result


class LevelComponents:
    """Components of the level-set graph as the sweep rises.

    Level-set edges are keyed by `(triangle, phase)`: phase 0 while the
    triangle crosses below its middle vertex, phase 1 above it. Each one
    disappears at the rank of the upper end of its short edge. The forest
    kept is a maximum spanning forest for these ranks, so a removed edge
    never needs a replacement.
    """

    def __init__(self, k: EmbeddedComplex, order: SweepOrder) -> None:
        self._k = k
        self._order = order
        self._forest = LinkCutForest()
        self._nodes: dict[int, Node] = {}
        self._tree: dict[tuple[int, int], tuple[Node, int, int]] = {}

    def _node(self, e: int) -> Node:
        if e not in self._nodes:
            self._nodes[e] = self._forest.add(e)
        return self._nodes[e]

    def root(self, e: int) -> Node:
        """Representative of the component of a crossing edge; stable until
        the component changes."""
        return self._forest.root(self._node(e))

    def insert(self, key: tuple[int, int], a: int, b: int, dies: int) -> None:
        x, y = self._node(a), self._node(b)
        if self._forest.connected(x, y):
            low = self._forest.path_min(x, y)
            if low.value >= dies:
                return
            self.remove(low.key)
        s = self._forest.add(key, dies)
        self._forest.link(x, s)
        self._forest.link(s, y)
        self._tree[key] = (s, a, b)

    def remove(self, key: tuple[int, int]) -> None:
        if key not in self._tree:
            return
        s, a, b = self._tree.pop(key)
        self._forest.cut(self._nodes[a], s)
        self._forest.cut(s, self._nodes[b])

    def discard(self, e: int) -> None:
        """Forget a complex edge that no longer crosses the sweep."""
        self._nodes.pop(e, None)

    def advance(self, star: StarClassification) -> None:
        """Move the level set over the vertex of a star."""
        k, order = self._k, self._order
        v = star.vertex
        for t in star.bottom_triangles:
            self.remove((t, 1))
        for t in star.middle_triangles:
            self.remove((t, 0))
            lo, _, hi = order.sorted(k.triangles[t])
            self.insert((t, 1), k.edge_id(lo, hi), k.edge_id(v, hi), order.rank(hi))
        for t in star.top_triangles:
            _, mid, hi = order.sorted(k.triangles[t])
            self.insert((t, 0), k.edge_id(v, hi), k.edge_id(v, mid), order.rank(mid))
        for e in star.bottom_edges:
            self.discard(e)


def _compress(g: nx.MultiGraph) -> None:
    """Remove nodes with one arc below and one arc above."""
    for v in sorted(g.nodes):
        if g.degree(v) != 2:
            continue
        level = g.nodes[v]["level"]
        (a, b, ka, da), (c, d, kc, dc) = sorted(
            g.edges(v, keys=True, data=True), key=lambda x: g.nodes[x[1]]["level"]
        )
        below, above = b, d
        if g.nodes[below]["level"] >= level or g.nodes[above]["level"] <= level:
            continue
        g.remove_node(v)
        g.add_edge(below, above, key=ka, segments=da["segments"] + dc["segments"])


def compute_reeb(
    k: EmbeddedComplex, order: SweepOrder, *, compress: bool = True
) -> ReebGraph:
    """Build the Reeb graph by sweeping level-set components.

    Isolated vertices and dangling edges are included.

    Args:
        k (EmbeddedComplex): the complex.
        order (SweepOrder): vertex order of the height function.
        compress (bool): drop regular vertices.

    Returns:
        ReebGraph: the Reeb graph with arc witnesses.
    """
    g = nx.MultiGraph()
    components = LevelComponents(k, order)
    label: dict[Node, int] = {}
    opened: dict[int, tuple[int, int]] = {}
    arcs = 0
    for rank in range(1, order.m + 1):
        v = order.vertex(rank)
        g.add_node(v, level=rank, value=order.value(rank), kind=NodeKind.REEB)
        star = classify_star(k, order, v)
        below = {e: label[components.root(e)] for e in star.bottom_edges}
        for e in sorted(star.bottom_edges):
            a = below[e]
            if a in opened:
                lower, start = opened.pop(a)
                g.add_edge(lower, v, key=a, segments=(Segment(lower, v, start, e),))
        components.advance(star)
        fresh: set[Node] = set()
        for e in sorted(star.top_edges):
            r = components.root(e)
            if r in fresh:
                continue
            fresh.add(r)
            label[r] = arcs
            opened[arcs] = (v, e)
            arcs += 1
    if opened:
        raise RuntimeError(f"{len(opened)} arcs never closed")
    if compress:
        _compress(g)
    logger.debug(
        "Reeb graph: %d nodes, %d arcs", g.number_of_nodes(), g.number_of_edges()
    )
    return ReebGraph(g, order)


def h0_levelset_bars(rg: ReebGraph) -> list[Bar]:
    """Bars of H0 of the level sets, read off the Reeb graph."""
    values = [rg.order.value(i) for i in range(1, rg.order.m + 1)]
    return convert_intervals(extract_bars(rg.graph), values, dim=0, dual=False)


def reeb_cycle_basis(rg: ReebGraph) -> list[list[ArcKey]]:
    """One loop per arc outside a spanning forest.

    Each loop is a list of arcs `(a, b, key)` oriented along the loop,
    starting with its non-tree arc.
    """
    uf = UnionFind()
    tree = nx.Graph()
    tree.add_nodes_from(rg.graph)
    cycles = []
    for a, b, key in rg.arcs:
        if uf[a] != uf[b]:
            uf.union(a, b)
            tree.add_edge(a, b, key=key)
            continue
        path = nx.shortest_path(tree, b, a)
        loop = [(a, b, key)]
        for x, y in zip(path, path[1:]):
            loop.append((x, y, tree.edges[x, y]["key"]))
        cycles.append(loop)
    logger.debug("Reeb graph has %d independent loops", len(cycles))
    return cycles


def lift_segment(k: EmbeddedComplex, order: SweepOrder, s: Segment) -> list[int]:
    """Vertex walk in the 1-skeleton from `s.lower` to `s.upper` inside the
    preimage of a segment.

    A path of crossing edges from `s.start` to `s.end` in the level-set
    graph is pushed down to the lower endpoints of those edges.
    """
    slab = order.rank(s.lower)
    parent = {s.start: s.start}
    queue = deque([s.start])
    while queue:
        x = queue.popleft()
        if x == s.end:
            break
        for y in _neighbours(k, order, x, slab):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if s.end not in parent:
        raise RuntimeError(f"Witness edges of {s} are not connected")
    chain = [s.end]
    while chain[-1] != s.start:
        chain.append(parent[chain[-1]])
    walk = [s.lower]
    for e in reversed(chain):
        w = order.lowest(k.edges[e])
        if w != walk[-1]:
            walk.append(w)
    walk.append(s.upper)
    return walk


def secondary_crosscheck(
    k: EmbeddedComplex, order: SweepOrder, settings: SweepSettings | None = None
) -> list[tuple[int, int, int]]:
    """Compare secondary cycles with level-set components per slab.

    Every level-set component with at least one edge has exactly one outer
    boundary cycle.

    Returns:
        list: `(rank, secondary cycles, components with edges)` for every
        slab where the numbers differ.
    """
    mismatches = []

    def check(rank: int, engine: LevelSweep) -> None:
        g = level_graph(k, order, rank)
        components = sum(
            1 for c in nx.connected_components(g) if g.subgraph(c).number_of_edges()
        )
        secondary = engine.census().secondary
        if secondary != components:
            mismatches.append((rank, secondary, components))

    sweep(k, order, settings, on_slab=check)
    return mismatches
