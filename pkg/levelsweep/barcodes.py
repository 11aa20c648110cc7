"""Barcode graph.

The sweep reports births, deaths, splits and merges of primary level-set
cycles. They are recorded as a graph R whose nodes sit at integer levels:
an event caused while entering the critical level `a_i` is placed at level
`2i - 1` (inside slab `i - 1`), an event caused while leaving it at level
`2i` (inside slab `i`). Open birth and death nodes are later threaded onto
one monotone dummy path, same-level edges are contracted, and the bars of
the 0-dimensional level-set zigzag of the resulting graph are extracted.
Converted back to critical values with reversed endpoint types, they are
the bars of H1 of the level sets of the height function.

Extraction pairs nodes in two passes over the graph sorted by level:

* ascending, with union-find and the elder rule: closed-open bars;
* descending, the same way: open-closed bars;
* one closed-closed bar `[min, max]` per connected component;
* every edge closing a loop in the ascending pass gives an open-open bar
  from the lowest node of the loop in a maximum spanning forest (edges
  weighted by their lower endpoint) to the current node.

"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Sequence

import networkx as nx
from networkx.utils import UnionFind

from .categories import BarKind, EventKind, NodeKind, Side, Stage
from .linkcut import LinkCutForest, Node

logger = logging.getLogger(__name__)

_THREAD_BOTTOM = -1
_THREAD_TOP = -2


@dataclass(frozen=True)
class Seed:
    """Directed level-set edge identifying a cycle at a given sweep state.

    `side` is the side (+1 or -1, relative to the normal of the sorted
    vertex triple) of triangle `tri` that faces the region to the right of
    the edge.
    """

    rank: int
    stage: Stage
    tri: int
    tail: int
    head: int
    side: int


@dataclass(frozen=True)
class Event:
    """Change of primary cycles at a vertex."""

    kind: EventKind
    rank: int
    side: Side
    closed: bool = False
    edges: tuple[int, ...] = ()


@dataclass(frozen=True)
class LevelBar:
    """Bar of the 0-dimensional level-set zigzag of a level graph.

    Endpoints are graph levels. `edges` lists graph edges at the birth node
    that belong to the loop of an open-open bar.
    """

    birth: int
    death: int
    birth_closed: bool
    death_closed: bool
    birth_node: Hashable = field(compare=False, default=None)
    death_node: Hashable = field(compare=False, default=None)
    edges: tuple[tuple[Any, Any, Any], ...] = field(compare=False, default=())

    @property
    def kind(self) -> BarKind:
        return BarKind.from_flags(self.birth_closed, self.death_closed)


@dataclass(frozen=True)
class Bar:
    """Interval of a barcode.

    `birth_index` and `death_index` are ranks of critical values; `0`
    stands for minus infinity and `m + 1` for plus infinity. `seed` marks
    the level-set cycle of an H1 level-set bar; sublevel bars keep the
    level-set bar they were derived from in `source`.
    """

    dim: int
    birth: Fraction | float
    death: Fraction | float
    birth_closed: bool
    death_closed: bool
    birth_index: int = 0
    death_index: int = 0
    seed: Any = field(default=None, compare=False)
    source: Any = field(default=None, compare=False)

    @property
    def kind(self) -> BarKind:
        return BarKind.from_flags(self.birth_closed, self.death_closed)

    @property
    def infinite(self) -> bool:
        return self.death == float("inf")

    @property
    def key(self) -> tuple[int, int, int, bool, bool]:
        """Comparison key independent of the seed and of the value type."""
        return (
            self.dim,
            self.birth_index,
            self.death_index,
            self.birth_closed,
            self.death_closed,
        )

    def __str__(self) -> str:
        left = "[" if self.birth_closed else "("
        right = "]" if self.death_closed else ")"
        return f"{left}{self.birth}, {self.death}{right}"


class BarcodeGraph:
    """Builder of the barcode graph R.

    Current edges are edges whose upper node is not known yet; they are
    referred to by integer ids stored in `CycleTree.barcode`.
    """

    def __init__(self) -> None:
        self._graph = nx.MultiGraph()
        self._current: dict[int, tuple[int, Seed | None]] = {}
        self._nodes = 0
        self._edges = 0
        self.events: list[Event] = []

    @staticmethod
    def level(rank: int, side: Side) -> int:
        """Graph level of an event at vertex `rank`."""
        return 2 * rank - 1 if side is Side.ENTERING else 2 * rank

    @property
    def graph(self) -> nx.MultiGraph:
        return self._graph

    @property
    def current(self) -> frozenset[int]:
        return frozenset(self._current)

    def _node(self, kind: NodeKind, rank: int, side: Side) -> int:
        n = self._nodes
        self._nodes += 1
        self._graph.add_node(
            n, level=self.level(rank, side), kind=kind, rank=rank, side=side
        )
        return n

    def _open(self, start: int) -> int:
        e = self._edges
        self._edges += 1
        self._current[e] = (start, None)
        return e

    def _close(self, e: int, end: int) -> None:
        try:
            start, seed = self._current.pop(e)
        except KeyError:
            raise ValueError(f"Current edge {e} is not alive")
        self._graph.add_edge(start, end, key=e, seed=seed)

    def set_seed(self, e: int, seed: Seed) -> None:
        """Attach a generator seed to a live current edge."""
        if e in self._current:
            self._current[e] = (self._current[e][0], seed)

    def record_event(self, event: Event) -> tuple[int, ...]:
        """Add the node of an event and update current edges.

        Returns:
            tuple[int, ...]: ids of the current edges started by the event.

        Raises:
            ValueError: the event refers to a dead current edge.
        """
        self.events.append(event)
        logger.debug("Event %s", event)
        match event.kind:
            case EventKind.BIRTH:
                kind = NodeKind.BIRTH_CLOSED if event.closed else NodeKind.BIRTH_OPEN
                return (self._open(self._node(kind, event.rank, event.side)),)
            case EventKind.DEATH:
                kind = NodeKind.DEATH_CLOSED if event.closed else NodeKind.DEATH_OPEN
                n = self._node(kind, event.rank, event.side)
                for e in event.edges:
                    self._close(e, n)
                return ()
            case EventKind.SPLIT:
                n = self._node(NodeKind.SPLIT, event.rank, event.side)
                self._close(event.edges[0], n)
                return self._open(n), self._open(n)
            case EventKind.MERGE:
                n = self._node(NodeKind.MERGE, event.rank, event.side)
                for e in event.edges:
                    self._close(e, n)
                return (self._open(n),)
        raise ValueError(f"Unknown event {event.kind}")  # pragma: no cover

    def birth(self, rank: int, side: Side, closed: bool) -> int:
        (e,) = self.record_event(Event(EventKind.BIRTH, rank, side, closed))
        return e

    def death(self, e: int, rank: int, side: Side, closed: bool) -> None:
        self.record_event(Event(EventKind.DEATH, rank, side, closed, (e,)))

    def split(self, e: int, rank: int, side: Side) -> tuple[int, int]:
        e1, e2 = self.record_event(Event(EventKind.SPLIT, rank, side, False, (e,)))
        return e1, e2

    def merge(self, e1: int, e2: int, rank: int, side: Side) -> int:
        (e,) = self.record_event(Event(EventKind.MERGE, rank, side, False, (e1, e2)))
        return e

    def finalize(self) -> nx.MultiGraph:
        """The completed graph R.

        Raises:
            ValueError: some current edge was never terminated.
        """
        if self._current:
            raise ValueError(f"{len(self._current)} current edges left open")
        return self._graph


def thread(g: nx.MultiGraph, *, top: int | None = None) -> nx.MultiGraph:
    """Attach all open nodes to one monotone dummy path.

    The path starts below every node and ends above every node; open nodes
    are visited by increasing level.
    """
    r = g.copy()
    levels = [lv for _, lv in g.nodes(data="level")]
    if top is None:
        top = max(levels, default=0) + 1
    bottom = min(min(levels, default=0), 0) - 1
    r.add_node(_THREAD_BOTTOM, level=bottom, kind=NodeKind.THREAD)
    r.add_node(_THREAD_TOP, level=top, kind=NodeKind.THREAD)
    opened = sorted(
        (n for n, kind in g.nodes(data="kind") if kind.is_open),
        key=lambda n: (g.nodes[n]["level"], n),
    )
    path = [_THREAD_BOTTOM, *opened, _THREAD_TOP]
    for i, (a, b) in enumerate(zip(path, path[1:])):
        r.add_edge(a, b, key=("thread", i), thread=True)
    logger.debug("Threaded %d open nodes", len(opened))
    return r


def contract_same_level(g: nx.MultiGraph) -> nx.MultiGraph:
    """Contract every edge whose endpoints share a level."""
    flat = nx.Graph()
    flat.add_nodes_from(g.nodes)
    flat.add_edges_from(
        (a, b) for a, b in g.edges() if g.nodes[a]["level"] == g.nodes[b]["level"]
    )
    rep = {}
    for comp in nx.connected_components(flat):
        head = min(comp)
        for n in comp:
            rep[n] = head
    r = nx.MultiGraph()
    for n, data in g.nodes(data=True):
        if rep[n] == n:
            r.add_node(n, **data)
    for a, b, key, data in g.edges(keys=True, data=True):
        if rep[a] != rep[b]:
            r.add_edge(rep[a], rep[b], key=key, **data)
    if r.number_of_nodes() != g.number_of_nodes():
        logger.debug(
            "Contracted %d nodes", g.number_of_nodes() - r.number_of_nodes()
        )
    return r


def _elder_pairs(
    g: nx.MultiGraph, nodes: Sequence[Hashable], pos: dict[Hashable, int]
) -> list[tuple[Hashable, Hashable]]:
    """Pairs (younger extreme, merging node) of a sweep over `nodes`."""
    uf = UnionFind()
    extreme: dict[Hashable, Hashable] = {}
    pairs = []
    for n in nodes:
        extreme[uf[n]] = n
        for _, u in g.edges(n):
            if pos[u] > pos[n]:
                continue
            ru, rn = uf[u], uf[n]
            if ru == rn:
                continue
            a, b = extreme[ru], extreme[rn]
            older, younger = (a, b) if pos[a] < pos[b] else (b, a)
            if younger != n:
                pairs.append((younger, n))
            uf.union(ru, rn)
            extreme[uf[n]] = older
    return pairs


def _loop_pairs(
    g: nx.MultiGraph, nodes: Sequence[Hashable], pos: dict[Hashable, int]
) -> list[tuple[Hashable, Hashable, tuple]]:
    uf = UnionFind()
    forest = LinkCutForest()
    vertex: dict[Hashable, Node] = {}
    pairs = []

    def attach(edge: tuple) -> None:
        n, u, _ = edge
        x = forest.add(edge, pos[u])
        forest.link(vertex[u], x)
        forest.link(x, vertex[n])

    for n in nodes:
        vertex[n] = forest.add(n)
        for _, u, key in g.edges(n, keys=True):
            if pos[u] >= pos[n]:
                continue
            edge = (n, u, key)
            if uf[u] != uf[n]:
                uf.union(u, n)
                attach(edge)
                continue
            low = forest.path_min(vertex[u], vertex[n])
            z = low.key[1]
            if z == u:
                loop = (edge, low.key)
            else:
                back = forest.step(vertex[z], vertex[u])
                ahead = forest.step(vertex[z], vertex[n])
                assert back is not None and ahead is not None
                loop = (back.key, ahead.key)
                a, b, _ = ahead.key
                forest.cut(vertex[a], ahead)
                forest.cut(ahead, vertex[b])
                attach(edge)
            pairs.append((z, n, loop))
    return pairs


def extract_bars(g: nx.MultiGraph) -> list[LevelBar]:
    """Bars of the 0-dimensional level-set zigzag of a level graph.

    Args:
        g: multigraph with integer node attribute `level`, no edges between
            nodes of equal level. Nodes whose `kind` is `NodeKind.THREAD`
            belong to the dummy thread; bars touching them are discarded.

    Returns:
        list[LevelBar]: bars in graph levels, sorted.
    """
    nodes = sorted(g.nodes, key=lambda n: (g.nodes[n]["level"], n))
    pos = {n: i for i, n in enumerate(nodes)}

    def level(n: Hashable) -> int:
        return g.nodes[n]["level"]

    bars = []
    for younger, n in _elder_pairs(g, nodes, pos):
        bars.append(LevelBar(level(younger), level(n), True, False, younger, n))
    for younger, n in _elder_pairs(g, nodes[::-1], {k: -v for k, v in pos.items()}):
        bars.append(LevelBar(level(n), level(younger), False, True, n, younger))
    for comp in nx.connected_components(g):
        lo = min(comp, key=pos.__getitem__)
        hi = max(comp, key=pos.__getitem__)
        bars.append(LevelBar(level(lo), level(hi), True, True, lo, hi))
    for z, n, loop in _loop_pairs(g, nodes, pos):
        bars.append(LevelBar(level(z), level(n), False, False, z, n, loop))

    def real(n: Hashable) -> bool:
        return g.nodes[n].get("kind") is not NodeKind.THREAD

    result = [b for b in bars if real(b.birth_node) and real(b.death_node)]
    logger.debug("Extracted %d bars from %d nodes", len(result), len(nodes))
    return sorted(result, key=lambda b: (b.birth, b.death, b.kind.title))


def _seed_at(g: nx.MultiGraph, bar: LevelBar) -> Seed | None:
    for a, b, key in bar.edges:
        seed = g.edges[a, b, key].get("seed")
        if seed is not None:
            return seed
    for _, _, seed in g.edges(bar.birth_node, data="seed"):
        if seed is not None:
            return seed
    return None


def convert_intervals(
    bars: Iterable[LevelBar],
    values: Sequence[Fraction],
    *,
    dim: int = 1,
    graph: nx.MultiGraph | None = None,
    dual: bool = True,
) -> list[Bar]:
    """Turn bars in graph levels into bars in critical values.

    In dual mode (bars of the barcode graph) level `l` belongs to the
    critical value of rank `ceil(l / 2)` and endpoint types are reversed.
    Otherwise levels are ranks already and types are kept. Empty intervals
    are dropped.

    Args:
        bars: bars in graph levels.
        values: critical values `a_1..a_m`.
        dim (int): homology dimension of the result.
        graph: graph the bars come from, used to attach seeds.
        dual (bool): barcode-graph mode.

    Returns:
        list[Bar]: bars sorted by birth, death and kind.
    """
    result = []
    for b in bars:
        if dual:
            lo, hi = (b.birth + 1) // 2, (b.death + 1) // 2
            closed = (not b.birth_closed, not b.death_closed)
        else:
            lo, hi = b.birth, b.death
            closed = (b.birth_closed, b.death_closed)
        if lo > hi or (lo == hi and not all(closed)):
            continue
        seed = _seed_at(graph, b) if graph is not None else None
        result.append(
            Bar(
                dim=dim,
                birth=values[lo - 1],
                death=values[hi - 1],
                birth_closed=closed[0],
                death_closed=closed[1],
                birth_index=lo,
                death_index=hi,
                seed=seed,
            )
        )
    return sorted(result, key=lambda x: x.key)


def to_dot(g: nx.MultiGraph, name: str = "R") -> str:
    """DOT text of a level graph, nodes labelled by level and kind."""
    lines = [f"graph {name} {{", "  rankdir=BT;"]
    for n, data in sorted(g.nodes(data=True), key=lambda x: str(x[0])):
        kind = data.get("kind")
        symbol = kind.symbol if kind is not None else ""
        lines.append(f'  "{n}" [label="{data.get("level")}{symbol}"];')
    for a, b, data in g.edges(data=True):
        style = " [style=dashed]" if data.get("thread") else ""
        lines.append(f'  "{a}" -- "{b}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"
