"""Level-set sweep.

The sweep visits vertices by increasing height. Between two critical
values the level set is a plane graph G: its vertices are the complex
edges crossing the current slab, its edges the crossing triangles. Every
level-set edge is kept twice, once per direction, and the directed edges
form cycles by the connection rule; each cycle bounds the face on its
right. A cycle is *primary* when that face is bounded and not covered by
tetrahedra. Primary cycles are exactly a basis of H1 of the level set, and
their births, deaths, splits and merges are reported to a `BarcodeGraph`.

Each vertex is processed in two phases:

* entering the critical level: bottom triangles disappear, middle triangles
  meet at the vertex and cycles pinch there;
* leaving it: top triangles appear, cycles are extended through them and
  cycles made only of top triangles are created.

A directed edge keeps the direction of its triangle's horizontal line for
as long as it exists, so the turn from an edge into its successor is
fixed. Every edge carries the number of times that turn crosses the
positive x-axis, and the sum over a cycle is its turning number: -1 when
the face on the right is bounded, +1 otherwise. Splits and merges only
relink edges around the pinch, so the primality of the resulting cycles
is read from the tree roots. Cycles made only of top triangles are tested
at their leftmost point instead.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import networkx as nx

from levelsweep.barcodes import BarcodeGraph, Seed
from levelsweep.categories import Side, Stage
from levelsweep.complex import (
    EmbeddedComplex,
    SweepOrder,
    StarClassification,
    classify_star,
    level_graph,
)
from levelsweep.geometry import (
    Point2,
    axis_crossings,
    dot3,
    orient2d,
    sign,
    sub2,
    sub3,
    triangle_normal,
)

from .forest import CycleForest, CycleTree, DirectedEdge, Weight
from .rules import SweepError, Wedge, circular_order, connect_rule

logger = logging.getLogger(__name__)

WEST = (Fraction(-1), Fraction(0))

# (essential before; primality of the parts), parts sorted primary first
_SPLITS = {
    Side.ENTERING: {(False, True, False), (True, True, True), (False, False, False)},
    Side.LEAVING: {(True, True, False), (False, False, False)},
}
# (essential of both parts, sorted; primality after)
_MERGES = {
    Side.ENTERING: {(True, False, True), (False, False, False)},
    Side.LEAVING: {(True, True, True), (True, False, False), (False, False, False)},
}


@dataclass
class SweepSettings:
    """Tuning of a sweep.

    Attributes:
        perturb: order tied heights by vertex index instead of failing.
        audit: check the cycle forest against the level-set graph after
            every vertex and fail on split or merge combinations the
            geometry does not allow.
        suppress_tetrahedra: faces covered by tetrahedra are never primary.
        seed: random seed of the cycle trees.
    """

    perturb: bool = True
    audit: bool = False
    suppress_tetrahedra: bool = True
    seed: int = 0


@dataclass(frozen=True)
class Census:
    """Cycles of the level set at one slab."""

    rank: int
    primary: int
    suppressed: int
    secondary: int


SlabCallback = Callable[[int, "LevelSweep"], None]


class LevelSweep:
    """State machine of the sweep over one complex.

    Args:
        k: the complex.
        order: the vertex order of a height function.
        settings: sweep tuning.
        traces: seeds of cycles to serialize when the sweep reaches their
            rank and stage.
        on_slab: called with the rank and the engine after every vertex.
    """

    def __init__(
        self,
        k: EmbeddedComplex,
        order: SweepOrder,
        settings: SweepSettings | None = None,
        *,
        traces: Iterable[Seed] = (),
        on_slab: SlabCallback | None = None,
    ) -> None:
        self._k = k
        self._order = order
        self._settings = settings or SweepSettings()
        self._forest = CycleForest(self._settings.seed, self._link_weight)
        self._graph = BarcodeGraph()
        self._registry: dict[int, list[DirectedEdge]] = {}
        self._traces: dict[tuple[int, Stage], list[Seed]] = defaultdict(list)
        for seed in traces:
            self._traces[(seed.rank, seed.stage)].append(seed)
        self._on_slab = on_slab
        self._lines: dict[int, tuple[Point2, Point2]] = {}
        self._headings: dict[tuple[int, int], Point2] = {}
        self._sorted: dict[int, tuple[int, int, int]] = {}
        self._normals: dict[int, tuple[Fraction, Fraction, Fraction]] = {}
        self.traced: dict[Seed, list[tuple[int, int, int]]] = {}
        # per vertex
        self._rank = 0
        self._v = -1
        self._star: StarClassification | None = None
        self._top: set[int] = set()
        # per stage
        self._stage_trees: list[CycleTree] = []
        self._stage_edges: set[int] = set()

    @property
    def barcode_graph(self) -> BarcodeGraph:
        return self._graph

    @property
    def forest(self) -> CycleForest:
        return self._forest

    @property
    def rank(self) -> int:
        """Rank of the last processed vertex."""
        return self._rank

    # geometry of level-set points

    def _tri(self, t: int) -> tuple[int, int, int]:
        if t not in self._sorted:
            self._sorted[t] = self._order.sorted(self._k.triangles[t])  # type: ignore
        return self._sorted[t]

    def _line(self, e: int) -> tuple[Point2, Point2]:
        """Point `P` and slope `U` with `P + r * U` on edge `e` at level `r`."""
        if e not in self._lines:
            lo, hi = self._order.sorted(self._k.edges[e])
            a, b = self._order.points[lo], self._order.points[hi]
            dz = b[2] - a[2]
            u = ((b[0] - a[0]) / dz, (b[1] - a[1]) / dz)
            p = (a[0] - a[2] * u[0], a[1] - a[2] * u[1])
            self._lines[e] = (p, u)
        return self._lines[e]

    def _at(self, e: int, r: Fraction) -> Point2:
        p, u = self._line(e)
        return p[0] + r * u[0], p[1] + r * u[1]

    def _span(self, e: int) -> tuple[Fraction, Fraction]:
        lo, hi = self._order.sorted(self._k.edges[e])
        return self._order.height(lo), self._order.height(hi)

    def _direction(self, tail: int, head: int) -> Point2:
        """Direction of a level-set edge somewhere inside its height range.

        It does not depend on the level: the edge runs along the horizontal
        line of its triangle and never shrinks to a point inside the range.
        """
        key = (tail, head)
        if key not in self._headings:
            (a0, a1), (b0, b1) = self._span(tail), self._span(head)
            r = (max(a0, b0) + min(a1, b1)) / 2
            p, q = self._at(tail, r), self._at(head, r)
            self._headings[key] = (q[0] - p[0], q[1] - p[1])
        return self._headings[key]

    def _mid_level(self, rank: int) -> Fraction:
        order = self._order
        z = order.height(order.vertex(rank))
        upper = order.height(order.vertex(rank + 1)) if rank < order.m else z + 2
        return (z + upper) / 2

    def _normal(self, t: int) -> tuple[Fraction, Fraction, Fraction]:
        if t not in self._normals:
            pts = self._order.points
            a, b, c = sorted(self._k.triangles[t])
            self._normals[t] = triangle_normal(pts[a], pts[b], pts[c])
        return self._normals[t]

    def right_side(self, t: int, tail: int, head: int) -> int:
        """Side of triangle `t` (relative to the normal of its sorted vertex
        triple) facing the region right of the directed edge."""
        n = self._normal(t)
        dx, dy = self._direction(tail, head)
        return sign(dy * n[0] - dx * n[1])

    def _covered(self, t: int, side: int) -> bool:
        if not self._settings.suppress_tetrahedra:
            return False
        pts = self._order.points
        n = self._normal(t)
        a = pts[self._tri(t)[0]]
        verts = set(self._k.triangles[t])
        for tet in self._k.triangle_tetrahedra(t):
            (w,) = set(self._k.tetrahedra[tet]) - verts
            if sign(dot3(n, sub3(pts[w], a))) == side:
                return True
        return False

    def _link_weight(self, d: DirectedEdge, nxt: DirectedEdge) -> Weight:
        u, w = self._direction(d.tail, d.head), self._direction(nxt.tail, nxt.head)
        turn = axis_crossings(u, w, reverse=nxt is not d and nxt.tri == d.tri)
        return turn, int(d.covered)

    def _crossing(self, t: int, slab: int) -> tuple[int, int]:
        lo, mid, hi = self._tri(t)
        short = (lo, mid) if slab < self._order.rank(mid) else (mid, hi)
        return self._k.edge_id(lo, hi), self._k.edge_id(*short)

    def _other(self, t: int, e: int) -> int:
        a, b = self._crossing(t, self._rank)
        return b if a == e else a

    # directed edges

    def _find(self, t: int, tail: int, head: int) -> DirectedEdge | None:
        for d in self._registry.get(t, ()):
            if d.tail == tail and d.head == head:
                return d
        return None

    def _create(self, t: int, tail: int, head: int) -> DirectedEdge:
        d = DirectedEdge(t, tail, head)
        d.covered = self._covered(t, self.right_side(t, tail, head))
        self._registry.setdefault(t, []).append(d)
        return d

    # primality

    def winding(self, tree: CycleTree) -> int:
        """Turning number of a cycle."""
        return tree.total[0]

    def bounds_face(self, tree: CycleTree) -> bool:
        """Test whether a cycle encloses a bounded face on its right."""
        return self.winding(tree) < 0

    def is_primary(self, tree: CycleTree) -> bool:
        return self.bounds_face(tree) and not tree.total[1]

    def _unexpected(self, what: str, signature: tuple, side: Side) -> None:
        if self._settings.audit:
            raise SweepError(
                f"Unexpected {what} {signature} at vertex {self._rank} ({side})"
            )
        logger.warning(
            "Unexpected %s %s at vertex %d (%s)", what, signature, self._rank, side
        )

    def split_prim(
        self, primary: bool, d1: DirectedEdge, d2: DirectedEdge | None, side: Side
    ) -> tuple[bool, bool]:
        """Primality of the two cycles a pinch leaves, holding `d1` and `d2`.

        `primary` tells whether the cycle before the pinch was primary;
        `d2` is `None` when the pinch left a single cycle.

        Raises:
            SweepError: with auditing on, a combination the geometry does
                not allow.
        """
        flags = (
            self.is_primary(self._forest.find(d1)),
            d2 is not None and self.is_primary(self._forest.find(d2)),
        )
        signature = (primary, *sorted(flags, reverse=True))
        if signature not in _SPLITS[side]:
            self._unexpected("split", signature, side)
        return flags

    def mrg_prim(self, b1: bool, b2: bool, d: DirectedEdge, side: Side) -> bool:
        """Primality of the cycle holding `d` after merging cycles whose
        primality was `b1` and `b2`.

        Raises:
            SweepError: with auditing on, a combination the geometry does
                not allow.
        """
        f = self.is_primary(self._forest.find(d))
        signature = (*sorted((b1, b2), reverse=True), f)
        if signature not in _MERGES[side]:
            self._unexpected("merge", signature, side)
        return f

    def encloses(self, tree: CycleTree, level: Fraction) -> bool:
        """Decide at the leftmost point of a cycle at `level` whether the
        region on its right is bounded.

        Points further left belong to the unbounded side, so the region is
        bounded iff every visit of the cycle to that point leaves the
        westward direction in its left wedge.
        """
        points = {d.tail: self._at(d.tail, level) for d in tree}
        e = min(points, key=points.__getitem__)
        p = points[e]
        for d in tree:
            if d.head != e:
                continue
            nxt = d.nxt
            if nxt.tri == d.tri:
                return False
            wedge = Wedge(sub2(points[d.tail], p), sub2(points[nxt.head], p))
            if not wedge.left_contains(WEST):
                return False
        return True

    # events

    def _fresh(self, e: int) -> int:
        self._stage_edges.add(e)
        return e

    def _resolve_split(
        self,
        side: Side,
        essential: bool,
        barcode: int | None,
        parts: list[CycleTree],
        flags: tuple[bool, bool],
    ) -> None:
        primaries = [x for x, f in zip(parts, flags) if f]
        for x, f in zip(parts, flags):
            x.essential, x.barcode = f, None
        self._stage_trees.extend(parts)
        rank = self._rank
        if not essential:
            for x in primaries:
                x.barcode = self._fresh(
                    self._graph.birth(rank, side, closed=side is Side.LEAVING)
                )
        elif len(primaries) == 2:
            e1, e2 = self._graph.split(barcode, rank, side)  # type: ignore
            primaries[0].barcode = self._fresh(e1)
            primaries[1].barcode = self._fresh(e2)
        elif primaries:
            primaries[0].barcode = barcode
        else:
            self._graph.death(barcode, rank, side, closed=side is Side.ENTERING)  # type: ignore

    def _resolve_merge(
        self,
        side: Side,
        olds: list[tuple[bool, int | None]],
        merged: CycleTree,
        f: bool,
    ) -> None:
        alive = [b for s, b in olds if s]
        merged.essential, merged.barcode = f, None
        self._stage_trees.append(merged)
        rank = self._rank
        if not f:
            for b in alive:
                self._graph.death(b, rank, side, closed=side is Side.ENTERING)  # type: ignore
        elif not alive:
            merged.barcode = self._fresh(
                self._graph.birth(rank, side, closed=side is Side.LEAVING)
            )
        elif len(alive) == 1:
            merged.barcode = alive[0]
        else:
            merged.barcode = self._fresh(
                self._graph.merge(alive[0], alive[1], rank, side)  # type: ignore
            )

    def _reconnect(self, din: DirectedEdge, dout: DirectedEdge, side: Side) -> None:
        """Make `dout` the successor of `din`, splitting or merging cycles."""
        t1, t2 = self._forest.find(din), self._forest.find(dout)
        if t1 is t2:
            essential, barcode = t1.essential, t1.barcode
            first, rest = self._forest.split_cycle(t1, dout, din)
            parts = [first] if rest is None else [first, rest]
            flags = self.split_prim(
                essential, dout, None if rest is None else rest.first, side
            )
            self._resolve_split(side, essential, barcode, parts, flags)
        else:
            olds = [(t1.essential, t1.barcode), (t2.essential, t2.barcode)]
            merged = self._forest.merge_cycle(din, dout)
            f = self.mrg_prim(t1.essential, t2.essential, din, side)
            self._resolve_merge(side, olds, merged, f)

    # phases

    def contract_edges(self, rank: int) -> None:
        """Delete the directed edges of the bottom triangles of vertex `rank`.

        Primary cycles losing their face die, closed, on entering the
        critical level.
        """
        star = self._star
        assert star is not None
        touched: dict[int, tuple[CycleTree, bool, int | None]] = {}
        for t in sorted(star.bottom_triangles):
            for d in self._registry.pop(t, []):
                tree = self._forest.find(d)
                if id(tree) not in touched:
                    touched[id(tree)] = (tree, tree.essential, tree.barcode)
                if self._forest.delete_leaf(d) is None:
                    _, essential, barcode = touched.pop(id(tree))
                    if essential:
                        self._graph.death(barcode, rank, Side.ENTERING, closed=True)  # type: ignore
        for tree, essential, barcode in touched.values():
            if essential and not self.is_primary(tree):
                self._graph.death(barcode, rank, Side.ENTERING, closed=True)  # type: ignore
                tree.essential, tree.barcode = False, None

    def update_to_critical(self, rank: int) -> None:
        """Move the middle triangles onto the vertex and apply the
        connection rule there."""
        star = self._star
        assert star is not None
        v = self._v
        for t in star.middle_triangles:
            lo, _, hi = self._tri(t)
            h, g = self._k.edge_id(lo, v), self._k.edge_id(v, hi)
            for d in self._registry.get(t, ()):
                if d.tail == h:
                    d.tail = g
                if d.head == h:
                    d.head = g
        middle = sorted(star.middle_triangles)
        if not middle:
            return
        z = self._order.height(v)
        o = self._order.points[v]

        def direction(t: int) -> Point2:
            lo, _, hi = self._tri(t)
            q = self._at(self._k.edge_id(lo, hi), z)
            return q[0] - o[0], q[1] - o[1]

        succ = connect_rule(circular_order(middle, direction, lambda t: t), direction)
        top = {t: self._k.edge_id(v, self._tri(t)[2]) for t in middle}
        for t in middle:
            (din,) = [d for d in self._registry[t] if d.head == top[t]]
            u = succ[t]
            (dout,) = [d for d in self._registry[u] if d.tail == top[u]]
            if din.nxt is not dout:
                self._reconnect(din, dout, Side.ENTERING)

    def _rotation(self, g: int, level: Fraction) -> dict[int, int]:
        tris = self._k.edge_triangles(g)
        base = self._at(g, level)

        def direction(t: int) -> Point2:
            q = self._at(self._other(t, g), level)
            return q[0] - base[0], q[1] - base[1]

        return connect_rule(circular_order(tris, direction, lambda t: t), direction)

    def next_link(
        self,
        d: DirectedEdge,
        rotations: dict[int, dict[int, int]],
        level: Fraction,
    ) -> tuple[DirectedEdge, DirectedEdge]:
        """Extend the cycle of `d` through top triangles.

        Missing directed edges are created and inserted after `d` in
        rotation order until an existing directed edge is reached.

        Returns:
            tuple: the last edge of the chain and the existing edge that
            must follow it.

        Raises:
            SweepError: the chain does not end within the star.
        """
        star = self._star
        assert star is not None
        limit = 2 * len(star.top_triangles) + 1
        cur = d
        for _ in range(limit + 1):
            g = cur.head
            if g not in rotations:
                rotations[g] = self._rotation(g, level)
            t = rotations[g][cur.tri]
            head = self._other(t, g)
            found = self._find(t, g, head)
            if found is not None:
                return cur, found
            new = self._create(t, g, head)
            self._forest.insert_after(new, cur)
            cur = new
        raise SweepError(f"Chain from {d} leaves the star of vertex {self._rank}")

    def update_to_intermediate(self, rank: int) -> None:
        """Extend cycles into the slab above the vertex and create the
        cycles made of top triangles only."""
        star = self._star
        assert star is not None
        level = self._mid_level(rank)
        rotations: dict[int, dict[int, int]] = {}
        incoming = [
            d
            for t in sorted(star.middle_triangles)
            for d in self._registry.get(t, ())
            if d.head in self._top
        ]
        for d in incoming:
            last, target = self.next_link(d, rotations, level)
            if last.nxt is not target:
                self._reconnect(last, target, Side.LEAVING)
        for t in sorted(star.top_triangles):
            a, b = self._crossing(t, rank)
            for tail, head in ((a, b), (b, a)):
                if self._find(t, tail, head) is not None:
                    continue
                d = self._create(t, tail, head)
                tree = self._forest.new_tree(d)
                last, target = self.next_link(d, rotations, level)
                if target is not d:
                    raise SweepError(f"New cycle at vertex {rank} does not close")
                tree = self._forest.find(d)
                self._stage_trees.append(tree)
                bounded = self.encloses(tree, level)
                if self._settings.audit and bounded != self.bounds_face(tree):
                    raise SweepError(
                        f"New cycle at vertex {rank} has turning number "
                        f"{self.winding(tree)}"
                    )
                if bounded and not tree.total[1]:
                    tree.essential = True
                    tree.barcode = self._fresh(
                        self._graph.birth(rank, Side.LEAVING, closed=True)
                    )

    # stages

    def _seed(self, d: DirectedEdge, stage: Stage) -> Seed:
        return Seed(
            rank=self._rank,
            stage=stage,
            tri=d.tri,
            tail=d.tail,
            head=d.head,
            side=self.right_side(d.tri, d.tail, d.head),
        )

    def _finish_stage(self, stage: Stage) -> None:
        for tree in self._stage_trees:
            if tree in self._forest and tree.essential:
                if tree.barcode in self._stage_edges:
                    self._graph.set_seed(tree.barcode, self._seed(tree.first, stage))
        self._stage_trees.clear()
        self._stage_edges.clear()
        for seed in self._traces.get((self._rank, stage), ()):
            d = self._find(seed.tri, seed.tail, seed.head)
            if d is None:
                raise SweepError(f"No directed edge for {seed}")
            self.traced[seed] = [x.key for x in self._walk(d)]

    @staticmethod
    def _walk(d: DirectedEdge) -> Iterable[DirectedEdge]:
        x = d
        while True:
            yield x
            x = x.nxt
            if x is d:
                return

    def census(self) -> Census:
        """Count cycles of the current level set by the face on their right."""
        primary = suppressed = secondary = 0
        for tree in self._forest.trees:
            if not self.bounds_face(tree):
                secondary += 1
            elif tree.total[1]:
                suppressed += 1
            else:
                primary += 1
        return Census(self._rank, primary, suppressed, secondary)

    def area(self, tree: CycleTree, level: Fraction) -> Fraction:
        """Twice the signed area enclosed by a cycle at `level`."""
        o = self._at(tree.first.tail, level)
        total = Fraction(0)
        for d in tree:
            total += orient2d(o, self._at(d.tail, level), self._at(d.head, level))
        return total

    def audit(self) -> None:
        """Compare the cycle forest with the level-set graph of the slab.

        Raises:
            SweepError: edge or cycle counts disagree, or a cycle turns
                against its enclosed area.
        """
        g = level_graph(self._k, self._order, self._rank)
        leaves = sum(len(t) for t in self._forest.trees)
        if leaves != 2 * g.number_of_edges():
            raise SweepError(
                f"Slab {self._rank}: {leaves} directed edges for "
                f"{g.number_of_edges()} level-set edges"
            )
        level = self._mid_level(self._rank)
        for tree in self._forest.trees:
            w = self.winding(tree)
            if w not in (-1, 1):
                raise SweepError(f"Slab {self._rank}: cycle with turning number {w}")
            if (w < 0) != (self.area(tree, level) < 0):
                raise SweepError(
                    f"Slab {self._rank}: cycle with turning number {w} "
                    f"encloses area {self.area(tree, level)}"
                )
        census = self.census()
        beta = (
            g.number_of_edges()
            - g.number_of_nodes()
            + nx.number_connected_components(g)
        )
        if census.primary + census.suppressed != beta:
            raise SweepError(
                f"Slab {self._rank}: {census.primary + census.suppressed} bounded "
                f"faces, first Betti number {beta}"
            )
        essential = sum(1 for t in self._forest.trees if t.essential)
        if essential != census.primary:
            raise SweepError(
                f"Slab {self._rank}: {essential} essential cycles, "
                f"{census.primary} primary"
            )

    def step(self, rank: int) -> None:
        """Process the vertex of a given rank."""
        self._rank = rank
        self._v = self._order.vertex(rank)
        self._star = classify_star(self._k, self._order, self._v)
        self._top = set(self._star.top_edges)
        logger.debug(
            "Vertex %d (rank %d): %d bottom, %d middle, %d top triangles",
            self._v,
            rank,
            len(self._star.bottom_triangles),
            len(self._star.middle_triangles),
            len(self._star.top_triangles),
        )
        self.contract_edges(rank)
        self.update_to_critical(rank)
        self._finish_stage(Stage.CRITICAL)
        self.update_to_intermediate(rank)
        self._finish_stage(Stage.SLAB)
        if self._settings.audit:
            self.audit()
        if self._on_slab is not None:
            self._on_slab(rank, self)

    def run(self) -> BarcodeGraph:
        for rank in range(1, self._order.m + 1):
            self.step(rank)
        if len(self._forest):
            raise SweepError(f"{len(self._forest)} cycles left above the top vertex")
        return self._graph


def sweep(
    k: EmbeddedComplex,
    order: SweepOrder,
    settings: SweepSettings | None = None,
    *,
    traces: Iterable[Seed] = (),
    on_slab: SlabCallback | None = None,
) -> LevelSweep:
    """Sweep a complex and return the finished engine.

    The barcode graph is available as `barcode_graph`, serialized
    cycles as `traced`.
    """
    engine = LevelSweep(k, order, settings, traces=traces, on_slab=on_slab)
    engine.run()
    logger.debug("Sweep emitted %d events", len(engine.barcode_graph.events))
    return engine
