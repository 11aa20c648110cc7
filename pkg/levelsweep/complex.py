"""Embedded simplicial complexes and height functions.

A complex of dimension at most 3 is given by exact vertex coordinates in
R³ and lists of simplices. Missing faces are added automatically. The
height of a vertex is the third coordinate after an affine transform;
the sweep processes vertices by increasing height, ties broken by vertex
index.

Input formats:

* `.scx` text: a header line `scx <nv> <ne> <nt> <ntet>`, then `nv` lines
  with `x y z`, then simplex lines `e a b`, `t a b c` and `T a b c d` with
  0-based vertex indices. Lines starting with `#` are ignored.
* OFF files with triangular faces only.

"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import networkx as nx

from .geometry import (
    Point3,
    cross3,
    dot3,
    radial_order,
    sign,
    signed_volume,
    sub3,
    triangle_normal,
)

logger = logging.getLogger(__name__)

Edge = tuple[int, int]
Triangle = tuple[int, int, int]
Tetrahedron = tuple[int, int, int, int]

_IDENTITY = (1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0)


class ComplexError(ValueError):
    """Invalid complex."""


class ParseError(ComplexError):
    """Malformed input text."""


class IndexOutOfRange(ComplexError):
    """Simplex refers to a missing vertex."""


class DuplicateSimplex(ComplexError):
    """The same simplex is listed twice."""


class DuplicateHeights(ComplexError):
    """Two vertices share a height and perturbation is off."""


class EmbeddingError(ComplexError):
    """Two simplices intersect outside of their common face."""


class EmbeddedComplex:
    """Simplicial complex linearly embedded in R³.

    Simplices are stored as sorted vertex tuples. Every simplex also has a
    global id: vertices come first, then edges, triangles and tetrahedra,
    each group in the order of its list.
    """

    def __init__(
        self,
        vertices: Sequence[Sequence[Fraction | int | str]],
        simplices: Iterable[Sequence[int]] = (),
        *,
        strict: bool = True,
    ) -> None:
        """
        Args:
            vertices: coordinates, exact decimals or rationals.
            simplices: vertex tuples of any dimension from 0 to 3.
            strict (bool): if `True`, a simplex listed twice is an error.

        Raises:
            IndexOutOfRange: a simplex refers to a missing vertex.
            DuplicateSimplex: a simplex is listed twice in strict mode.
            ComplexError: a simplex repeats a vertex or is too large.
        """
        self._vertices: tuple[Point3, ...] = tuple(
            (Fraction(p[0]), Fraction(p[1]), Fraction(p[2])) for p in vertices
        )
        nv = len(self._vertices)
        listed: set[tuple[int, ...]] = set()
        faces: list[set[tuple[int, ...]]] = [set(), set(), set(), set()]
        for s in simplices:
            key = tuple(sorted(int(i) for i in s))
            if not 1 <= len(key) <= 4:
                raise ComplexError(f"Unsupported simplex {tuple(s)}")
            if len(set(key)) != len(key):
                raise ComplexError(f"Degenerate simplex {tuple(s)}")
            for i in key:
                if not 0 <= i < nv:
                    raise IndexOutOfRange(f"Vertex {i} out of range in {tuple(s)}")
            if key in listed and strict:
                raise DuplicateSimplex(f"Duplicate simplex {key}")
            listed.add(key)
            for k in range(2, len(key) + 1):
                faces[k - 1].update(combinations(key, k))

        self._edges: tuple[Edge, ...] = tuple(sorted(faces[1]))  # type: ignore
        self._triangles: tuple[Triangle, ...] = tuple(sorted(faces[2]))  # type: ignore
        self._tetrahedra: tuple[Tetrahedron, ...] = tuple(sorted(faces[3]))  # type: ignore
        self._edge_index = {e: i for i, e in enumerate(self._edges)}
        self._triangle_index = {t: i for i, t in enumerate(self._triangles)}
        self._tetrahedron_index = {t: i for i, t in enumerate(self._tetrahedra)}

        self._vertex_edges: list[list[int]] = [[] for _ in range(nv)]
        for i, (a, b) in enumerate(self._edges):
            self._vertex_edges[a].append(i)
            self._vertex_edges[b].append(i)

        self._vertex_triangles: list[list[int]] = [[] for _ in range(nv)]
        self._edge_triangles: list[list[int]] = [[] for _ in self._edges]
        for i, t in enumerate(self._triangles):
            for v in t:
                self._vertex_triangles[v].append(i)
            for e in combinations(t, 2):
                self._edge_triangles[self._edge_index[e]].append(i)

        self._triangle_tetrahedra: list[list[int]] = [[] for _ in self._triangles]
        for i, tet in enumerate(self._tetrahedra):
            for t in combinations(tet, 3):
                self._triangle_tetrahedra[self._triangle_index[t]].append(i)

        self._radial: dict[int, tuple[int, ...]] = {}

    def __repr__(self) -> str:
        return (
            f"EmbeddedComplex(v={len(self._vertices)}, e={len(self._edges)}, "
            f"t={len(self._triangles)}, T={len(self._tetrahedra)})"
        )

    @property
    def vertices(self) -> tuple[Point3, ...]:
        """
        Returns:
            tuple[Point3, ...]: vertex coordinates.
        """
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def triangles(self) -> tuple[Triangle, ...]:
        return self._triangles

    @property
    def tetrahedra(self) -> tuple[Tetrahedron, ...]:
        return self._tetrahedra

    @property
    def size(self) -> int:
        """
        Returns:
            int: total number of simplices.
        """
        return (
            len(self._vertices)
            + len(self._edges)
            + len(self._triangles)
            + len(self._tetrahedra)
        )

    @property
    def euler_characteristic(self) -> int:
        return (
            len(self._vertices)
            - len(self._edges)
            + len(self._triangles)
            - len(self._tetrahedra)
        )

    def edge_id(self, a: int, b: int) -> int:
        """Index of the edge with given endpoints, in any order."""
        return self._edge_index[(a, b) if a < b else (b, a)]

    def triangle_id(self, a: int, b: int, c: int) -> int:
        return self._triangle_index[tuple(sorted((a, b, c)))]  # type: ignore

    def vertex_edges(self, v: int) -> list[int]:
        return self._vertex_edges[v]

    def vertex_triangles(self, v: int) -> list[int]:
        return self._vertex_triangles[v]

    def edge_triangles(self, e: int) -> list[int]:
        """Triangles incident to an edge, in no particular order."""
        return self._edge_triangles[e]

    def triangle_tetrahedra(self, t: int) -> list[int]:
        """Tetrahedra incident to a triangle: 0, 1 or 2 of them."""
        return self._triangle_tetrahedra[t]

    def triangle_edges(self, t: int) -> tuple[int, int, int]:
        a, b, c = self._triangles[t]
        return self.edge_id(a, b), self.edge_id(a, c), self.edge_id(b, c)

    def simplex_id(self, dim: int, index: int) -> int:
        """Global id of a simplex given its dimension and index in its list."""
        offsets = (
            0,
            len(self._vertices),
            len(self._vertices) + len(self._edges),
            len(self._vertices) + len(self._edges) + len(self._triangles),
        )
        return offsets[dim] + index

    def transformed(self, h: "HeightFunction") -> "EmbeddedComplex":
        """Copy of the complex with the affine transform applied to all vertices."""
        k = EmbeddedComplex([h.apply(p) for p in self._vertices])
        k._edges = self._edges
        k._triangles = self._triangles
        k._tetrahedra = self._tetrahedra
        k._edge_index = self._edge_index
        k._triangle_index = self._triangle_index
        k._tetrahedron_index = self._tetrahedron_index
        k._vertex_edges = self._vertex_edges
        k._vertex_triangles = self._vertex_triangles
        k._edge_triangles = self._edge_triangles
        k._triangle_tetrahedra = self._triangle_tetrahedra
        return k

    def radial_triangles(self, e: int) -> tuple[int, ...]:
        """Triangles around an edge, counter-clockwise about the direction
        from its smaller to its larger vertex index."""
        if e not in self._radial:
            p, q = self._edges[e]
            pts = self._vertices
            axis = sub3(pts[q], pts[p])

            def offset(t: int) -> Point3:
                (w,) = set(self._triangles[t]) - {p, q}
                return sub3(pts[w], pts[p])

            self._radial[e] = tuple(
                radial_order(axis, self._edge_triangles[e], offset, lambda t: t)
            )
        return self._radial[e]


def _parse_number(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"Line {lineno}: bad number {token!r}")


def _parse_index(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"Line {lineno}: bad index {token!r}")


def parse_scx(text: str) -> EmbeddedComplex:
    """Parse `.scx` text.

    Raises:
        ParseError: malformed text or counts that do not match the header.
    """
    lines = [
        (n, s.split())
        for n, s in enumerate(text.splitlines(), start=1)
        if s.strip() and not s.lstrip().startswith("#")
    ]
    if not lines or lines[0][1][0] != "scx" or len(lines[0][1]) != 5:
        raise ParseError("Missing header 'scx <nv> <ne> <nt> <ntet>'")
    counts = [_parse_index(x, lines[0][0]) for x in lines[0][1][1:]]
    nv = counts[0]
    if len(lines) < nv + 1:
        raise ParseError("Not enough vertex lines")
    vertices = []
    for lineno, tokens in lines[1 : nv + 1]:
        if len(tokens) != 3:
            raise ParseError(f"Line {lineno}: expected 3 coordinates")
        vertices.append(tuple(_parse_number(x, lineno) for x in tokens))

    arity = {"e": 2, "t": 3, "T": 4}
    found = {"e": 0, "t": 0, "T": 0}
    simplices = []
    for lineno, tokens in lines[nv + 1 :]:
        tag = tokens[0]
        if tag not in arity or len(tokens) != arity[tag] + 1:
            raise ParseError(f"Line {lineno}: bad simplex line")
        found[tag] += 1
        simplices.append([_parse_index(x, lineno) for x in tokens[1:]])
    if [found["e"], found["t"], found["T"]] != counts[1:]:
        raise ParseError("Simplex counts do not match the header")
    return EmbeddedComplex(vertices, simplices)


def format_scx(k: EmbeddedComplex) -> str:
    """`.scx` text listing every edge, triangle and tetrahedron of a complex."""
    lines = [
        f"scx {len(k.vertices)} {len(k.edges)} {len(k.triangles)} {len(k.tetrahedra)}"
    ]
    lines += [" ".join(str(x) for x in p) for p in k.vertices]
    for tag, simplices in (("e", k.edges), ("t", k.triangles), ("T", k.tetrahedra)):
        lines += [" ".join([tag, *map(str, s)]) for s in simplices]
    return "\n".join(lines) + "\n"


def parse_off(text: str) -> EmbeddedComplex:
    """Parse an OFF file with triangular faces.

    Raises:
        ParseError: malformed text or a non-triangular face.
    """
    tokens = [
        (n, s.split("#")[0].split())
        for n, s in enumerate(text.splitlines(), start=1)
    ]
    tokens = [(n, t) for n, t in tokens if t]
    if not tokens or tokens[0][1][0] != "OFF":
        raise ParseError("Missing OFF header")
    if len(tokens) < 2 and not tokens[0][1][1:]:
        raise ParseError("Missing OFF counts")
    head = tokens[0][1][1:] or tokens[1][1]
    start = 1 if tokens[0][1][1:] else 2
    if len(head) < 2:
        raise ParseError("Bad OFF counts")
    nv, nf = _parse_index(head[0], 1), _parse_index(head[1], 1)
    body = tokens[start:]
    if len(body) < nv + nf:
        raise ParseError("Not enough OFF records")
    vertices = []
    for lineno, t in body[:nv]:
        if len(t) < 3:
            raise ParseError(f"Line {lineno}: expected 3 coordinates")
        vertices.append(tuple(_parse_number(x, lineno) for x in t[:3]))
    faces = []
    for lineno, t in body[nv : nv + nf]:
        if _parse_index(t[0], lineno) != 3 or len(t) < 4:
            raise ParseError(f"Line {lineno}: only triangular faces are supported")
        faces.append([_parse_index(x, lineno) for x in t[1:4]])
    return EmbeddedComplex(vertices, faces)


def load_complex(source: str | Path) -> EmbeddedComplex:
    """Load a complex from a `.scx` or OFF file.

    Args:
        source: path to the file.

    Returns:
        EmbeddedComplex: complex closed under faces.
    """
    path = Path(source)
    text = path.read_text(encoding="utf-8")
    first = text.lstrip().split(maxsplit=1)[0] if text.strip() else ""
    if path.suffix.lower() == ".off" or first.startswith("OFF"):
        k = parse_off(text)
    else:
        k = parse_scx(text)
    logger.debug("Loaded %s from %s", k, path)
    return k


def _orient3d(a: Point3, b: Point3, c: Point3, d: Point3) -> int:
    return sign(dot3(sub3(d, a), cross3(sub3(b, a), sub3(c, a))))


def _segment_crosses_triangle(p: Point3, q: Point3, tri: Sequence[Point3]) -> bool:
    a, b, c = tri
    if _orient3d(a, b, c, p) * _orient3d(a, b, c, q) >= 0:
        return False
    s1 = _orient3d(p, q, a, b)
    s2 = _orient3d(p, q, b, c)
    s3 = _orient3d(p, q, c, a)
    return s1 == s2 == s3 != 0


def validate_embedding(k: EmbeddedComplex) -> None:
    """Check pairs of vertex-disjoint edges and triangles for crossings.

    Quadratic in the number of simplices; meant for ingest checks on small
    inputs.

    Raises:
        EmbeddingError: the first crossing pair found.
    """
    pts = k.vertices
    for ti, t in enumerate(k.triangles):
        corners = [pts[v] for v in t]
        for ei, (a, b) in enumerate(k.edges):
            if a in t or b in t:
                continue
            if _segment_crosses_triangle(pts[a], pts[b], corners):
                raise EmbeddingError(f"Edge {k.edges[ei]} crosses triangle {t}")


@dataclass(frozen=True)
class HeightFunction:
    """Height `z(x)`: the third coordinate of `T(x)` for an affine map `T`.

    The transform is a row-major 3×4 matrix whose last column is the
    translation.
    """

    transform: tuple[Fraction, ...] = field(
        default=tuple(Fraction(x) for x in _IDENTITY)
    )

    def __post_init__(self) -> None:
        if len(self.transform) != 12:
            raise ValueError("Transform needs 12 numbers")
        object.__setattr__(
            self, "transform", tuple(Fraction(x) for x in self.transform)
        )
        m = self.transform
        det = (
            m[0] * (m[5] * m[10] - m[6] * m[9])
            - m[1] * (m[4] * m[10] - m[6] * m[8])
            + m[2] * (m[4] * m[9] - m[5] * m[8])
        )
        if det == 0:
            raise ValueError("Transform is not invertible")

    @classmethod
    def from_values(cls, values: Iterable[Fraction | int | str]) -> "HeightFunction":
        return cls(tuple(Fraction(x) for x in values))

    def apply(self, p: Point3) -> Point3:
        m = self.transform
        return (
            m[0] * p[0] + m[1] * p[1] + m[2] * p[2] + m[3],
            m[4] * p[0] + m[5] * p[1] + m[6] * p[2] + m[7],
            m[8] * p[0] + m[9] * p[1] + m[10] * p[2] + m[11],
        )

    def __call__(self, p: Point3) -> Fraction:
        return self.apply(p)[2]

    def flipped(self) -> "HeightFunction":
        """Height function of `-z`, realized by mirroring the last two rows."""
        m = self.transform
        return HeightFunction(m[:4] + tuple(-x for x in m[4:]))


@dataclass(frozen=True)
class SweepOrder:
    """Vertices ordered by increasing height.

    Ranks are 1-based: rank `i` belongs to vertex `v_i` with critical value
    `a_i`. Slab `i` is the open range between `a_i` and `a_{i+1}`, with
    slabs `0` and `m` unbounded.
    """

    vertices: tuple[int, ...]
    ranks: tuple[int, ...]
    values: tuple[Fraction, ...]
    points: tuple[Point3, ...]

    @property
    def m(self) -> int:
        return len(self.vertices)

    def vertex(self, rank: int) -> int:
        return self.vertices[rank - 1]

    def value(self, rank: int) -> Fraction:
        """Critical value `a_rank` (the unperturbed height)."""
        return self.values[rank - 1]

    def rank(self, v: int) -> int:
        return self.ranks[v]

    def height(self, v: int) -> Fraction:
        """Height used by geometric predicates, perturbed if needed."""
        return self.points[v][2]

    def lowest(self, simplex: Iterable[int]) -> int:
        return min(simplex, key=self.ranks.__getitem__)

    def highest(self, simplex: Iterable[int]) -> int:
        return max(simplex, key=self.ranks.__getitem__)

    def sorted(self, simplex: Iterable[int]) -> tuple[int, ...]:
        """Vertices of a simplex from lowest to highest."""
        return tuple(sorted(simplex, key=self.ranks.__getitem__))


def order_vertices(
    k: EmbeddedComplex, h: HeightFunction | None = None, *, perturb: bool = True
) -> SweepOrder:
    """Order vertices by height.

    With `perturb`, equal heights are ordered by vertex index and the
    geometric heights of tied vertices are shifted by tiny distinct
    amounts, so the order is strict for every downstream predicate.

    Args:
        k (EmbeddedComplex): the complex.
        h (HeightFunction): height function, identity by default.
        perturb (bool): break ties instead of failing.

    Returns:
        SweepOrder: strict total order.

    Raises:
        DuplicateHeights: two vertices share a height and `perturb` is off.
    """
    if h is None:
        h = HeightFunction()
    pts = [h.apply(p) for p in k.vertices]
    order = sorted(range(len(pts)), key=lambda v: (pts[v][2], v))
    heights = [pts[v][2] for v in order]
    distinct = sorted(set(heights))
    if len(distinct) != len(heights):
        if not perturb:
            raise DuplicateHeights("Vertices share a height")
        gaps = [b - a for a, b in zip(distinct, distinct[1:])] or [Fraction(1)]
        delta = min(gaps) / (4 * len(pts))
        j = 0
        for pos in range(1, len(order)):
            j = j + 1 if heights[pos] == heights[pos - 1] else 0
            if j:
                x, y, z = pts[order[pos]]
                pts[order[pos]] = (x, y, z + j * delta)
        logger.debug("Perturbed %d tied heights", len(heights) - len(distinct))
    ranks = [0] * len(pts)
    for i, v in enumerate(order, start=1):
        ranks[v] = i
    return SweepOrder(
        vertices=tuple(order),
        ranks=tuple(ranks),
        values=tuple(heights),
        points=tuple(pts),
    )


@dataclass(frozen=True)
class StarClassification:
    """Simplices around a vertex, classified by the position of the vertex."""

    vertex: int
    top_triangles: tuple[int, ...]
    middle_triangles: tuple[int, ...]
    bottom_triangles: tuple[int, ...]
    top_edges: tuple[int, ...]
    bottom_edges: tuple[int, ...]
    dangling_edges: tuple[int, ...]


def classify_star(k: EmbeddedComplex, order: SweepOrder, v: int) -> StarClassification:
    """Split the star of a vertex into top, middle and bottom parts.

    A triangle is top if `v` is its lowest vertex, bottom if `v` is its
    highest one and middle otherwise. An edge is top if its other vertex is
    higher. Edges without incident triangles are listed as dangling too.
    """
    top, middle, bottom = [], [], []
    for t in k.vertex_triangles(v):
        lo, _, hi = order.sorted(k.triangles[t])
        if lo == v:
            top.append(t)
        elif hi == v:
            bottom.append(t)
        else:
            middle.append(t)
    top_edges, bottom_edges, dangling = [], [], []
    r = order.rank(v)
    for e in k.vertex_edges(v):
        a, b = k.edges[e]
        other = b if a == v else a
        (top_edges if order.rank(other) > r else bottom_edges).append(e)
        if not k.edge_triangles(e):
            dangling.append(e)
    return StarClassification(
        vertex=v,
        top_triangles=tuple(top),
        middle_triangles=tuple(middle),
        bottom_triangles=tuple(bottom),
        top_edges=tuple(top_edges),
        bottom_edges=tuple(bottom_edges),
        dangling_edges=tuple(dangling),
    )


def crossing_edges(
    k: EmbeddedComplex, order: SweepOrder, t: int, slab: int
) -> tuple[int, int] | None:
    """The two edges of a triangle that cross a slab, or `None`."""
    lo, mid, hi = order.sorted(k.triangles[t])
    if not order.rank(lo) <= slab < order.rank(hi):
        return None
    short = (lo, mid) if slab < order.rank(mid) else (mid, hi)
    return k.edge_id(lo, hi), k.edge_id(*short)


def level_graph(k: EmbeddedComplex, order: SweepOrder, slab: int) -> nx.Graph:
    """Level-set graph of a slab.

    Nodes are the edges crossing the slab; two of them are adjacent when a
    triangle crosses the slab through both.
    """
    g = nx.Graph()
    for e, (a, b) in enumerate(k.edges):
        lo, hi = sorted((order.rank(a), order.rank(b)))
        if lo <= slab < hi:
            g.add_node(e)
    for t in range(len(k.triangles)):
        pair = crossing_edges(k, order, t, slab)
        if pair is not None:
            g.add_edge(*pair, triangle=t)
    return g


def skeleton_graph(k: EmbeddedComplex) -> nx.Graph:
    """1-skeleton as a networkx graph with edge ids stored on edges."""
    g = nx.Graph()
    g.add_nodes_from(range(len(k.vertices)))
    for i, (a, b) in enumerate(k.edges):
        g.add_edge(a, b, id=i)
    return g


def _faces_tetrahedron(
    k: EmbeddedComplex, t: int, side: int, pts: Sequence[Point3]
) -> bool:
    a, b, c = k.triangles[t]
    n = triangle_normal(pts[a], pts[b], pts[c])
    for tet in k.triangle_tetrahedra(t):
        (w,) = set(k.tetrahedra[tet]) - {a, b, c}
        if sign(dot3(n, sub3(pts[w], pts[a]))) == side:
            return True
    return False


def _shell(
    k: EmbeddedComplex, t: int, side: int, pts: Sequence[Point3]
) -> tuple[set[tuple[int, int]], Fraction]:
    """Triangle sides reachable from `(t, side)` without crossing |K|,
    together with the signed volume they bound."""
    normals: dict[int, Point3] = {}

    def normal(x: int) -> Point3:
        if x not in normals:
            a, b, c = k.triangles[x]
            normals[x] = triangle_normal(pts[a], pts[b], pts[c])
        return normals[x]

    def third(x: int, p: int, q: int) -> int:
        (w,) = set(k.triangles[x]) - {p, q}
        return w

    seen = {(t, side)}
    stack = [(t, side)]
    volume = Fraction(0)
    while stack:
        x, s = stack.pop()
        a, b, c = k.triangles[x]
        volume += s * signed_volume(pts[a], pts[b], pts[c])
        for p, q in ((a, b), (a, c), (b, c)):
            e = k.edge_id(p, q)
            axis = sub3(pts[q], pts[p])
            around = k.radial_triangles(e)
            pos = around.index(x)
            turn = dot3(normal(x), cross3(axis, sub3(pts[third(x, p, q)], pts[p])))
            ccw = s * turn > 0
            y = around[(pos + 1) % len(around)] if ccw else around[pos - 1]
            back = sign(
                dot3(normal(y), cross3(axis, sub3(pts[third(y, p, q)], pts[p])))
            )
            state = (y, -back if ccw else back)
            if state not in seen:
                seen.add(state)
                stack.append(state)
    return seen, volume


def void_walk(
    k: EmbeddedComplex, t: int, side: int, *, points: Sequence[Point3] | None = None
) -> frozenset[int] | None:
    """Boundary of the void seen from one side of a triangle.

    Sides are `+1` (the side the normal of the sorted vertex triple points
    to) and `-1`. The walk crosses edges, turning around each of them to
    the next triangle in radial order.

    Args:
        k (EmbeddedComplex): the complex.
        t (int): triangle index.
        side (int): +1 or -1.
        points: coordinates to use instead of the vertices of `k`, e.g.
            transformed ones.

    Returns:
        frozenset[int] | None: triangles of the boundary 2-cycle (sides
        counted mod 2), or `None` if the side faces the unbounded region.
    """
    pts = k.vertices if points is None else points
    if points is not None and points is not k.vertices:
        k = _with_points(k, pts)
    sides, volume = _shell(k, t, side, pts)
    if volume >= 0:
        logger.debug("Walk from triangle %d side %d is unbounded", t, side)
        return None
    odd: set[int] = set()
    for x, _ in sides:
        odd ^= {x}
    return frozenset(odd)


def _with_points(k: EmbeddedComplex, pts: Sequence[Point3]) -> EmbeddedComplex:
    copy = k.transformed(HeightFunction())
    copy._vertices = tuple(pts)
    return copy


def betti_linear(k: EmbeddedComplex) -> tuple[int, int, int]:
    """Betti numbers of |K| without matrix reduction.

    Components come from the 1-skeleton, voids from walks over all triangle
    sides that do not face a tetrahedron, and the first Betti number from
    the Euler characteristic.

    Returns:
        tuple[int, int, int]: (β0, β1, β2).
    """
    b0 = nx.number_connected_components(skeleton_graph(k))
    pts = k.vertices
    seen: set[tuple[int, int]] = set()
    b2 = 0
    for t in range(len(k.triangles)):
        for side in (1, -1):
            if (t, side) in seen or _faces_tetrahedron(k, t, side, pts):
                continue
            shell, volume = _shell(k, t, side, pts)
            seen |= shell
            if volume < 0:
                b2 += 1
    b1 = b0 + b2 - k.euler_characteristic
    logger.debug("Betti numbers of %s: %d %d %d", k, b0, b1, b2)
    return b0, b1, b2
