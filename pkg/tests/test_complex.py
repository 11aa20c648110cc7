from fractions import Fraction

from pytest import fixture, mark, raises

from levelsweep.complex import (
    ComplexError,
    DuplicateHeights,
    DuplicateSimplex,
    EmbeddedComplex,
    EmbeddingError,
    HeightFunction,
    IndexOutOfRange,
    ParseError,
    betti_linear,
    classify_star,
    crossing_edges,
    format_scx,
    level_graph,
    load_complex,
    order_vertices,
    parse_off,
    parse_scx,
    skeleton_graph,
    validate_embedding,
    void_walk,
)
from levelsweep.samples import BETTI, SAMPLES, TILT, tetrahedron_boundary, triangle

SCX = """\
# one triangle and a dangling edge
scx 4 1 1 0
0 0 0
2 0 1
0 2 2
1/2 1/2 5
t 0 1 2
e 2 3
"""

OFF = """\
OFF
4 4 0
0 0 0
4 0 1
0 4 2
1 1 3
3 0 1 2
3 0 1 3
3 0 2 3
3 1 2 3
"""


class TestEmbeddedComplex:
    @fixture()
    def solid(self):
        return SAMPLES["solid"]()

    def test_faces_are_added(self, solid):
        assert len(solid.edges) == 6
        assert len(solid.triangles) == 4
        assert len(solid.tetrahedra) == 1

    def test_euler_characteristic(self, solid):
        assert solid.euler_characteristic == 1

    def test_size(self, solid):
        assert solid.size == 15

    def test_simplex_ids(self, solid):
        assert solid.simplex_id(0, 3) == 3
        assert solid.simplex_id(1, 0) == 4
        assert solid.simplex_id(2, 0) == 10
        assert solid.simplex_id(3, 0) == 14

    def test_edge_id_any_order(self, solid):
        assert solid.edge_id(3, 0) == solid.edge_id(0, 3)

    def test_triangle_edges(self, solid):
        t = solid.triangle_id(2, 0, 1)
        assert solid.triangle_edges(t) == (
            solid.edge_id(0, 1),
            solid.edge_id(0, 2),
            solid.edge_id(1, 2),
        )

    def test_triangle_tetrahedra(self, solid):
        assert all(solid.triangle_tetrahedra(t) == [0] for t in range(4))

    def test_radial_triangles(self, solid):
        e = solid.edge_id(0, 1)
        assert sorted(solid.radial_triangles(e)) == sorted(solid.edge_triangles(e))

    def test_duplicate(self):
        with raises(DuplicateSimplex):
            EmbeddedComplex([(0, 0, 0), (1, 0, 0)], [(0, 1), (1, 0)])

    def test_duplicate_allowed(self):
        k = EmbeddedComplex([(0, 0, 0), (1, 0, 0)], [(0, 1), (1, 0)], strict=False)
        assert len(k.edges) == 1

    def test_out_of_range(self):
        with raises(IndexOutOfRange):
            EmbeddedComplex([(0, 0, 0)], [(0, 1)])

    def test_degenerate(self):
        with raises(ComplexError):
            EmbeddedComplex([(0, 0, 0), (1, 0, 0)], [(0, 0)])


class TestParsing:
    def test_scx(self):
        k = parse_scx(SCX)
        assert len(k.vertices) == 4
        assert k.vertices[3] == (Fraction(1, 2), Fraction(1, 2), 5)
        assert k.edges == ((0, 1), (0, 2), (1, 2), (2, 3))
        assert k.triangles == ((0, 1, 2),)

    def test_scx_format_round_trip(self):
        k = tetrahedron_boundary()
        again = parse_scx(format_scx(k))
        assert again.vertices == k.vertices
        assert again.triangles == k.triangles

    @mark.parametrize(
        "text",
        [
            "",
            "ply 1 0 0 0\n0 0 0\n",
            "scx 2 0 0 0\n0 0 0\n",
            "scx 1 0 0 0\n0 0\n",
            "scx 1 0 0 0\n0 0 x\n",
            "scx 2 1 0 0\n0 0 0\n1 0 0\nq 0 1\n",
            "scx 2 2 0 0\n0 0 0\n1 0 0\ne 0 1\n",
        ],
    )
    def test_scx_errors(self, text):
        with raises(ParseError):
            parse_scx(text)

    def test_off(self):
        k = parse_off(OFF)
        assert k.triangles == tetrahedron_boundary().triangles

    @mark.parametrize(
        "text", ["OFF\n", "OFF\n# only a comment\n", "OFF 3\n", "OFF\n3 1 0\n0 0 0\n"]
    )
    def test_off_errors(self, text):
        with raises(ParseError):
            parse_off(text)

    def test_off_quad(self):
        with raises(ParseError):
            parse_off("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n")

    def test_load_by_suffix(self, tmp_path):
        path = tmp_path / "sphere.off"
        path.write_text(OFF)
        assert len(load_complex(path).triangles) == 4

    def test_load_scx(self, tmp_path):
        path = tmp_path / "tri.scx"
        path.write_text(SCX)
        assert len(load_complex(path).edges) == 4

    def test_load_missing(self, tmp_path):
        with raises(OSError):
            load_complex(tmp_path / "missing.scx")


class TestEmbedding:
    def test_crossing(self):
        k = EmbeddedComplex(
            [(0, 0, 0), (4, 0, 0), (0, 4, 0), (1, 1, -1), (1, 1, 1)],
            [(0, 1, 2), (3, 4)],
        )
        with raises(EmbeddingError):
            validate_embedding(k)

    def test_disjoint(self):
        k = EmbeddedComplex(
            [(0, 0, 0), (4, 0, 0), (0, 4, 0), (5, 5, -1), (5, 5, 1)],
            [(0, 1, 2), (3, 4)],
        )
        validate_embedding(k)

    @mark.parametrize("name", ["sphere", "solid", "torus", "wedge"])
    def test_samples(self, name):
        validate_embedding(SAMPLES[name]())


class TestHeightFunction:
    def test_identity(self):
        assert HeightFunction()((1, 2, 3)) == 3

    def test_affine(self):
        h = HeightFunction.from_values([1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, "1/2"])
        assert h((1, 2, 3)) == Fraction(13, 2)

    def test_singular(self):
        with raises(ValueError):
            HeightFunction.from_values([1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0])

    def test_wrong_length(self):
        with raises(ValueError):
            HeightFunction.from_values([1, 0, 0])

    def test_flipped(self):
        assert TILT.flipped()((1, 2, 3)) == -TILT((1, 2, 3))


class TestOrder:
    def test_ranks(self):
        order = order_vertices(triangle())
        assert order.vertices == (0, 1, 2)
        assert order.ranks == (1, 2, 3)
        assert order.values == (0, 1, 2)
        assert order.m == 3

    def test_flipped(self):
        order = order_vertices(triangle(), HeightFunction().flipped())
        assert order.vertices == (2, 1, 0)
        assert order.value(1) == -2

    def test_ties_perturbed(self):
        k = EmbeddedComplex([(0, 0, 0), (1, 0, 0), (0, 1, 1)], [(0, 1, 2)])
        order = order_vertices(k)
        assert order.vertices == (0, 1, 2)
        assert order.values == (0, 0, 1)
        assert 0 < order.height(1) < 1

    def test_ties_rejected(self):
        k = EmbeddedComplex([(0, 0, 0), (1, 0, 0)], [(0, 1)])
        with raises(DuplicateHeights):
            order_vertices(k, perturb=False)

    def test_lowest_highest(self):
        order = order_vertices(triangle(), HeightFunction().flipped())
        assert order.lowest((0, 1, 2)) == 2
        assert order.highest((0, 1, 2)) == 0
        assert order.sorted((0, 1, 2)) == (2, 1, 0)


class TestStar:
    @fixture()
    def k(self):
        return triangle()

    @fixture()
    def order(self, k):
        return order_vertices(k)

    def test_middle(self, k, order):
        star = classify_star(k, order, 1)
        assert star.middle_triangles == (0,)
        assert star.bottom_edges == (k.edge_id(0, 1),)
        assert star.top_edges == (k.edge_id(1, 2),)
        assert star.dangling_edges == ()

    def test_bottom_and_top(self, k, order):
        assert classify_star(k, order, 0).top_triangles == (0,)
        assert classify_star(k, order, 2).bottom_triangles == (0,)

    def test_dangling(self):
        k = parse_scx(SCX)
        star = classify_star(k, order_vertices(k), 3)
        assert star.dangling_edges == (k.edge_id(2, 3),)

    @mark.parametrize(
        "slab, expected",
        [(0, None), (1, (1, 0)), (2, (1, 2)), (3, None)],
    )
    def test_crossing_edges(self, k, order, slab, expected):
        assert crossing_edges(k, order, 0, slab) == expected

    def test_level_graph(self, k, order):
        g = level_graph(k, order, 1)
        assert sorted(g.nodes) == [0, 1]
        assert g.edges[0, 1]["triangle"] == 0

    def test_level_graph_empty(self, k, order):
        assert level_graph(k, order, 3).number_of_nodes() == 0


class TestVoids:
    def test_inside(self):
        k = tetrahedron_boundary()
        assert void_walk(k, 0, 1) == frozenset({0, 1, 2, 3})

    def test_outside(self):
        assert void_walk(tetrahedron_boundary(), 0, -1) is None

    def test_transformed_points(self):
        k = tetrahedron_boundary()
        order = order_vertices(k, TILT.flipped())
        assert void_walk(k, 0, 1, points=order.points) == frozenset({0, 1, 2, 3})

    def test_single_triangle(self):
        assert void_walk(triangle(), 0, 1) is None
        assert void_walk(triangle(), 0, -1) is None


@mark.parametrize("name", sorted(SAMPLES))
def test_betti_linear(name):
    assert betti_linear(SAMPLES[name]()) == BETTI[name]


def test_skeleton_graph():
    g = skeleton_graph(parse_scx(SCX))
    assert g.number_of_nodes() == 4
    assert g.edges[2, 3]["id"] == 3
