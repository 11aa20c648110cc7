from fractions import Fraction
from itertools import combinations, permutations, product

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from pytest import fixture, mark, raises

from levelsweep.barcodes import Bar
from levelsweep.categories import BarKind, Flavor
from levelsweep.complex import EmbeddedComplex, HeightFunction, betti_linear
from levelsweep.oracle import reduce_persistence
from levelsweep.persistence import (
    Barcode,
    HeightAnalysis,
    levelset_barcode,
    reflect_barcode,
    sublevel_barcode,
    sublevel_from_levelset,
)
from levelsweep.samples import (
    BETTI,
    SAMPLES,
    TILT,
    tetrahedron_boundary,
    torus_points,
    torus_triangles,
    triangle,
)
from levelsweep.sweep import SweepSettings


def reference(analysis, dim):
    bars = reduce_persistence(analysis.complex, analysis.order)[dim]
    return sorted(b.key for b in bars)


class TestTriangle:
    def test_sublevel(self):
        k = triangle()
        assert sublevel_barcode(k, dim=0).keys() == [(0, 1, 4, True, False)]
        assert sublevel_barcode(k, dim=1).bars == []
        assert sublevel_barcode(k, dim=2).bars == []

    def test_levelset(self):
        assert levelset_barcode(triangle(), dim=1).bars == []
        assert levelset_barcode(triangle(), dim=0).keys() == [(0, 1, 3, True, True)]


class TestSphere:
    @fixture()
    def analysis(self):
        return HeightAnalysis(tetrahedron_boundary(), TILT)

    def test_levelset(self, analysis):
        assert analysis.levelset(1).keys() == [(1, 1, 4, False, False)]
        assert analysis.levelset(2).bars == []

    def test_sublevel(self, analysis):
        assert analysis.sublevel(0).keys() == [(0, 1, 5, True, False)]
        assert analysis.sublevel(1).bars == []
        assert analysis.sublevel(2).keys() == [(2, 4, 5, True, False)]

    def test_values(self, analysis):
        (bar,) = analysis.sublevel(2)
        assert bar.birth == Fraction(311, 100)
        assert bar.death == float("inf")
        assert bar.source is analysis.levelset(1).bars[0]

    def test_barcode_flavor(self, analysis):
        assert analysis.barcode(1, Flavor.LEVELSET) is analysis.levelset(1)
        assert analysis.barcode(2, Flavor.SUBLEVEL).flavor is Flavor.SUBLEVEL

    def test_bad_dimension(self, analysis):
        with raises(ValueError):
            analysis.levelset(3)
        with raises(ValueError):
            analysis.sublevel(3)

    def test_bar_generators(self, analysis):
        (cycle,) = analysis.bar_generators(analysis.sublevel(2))
        assert cycle.support == frozenset({0, 1, 2, 3})
        assert analysis.bar_generators(analysis.sublevel(0)) == [None]


class TestWedge:
    def test_sublevel(self):
        analysis = HeightAnalysis(SAMPLES["wedge"](), TILT)
        assert analysis.sublevel(2).keys() == [
            (2, 4, 8, True, False),
            (2, 7, 8, True, False),
        ]
        assert analysis.levelset(1).keys() == [
            (1, 1, 4, False, False),
            (1, 4, 7, False, False),
        ]


class TestMixed:
    def test_sublevel(self):
        analysis = HeightAnalysis(SAMPLES["mixed"](), TILT)
        assert analysis.sublevel(0).keys() == [
            (0, 1, 14, True, False),
            (0, 5, 14, True, False),
            (0, 8, 14, True, False),
            (0, 10, 14, True, False),
        ]
        assert analysis.sublevel(1).bars == []
        assert analysis.sublevel(2).keys() == [(2, 13, 14, True, False)]


class TestTorus:
    @fixture()
    def analysis(self):
        return HeightAnalysis(SAMPLES["torus"](), TILT)

    def test_levelset_kinds(self, analysis):
        h1 = analysis.levelset(1)
        assert len(h1.of_kind(BarKind.OPEN_OPEN)) == 1
        assert len(h1.of_kind(BarKind.CLOSED_CLOSED)) == 1
        h0 = analysis.levelset(0)
        assert len(h0.of_kind(BarKind.OPEN_OPEN)) == 1
        assert len(h0.of_kind(BarKind.CLOSED_CLOSED)) == 1

    def test_levelset_keys(self, analysis):
        assert analysis.levelset(0).keys() == [
            (0, 1, 16, True, True),
            (0, 4, 13, False, False),
        ]
        assert analysis.levelset(1).keys() == [
            (1, 1, 16, False, False),
            (1, 4, 13, True, True),
        ]

    def test_sublevel_keys(self, analysis):
        assert analysis.sublevel(0).keys() == [(0, 1, 17, True, False)]
        assert analysis.sublevel(1).keys() == [
            (1, 4, 17, True, False),
            (1, 13, 17, True, False),
        ]
        assert analysis.sublevel(2).keys() == [(2, 16, 17, True, False)]
        for dim in range(3):
            assert analysis.sublevel(dim).keys() == reference(analysis, dim)

    def test_sublevel_infinite(self, analysis):
        assert [len(analysis.sublevel(d).infinite) for d in range(3)] == [1, 2, 1]

    def test_h2_born_at_top(self, analysis):
        (bar,) = analysis.sublevel(2)
        assert bar.birth_index == analysis.order.m

    def test_bar_generators(self, analysis):
        barcode = analysis.sublevel(1)
        cycles = analysis.bar_generators(barcode)
        assert len(cycles) == len(barcode)
        assert all((c is None) != b.infinite for b, c in zip(barcode, cycles))

    def test_levelset_generators(self, analysis):
        barcode = analysis.levelset(1)
        cycles = analysis.bar_generators(barcode)
        for b, c in zip(barcode, cycles):
            assert (c is not None) == (b.kind is BarKind.CLOSED_CLOSED)


@mark.parametrize("name", sorted(SAMPLES))
@mark.parametrize("dim", [0, 1, 2])
def test_matches_reference(name, dim):
    analysis = HeightAnalysis(SAMPLES[name](), TILT)
    assert analysis.sublevel(dim).keys() == reference(analysis, dim)


@mark.parametrize("name", ["torus", "double-torus"])
@mark.parametrize("dim", [0, 1, 2])
def test_matches_reference_with_ties(name, dim):
    analysis = HeightAnalysis(SAMPLES[name]())
    assert analysis.sublevel(dim).keys() == reference(analysis, dim)


@mark.parametrize("name", sorted(SAMPLES))
def test_infinite_bars_match_betti_numbers(name):
    analysis = HeightAnalysis(SAMPLES[name](), TILT)
    assert tuple(len(analysis.sublevel(d).infinite) for d in range(3)) == BETTI[name]


@mark.parametrize("name", sorted(SAMPLES))
def test_flip_symmetry(name):
    k = SAMPLES[name]()
    up = HeightAnalysis(k, TILT)
    down = HeightAnalysis(k, TILT.flipped())
    reflected = reflect_barcode(down.levelset(1), down.order.m)
    assert reflected.keys() == up.levelset(1).keys()
    assert [b.birth for b in reflected] == [b.birth for b in up.levelset(1)]


class TestAssembly:
    def test_mapping(self):
        h0 = Barcode(
            0,
            Flavor.LEVELSET,
            [Bar(0, 0, 3, True, True, 1, 4), Bar(0, 1, 2, False, False, 2, 3)],
        )
        h1 = Barcode(
            1,
            Flavor.LEVELSET,
            [
                Bar(1, 0, 3, False, False, 1, 4),
                Bar(1, 1, 2, True, True, 2, 3),
                Bar(1, 1, 3, True, False, 2, 4),
            ],
        )
        assert sublevel_from_levelset(0, h0, h1, 4).keys() == [(0, 1, 5, True, False)]
        assert sublevel_from_levelset(1, h0, h1, 4).keys() == [
            (1, 2, 4, True, False),
            (1, 2, 5, True, False),
            (1, 3, 5, True, False),
        ]
        assert sublevel_from_levelset(2, h0, h1, 4).keys() == [(2, 4, 5, True, False)]

    def test_bad_dimension(self):
        empty = Barcode(0, Flavor.LEVELSET)
        with raises(ValueError):
            sublevel_from_levelset(3, empty, empty, 1)

    def test_reflect(self):
        barcode = Barcode(1, Flavor.LEVELSET, [Bar(1, 1, 2, True, False, 2, 3)])
        (bar,) = reflect_barcode(barcode, 4)
        assert (bar.birth, bar.death) == (-2, -1)
        assert bar.kind is BarKind.OPEN_CLOSED
        assert (bar.birth_index, bar.death_index) == (2, 3)


# random subcomplexes of the grid torus under random affine maps

_POINTS = torus_points(4, 4)
_TRIANGLES = torus_triangles(4, 4)


def _det(m):
    return (
        m[0] * (m[4] * m[8] - m[5] * m[7])
        - m[1] * (m[3] * m[8] - m[5] * m[6])
        + m[2] * (m[3] * m[7] - m[4] * m[6])
    )


matrices = st.lists(
    st.integers(min_value=-3, max_value=3), min_size=9, max_size=9
).filter(lambda m: _det(m) != 0)


@settings(
    max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
@given(
    st.sets(st.integers(min_value=0, max_value=len(_TRIANGLES) - 1), min_size=1),
    matrices,
)
def test_random_subcomplexes(chosen, m):
    k = EmbeddedComplex(_POINTS, [_TRIANGLES[i] for i in sorted(chosen)])
    h = HeightFunction.from_values(m[0:3] + [0] + m[3:6] + [0] + m[6:9] + [0])
    analysis = HeightAnalysis(k, h)
    for dim in range(3):
        assert analysis.sublevel(dim).keys() == reference(analysis, dim)
    infinite = tuple(len(analysis.sublevel(d).infinite) for d in range(3))
    assert infinite == betti_linear(k)


# random subcomplexes of a Kuhn-triangulated cube grid under random
# rational linear maps


def _kuhn_grid(n):
    def at(x, y, z):
        return (x * (n + 1) + y) * (n + 1) + z

    points = list(product(range(n + 1), repeat=3))
    tetrahedra = []
    for cube in product(range(n), repeat=3):
        for axes in permutations(range(3)):
            corner = list(cube)
            tet = [at(*corner)]
            for axis in axes:
                corner[axis] += 1
                tet.append(at(*corner))
            tetrahedra.append(tuple(sorted(tet)))
    return points, tetrahedra


_GRID_POINTS, _GRID_TETRAHEDRA = _kuhn_grid(2)
_GRID_TRIANGLES = sorted({t for tet in _GRID_TETRAHEDRA for t in combinations(tet, 3)})
_GRID_EDGES = sorted({e for tet in _GRID_TETRAHEDRA for e in combinations(tet, 2)})


@st.composite
def grid_complexes(draw):
    simplices = sorted(
        draw(st.sets(st.sampled_from(_GRID_TETRAHEDRA), max_size=3))
        | draw(st.sets(st.sampled_from(_GRID_TRIANGLES), min_size=1, max_size=8))
        | draw(st.sets(st.sampled_from(_GRID_EDGES), max_size=4))
    )
    used = sorted({v for s in simplices for v in s})
    index = {v: i for i, v in enumerate(used)}
    return EmbeddedComplex(
        [_GRID_POINTS[v] for v in used],
        [tuple(index[v] for v in s) for s in simplices],
    )


rational_matrices = st.lists(
    st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=9, max_size=9
).filter(lambda m: _det(m) != 0)


@settings(
    max_examples=500,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
@given(grid_complexes(), rational_matrices)
def test_random_grid_complexes(k, m):
    h = HeightFunction.from_values(m[0:3] + [0] + m[3:6] + [0] + m[6:9] + [0])
    analysis = HeightAnalysis(k, h, SweepSettings(audit=True))
    for dim in range(3):
        assert analysis.sublevel(dim).keys() == reference(analysis, dim)
    infinite = tuple(len(analysis.sublevel(d).infinite) for d in range(3))
    assert infinite == betti_linear(k)
