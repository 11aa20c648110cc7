from fractions import Fraction

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import fixture, mark, raises

from levelsweep.barcodes import (
    Bar,
    BarcodeGraph,
    LevelBar,
    contract_same_level,
    convert_intervals,
    extract_bars,
    thread,
    to_dot,
)
from levelsweep.categories import BarKind, NodeKind, Side
from levelsweep.oracle import zigzag_h0

VALUES = [Fraction(i) for i in range(10)]


def level_graph(levels, edges):
    g = nx.MultiGraph()
    for n, lv in levels.items():
        g.add_node(n, level=lv, kind=NodeKind.REEB)
    for a, b in edges:
        g.add_edge(a, b)
    return g


class TestBar:
    def test_kind(self):
        bar = Bar(1, 0, 1, False, True)
        assert bar.kind is BarKind.OPEN_CLOSED

    def test_str(self):
        assert str(Bar(1, 0, 2, True, False)) == "[0, 2)"

    def test_infinite(self):
        assert Bar(0, 1, float("inf"), True, False).infinite

    def test_key_ignores_seed(self):
        a = Bar(1, 0, 1, True, True, 1, 2, seed="x")
        b = Bar(1, 0, 1, True, True, 1, 2)
        assert a == b
        assert a.key == (1, 1, 2, True, True)


@mark.parametrize(
    "flags, kind",
    [
        ((True, True), BarKind.CLOSED_CLOSED),
        ((True, False), BarKind.CLOSED_OPEN),
        ((False, True), BarKind.OPEN_CLOSED),
        ((False, False), BarKind.OPEN_OPEN),
    ],
)
def test_bar_kind_flags(flags, kind):
    assert BarKind.from_flags(*flags) is kind
    assert kind.reversed is BarKind.from_flags(not flags[0], not flags[1])


class TestBarcodeGraph:
    @fixture()
    def builder(self):
        return BarcodeGraph()

    @mark.parametrize(
        "rank, side, level",
        [(1, Side.ENTERING, 1), (1, Side.LEAVING, 2), (3, Side.ENTERING, 5)],
    )
    def test_levels(self, rank, side, level):
        assert BarcodeGraph.level(rank, side) == level

    def test_birth_and_death(self, builder):
        e = builder.birth(1, Side.LEAVING, closed=True)
        assert builder.current == {e}
        builder.death(e, 3, Side.ENTERING, closed=True)
        g = builder.finalize()
        assert g.number_of_nodes() == 2
        assert sorted(lv for _, lv in g.nodes(data="level")) == [2, 5]

    def test_split_and_merge(self, builder):
        e = builder.birth(1, Side.LEAVING, closed=True)
        e1, e2 = builder.split(e, 2, Side.LEAVING)
        e3 = builder.merge(e1, e2, 3, Side.ENTERING)
        builder.death(e3, 4, Side.ENTERING, closed=False)
        g = builder.finalize()
        assert g.number_of_edges() == 4
        assert [ev.kind for ev in builder.events] == [
            "birth",
            "split",
            "merge",
            "death",
        ]

    def test_open_edges_left(self, builder):
        builder.birth(1, Side.LEAVING, closed=True)
        with raises(ValueError):
            builder.finalize()

    def test_dead_edge(self, builder):
        e = builder.birth(1, Side.LEAVING, closed=True)
        builder.death(e, 2, Side.ENTERING, closed=True)
        with raises(ValueError):
            builder.death(e, 3, Side.ENTERING, closed=True)

    def test_sphere_like_bar(self, builder):
        e = builder.birth(1, Side.LEAVING, closed=True)
        builder.death(e, 4, Side.ENTERING, closed=True)
        r = contract_same_level(thread(builder.finalize(), top=9))
        bars = convert_intervals(extract_bars(r), VALUES[1:], graph=r)
        assert [b.key for b in bars] == [(1, 1, 4, False, False)]

    def test_open_births_are_threaded(self, builder):
        e = builder.birth(1, Side.ENTERING, closed=False)
        builder.death(e, 3, Side.LEAVING, closed=False)
        r = contract_same_level(thread(builder.finalize(), top=7))
        bars = convert_intervals(extract_bars(r), VALUES[1:], graph=r)
        assert [b.key for b in bars] == [(1, 1, 3, True, True)]


class TestThread:
    def test_path(self):
        g = level_graph({0: 1, 1: 3}, [(0, 1)])
        g.nodes[0]["kind"] = NodeKind.BIRTH_OPEN
        g.nodes[1]["kind"] = NodeKind.DEATH_OPEN
        r = thread(g)
        assert r.has_edge(-1, 0) and r.has_edge(0, 1) and r.has_edge(1, -2)
        assert r.nodes[-2]["level"] == 4
        assert all(d for _, _, d in r.edges(-1, data="thread"))

    def test_contract(self):
        g = level_graph({0: 1, 1: 1, 2: 2}, [(0, 1), (1, 2)])
        r = contract_same_level(g)
        assert sorted(r.nodes) == [0, 2]
        assert r.has_edge(0, 2)


class TestExtraction:
    def test_single_edge(self):
        g = level_graph({0: 1, 1: 3}, [(0, 1)])
        assert extract_bars(g) == [LevelBar(1, 3, True, True)]

    def test_merge(self):
        g = level_graph({0: 1, 1: 2, 2: 3}, [(0, 2), (1, 2)])
        assert extract_bars(g) == [
            LevelBar(1, 3, True, True),
            LevelBar(2, 3, True, False),
        ]

    def test_split(self):
        g = level_graph({0: 1, 1: 2, 2: 3}, [(0, 1), (0, 2)])
        assert extract_bars(g) == [
            LevelBar(1, 2, False, True),
            LevelBar(1, 3, True, True),
        ]

    def test_loop(self):
        g = level_graph({0: 1, 1: 2, 2: 3, 3: 4}, [(0, 1), (0, 2), (1, 3), (2, 3)])
        bars = extract_bars(g)
        assert bars == [LevelBar(1, 4, True, True), LevelBar(1, 4, False, False)]
        assert len(bars[1].edges) == 2

    def test_double_edge(self):
        g = level_graph({0: 1, 1: 2}, [(0, 1), (0, 1)])
        assert extract_bars(g) == [
            LevelBar(1, 2, True, True),
            LevelBar(1, 2, False, False),
        ]

    def test_thread_nodes_dropped(self):
        g = level_graph({0: 1, 1: 3}, [(0, 1)])
        g.nodes[0]["kind"] = NodeKind.THREAD
        assert extract_bars(g) == []


class TestConversion:
    def test_dual(self):
        bars = convert_intervals([LevelBar(2, 7, True, True)], VALUES[1:])
        assert bars == [Bar(1, 1, 4, False, False, 1, 4)]

    def test_dual_empty_dropped(self):
        assert convert_intervals([LevelBar(3, 4, True, True)], VALUES[1:]) == []

    def test_direct(self):
        bars = convert_intervals(
            [LevelBar(2, 2, True, True)], VALUES[1:], dim=0, dual=False
        )
        assert bars == [Bar(0, 2, 2, True, True, 2, 2)]


def test_to_dot():
    g = thread(level_graph({0: 1, 1: 3}, [(0, 1)]))
    text = to_dot(g)
    assert text.startswith("graph R {")
    assert '"0" -- "1";' in text
    assert "style=dashed" in text


@st.composite
def level_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=9))
    levels = draw(
        st.lists(st.integers(min_value=0, max_value=5), min_size=n, max_size=n)
    )
    pairs = [
        (a, b) for a in range(n) for b in range(a + 1, n) if levels[a] != levels[b]
    ]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=14)) if pairs else []
    return level_graph(dict(enumerate(levels)), edges)


@settings(max_examples=1000, deadline=None)
@given(level_graphs())
def test_extraction_matches_zigzag(g):
    assert extract_bars(g) == zigzag_h0(g)


@settings(max_examples=1000, deadline=None)
@given(level_graphs())
def test_extraction_counts(g):
    bars = extract_bars(g)
    closed = [b for b in bars if b.kind is BarKind.CLOSED_CLOSED]
    loops = [b for b in bars if b.kind is BarKind.OPEN_OPEN]
    cycle_rank = (
        g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)
    )
    assert len(closed) == nx.number_connected_components(g)
    assert len(loops) == cycle_rank
