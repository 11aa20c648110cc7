from pytest import mark, raises

from levelsweep.sweep.rules import SweepError, Wedge, circular_order, connect_rule

DIRECTIONS = {"e": (1, 0), "n": (0, 1), "sw": (-1, -1)}


def test_wedge():
    w = Wedge((1, 0), (0, 1))
    assert w.right_contains((1, 1))
    assert w.left_contains((-1, -1))


def test_circular_order():
    got = circular_order(["sw", "n", "e"], DIRECTIONS.__getitem__, lambda x: 0)
    assert got == ["e", "n", "sw"]


def test_circular_order_empty():
    with raises(SweepError):
        circular_order([], DIRECTIONS.__getitem__, lambda x: 0)


@mark.parametrize("order", [["e", "n", "sw"], ["sw", "n", "e"], ["n", "sw", "e"]])
def test_connect_rule_three(order):
    assert connect_rule(order, DIRECTIONS.__getitem__) == {
        "e": "n",
        "n": "sw",
        "sw": "e",
    }


def test_connect_rule_four():
    dirs = {"e": (1, 0), "n": (0, 1), "w": (-1, 0), "s": (0, -1)}
    got = connect_rule(["e", "n", "w", "s"], dirs.__getitem__)
    assert got == {"e": "n", "n": "w", "w": "s", "s": "e"}


def test_connect_rule_small():
    assert connect_rule(["e"], DIRECTIONS.__getitem__) == {"e": "e"}
    assert connect_rule(["e", "n"], DIRECTIONS.__getitem__) == {"e": "n", "n": "e"}
