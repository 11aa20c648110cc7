"""Link-cut trees.

A forest of rooted trees under `link` and `cut`, answering connectivity
and path-minimum queries in O(log n) amortized time. Every represented
tree is stored as a set of splay trees, one per preferred path, keyed by
depth; reversal flags let any node become the root.

Weighted edges are modelled as nodes of their own sitting between their
endpoints, so the minimum over a path is the minimum edge on it. Nodes
without a value never win a minimum.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

import logging
import math
from typing import Any, Hashable

logger = logging.getLogger(__name__)


class LinkCutError(RuntimeError):
    """Invalid link or cut."""


class Node:
    """Node of a link-cut forest."""

    __slots__ = ("key", "value", "low", "left", "right", "parent", "flip")

    def __init__(self, key: Hashable, value: Any = math.inf) -> None:
        self.key = key
        self.value = value
        self.low = self
        self.left: Node | None = None
        self.right: Node | None = None
        self.parent: Node | None = None
        self.flip = False

    def __repr__(self) -> str:
        return f"Node({self.key!r})"


def _is_root(x: Node) -> bool:
    # root of its splay tree; `parent` is then the path parent
    p = x.parent
    return p is None or (p.left is not x and p.right is not x)


def _push(x: Node) -> None:
    if x.flip:
        x.left, x.right = x.right, x.left
        if x.left is not None:
            x.left.flip = not x.left.flip
        if x.right is not None:
            x.right.flip = not x.right.flip
        x.flip = False


def _pull(x: Node) -> None:
    low = x
    if x.left is not None and x.left.low.value < low.value:
        low = x.left.low
    if x.right is not None and x.right.low.value < low.value:
        low = x.right.low
    x.low = low


def _rotate(x: Node) -> None:
    p = x.parent
    assert p is not None
    g = p.parent
    if not _is_root(p):
        assert g is not None
        if g.left is p:
            g.left = x
        else:
            g.right = x
    x.parent = g
    if p.left is x:
        p.left = x.right
        if x.right is not None:
            x.right.parent = p
        x.right = p
    else:
        p.right = x.left
        if x.left is not None:
            x.left.parent = p
        x.left = p
    p.parent = x
    _pull(p)
    _pull(x)


def _splay(x: Node) -> None:
    path = [x]
    while not _is_root(path[-1]):
        path.append(path[-1].parent)  # type: ignore
    for y in reversed(path):
        _push(y)
    while not _is_root(x):
        p = x.parent
        assert p is not None
        if not _is_root(p):
            g = p.parent
            assert g is not None
            _rotate(p if (g.left is p) == (p.left is x) else x)
        _rotate(x)


def _access(x: Node) -> None:
    # make the root-to-x path preferred, with x at the top of its splay tree
    last: Node | None = None
    y: Node | None = x
    while y is not None:
        _splay(y)
        y.right = last
        _pull(y)
        last = y
        y = y.parent
    _splay(x)


def _leftmost(x: Node) -> Node:
    _push(x)
    while x.left is not None:
        x = x.left
        _push(x)
    return x


def _rightmost(x: Node) -> Node:
    _push(x)
    while x.right is not None:
        x = x.right
        _push(x)
    return x


class LinkCutForest:
    """Forest of link-cut trees over nodes created by `add`."""

    def add(self, key: Hashable, value: Any = math.inf) -> Node:
        """Create a single-node tree."""
        return Node(key, value)

    def evert(self, x: Node) -> None:
        """Make `x` the root of its tree."""
        _access(x)
        x.flip = not x.flip
        _push(x)

    def root(self, x: Node) -> Node:
        _access(x)
        r = _leftmost(x)
        _splay(r)
        return r

    def connected(self, x: Node, y: Node) -> bool:
        return x is y or self.root(x) is self.root(y)

    def link(self, x: Node, y: Node) -> None:
        """Join the trees of `x` and `y` by an edge between them.

        Raises:
            LinkCutError: both nodes are in the same tree.
        """
        if self.connected(x, y):
            raise LinkCutError(f"{x} and {y} are already connected")
        self.evert(x)
        x.parent = y

    def cut(self, x: Node, y: Node) -> None:
        """Remove the edge between `x` and `y`.

        Raises:
            LinkCutError: the nodes are not adjacent.
        """
        self.evert(x)
        _access(y)
        if y.left is x:
            _push(x)
        if y.left is not x or x.left is not None or x.right is not None:
            raise LinkCutError(f"{x} and {y} are not adjacent")
        y.left = x.parent = None
        _pull(y)

    def path_min(self, x: Node, y: Node) -> Node:
        """Node of least value on the path between two connected nodes."""
        self.evert(x)
        _access(y)
        return y.low

    def step(self, x: Node, target: Node) -> Node | None:
        """Neighbour of `x` on the path towards `target`, `None` if they
        coincide."""
        self.evert(target)
        _access(x)
        if x.left is None:
            return None
        y = _rightmost(x.left)
        _splay(y)
        return y
