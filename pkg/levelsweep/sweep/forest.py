"""Cycle trees.

Every directed cycle of the level-set graph is stored as a balanced binary
tree (a treap keyed by position) whose in-order node sequence is the
cycle, starting anywhere. Each directed edge is a node of its tree, knows
its parent, and is doubly linked to its neighbours along the cycle.

Subtrees keep their size and the sum of per-edge weight vectors, so the
sweep can read aggregate quantities of a whole cycle from the root. A
forest built with a `link_weight` function weighs every edge together with
its successor and reweighs it whenever that successor changes.

All operations run in O(log n) expected time. The tree handles returned
by destructive operations are new objects: callers save `essential` and
`barcode` of the old handle before calling them.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

import logging
import random
from typing import Any, Callable, Iterator

logger = logging.getLogger(__name__)

Weight = tuple[Any, ...]
LinkWeight = Callable[["DirectedEdge", "DirectedEdge"], Weight]


class ForestError(RuntimeError):
    """Invalid operation on cycle trees."""


def _add(a: Weight, b: Weight) -> Weight:
    if not a:
        return b
    if not b:
        return a
    return tuple(x + y for x, y in zip(a, b))


class DirectedEdge:
    """Directed level-set edge inside triangle `tri`, running from the point
    on complex edge `tail` to the point on complex edge `head`."""

    __slots__ = (
        "tri",
        "tail",
        "head",
        "weight",
        "nxt",
        "prev",
        "left",
        "right",
        "parent",
        "priority",
        "size",
        "total",
        "tree",
        "covered",
    )

    def __init__(self, tri: int, tail: int, head: int, weight: Weight = ()) -> None:
        self.tri = tri
        self.tail = tail
        self.head = head
        self.weight = weight
        self.covered = False
        self.nxt: DirectedEdge = self
        self.prev: DirectedEdge = self
        self.left: DirectedEdge | None = None
        self.right: DirectedEdge | None = None
        self.parent: DirectedEdge | None = None
        self.priority = 0.0
        self.size = 1
        self.total = weight
        self.tree: CycleTree | None = None

    def __repr__(self) -> str:
        return f"DirectedEdge({self.tri}: {self.tail}->{self.head})"

    @property
    def key(self) -> tuple[int, int, int]:
        return self.tri, self.tail, self.head


class CycleTree:
    """Handle of one cycle tree."""

    __slots__ = ("root", "essential", "barcode")

    def __init__(self, root: DirectedEdge) -> None:
        self.root = root
        root.tree = self
        self.essential = False
        self.barcode: Any = None

    def __len__(self) -> int:
        return self.root.size

    def __iter__(self) -> Iterator[DirectedEdge]:
        d = self.first
        for _ in range(self.root.size):
            yield d
            d = d.nxt

    def __repr__(self) -> str:
        return f"CycleTree({list(self)})"

    @property
    def first(self) -> DirectedEdge:
        d = self.root
        while d.left is not None:
            d = d.left
        return d

    @property
    def last(self) -> DirectedEdge:
        d = self.root
        while d.right is not None:
            d = d.right
        return d

    @property
    def total(self) -> Weight:
        """Sum of the weights of all edges of the cycle."""
        return self.root.total

    @property
    def height(self) -> int:
        def depth(d: DirectedEdge | None) -> int:
            return 0 if d is None else 1 + max(depth(d.left), depth(d.right))

        return depth(self.root)


def _size(d: DirectedEdge | None) -> int:
    return 0 if d is None else d.size


def _update(d: DirectedEdge) -> None:
    d.size = 1 + _size(d.left) + _size(d.right)
    total = d.weight
    if d.left is not None:
        total = _add(d.left.total, total)
    if d.right is not None:
        total = _add(total, d.right.total)
    d.total = total


def _join(a: DirectedEdge | None, b: DirectedEdge | None) -> DirectedEdge | None:
    if a is None:
        return b
    if b is None:
        return a
    if a.priority > b.priority:
        a.right = _join(a.right, b)
        a.right.parent = a  # type: ignore
        _update(a)
        return a
    b.left = _join(a, b.left)
    b.left.parent = b  # type: ignore
    _update(b)
    return b


def _split(
    d: DirectedEdge | None, k: int
) -> tuple[DirectedEdge | None, DirectedEdge | None]:
    # first k nodes go left
    if d is None:
        return None, None
    if _size(d.left) >= k:
        a, b = _split(d.left, k)
        d.left = b
        if b is not None:
            b.parent = d
        _update(d)
        if a is not None:
            a.parent = None
        d.parent = None
        return a, d
    a, b = _split(d.right, k - _size(d.left) - 1)
    d.right = a
    if a is not None:
        a.parent = d
    _update(d)
    if b is not None:
        b.parent = None
    d.parent = None
    return d, b


def _rank(d: DirectedEdge) -> int:
    r = _size(d.left)
    while d.parent is not None:
        if d is d.parent.right:
            r += _size(d.parent.left) + 1
        d = d.parent
    return r


def _root(d: DirectedEdge) -> DirectedEdge:
    while d.parent is not None:
        d = d.parent
    return d


class CycleForest:
    """Forest of cycle trees.

    Args:
        seed: random seed of the node priorities.
        link_weight: weight of an edge given its successor; edges keep
            their own weights when omitted.
    """

    def __init__(self, seed: int = 0, link_weight: LinkWeight | None = None) -> None:
        self._random = random.Random(seed)
        self._trees: set[CycleTree] = set()
        self._link_weight = link_weight

    def __len__(self) -> int:
        return len(self._trees)

    @property
    def trees(self) -> frozenset[CycleTree]:
        return frozenset(self._trees)

    def _handle(self, root: DirectedEdge | None) -> CycleTree | None:
        if root is None:
            return None
        root.parent = None
        t = CycleTree(root)
        self._trees.add(t)
        return t

    def _retire(self, t: CycleTree) -> None:
        self._trees.discard(t)

    def _reroot(self, t: CycleTree, root: DirectedEdge) -> CycleTree:
        root.parent = None
        t.root = root
        root.tree = t
        return t

    def _link(self, d: DirectedEdge, nxt: DirectedEdge) -> None:
        # the tree of `d` must already have its final shape
        d.nxt, nxt.prev = nxt, d
        if self._link_weight is None:
            return
        d.weight = self._link_weight(d, nxt)
        x: DirectedEdge | None = d
        while x is not None:
            _update(x)
            x = x.parent

    def new_tree(self, d: DirectedEdge) -> CycleTree:
        """Make a one-edge cycle."""
        d.priority = self._random.random()
        d.left = d.right = d.parent = None
        _update(d)
        self._link(d, d)
        return self._handle(d)  # type: ignore

    def find(self, d: DirectedEdge) -> CycleTree:
        """Tree containing an edge."""
        t = _root(d).tree
        if t is None or t not in self._trees:
            raise ForestError(f"{d} is not in a live tree")
        return t

    def position(self, d: DirectedEdge) -> int:
        """0-based position of an edge in the leaf list of its tree."""
        return _rank(d)

    def split_tree(
        self, t: CycleTree, d: DirectedEdge
    ) -> tuple[CycleTree | None, CycleTree]:
        """Split a tree before `d`.

        Returns:
            tuple: the tree of the edges before `d` (`None` if empty) and the
            tree starting at `d`. Both are closed into cycles.
        """
        first, last = t.first, t.last
        before = d.prev
        a, b = _split(t.root, _rank(d))
        self._retire(t)
        if a is not None:
            self._link(before, first)
        self._link(last, d)
        return self._handle(a), self._handle(b)  # type: ignore

    def join_trees(self, t1: CycleTree | None, t2: CycleTree | None) -> CycleTree:
        """Concatenate two leaf lists and close the result into one cycle."""
        if t1 is None or t2 is None:
            t = t1 or t2
            if t is None:
                raise ForestError("Nothing to join")
            return t
        if t1 is t2:
            raise ForestError("Cannot join a tree with itself")
        f1, l1, f2, l2 = t1.first, t1.last, t2.first, t2.last
        self._retire(t1)
        self._retire(t2)
        self._link(l1, f2)
        self._link(l2, f1)
        return self._handle(_join(t1.root, t2.root))  # type: ignore

    def permute(self, t: CycleTree, d: DirectedEdge) -> CycleTree:
        """Rotate the leaf list so that it starts with `d`."""
        k = _rank(d)
        if k:
            a, b = _split(t.root, k)
            self._reroot(t, _join(b, a))  # type: ignore
        return t

    def insert_after(self, new: DirectedEdge, d: DirectedEdge) -> CycleTree:
        """Insert a fresh edge right after `d` in its cycle."""
        t = self.find(d)
        new.priority = self._random.random()
        new.left = new.right = None
        _update(new)
        a, b = _split(t.root, _rank(d) + 1)
        self._reroot(t, _join(_join(a, new), b))  # type: ignore
        nxt = d.nxt
        self._link(new, nxt)
        self._link(d, new)
        return t

    def delete_leaf(self, d: DirectedEdge) -> CycleTree | None:
        """Remove an edge from its cycle.

        Returns:
            CycleTree | None: the same handle, or `None` if the tree became
            empty and was disposed.
        """
        t = self.find(d)
        if t.root.size == 1:
            self._retire(t)
            d.tree = None
            return None
        a, b = _split(t.root, _rank(d))
        _, c = _split(b, 1)
        self._reroot(t, _join(a, c))  # type: ignore
        self._link(d.prev, d.nxt)
        d.nxt = d.prev = d
        d.parent = None
        return t

    def split_cycle(
        self, t: CycleTree, d: DirectedEdge, d2: DirectedEdge
    ) -> tuple[CycleTree, CycleTree | None]:
        """Cut a cycle into the path `d..d2` and the path after `d2` up to
        the edge before `d`.

        Returns:
            tuple: both cycles; the second is `None` when it would be empty.

        Raises:
            ForestError: `d` and `d2` are the same edge.
        """
        if d is d2:
            raise ForestError("Cannot split a cycle at a single edge")
        self.permute(t, d)
        if d2.nxt is d:
            return t, None
        first, rest = self.split_tree(t, d2.nxt)
        return first, rest  # type: ignore

    def merge_cycle(self, d: DirectedEdge, d2: DirectedEdge) -> CycleTree:
        """Join two cycles so that `d2` follows `d` and the old successor of
        `d` follows the old predecessor of `d2`.

        Raises:
            ForestError: both edges lie on the same cycle.
        """
        t1, t2 = self.find(d), self.find(d2)
        if t1 is t2:
            raise ForestError("Edges lie on the same cycle")
        self.permute(t1, d.nxt)
        self.permute(t2, d2)
        return self.join_trees(t1, t2)

    def __contains__(self, t: CycleTree) -> bool:
        return t in self._trees
