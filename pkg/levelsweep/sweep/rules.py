"""Connection rule.

At a level-set vertex, every incident level-set edge is entered by one
directed edge and left by another. The connection rule decides which
outgoing edge follows each incoming one, so that following successors
traces face boundaries with the face on the right.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence, TypeVar

from levelsweep.geometry import Point2, in_left_wedge, in_right_wedge, sort_ccw

T = TypeVar("T", bound=Hashable)


class SweepError(RuntimeError):
    """Inconsistent sweep state."""


@dataclass(frozen=True)
class Wedge:
    """Consecutive directed edges through a level-set vertex.

    Both directions point away from the vertex: `incoming` back along the
    edge that enters it, `outgoing` along the edge that leaves it.
    """

    incoming: Point2
    outgoing: Point2

    def right_contains(self, direction: Point2) -> bool:
        return in_right_wedge(self.incoming, self.outgoing, direction)

    def left_contains(self, direction: Point2) -> bool:
        return in_left_wedge(self.incoming, self.outgoing, direction)


def circular_order(
    edges: Sequence[T], direction: Callable[[T], Point2], tie: Callable[[T], int]
) -> list[T]:
    """Counter-clockwise order of level-set edges around their common vertex.

    Raises:
        SweepError: no edges given.
    """
    if not edges:
        raise SweepError("No edges around a level-set vertex")
    return sort_ccw(edges, direction, tie)


def connect_rule(order: Sequence[T], direction: Callable[[T], Point2]) -> dict[T, T]:
    """Successor of every incoming edge.

    Args:
        order: circular order of the incident edges, either sense.
        direction: direction of an edge away from the vertex.

    Returns:
        dict: maps the edge a walk arrives along to the edge it leaves along.

    Raises:
        SweepError: the rule did not produce a bijection.
    """
    n = len(order)
    if n == 1:
        return {order[0]: order[0]}
    if n == 2:
        return {order[0]: order[1], order[1]: order[0]}
    succ: dict[T, T] = {}
    for i in range(n):
        prev, cur, nxt = order[i - 1], order[i], order[(i + 1) % n]
        wedge = Wedge(direction(cur), direction(nxt))
        if wedge.right_contains(direction(prev)):
            succ[nxt] = cur
        else:
            succ[cur] = nxt
    if len(succ) != n or len(set(succ.values())) != n:
        raise SweepError("Connection rule is not a bijection")
    return succ
