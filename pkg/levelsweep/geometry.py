"""Exact geometric predicates.

All coordinates are `Fraction` instances, so every sign computed here is
exact. Angular comparisons never evaluate trigonometric functions: they
compare half-planes first and then the sign of a cross product.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, Sequence, TypeVar

Point2 = tuple[Fraction, Fraction]
Point3 = tuple[Fraction, Fraction, Fraction]

T = TypeVar("T")


def sign(x: Fraction | int) -> int:
    """Sign of a number: -1, 0 or 1."""
    return (x > 0) - (x < 0)


def sub2(a: Point2, b: Point2) -> Point2:
    return a[0] - b[0], a[1] - b[1]


def cross2(a: Point2, b: Point2) -> Fraction:
    """z-component of the cross product of two plane vectors."""
    return a[0] * b[1] - a[1] * b[0]


def dot2(a: Point2, b: Point2) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def orient2d(pa: Point2, pb: Point2, pc: Point2) -> Fraction:
    """Direction from pa to pc, via pb.

    Returns twice the signed area of the triangle: positive when the turn
    is counter-clockwise, negative when clockwise, zero when straight.
    """
    return cross2(sub2(pb, pa), sub2(pc, pa))


def sub3(a: Point3, b: Point3) -> Point3:
    return a[0] - b[0], a[1] - b[1], a[2] - b[2]


def dot3(a: Point3, b: Point3) -> Fraction:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross3(a: Point3, b: Point3) -> Point3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def scale3(k: Fraction, a: Point3) -> Point3:
    return k * a[0], k * a[1], k * a[2]


def triangle_normal(a: Point3, b: Point3, c: Point3) -> Point3:
    """Normal of the triangle `abc` following the right-hand rule."""
    return cross3(sub3(b, a), sub3(c, a))


def signed_volume(a: Point3, b: Point3, c: Point3) -> Fraction:
    """Six times the signed volume of the tetrahedron spanned by the origin
    and the triangle `abc`."""
    return dot3(a, cross3(b, c))


def _half(v: Point2) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def compare_angles(a: Point2, b: Point2) -> int:
    """Compare polar angles of two non-zero vectors.

    Returns:
        int: -1, 0 or 1, as in classic `cmp`.
    """
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    return -sign(cross2(a, b))


def axis_crossings(u: Point2, w: Point2, reverse: bool = False) -> int:
    """Signed number of times a direction passes the positive x-axis while
    turning from `u` to `w` by less than a half turn.

    `reverse` marks a half turn, taken counter-clockwise. Summed over the
    corners of a closed polygon this is its turning number.
    """
    c = cross2(u, w)
    if reverse or (c == 0 and dot2(u, w) < 0):
        return _half(u)
    if c > 0:
        return int(compare_angles(w, u) < 0)
    if c < 0:
        return -int(compare_angles(w, u) > 0)
    return 0


def sort_ccw(
    items: Iterable[T], direction: Callable[[T], Point2], tie: Callable[[T], int]
) -> list[T]:
    """Sort items counter-clockwise by the polar angle of their directions.

    Args:
        items: objects to sort.
        direction: maps an item to a non-zero plane vector.
        tie: maps an item to an integer used when two angles coincide.

    Returns:
        list: items ordered by increasing angle in `[0, 2pi)`.
    """

    def cmp(x: T, y: T) -> int:
        return compare_angles(direction(x), direction(y)) or sign(tie(x) - tie(y))

    return sorted(items, key=cmp_to_key(cmp))


def in_right_wedge(a: Point2, b: Point2, g: Point2) -> bool:
    """Test whether direction `g` lies strictly inside the counter-clockwise
    sweep from direction `a` to direction `b`.

    Walking in along `a` towards the apex and out along `b`, this sweep is
    the wedge on the right-hand side of the walk.
    """
    c = cross2(a, b)
    if c > 0:
        return cross2(a, g) > 0 and cross2(g, b) > 0
    if c < 0:
        return cross2(a, g) > 0 or cross2(g, b) > 0
    if dot2(a, b) > 0:
        # same direction: the sweep is the full turn
        return True
    return cross2(a, g) > 0


def in_left_wedge(a: Point2, b: Point2, g: Point2) -> bool:
    """Complement of `in_right_wedge` for directions off both rays."""
    return in_right_wedge(b, a, g)


def radial_order(
    axis: Point3,
    items: Sequence[T],
    offset: Callable[[T], Point3],
    tie: Callable[[T], int],
) -> list[T]:
    """Order items counter-clockwise around an axis.

    Each item is represented by a vector from a point of the axis; the
    component orthogonal to the axis defines its angle. Rotation sense
    follows the right-hand rule about `axis`.

    Args:
        axis: direction of the axis.
        items: objects to order, at least one.
        offset: maps an item to a vector off the axis.
        tie: integer key for coinciding angles.

    Returns:
        list: items in counter-clockwise order, starting anywhere.
    """
    uu = dot3(axis, axis)

    def perp(w: Point3) -> Point3:
        return sub3(w, scale3(dot3(w, axis) / uu, axis))

    perps = {id(x): perp(offset(x)) for x in items}
    e1 = perps[id(items[0])]
    e2 = cross3(axis, e1)

    def project(x: T) -> Point2:
        w = perps[id(x)]
        return dot3(w, e1), dot3(w, e2)

    return sort_ccw(items, project, tie)
