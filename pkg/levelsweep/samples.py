"""Sample complexes.

Small embedded complexes with known topology, used in tests and
benchmarks. Coordinates are exact; tori use rational approximations of
the circle that keep the triangulation embedded.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

from fractions import Fraction
from math import cos, pi, sin
from typing import Sequence

from .complex import EmbeddedComplex, HeightFunction

# lifts every tie of the axis-aligned samples
TILT = HeightFunction.from_values(
    [1, 0, 0, 0, 0, 1, 0, 0, "1/10", "1/100", 1, 0]
)

_TETRAHEDRON = ((0, 0, 0), (4, 0, 1), (0, 4, 2), (1, 1, 3))


def triangle() -> EmbeddedComplex:
    return EmbeddedComplex([(0, 0, 0), (2, 0, 1), (0, 2, 2)], [(0, 1, 2)])


def tetrahedron_boundary(offset: Sequence[int] = (0, 0, 0)) -> EmbeddedComplex:
    """Boundary of a tetrahedron: a 2-sphere with four vertices."""
    pts = [tuple(p + o for p, o in zip(v, offset)) for v in _TETRAHEDRON]
    return EmbeddedComplex(pts, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def solid_tetrahedron() -> EmbeddedComplex:
    return EmbeddedComplex(_TETRAHEDRON, [(0, 1, 2, 3)])


def _circle(k: int, n: int) -> tuple[Fraction, Fraction]:
    angle = 2 * pi * k / n
    c, s = cos(angle), sin(angle)
    return Fraction(c).limit_denominator(10**6), Fraction(s).limit_denominator(10**6)


def torus_points(
    n: int = 4, m: int = 4, big: int = 4, small: int = 1, shift: int = 0
) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Grid points `(i, j)` at index `i * m + j`; the torus stands upright
    with its axis along y."""
    pts = []
    for i in range(n):
        cu, su = _circle(i, n)
        for j in range(m):
            cv, sv = _circle(j, m)
            ring = big + small * cv
            pts.append((ring * cu + shift, small * sv, ring * su))
    return pts


def torus_triangles(n: int = 4, m: int = 4) -> list[tuple[int, int, int]]:
    def at(i: int, j: int) -> int:
        return (i % n) * m + j % m

    tris = []
    for i in range(n):
        for j in range(m):
            tris.append((at(i, j), at(i + 1, j), at(i + 1, j + 1)))
            tris.append((at(i, j), at(i + 1, j + 1), at(i, j + 1)))
    return tris


def torus(n: int = 4, m: int = 4) -> EmbeddedComplex:
    """Triangulated torus on an `n` by `m` grid."""
    return EmbeddedComplex(torus_points(n, m), torus_triangles(n, m))


def double_torus(n: int = 4, m: int = 4) -> EmbeddedComplex:
    """Two tori touching at one vertex.

    The second torus is shifted along x so that its innermost vertex on
    the x axis lands on the outermost one of the first torus.
    """
    if n % 2:
        raise ValueError("Grid needs an even number of rings")
    first = torus_points(n, m)
    second = torus_points(n, m, shift=10)
    shared = (n // 2) * m
    index = {}
    pts = list(first)
    for v, p in enumerate(second):
        if v == shared:
            index[v] = 0
        else:
            index[v] = len(pts)
            pts.append(p)
    tris = torus_triangles(n, m)
    tris += [tuple(index[v] for v in t) for t in torus_triangles(n, m)]
    return EmbeddedComplex(pts, tris)


def wedge_of_spheres() -> EmbeddedComplex:
    """Two tetrahedron boundaries sharing a vertex."""
    pts = list(_TETRAHEDRON) + [(-4, 0, -1), (0, -4, -2), (-1, -1, -3)]
    tris = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    tris += [(0, 4, 5), (0, 4, 6), (0, 5, 6), (4, 5, 6)]
    return EmbeddedComplex(pts, tris)


def mixed() -> EmbeddedComplex:
    """Non-pure complex: a solid tetrahedron with a dangling edge, a
    sphere, a loose triangle and an isolated vertex."""
    pts = list(_TETRAHEDRON)
    pts += [(1, 1, 6)]
    pts += [tuple(x + 10 for x in p) for p in _TETRAHEDRON]
    pts += [(20, 0, 5), (22, 0, 7), (20, 2, 4)]
    pts += [(-5, -5, 8)]
    simplices = [(0, 1, 2, 3), (3, 4)]
    simplices += [(5, 6, 7), (5, 6, 8), (5, 7, 8), (6, 7, 8)]
    simplices += [(9, 10, 11), (12,)]
    return EmbeddedComplex(pts, simplices)


SAMPLES = {
    "triangle": triangle,
    "sphere": tetrahedron_boundary,
    "solid": solid_tetrahedron,
    "torus": torus,
    "double-torus": double_torus,
    "wedge": wedge_of_spheres,
    "mixed": mixed,
}

# (b0, b1, b2)
BETTI = {
    "triangle": (1, 0, 0),
    "sphere": (1, 0, 1),
    "solid": (1, 0, 0),
    "torus": (1, 2, 1),
    "double-torus": (1, 4, 2),
    "wedge": (1, 0, 2),
    "mixed": (4, 0, 1),
}
