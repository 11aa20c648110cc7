"""Representative cycles of homology classes.

* Closed-closed bars of H1 of the level sets come with a seed edge of the
  level-set cycle that was born with them. A second sweep stops at the
  seed and walks the cycle; the walk is pushed down onto the 1-skeleton.
* Loops of the Reeb graph are lifted arc by arc into the 1-skeleton.
* Open-open bars of H1 of the level sets point at a void: the triangle
  and side of their seed start a walk over the boundary of the void.

Chains are sets of simplex indices with Z2 coefficients.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .barcodes import Bar
from .categories import BarKind
from .complex import EmbeddedComplex, SweepOrder, void_walk
from .reeb import ArcKey, ReebGraph, lift_segment
from .sweep import SweepSettings, sweep

logger = logging.getLogger(__name__)


class GeneratorError(RuntimeError):
    """A representative cycle could not be built."""


@dataclass(frozen=True)
class GeneratorCycle:
    """Z2 cycle of the complex.

    `support` holds edge indices for `dim == 1` and triangle indices for
    `dim == 2`. Cycles traced in a level set also keep the raw level-set
    walk as `(triangle, tail edge, head edge)` crossings.
    """

    dim: int
    support: frozenset[int]
    bar: Bar | None = field(default=None, compare=False)
    crossings: tuple[tuple[int, int, int], ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.support)

    def simplex_ids(self, k: EmbeddedComplex) -> list[int]:
        """Global ids of the simplices of the support, sorted."""
        return sorted(k.simplex_id(self.dim, i) for i in self.support)


def boundary(k: EmbeddedComplex, dim: int, chain: Iterable[int]) -> frozenset[int]:
    """Z2 boundary of a chain of edges (`dim == 1`) or triangles (`dim == 2`)."""
    odd: set[int] = set()
    for s in chain:
        if dim == 1:
            faces: Sequence[int] = k.edges[s]
        elif dim == 2:
            faces = k.triangle_edges(s)
        else:
            raise ValueError(f"Unsupported dimension {dim}")
        odd.symmetric_difference_update(faces)
    return frozenset(odd)


def walk_chain(k: EmbeddedComplex, walk: Sequence[int]) -> set[int]:
    """Edges of a closed vertex walk counted mod 2."""
    odd: set[int] = set()
    for a, b in zip(walk, walk[1:]):
        if a != b:
            odd ^= {k.edge_id(a, b)}
    return odd


def snap_crossings(
    k: EmbeddedComplex, order: SweepOrder, crossings: Sequence[tuple[int, int, int]]
) -> frozenset[int]:
    """Push a level-set cycle down onto the 1-skeleton.

    Every level-set vertex moves to the lower endpoint of its complex edge;
    every level-set edge moves inside its triangle.
    """
    odd: set[int] = set()
    for _, tail, head in crossings:
        a = order.lowest(k.edges[tail])
        b = order.lowest(k.edges[head])
        if a != b:
            odd ^= {k.edge_id(a, b)}
    return frozenset(odd)


def trace_closed_closed(
    k: EmbeddedComplex,
    order: SweepOrder,
    bars: Iterable[Bar],
    settings: SweepSettings | None = None,
) -> list[GeneratorCycle]:
    """Representatives of closed-closed H1 level-set bars.

    Raises:
        GeneratorError: a bar has no seed or its seed edge is missing.
    """
    wanted = [b for b in bars if b.dim == 1 and b.kind is BarKind.CLOSED_CLOSED]
    if not wanted:
        return []
    for b in wanted:
        if b.seed is None:
            raise GeneratorError(f"Bar {b} has no seed")
    try:
        engine = sweep(k, order, settings, traces=[b.seed for b in wanted])
    except RuntimeError as e:
        raise GeneratorError(f"Tracing failed: {e}") from e
    result = []
    for b in wanted:
        crossings = tuple(engine.traced[b.seed])
        support = snap_crossings(k, order, crossings)
        result.append(GeneratorCycle(1, support, b, crossings))
        logger.debug("Traced %s: %d crossings", b, len(crossings))
    return result


def lift_reeb_cycles(
    k: EmbeddedComplex, rg: ReebGraph, basis: Iterable[Sequence[ArcKey]]
) -> list[GeneratorCycle]:
    """Lift loops of the Reeb graph to 1-cycles of the complex."""
    result = []
    for loop in basis:
        odd: set[int] = set()
        for a, b, key in loop:
            for s in rg.graph.edges[a, b, key]["segments"]:
                odd ^= walk_chain(k, lift_segment(k, rg.order, s))
        result.append(GeneratorCycle(1, frozenset(odd)))
    logger.debug("Lifted %d Reeb loops", len(result))
    return result


def h2_generators(
    k: EmbeddedComplex, order: SweepOrder, bars: Iterable[Bar]
) -> list[GeneratorCycle]:
    """Void boundaries for open-open H1 level-set bars.

    Raises:
        GeneratorError: a bar has no seed or its walk escapes to infinity.
    """
    result = []
    for b in bars:
        if b.dim != 1 or b.kind is not BarKind.OPEN_OPEN:
            continue
        if b.seed is None:
            raise GeneratorError(f"Bar {b} has no seed")
        shell = void_walk(k, b.seed.tri, b.seed.side, points=order.points)
        if shell is None:
            raise GeneratorError(f"Walk from the seed of {b} is unbounded")
        result.append(GeneratorCycle(2, shell, b))
    return result
