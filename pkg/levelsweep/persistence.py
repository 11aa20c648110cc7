"""Level-set and sublevel-set barcodes of a height function.

Level-set barcodes come from the sweep (H1), from the Reeb graph (H0), and
are empty in dimension 2, since every level set lies in a plane. Sublevel
barcodes are assembled from them:

====  =============================  ====================
dim   level-set bar                  sublevel bar
====  =============================  ====================
0     H0 ``[a_i, a_j)``              ``[a_i, a_j)``
0     H0 ``[a_i, a_j]``              ``[a_i, inf)``
1     H1 ``[a_i, a_j)``              ``[a_i, a_j)``
1     H1 ``[a_i, a_j]``              ``[a_i, inf)``
1     H0 ``(a_j, a_i)``              ``[a_i, inf)``
2     H1 ``(a_j, a_i)``              ``[a_i, inf)``
====  =============================  ====================
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import networkx as nx

from .barcodes import (
    Bar,
    contract_same_level,
    convert_intervals,
    extract_bars,
    thread,
)
from .categories import BarKind, Flavor
from .complex import EmbeddedComplex, HeightFunction, SweepOrder, order_vertices
from .generators import (
    GeneratorCycle,
    h2_generators,
    lift_reeb_cycles,
    trace_closed_closed,
)
from .reeb import ReebGraph, compute_reeb, h0_levelset_bars, reeb_cycle_basis
from .sweep import LevelSweep, SweepSettings, sweep

logger = logging.getLogger(__name__)

INFINITY = float("inf")


@dataclass
class Barcode:
    """Bars of one dimension and flavor."""

    dim: int
    flavor: Flavor
    bars: list[Bar] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.bars)

    def __iter__(self) -> Iterator[Bar]:
        return iter(self.bars)

    @property
    def infinite(self) -> list[Bar]:
        return [b for b in self.bars if b.infinite]

    def of_kind(self, kind: BarKind) -> list[Bar]:
        return [b for b in self.bars if b.kind is kind]

    def keys(self) -> list[tuple[int, int, int, bool, bool]]:
        """Sorted bar keys, for comparing barcodes as multisets."""
        return sorted(b.key for b in self.bars)


def _finite(dim: int, bar: Bar) -> Bar:
    return Bar(
        dim=dim,
        birth=bar.birth,
        death=bar.death,
        birth_closed=True,
        death_closed=False,
        birth_index=bar.birth_index,
        death_index=bar.death_index,
        source=bar,
    )


def _infinite(dim: int, bar: Bar, m: int, *, upper: bool = False) -> Bar:
    """Infinite bar born at the lower (or upper) endpoint of `bar`."""
    return Bar(
        dim=dim,
        birth=bar.death if upper else bar.birth,
        death=INFINITY,
        birth_closed=True,
        death_closed=False,
        birth_index=bar.death_index if upper else bar.birth_index,
        death_index=m + 1,
        source=bar,
    )


def sublevel_from_levelset(
    dim: int, h0: Barcode, h1: Barcode, m: int
) -> Barcode:
    """Assemble a sublevel barcode from level-set barcodes.

    Args:
        dim (int): 0, 1 or 2.
        h0 (Barcode): H0 level-set barcode.
        h1 (Barcode): H1 level-set barcode.
        m (int): number of critical values.

    Returns:
        Barcode: sublevel barcode of `dim`, sorted.
    """
    bars = []
    match dim:
        case 0:
            bars += [_finite(0, b) for b in h0.of_kind(BarKind.CLOSED_OPEN)]
            bars += [_infinite(0, b, m) for b in h0.of_kind(BarKind.CLOSED_CLOSED)]
        case 1:
            bars += [_finite(1, b) for b in h1.of_kind(BarKind.CLOSED_OPEN)]
            bars += [_infinite(1, b, m) for b in h1.of_kind(BarKind.CLOSED_CLOSED)]
            bars += [
                _infinite(1, b, m, upper=True) for b in h0.of_kind(BarKind.OPEN_OPEN)
            ]
        case 2:
            bars += [
                _infinite(2, b, m, upper=True) for b in h1.of_kind(BarKind.OPEN_OPEN)
            ]
        case _:
            raise ValueError(f"Unsupported dimension {dim}")
    return Barcode(dim, Flavor.SUBLEVEL, sorted(bars, key=lambda b: b.key))


def reflect_barcode(barcode: Barcode, m: int) -> Barcode:
    """Map a level-set barcode of `-z` to the coordinates of `z`.

    Intervals are reflected; the type of each endpoint moves with it.
    """
    bars = []
    for b in barcode:
        bars.append(
            Bar(
                dim=b.dim,
                birth=-b.death,
                death=-b.birth,
                birth_closed=b.death_closed,
                death_closed=b.birth_closed,
                birth_index=m + 1 - b.death_index,
                death_index=m + 1 - b.birth_index,
            )
        )
    return Barcode(barcode.dim, barcode.flavor, sorted(bars, key=lambda b: b.key))


class HeightAnalysis:
    """Barcodes and generators of one height function on one complex.

    Intermediate results (vertex order, sweep, barcode graph, Reeb graph)
    are computed on first use and kept.
    """

    def __init__(
        self,
        k: EmbeddedComplex,
        h: HeightFunction | None = None,
        settings: SweepSettings | None = None,
    ) -> None:
        if h is None:
            h = HeightFunction()
        if settings is None:
            settings = SweepSettings()
        self._k = k
        self._h = h
        self._settings = settings
        self._order: SweepOrder | None = None
        self._engine: LevelSweep | None = None
        self._r: nx.MultiGraph | None = None
        self._reeb: ReebGraph | None = None
        self._levelset: dict[int, Barcode] = {}
        self._generators: dict[int, list[GeneratorCycle]] = {}

    @property
    def complex(self) -> EmbeddedComplex:
        return self._k

    @property
    def height(self) -> HeightFunction:
        return self._h

    @property
    def settings(self) -> SweepSettings:
        return self._settings

    @property
    def order(self) -> SweepOrder:
        if self._order is None:
            self._order = order_vertices(
                self._k, self._h, perturb=self._settings.perturb
            )
        return self._order

    @property
    def values(self) -> list[Fraction]:
        """Critical values `a_1..a_m`."""
        return list(self.order.values)

    @property
    def engine(self) -> LevelSweep:
        if self._engine is None:
            self._engine = sweep(self._k, self.order, self._settings)
        return self._engine

    @property
    def barcode_graph(self) -> nx.MultiGraph:
        """Threaded and contracted barcode graph."""
        if self._r is None:
            raw = self.engine.barcode_graph.finalize()
            self._r = contract_same_level(thread(raw, top=2 * self.order.m + 1))
        return self._r

    @property
    def reeb(self) -> ReebGraph:
        if self._reeb is None:
            self._reeb = compute_reeb(self._k, self.order)
        return self._reeb

    def levelset(self, dim: int) -> Barcode:
        """Barcode of H_dim of the level sets."""
        if dim not in self._levelset:
            match dim:
                case 0:
                    bars = h0_levelset_bars(self.reeb)
                case 1:
                    r = self.barcode_graph
                    bars = convert_intervals(extract_bars(r), self.values, graph=r)
                case 2:
                    bars = []
                case _:
                    raise ValueError(f"Unsupported dimension {dim}")
            self._levelset[dim] = Barcode(dim, Flavor.LEVELSET, bars)
            logger.debug("H%d level-set barcode: %d bars", dim, len(bars))
        return self._levelset[dim]

    def sublevel(self, dim: int) -> Barcode:
        """Barcode of H_dim of the sublevel sets."""
        h0 = self.levelset(0) if dim < 2 else Barcode(0, Flavor.LEVELSET)
        h1 = self.levelset(1) if dim > 0 else Barcode(1, Flavor.LEVELSET)
        return sublevel_from_levelset(dim, h0, h1, self.order.m)

    def barcode(self, dim: int, flavor: Flavor) -> Barcode:
        if flavor is Flavor.LEVELSET:
            return self.levelset(dim)
        return self.sublevel(dim)

    def generators(self, dim: int) -> list[GeneratorCycle]:
        """Basis cycles of H_dim of the complex.

        Dimension 1 combines cycles traced in level sets with lifted loops
        of the Reeb graph; dimension 2 gives void boundaries.
        """
        if dim not in self._generators:
            match dim:
                case 1:
                    cycles = trace_closed_closed(
                        self._k, self.order, self.levelset(1), self._settings
                    )
                    cycles += lift_reeb_cycles(
                        self._k, self.reeb, reeb_cycle_basis(self.reeb)
                    )
                case 2:
                    cycles = h2_generators(self._k, self.order, self.levelset(1))
                case _:
                    cycles = []
            self._generators[dim] = cycles
        return self._generators[dim]

    def bar_generators(self, barcode: Barcode) -> list[GeneratorCycle | None]:
        """Generators aligned with the bars of a barcode.

        Infinite sublevel bars get a cycle of the complex; loops of the
        Reeb graph are matched with the bars coming from open-open H0
        level-set bars in sorted order, since together they span the same
        part of H1. Closed-closed H1 level-set bars get their traced cycle.
        Other bars get `None`.
        """
        if barcode.dim == 0:
            return [None] * len(barcode)
        if barcode.flavor is Flavor.LEVELSET:
            if barcode.dim != 1:
                return [None] * len(barcode)
            traced = {id(c.bar): c for c in self.generators(1) if c.bar is not None}
            return [traced.get(id(b)) for b in barcode]
        cycles = self.generators(barcode.dim)
        by_source = {id(c.bar): c for c in cycles if c.bar is not None}
        vertical = iter([c for c in cycles if c.bar is None])
        result: list[GeneratorCycle | None] = []
        for b in barcode:
            if not b.infinite:
                result.append(None)
            elif id(b.source) in by_source:
                result.append(by_source[id(b.source)])
            else:
                result.append(next(vertical, None))
        return result


def levelset_barcode(
    k: EmbeddedComplex,
    h: HeightFunction | None = None,
    dim: int = 1,
    settings: SweepSettings | None = None,
) -> Barcode:
    """Barcode of H_dim of the level sets of a height function."""
    return HeightAnalysis(k, h, settings).levelset(dim)


def sublevel_barcode(
    k: EmbeddedComplex,
    h: HeightFunction | None = None,
    dim: int = 1,
    settings: SweepSettings | None = None,
) -> Barcode:
    """Barcode of H_dim of the sublevel sets of a height function."""
    return HeightAnalysis(k, h, settings).sublevel(dim)
