"""Common types and constants.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

from dataclasses import dataclass
from enum import Enum, StrEnum, auto, unique


class Side(StrEnum):
    """Which half of a vertex event produced a change.

    Entering a critical level happens while the sweep moves from the slab
    below a vertex to the vertex itself; leaving happens on the way from the
    vertex into the slab above it.
    """

    ENTERING = auto()
    LEAVING = auto()


class Stage(StrEnum):
    """State of the sweep at which a level-set cycle can be inspected."""

    CRITICAL = auto()
    SLAB = auto()


class Flavor(StrEnum):
    """Barcode flavor."""

    LEVELSET = auto()
    SUBLEVEL = auto()


@dataclass
class EndpointsMixin:
    birth_closed: bool
    death_closed: bool
    title: str


@unique
class BarKind(EndpointsMixin, Enum):
    """Interval types of zigzag bars."""

    CLOSED_CLOSED = True, True, "closed-closed"
    CLOSED_OPEN = True, False, "closed-open"
    OPEN_CLOSED = False, True, "open-closed"
    OPEN_OPEN = False, False, "open-open"

    @classmethod
    def from_flags(cls, birth_closed: bool, death_closed: bool) -> "BarKind":
        """Bar kind for given endpoint flags.

        Args:
            birth_closed (bool): `True` if the lower endpoint belongs to the bar.
            death_closed (bool): `True` if the upper endpoint belongs to the bar.

        Returns:
            BarKind: matching kind.
        """
        for kind in cls:
            if (kind.birth_closed, kind.death_closed) == (birth_closed, death_closed):
                return kind
        raise ValueError("No such kind")  # pragma: no cover

    @property
    def reversed(self) -> "BarKind":
        """Kind with both endpoint types swapped."""
        return BarKind.from_flags(not self.birth_closed, not self.death_closed)


@dataclass
class NodeKindMixin:
    symbol: str
    is_birth: bool
    is_death: bool
    closed: bool


@unique
class NodeKind(NodeKindMixin, Enum):
    """Nodes of the barcode graph."""

    BIRTH_OPEN = "b", True, False, False
    BIRTH_CLOSED = "B", True, False, True
    DEATH_OPEN = "d", False, True, False
    DEATH_CLOSED = "D", False, True, True
    SPLIT = "S", False, False, False
    MERGE = "M", False, False, False
    THREAD = "T", False, False, False
    REEB = "R", False, False, True

    @property
    def is_open(self) -> bool:
        """`True` for open birth and death nodes."""
        return (self.is_birth or self.is_death) and not self.closed


class EventKind(StrEnum):
    """Changes of primary cycles reported by the sweep."""

    BIRTH = auto()
    DEATH = auto()
    SPLIT = auto()
    MERGE = auto()
