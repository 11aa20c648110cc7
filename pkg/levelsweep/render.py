"""Barcode pictures.

One horizontal lane per bar, sorted by birth and death. Closed endpoints
are filled dots, open endpoints hollow ones; infinite bars end in an
arrow at the right margin.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

import io
import logging
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .barcodes import Bar  # noqa: E402
from .persistence import Barcode  # noqa: E402

logger = logging.getLogger(__name__)

_COLORS = ("tab:blue", "tab:orange", "tab:green")


def _range(barcodes: Sequence[Barcode]) -> tuple[float, float]:
    values = [
        float(x)
        for bc in barcodes
        for b in bc
        for x in (b.birth, b.death)
        if abs(float(x)) != float("inf")
    ]
    if not values:
        return 0.0, 1.0
    lo, hi = min(values), max(values)
    pad = (hi - lo) * 0.1 or 1.0
    return lo - pad, hi + pad


def _endpoint(ax, x: float, y: float, closed: bool, color: str) -> None:
    ax.plot(
        [x],
        [y],
        marker="o",
        markersize=5,
        color=color,
        markerfacecolor=color if closed else "white",
    )


def _lane(ax, bar: Bar, y: float, lo: float, hi: float, color: str) -> None:
    birth = lo if bar.birth == float("-inf") else float(bar.birth)
    if bar.infinite:
        ax.annotate(
            "",
            xy=(hi, y),
            xytext=(birth, y),
            arrowprops={"arrowstyle": "->", "color": color},
        )
    else:
        ax.plot([birth, float(bar.death)], [y, y], color=color, linewidth=2)
        _endpoint(ax, float(bar.death), y, bar.death_closed, color)
    if bar.birth != float("-inf"):
        _endpoint(ax, birth, y, bar.birth_closed, color)


def render_svg(barcodes: Sequence[Barcode], title: str = "") -> str:
    """SVG document with the bars of all given barcodes.

    Args:
        barcodes: barcodes to draw, each dimension in its own color.
        title (str): figure title.

    Returns:
        str: SVG text.
    """
    lanes = [
        (bc.dim, b)
        for bc in barcodes
        for b in sorted(bc, key=lambda b: (float(b.birth), float(b.death)))
    ]
    lo, hi = _range(barcodes)
    fig, ax = plt.subplots(figsize=(8, 1 + 0.3 * max(len(lanes), 1)))
    try:
        for y, (dim, bar) in enumerate(reversed(lanes), start=1):
            _lane(ax, bar, y, lo, hi, _COLORS[dim % len(_COLORS)])
        ax.set_xlim(lo, hi)
        ax.set_ylim(0, len(lanes) + 1)
        ax.set_yticks([])
        ax.set_xlabel("height")
        if title:
            ax.set_title(title)
        buf = io.StringIO()
        fig.savefig(buf, format="svg", bbox_inches="tight")
    finally:
        plt.close(fig)
    logger.debug("Rendered %d bars", len(lanes))
    return buf.getvalue()
