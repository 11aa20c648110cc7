"""Command-line interface.

Subcommands:

* ``compute``: barcodes (and optionally generators) of one input, written
  as JSON, SVG and DOT;
* ``verify``: the same barcodes checked against standard persistence;
* ``bench``: timings on refined torus triangulations.

Exit codes: 0 success, 1 unreadable or malformed input, 2 invalid input or
options, 3 mismatch with the reference computation.
"""

__author__ = "ilbagatto"
__license__ = "MIT"
__version__ = "0.0.1"

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .barcodes import Bar, to_dot
from .categories import Flavor
from .complex import (
    ComplexError,
    EmbeddedComplex,
    HeightFunction,
    ParseError,
    betti_linear,
    load_complex,
    validate_embedding,
)
from .oracle import reduce_persistence
from .persistence import Barcode, HeightAnalysis
from .render import render_svg
from .samples import TILT, torus
from .sweep import SweepSettings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_MISMATCH = 3

_IDENTITY = ("1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0")


@dataclass
class RunConfig:
    input: Path
    transform: tuple[str, ...] = _IDENTITY
    dims: tuple[int, ...] = (0, 1, 2)
    flavors: tuple[Flavor, ...] = (Flavor.SUBLEVEL,)
    generators: bool = False
    perturb: bool = True
    verify: bool = False
    check_embedding: bool = False
    json_path: Path | None = None
    svg_path: Path | None = None
    dot_path: Path | None = None
    settings: SweepSettings = field(default_factory=SweepSettings)

    def __post_init__(self) -> None:
        if not self.dims:
            raise ValueError("No dimensions requested")
        for d in self.dims:
            if d not in (0, 1, 2):
                raise ValueError(f"Unsupported dimension {d}")
        if not self.flavors:
            raise ValueError("No flavors requested")
        self.settings.perturb = self.perturb

    @property
    def height(self) -> HeightFunction:
        """
        Raises:
            ValueError: the transform is malformed or not invertible.
        """
        return HeightFunction.from_values(self.transform)


class MismatchError(Exception):
    """Barcodes differ from the reference computation."""


def _number(x: Fraction | float) -> int | str:
    if x == math.inf:
        return "inf"
    if x == -math.inf:
        return "-inf"
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def bar_to_json(bar: Bar, generator: Sequence[int] | None = None) -> dict[str, Any]:
    return {
        "birth": _number(bar.birth),
        "death": _number(bar.death),
        "birth_closed": bar.birth_closed,
        "death_closed": bar.death_closed,
        "birth_index": bar.birth_index,
        "death_index": bar.death_index,
        "generator": None if generator is None else list(generator),
    }


def bar_from_json(dim: int, data: dict[str, Any]) -> Bar:
    def value(x: int | float | str) -> Fraction | float:
        if x in ("inf", "-inf"):
            return float(x)
        return Fraction(x)

    return Bar(
        dim=dim,
        birth=value(data["birth"]),
        death=value(data["death"]),
        birth_closed=data["birth_closed"],
        death_closed=data["death_closed"],
        birth_index=data.get("birth_index", 0),
        death_index=data.get("death_index", 0),
    )


def barcodes_to_json(
    analysis: HeightAnalysis, barcodes: Sequence[Barcode], generators: bool
) -> dict[str, Any]:
    """JSON document of barcodes.

    Every dimension maps to one ``{"flavor", "bars"}`` entry, or to a list
    of them when several flavors were computed.
    """
    dims: dict[str, Any] = {}
    for bc in barcodes:
        if generators:
            cycles = analysis.bar_generators(bc)
        else:
            cycles = [None] * len(bc)
        entry = {
            "flavor": str(bc.flavor),
            "bars": [
                bar_to_json(b, None if c is None else c.simplex_ids(analysis.complex))
                for b, c in zip(bc, cycles)
            ],
        }
        key = str(bc.dim)
        if key not in dims:
            dims[key] = entry
        elif isinstance(dims[key], list):
            dims[key].append(entry)
        else:
            dims[key] = [dims[key], entry]
    return {"dims": dims}


def barcodes_from_json(doc: dict[str, Any]) -> list[Barcode]:
    result = []
    for key, entries in doc["dims"].items():
        if isinstance(entries, dict):
            entries = [entries]
        for entry in entries:
            dim = int(key)
            bars = [bar_from_json(dim, b) for b in entry["bars"]]
            result.append(Barcode(dim, Flavor(entry["flavor"]), bars))
    return result


def compare_with_reference(analysis: HeightAnalysis, dims: Sequence[int]) -> list[str]:
    """Differences between sublevel barcodes and standard persistence.

    Infinite bars are first checked against Betti numbers.
    """
    problems = []
    betti = betti_linear(analysis.complex)
    for d in dims:
        found = len(analysis.sublevel(d).infinite)
        if found != betti[d]:
            problems.append(f"H{d}: {found} infinite bars, Betti number {betti[d]}")
    if problems:
        return problems
    reference = reduce_persistence(analysis.complex, analysis.order)
    for d in dims:
        got = analysis.sublevel(d).keys()
        want = sorted(b.key for b in reference[d])
        if got != want:
            problems.append(f"H{d}: sweep {got} != reference {want}")
    return problems


def _load(config: RunConfig) -> EmbeddedComplex:
    k = load_complex(config.input)
    if config.check_embedding:
        validate_embedding(k)
    return k


def _write_artifacts(
    config: RunConfig, analysis: HeightAnalysis, barcodes: list[Barcode]
) -> None:
    doc = barcodes_to_json(analysis, barcodes, config.generators)
    text = json.dumps(doc, indent=2, sort_keys=True)
    if config.json_path is None:
        print(text)
    else:
        config.json_path.write_text(text + "\n", encoding="utf-8")
    if config.svg_path is not None:
        title = config.input.name
        config.svg_path.write_text(render_svg(barcodes, title), encoding="utf-8")
    if config.dot_path is not None:
        config.dot_path.write_text(to_dot(analysis.barcode_graph), encoding="utf-8")
        reeb_path = config.dot_path.with_suffix(".reeb.dot")
        reeb_path.write_text(analysis.reeb.to_dot(), encoding="utf-8")


def run(config: RunConfig) -> int:
    """Compute, verify and write everything a config asks for.

    Returns:
        int: exit code.
    """
    try:
        k = _load(config)
        analysis = HeightAnalysis(k, config.height, config.settings)
        barcodes = [
            analysis.barcode(d, f) for f in config.flavors for d in sorted(config.dims)
        ]
        if config.verify:
            problems = compare_with_reference(analysis, config.dims)
            if problems:
                raise MismatchError("; ".join(problems))
        _write_artifacts(config, analysis, barcodes)
    except (ParseError, OSError, UnicodeDecodeError) as e:
        logger.error("Cannot read %s: %s", config.input, e)
        return EXIT_PARSE
    except (ComplexError, ValueError) as e:
        logger.error("Invalid input: %s", e)
        return EXIT_INVALID
    except MismatchError as e:
        logger.error("Mismatch: %s", e)
        return EXIT_MISMATCH
    return EXIT_OK


def bench(sizes: Sequence[int], dims: Sequence[int] = (0, 1, 2)) -> list[tuple]:
    """Time sublevel barcodes of tilted `n` by `n` tori.

    Returns:
        list: `(simplices, seconds, slope)`, slope against the previous row.
    """
    rows: list[tuple] = []
    for n in sizes:
        k = torus(n, n)
        start = time.perf_counter()
        analysis = HeightAnalysis(k, TILT)
        for d in dims:
            analysis.sublevel(d)
        elapsed = time.perf_counter() - start
        slope = None
        if rows:
            size, seconds, _ = rows[-1]
            slope = math.log(elapsed / seconds) / math.log(k.size / size)
        rows.append((k.size, elapsed, slope))
        logger.info("Torus %dx%d: %d simplices, %.3f s", n, n, k.size, elapsed)
    return rows


def _dims(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Bad dimension list: {text}")


def _flavors(text: str) -> tuple[Flavor, ...]:
    try:
        return tuple(Flavor(x.strip()) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"Bad flavor list: {text}")


def _input_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", "-i", type=Path, required=True, help="scx or OFF file")
    p.add_argument(
        "--transform",
        nargs=12,
        default=list(_IDENTITY),
        metavar="X",
        help="row-major 3x4 affine matrix",
    )
    p.add_argument("--dims", type=_dims, default=(0, 1, 2), help="e.g. 1,2")
    p.add_argument(
        "--no-perturb",
        dest="perturb",
        action="store_false",
        help="reject equal vertex heights",
    )
    p.add_argument(
        "--check-embedding", action="store_true", help="test for crossings"
    )


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levelsweep", description="Barcodes of height functions"
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="more logging"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="compute barcodes")
    _input_options(compute)
    compute.add_argument(
        "--flavors", type=_flavors, default=(Flavor.SUBLEVEL,), help="e.g. levelset"
    )
    compute.add_argument("--generators", action="store_true")
    compute.add_argument("--verify", action="store_true")
    compute.add_argument("--json", type=Path, dest="json_path")
    compute.add_argument("--svg", type=Path, dest="svg_path")
    compute.add_argument("--dot", type=Path, dest="dot_path")

    verify = sub.add_parser("verify", help="compare with standard persistence")
    _input_options(verify)

    b = sub.add_parser("bench", help="time refined tori")
    b.add_argument("sizes", nargs="*", type=int, default=[4, 8, 16, 32])
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    verify = args.command == "verify"
    return RunConfig(
        input=args.input,
        transform=tuple(args.transform),
        dims=args.dims,
        flavors=getattr(args, "flavors", (Flavor.SUBLEVEL,)),
        generators=getattr(args, "generators", False),
        perturb=args.perturb,
        verify=verify or args.verify,
        check_embedding=args.check_embedding,
        json_path=getattr(args, "json_path", None),
        svg_path=getattr(args, "svg_path", None),
        dot_path=getattr(args, "dot_path", None),
    )


def _verify_only(config: RunConfig) -> int:
    try:
        analysis = HeightAnalysis(_load(config), config.height, config.settings)
        problems = compare_with_reference(analysis, config.dims)
    except (ParseError, OSError, UnicodeDecodeError) as e:
        logger.error("Cannot read %s: %s", config.input, e)
        return EXIT_PARSE
    except (ComplexError, ValueError) as e:
        logger.error("Invalid input: %s", e)
        return EXIT_INVALID
    for p in problems:
        print(p)
    if problems:
        return EXIT_MISMATCH
    print("ok")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if args.command == "bench":
        for size, seconds, slope in bench(args.sizes):
            tail = "" if slope is None else f"  slope {slope:.2f}"
            print(f"{size:>9} {seconds:10.3f}{tail}")
        return EXIT_OK
    try:
        config = _config(args)
    except ValueError as e:
        logger.error("Invalid options: %s", e)
        return EXIT_INVALID
    if args.command == "verify":
        return _verify_only(config)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
