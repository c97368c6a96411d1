"""Command line: solve, verify, render and records.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 failed verification or a result below the record, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import codec
from .lattice import Box
from .records import Status, builtin_records, compare, record_length
from .search import GENERATOR_NAME, SearchConfig, solve
from .tour import cells_for_length, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _box(text: str) -> Box:
    try:
        return Box.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> codec.TourDocument:
    return codec.read_tour(_read(path))


def cmd_solve(args: argparse.Namespace) -> int:
    box = args.box
    target = args.target_length
    if target is None and args.mode == "heuristic":
        target = record_length(box.dims, args.closed)
    config = SearchConfig(
        mode=args.mode,
        closed=args.closed,
        time_limit=args.time_limit,
        seed=args.seed,
        restarts=args.restarts,
        beam_width=args.beam,
        threads=args.threads,
        target_length=target,
    )
    result = solve(box, config)
    meta = {"mode": config.mode, "length": result.length, "optimal": result.optimal}
    if config.mode == "heuristic":
        meta.update(seed=config.seed, generator=GENERATOR_NAME, beam_width=config.beam_width)
    if args.format == "layers":
        text = codec.render_layers(result.best)
    else:
        text = codec.encode_document(result.best, meta)
    _emit(text, args.out)
    if args.figure:
        from .plotting import plot_tour

        plot_tour(result.best, args.figure)
    status = compare(result)
    print(
        f"box {box} {'closed' if config.closed else 'open'}: length {result.length}"
        f" optimal={str(result.optimal).lower()} stopped_by={result.stopped_by.value}"
        f" nodes={result.nodes_expanded} restarts={result.restarts_done}"
        f" elapsed={result.elapsed:.2f}s record={status}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    report = verify(doc.tour)
    kind = "closed" if doc.tour.closed else "open"
    print(f"box: {doc.tour.box} {kind}")
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_render(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    if args.format == "layers":
        text = codec.render_layers(doc.tour)
    elif args.format == "polyline":
        text = codec.export_polyline(doc.tour)
    else:
        codec.require_verified(doc.tour)
        text = codec.encode_document(doc)
    _emit(text, args.out)
    if args.figure:
        from .plotting import plot_tour

        plot_tour(doc.tour, args.figure)
    return EXIT_OK


def cmd_records(args: argparse.Namespace) -> int:
    entries = builtin_records()
    if args.box is not None:
        entries = [e for e in entries if e.dims == args.box.shape]
    print("dims\tkind\tlength\tcells\tvolume\tcoverage\tsource")
    for e in entries:
        kind = "closed" if e.closed else "open"
        cells = cells_for_length(e.length, e.closed)
        print(
            f"{'x'.join(map(str, e.dims))}\t{kind}\t{e.length}\t{cells}"
            f"\t{e.box.volume}\t{e.coverage()[1]}%\t{e.source}"
        )
    found = []
    code = EXIT_OK
    if args.compare:
        doc = _load(args.compare)
        report = verify(doc.tour)
        if not report.ok:
            print("compare: tour fails verification", file=sys.stderr)
            print(report.summary(), file=sys.stderr)
            return EXIT_FAIL
        status = compare(doc.tour)
        print(f"compare\t{doc.tour.box}\t{'closed' if doc.tour.closed else 'open'}"
              f"\t{doc.tour.length}\t{status}")
        if status.record is not None:
            found.append((status.record, doc.tour.length))
        if status.status is Status.BELOW:
            code = EXIT_FAIL
    if args.figure:
        from .plotting import plot_coverage

        plot_coverage(entries, args.figure, found)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knightpath3d",
        description="Longest non-crossing knight paths in 3D boxes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="search for a long non-crossing tour")
    p.add_argument("--box", type=_box, required=True, metavar="MxNxK")
    p.add_argument("--closed", action="store_true", help="look for a reentrant tour")
    p.add_argument("--mode", choices=("exhaustive", "heuristic"), default="heuristic")
    p.add_argument("--time-limit", type=float, default=None, metavar="S")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--beam", type=int, default=1, metavar="W")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--target-length", type=int, default=None, metavar="L",
                   help="stop once a tour this long is found (heuristic default: the record)")
    p.add_argument("--out", default=None, metavar="FILE")
    p.add_argument("--format", choices=("doc", "layers"), default="doc")
    p.add_argument("--figure", default=None, metavar="PNG", help="also save a 3D plot")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a tour file (JSON document or layer table)")
    p.add_argument("file", nargs="?", default="-", metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="convert a tour file")
    p.add_argument("file", nargs="?", default="-", metavar="FILE")
    p.add_argument("--format", choices=("layers", "doc", "polyline"), default="layers")
    p.add_argument("--out", default=None, metavar="FILE")
    p.add_argument("--figure", default=None, metavar="PNG")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("records", help="list published records, optionally compare a tour")
    p.add_argument("--box", type=_box, default=None, metavar="MxNxK")
    p.add_argument("--compare", default=None, metavar="FILE")
    p.add_argument("--figure", default=None, metavar="PNG", help="save a coverage chart")
    p.set_defaults(func=cmd_records)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (codec.DocumentError, codec.LayerParseError, ValueError, OSError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
