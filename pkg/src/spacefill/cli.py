"""``sfc`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 cell validation failure,
3 orientation-rule (or continuity) failure, 4 I/O error.
"""

import argparse
import sys
from typing import List, Optional

import numpy as np

from . import analysis, cells, realmap, recurrence
from .errors import (
    OrientationRuleError,
    ParseError,
    PathValidationError,
    SpaceFillError,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_ORIENTATION, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class CellFileError(Exception):
    """A cell file failed to parse or validate."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_source(p, positional=False):
    if positional:
        p.add_argument("file", nargs="?", help="cell file")
    p.add_argument("--cell", metavar="FILE", help="read the cell from FILE")
    p.add_argument("--rank", type=int, help="generate a serpentine cell of this rank")
    p.add_argument("--side", type=int, help="side length of the generated cell")
    p.add_argument("--variant", choices=[v.value for v in cells.AlignmentVariant],
                   help="alignment variant (default: adj or peano by cell class)")


def _load_path(args):
    filename = getattr(args, "file", None)
    if filename and args.cell:
        raise UsageError("give the cell file once")
    filename = filename or args.cell
    generated = args.rank is not None or args.side is not None
    if filename and generated:
        raise UsageError("use either a cell file or --rank/--side, not both")
    if filename:
        try:
            return cells.read_cell_file(filename)
        except (ParseError, PathValidationError) as exc:
            raise CellFileError(f"{filename}: {exc}") from exc
    if args.rank is None or args.side is None:
        raise UsageError("a cell source is required: --cell FILE or --rank R --side S")
    return cells.make_serpentine_path(args.rank, args.side)


def _load_cell(args):
    return cells.build_cell(_load_path(args), args.variant)


def _open_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w", encoding="ascii", newline="")
    return None


def _emit(args, text, stdout):
    fh = _open_out(args)
    if fh is None:
        stdout.write(text)
        return
    with fh:
        fh.write(text)


def _cmd_cell_gen(args, stdout):
    path = cells.make_serpentine_path(args.rank, args.side)
    cells.validate_path(path)
    _emit(args, cells.render_cell_file(path, f"serpentine rank {args.rank} side {args.side}"), stdout)


def _cmd_cell_check(args, stdout):
    cell = _load_cell(args)
    witness = cells.verify_recurrence_compatibility(cell, args.max_points)
    if witness is not None:
        raise OrientationRuleError(f"curve breaks continuity between u={witness} and u={witness + 1}")
    stdout.write(f"ok {cell.cell_class}\n")


def _cmd_cell_info(args, stdout):
    cell = _load_cell(args)
    stdout.write("\n".join(cells.diagnostics(cell).lines()) + "\n")


def _read_lines(values):
    if values:
        return [values]
    return [line.split() for line in sys.stdin if line.strip()]


def _ints(tokens):
    try:
        return [int(tok) for tok in tokens]
    except ValueError as exc:
        raise UsageError(f"expected decimal integers: {exc}")


def _cmd_encode(args, stdout):
    cell = _load_cell(args)
    fn = recurrence.encode_centered if args.centered else recurrence.encode
    rows = []
    for tokens in _read_lines(args.scalars):
        for u in _ints(tokens):
            rows.append(" ".join(str(c) for c in fn(u, cell)))
    _emit(args, "".join(r + "\n" for r in rows), stdout)


def _cmd_decode(args, stdout):
    cell = _load_cell(args)
    fn = recurrence.decode_centered if args.centered else recurrence.decode
    rows = []
    for tokens in _read_lines(args.coords):
        rows.append(str(fn(_ints(tokens), cell)))
    _emit(args, "".join(r + "\n" for r in rows), stdout)


def _curve_points(cell, levels):
    nodes = cell.side ** (cell.rank * levels)
    budget = cells.node_budget()
    if nodes > budget:
        raise UsageError(f"{nodes} vertices exceeds the node budget {budget}")
    groups = -(-levels // cell.rank)
    return recurrence.encode_many(np.arange(nodes, dtype=np.int64), cell, groups=groups)


def curve_csv(points) -> str:
    d = points.shape[1]
    lines = ["u," + ",".join(f"x{j}" for j in range(d))]
    lines.extend(f"{u}," + ",".join(str(int(c)) for c in p) for u, p in enumerate(points))
    return "\n".join(lines) + "\n"


def curve_svg(points, extent: int) -> str:
    coords = " ".join(f"{int(x)},{int(y)}" for x, y in points)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="-0.5 -0.5 {extent} {extent}">\n'
        f'<polyline fill="none" stroke="black" stroke-width="0.1" points="{coords}"/>\n'
        "</svg>\n"
    )


def _cmd_curve(args, stdout):
    cell = _load_cell(args)
    if args.format == "svg" and cell.rank != 2:
        raise UsageError("SVG output is only defined for rank 2; use --format csv")
    points = _curve_points(cell, args.levels)
    if args.format == "svg":
        text = curve_svg(points, cell.side**args.levels)
    else:
        text = curve_csv(points)
    _emit(args, text, stdout)


def _cmd_isotropy(args, stdout):
    cell = _load_cell(args)
    _emit(args, analysis.edge_tally(cell, args.levels, args.closing).to_csv(), stdout)


def _cmd_runs(args, stdout):
    cell = _load_cell(args)
    _emit(args, analysis.run_histogram(cell, args.levels).to_csv(), stdout)


def _cmd_dimred(args, stdout):
    gaps = range(1, args.gaps + 1)
    if args.z:
        if args.cell or args.file or args.side is not None or args.variant:
            raise UsageError("--z takes only --rank")
        if args.rank is None:
            raise UsageError("--z needs --rank")
        series = analysis.dimred_profile(None, args.rank, gaps, args.samples, args.levels, args.seed)
    else:
        series = analysis.dimred_profile(_load_cell(args), None, gaps, args.samples,
                                         args.levels, args.seed)
    _emit(args, series.to_csv(), stdout)


def _cmd_real(args, stdout):
    cell = _load_cell(args)
    if args.map in ("F", "E"):
        value = realmap.parse_rational(args.argument)
    else:
        value = realmap.parse_point(args.argument)
    n = args.n
    if args.map in ("E", "e") and args.depth is not None:
        n = args.depth
    elif args.map in ("E", "e"):
        n = args.n * cell.rank
    result = realmap.real_map(args.map, value, n, cell, centered=args.centered)
    if args.map in ("F", "E"):
        stdout.write(realmap.format_point(result) + "\n")
    else:
        stdout.write(realmap.format_rational(result) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sfc", description="Space-filling curves of any rank and side.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    cell = sub.add_parser("cell", help="generate, check or describe cells")
    cell_sub = cell.add_subparsers(dest="action", required=True, parser_class=_Parser)
    gen = cell_sub.add_parser("gen", help="write a serpentine cell file")
    gen.add_argument("--rank", type=int, required=True)
    gen.add_argument("--side", type=int, required=True)
    gen.add_argument("--out")
    gen.set_defaults(func=_cmd_cell_gen)
    check = cell_sub.add_parser("check", help="validate a cell and its curve")
    _add_source(check, positional=True)
    check.add_argument("--max-points", type=int, default=1 << 16)
    check.set_defaults(func=_cmd_cell_check)
    info = cell_sub.add_parser("info", help="print cell diagnostics")
    _add_source(info, positional=True)
    info.set_defaults(func=_cmd_cell_info)

    enc = sub.add_parser("encode", help="scalar -> lattice point (stdin if no scalars)")
    _add_source(enc)
    enc.add_argument("--centered", action="store_true")
    enc.add_argument("--out")
    enc.add_argument("scalars", nargs="*")
    enc.set_defaults(func=_cmd_encode)

    dec = sub.add_parser("decode", help="lattice point -> scalar (stdin if no coordinates)")
    _add_source(dec)
    dec.add_argument("--centered", action="store_true")
    dec.add_argument("--out")
    dec.add_argument("coords", nargs="*")
    dec.set_defaults(func=_cmd_decode)

    curve = sub.add_parser("curve", help="vertex list of a complete pattern")
    _add_source(curve)
    curve.add_argument("--levels", type=int, required=True)
    curve.add_argument("--format", choices=["csv", "svg"], default="csv")
    curve.add_argument("--out")
    curve.set_defaults(func=_cmd_curve)

    iso = sub.add_parser("isotropy", help="per-axis edge tally (CSV)")
    _add_source(iso)
    iso.add_argument("--levels", type=int, required=True)
    iso.add_argument("--closing", action="store_true", help="count the edge leaving the pattern")
    iso.add_argument("--out")
    iso.set_defaults(func=_cmd_isotropy)

    runs = sub.add_parser("runs", help="straight-run histogram (CSV)")
    _add_source(runs)
    runs.add_argument("--levels", type=int, required=True)
    runs.add_argument("--out")
    runs.set_defaults(func=_cmd_runs)

    bench = sub.add_parser("bench", help="benchmarks")
    bench_sub = bench.add_subparsers(dest="bench", required=True, parser_class=_Parser)
    dim = bench_sub.add_parser("dimred", help="displacement vs scalar gap (CSV)")
    _add_source(dim, positional=True)
    dim.add_argument("--z", action="store_true", help="Z-order baseline of the given --rank")
    dim.add_argument("--gaps", type=int, default=analysis.MAX_GAP)
    dim.add_argument("--samples", type=int, default=analysis.DEFAULT_SAMPLES)
    dim.add_argument("--levels", type=int, help="scalar domain is s**(d*levels)")
    dim.add_argument("--seed", type=lambda v: int(v, 0), default=analysis.DEFAULT_SEED)
    dim.add_argument("--out")
    dim.set_defaults(func=_cmd_dimred)

    real = sub.add_parser("real", help="exact unit-cube maps F, f, E, e")
    real.add_argument("map", choices=["F", "f", "E", "e"])
    _add_source(real)
    real.add_argument("--n", type=int, default=1, help="digit groups (E/e depth defaults to n*d)")
    real.add_argument("--depth", type=int, help="explicit depth for E and e")
    real.add_argument("--centered", action="store_true")
    real.add_argument("argument", help="p/q for F and E; comma-separated p/q point for f and e")
    real.set_defaults(func=_cmd_real)
    return parser


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args, stdout)
    except SystemExit as exc:  # --help
        return exc.code or 0
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except (CellFileError, PathValidationError) as exc:
        print(f"sfc: invalid cell: {exc}", file=stderr)
        return EXIT_INVALID
    except OrientationRuleError as exc:
        print(f"sfc: orientation rules fail: {exc}", file=stderr)
        return EXIT_ORIENTATION
    except OSError as exc:
        print(f"sfc: {exc}", file=stderr)
        return EXIT_IO
    except SpaceFillError as exc:
        print(f"sfc: {exc}", file=stderr)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
