"""Command-line driver.

Exit status: 0 for NONEMPTY, EMPTY or plain success, 2 for UNKNOWN, 1 on error.
"""
import argparse
import json
import os
import sys

from . import io
from .blocks import build_blocks, build_hmatrix, build_vpairs
from .caps import MAX_PERIOD, N_MAX
from .dsl import SpecError, load_spec
from .errors import SftError
from .matrix import UNKNOWN, Budgets, analyze, build_strip_matrix, find_periodic, prune
from .patterns import normalize_to_cubes
from .strips import enumerate_strips


def _write(path, data):
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(path, mode) as fh:
        fh.write(data)


def _cube_text(cube, symbols):
    return "/".join("".join(row) for row in io.cube_to_json(cube, symbols)["rows"]) \
        if cube.ndim == 2 else " ".join(io.cube_to_json(cube, symbols)["cells"])


def cmd_normalize(args):
    spec = load_spec(args.file)
    cubes = normalize_to_cubes(spec)
    print(f"l={cubes.side}, allowed_cubes={len(cubes.allowed)}")
    if args.list:
        chars = io.symbol_chars(spec.alphabet.symbols)
        for i in range(len(cubes.allowed)):
            print(_cube_text(cubes.cube(i), chars))
    return 0


def cmd_blocks(args):
    spec = load_spec(args.file)
    cubes = normalize_to_cubes(spec)
    blocks = build_blocks(spec, cubes)
    vpairs = build_vpairs(spec, blocks)
    if args.format == "json":
        hm = build_hmatrix(spec, vpairs)
        sys.stdout.write(io.dumps({
            "side": cubes.side,
            "blocks": [io.cube_to_json(b.array, spec.alphabet.symbols) for b in blocks],
            "vpairs": len(vpairs),
            "hmatrix": io.matrix_to_json(hm, spec.alphabet.symbols),
        }))
    else:
        chars = io.symbol_chars(spec.alphabet.symbols)
        print(f"l={cubes.side}, blocks={len(blocks)}, vpairs={len(vpairs)}")
        for b in blocks:
            print(_cube_text(b.array, chars))
    return 0


def cmd_strips(args):
    spec = load_spec(args.file)
    blocks = build_blocks(spec, normalize_to_cubes(spec))
    strips = enumerate_strips(spec, blocks, args.max_period)
    if args.format == "json":
        sys.stdout.write(io.dumps([io.strip_to_json(s, spec.alphabet.symbols) for s in strips]))
    else:
        chars = io.symbol_chars(spec.alphabet.symbols)
        print(f"strips={len(strips)}")
        for s in strips:
            print(f"period {s.period}")
            for row in s.rows():
                print("  " + "".join(chars[v] for v in row))
    return 0


def cmd_matrix(args):
    spec = load_spec(args.file)
    blocks = build_blocks(spec, normalize_to_cubes(spec))
    m = build_strip_matrix(spec, enumerate_strips(spec, blocks, args.max_period))
    if args.pruned:
        m = prune(m)
    if args.dot:
        _write(args.dot, io.matrix_to_dot(m))
    sys.stdout.write(io.dumps(io.matrix_to_json(m, spec.alphabet.symbols)))
    return 0


def _budgets(args):
    return Budgets(max_period=args.max_period, n_max=args.max_square)


def _emit_report(args, spec, report):
    symbols = spec.alphabet.symbols
    if args.format == "json":
        sys.stdout.write(io.dumps(io.report_to_json(report, symbols, args.timings)))
    else:
        print(f"status: {report.status}")
        if report.witness is not None:
            print(f"witness: no admissible {report.witness}x{report.witness} window")
        if report.certificate is not None:
            pt = report.certificate
            print(f"certificate periods: {' x '.join(map(str, pt.periods))}")
            if pt.torus.dim == 2:
                sys.stdout.write(io.render_point(pt, *pt.periods, "ascii", symbols).decode())
        if report.diagnostic:
            print(f"diagnostic: {report.diagnostic}")
    if args.point_out and report.certificate is not None:
        _write(args.point_out, io.dumps(io.point_to_json(report.certificate, symbols)))
    if args.figures:
        write_figures(args.figures, spec, report)
    return 2 if report.status == UNKNOWN else 0


def write_figures(directory, spec, report):
    """Report figures plus a tab-separated table of window counts."""
    from . import plotting

    os.makedirs(directory, exist_ok=True)
    counts = report.details.get("window_counts", [])
    with open(os.path.join(directory, "window_counts.tsv"), "w") as fh:
        fh.write("n\tadmissible_windows\n")
        for n, c in enumerate(counts, start=1):
            fh.write(f"{n}\t{c}\n")
    if counts:
        plotting.plot_window_counts(counts, os.path.join(directory, "window_counts.png"))
    if report.matrix is not None:
        plotting.plot_matrix(report.matrix, os.path.join(directory, "strip_matrix.png"),
                             "pruned strip matrix")
    if report.certificate is not None and report.certificate.torus.dim == 2:
        plotting.plot_point(report.certificate, spec.alphabet.symbols,
                            os.path.join(directory, "certificate.png"))


def cmd_analyze(args):
    spec = load_spec(args.file)
    return _emit_report(args, spec, analyze(spec, _budgets(args)))


def cmd_find_periodic(args):
    spec = load_spec(args.file)
    return _emit_report(args, spec, find_periodic(spec, _budgets(args)))


def cmd_render(args):
    with open(args.point) as fh:
        pt, symbols = io.point_from_json(json.load(fh))
    width = args.width or pt.periods[0]
    height = args.height or pt.periods[1]
    data = io.render_point(pt, width, height, args.format, symbols)
    if args.output:
        _write(args.output, data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sftmat", description="Analyze two-dimensional subshifts of finite type.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="reduce the forbidden set to side-l cubes")
    p.add_argument("file")
    p.add_argument("--list", action="store_true", help="print every allowed cube")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("blocks", help="blocks and vertically stacked pairs")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("strips", help="canonical periodic strips")
    p.add_argument("file")
    p.add_argument("--max-period", type=int, default=MAX_PERIOD)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_strips)

    p = sub.add_parser("matrix", help="strip matrix as JSON")
    p.add_argument("file")
    p.add_argument("--max-period", type=int, default=MAX_PERIOD)
    p.add_argument("--dot", help="also write a DOT digraph here")
    p.add_argument("--pruned", action="store_true")
    p.set_defaults(func=cmd_matrix)

    for name, func, text in (("analyze", cmd_analyze, "decide nonemptiness within budgets"),
                             ("find-periodic", cmd_find_periodic, "search for a periodic point")):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.add_argument("--max-period", type=int, default=MAX_PERIOD)
        p.add_argument("--max-square", type=int, default=N_MAX)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--timings", action="store_true", help="include wall-clock timings")
        p.add_argument("--point-out", help="write the certificate as point JSON")
        p.add_argument("--figures", help="directory for PNG figures and a TSV of window counts")
        p.set_defaults(func=func)

    p = sub.add_parser("render", help="draw a periodic point")
    p.add_argument("point")
    p.add_argument("--format", choices=("ascii", "ppm"), default="ascii")
    p.add_argument("--width", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)
    return parser


def run_cli(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"{getattr(args, 'file', '')}:{exc}", file=sys.stderr)
    except (SftError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 1


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
