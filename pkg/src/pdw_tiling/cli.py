"""Command line: solve, enumerate, build, verify, symmetry, export."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .charts import chart_a, equal_up_to_symmetry, vertex_type
from .solver import (NoSolution, SearchConfig, SearchSpaceExceeded, SearchStats,
                     enumerate_charts, solve_geometry, unique_up_to_symmetry)

EXIT_OK, EXIT_VERIFY, EXIT_NO_SOLUTION, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def cmd_solve(args) -> int:
    try:
        sol = solve_geometry(args.faces)
    except (NoSolution, ValueError) as exc:
        raise CliError(str(exc), EXIT_NO_SOLUTION) from None
    print(f"F = {sol.F}")
    for name, cf in sol.closed_forms().items():
        print(f"{name:>6} = {str(cf):<22} {cf.value:.15f}")
    print(f"cos v2v4 = {sol.cos_diagonal}")
    print(f"rejected longitude branch: <v1, v2> = {sol.rejected_inner_product}")
    return EXIT_OK


def _tile_type(text: str):
    return text if text == "both" else int(text)


def cmd_enumerate(args) -> int:
    config = SearchConfig(face_budget=args.budget, prune=not args.no_prune)
    stats = SearchStats()
    t0 = time.perf_counter()
    try:
        charts = enumerate_charts(args.faces, args.tile_type, config=config, stats=stats)
    except SearchSpaceExceeded as exc:
        raise CliError(str(exc), EXIT_BUDGET) from None
    except ValueError as exc:
        raise CliError(str(exc), EXIT_NO_SOLUTION) from None
    reps = unique_up_to_symmetry(charts)
    print(f"F = {args.faces}, tile type {args.tile_type}: {len(charts)} charts, "
          f"{len(reps)} up to symmetry ({stats.nodes} nodes, {stats.leaves} leaves, "
          f"{time.perf_counter() - t0:.2f} s)")
    ref = chart_a(args.faces) if args.faces % 6 == 0 else None
    for i, c in enumerate(reps):
        same = ref is not None and equal_up_to_symmetry(c, ref)
        print(f"chart {i}: tile type {c.tile_type}, "
              f"{'equivalent' if same else 'not equivalent'} to the alternating chart")
        c = ref if same else c
        for v in c.map.vertices:
            print(f"  {v:>4}: {vertex_type(c, v)}")
    return EXIT_OK


def _load(path):
    from .export import load_json

    try:
        return load_json(path)
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from None


def _write(path, text: str):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


def cmd_build(args) -> int:
    from .export import dumps
    from .tiling import build_tiling

    try:
        t = build_tiling(args.faces)
    except (NoSolution, ValueError) as exc:
        raise CliError(str(exc), EXIT_NO_SOLUTION) from None
    text = dumps(t, symmetry=not args.no_symmetry) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        _write(args.output, text)
        print(f"wrote {args.output}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .tiling import existence_report, verify_tiling

    t = _load(args.file)
    reports = [verify_tiling(t, args.tol)]
    if t.geometry.F == 12:
        reports.append(existence_report(t, args.tol))
    for rep in reports:
        print(rep)
    failed = [c.name for rep in reports for c in rep.failures()]
    if failed:
        raise CliError("failed: " + ", ".join(failed), EXIT_VERIFY)
    return EXIT_OK


def cmd_symmetry(args) -> int:
    from .symmetry import AUTOMORPHISM_NAMES, axes_report, classify, find_symmetries

    t = _load(args.file)
    ops = find_symmetries(t, args.tol)
    group = classify(ops)
    for op in ops:
        print(op.describe())
    rep = axes_report(ops, t)
    if args.verbose:
        print(rep)
    axes = ", ".join(f"{k}↔{v}" for k, v in AUTOMORPHISM_NAMES.items())
    print(f"{group.schoenflies}; axes: {axes}")
    if not rep.ok:
        raise CliError("failed: " + ", ".join(c.name for c in rep.failures()), EXIT_VERIFY)
    return EXIT_OK


def cmd_export(args) -> int:
    from .export import dumps, parse_view, to_off, to_svg

    t = _load(args.file)
    try:
        view = parse_view(args.view)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_IO) from None
    if args.arc_segments < 1:
        raise CliError("--arc-segments must be positive", EXIT_IO)
    if args.format == "json":
        text = dumps(t) + "\n"
    elif args.format == "off":
        text = to_off(t, args.arc_segments)
    else:
        text = to_svg(t, view, args.arc_segments)
    out = args.output or str(Path(args.file).with_suffix("." + args.format))
    if out == args.file:
        raise CliError("refusing to overwrite the input file", EXIT_IO)
    _write(out, text)
    print(f"wrote {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pdw-tiling", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="closed-form edge lengths and angles")
    s.add_argument("--faces", type=int, default=12)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("enumerate", help="charts over the pseudo-double wheel")
    s.add_argument("--faces", type=int, default=12)
    s.add_argument("--tile-type", type=_tile_type, default="both", choices=["both", 2, 4])
    s.add_argument("--budget", type=int, default=SearchConfig.face_budget,
                   help="largest face count searched")
    s.add_argument("--no-prune", action="store_true", help="skip in-search pruning")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("build", help="write the tiling as JSON")
    s.add_argument("--faces", type=int, default=12)
    s.add_argument("-o", "--output", default="-")
    s.add_argument("--no-symmetry", action="store_true")
    s.set_defaults(func=cmd_build)

    for name, func, hlp in (("verify", cmd_verify, "re-check a tiling file"),
                            ("symmetry", cmd_symmetry, "point group of a tiling file")):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("file")
        s.add_argument("--tol", type=float, default=1e-9)
        if name == "symmetry":
            s.add_argument("-v", "--verbose", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("export", help="JSON, OFF mesh or SVG view")
    s.add_argument("file")
    s.add_argument("--format", choices=["json", "off", "svg"], default="svg")
    s.add_argument("--view", default="0,0,1", help="view direction x,y,z")
    s.add_argument("--arc-segments", type=int, default=32)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(exc, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
