"""Command-line front end: ``hautus analyze | witness | generic``.

Exit status: 0 for any completed analysis (Degenerate and Unknown included),
1 for usage, input or parse errors, 2 when an internal invariant fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .analyzer import (
    AnalysisConfig,
    AnalysisError,
    SignalSpace,
    WitnessVerificationError,
    analyze,
    render_text,
    torsion_witness,
)
from .genericity import SampleSpec, run_experiment, summary_table
from .pointfinder import SearchBounds
from .polymatrix import MatrixParseError, PolyMatrix, parse_matrix
from .polyring import PolyParseError, format_poly, parse_poly

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_matrix_file(path: str) -> PolyMatrix:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return parse_matrix(text)
    except MatrixParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path}: expected a JSON object")
    return data


def _setting(args, config: dict, name: str, default):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return config.get(name, default)


def _bounds(args, config: dict) -> SearchBounds:
    d = SearchBounds()
    return SearchBounds(
        real_grid_radius=int(_setting(args, config, "real_grid_radius", d.real_grid_radius)),
        rational_height=int(_setting(args, config, "rational_height", d.rational_height)),
        integer_box=int(_setting(args, config, "integer_box", d.integer_box)),
        max_lines=int(_setting(args, config, "max_lines", d.max_lines)),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hautus", description="Controllability analysis of linear "
                     "constant-coefficient PDE systems given as polynomial matrices.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--config", help="JSON file with default settings")

    def search(p):
        p.add_argument("--real-grid-radius", type=int, dest="real_grid_radius")
        p.add_argument("--rational-height", type=int, dest="rational_height")
        p.add_argument("--integer-box", type=int, dest="integer_box")
        p.add_argument("--max-lines", type=int, dest="max_lines")

    a = sub.add_parser("analyze", help="analyze a matrix file")
    a.add_argument("path")
    a.add_argument("--space", action="append", choices=[s.value for s in SignalSpace] + ["distributions"],
                   help="signal space (repeatable, default smooth)")
    a.add_argument("--no-witness", action="store_true", help="skip torsion witnesses")
    common(a)
    search(a)

    w = sub.add_parser("witness", help="torsion witness for one factor")
    w.add_argument("path")
    w.add_argument("--witness-factor", required=True, help='polynomial, e.g. "d1"')
    common(w)

    g = sub.add_parser("generic", help="random-matrix genericity experiment")
    for name in ("rows", "cols", "nvars", "degree", "trials", "seed"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--coeff-range", type=int, dest="coeff_range")
    g.add_argument("--density", type=float)
    common(g)
    return parser


def _cmd_analyze(args, out) -> int:
    config = _load_config(args.config)
    P = parse_matrix_file(args.path)
    names = args.space or config.get("spaces") or ["smooth"]
    try:
        spaces = [SignalSpace(s) for s in names]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    witnesses = not args.no_witness and config.get("witnesses", True)
    report = analyze(P, spaces, AnalysisConfig(_bounds(args, config), bool(witnesses)))
    if args.format == "json":
        out.write(report.to_json() + "\n")
    else:
        out.write(render_text(report))
    return EXIT_OK


def _cmd_witness(args, out) -> int:
    _load_config(args.config)
    P = parse_matrix_file(args.path)
    try:
        p = parse_poly(args.witness_factor, P.nvars)
    except PolyParseError as exc:
        raise UsageError(f"--witness-factor: {exc}") from None
    try:
        w = torsion_witness(P, p)
    except AnalysisError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        out.write(json.dumps({"schema": "hautus-report/1", "witnesses": [w.to_dict()]},
                             indent=2) + "\n")
    else:
        out.write(f"factor: {format_poly(w.prime_factor)}\n")
        out.write(f"witness x = {w.witness}\n")
        out.write(f"row {w.row + 1} combination: "
                  f"({', '.join(format_poly(b) for b in w.certificate)})\n")
        out.write("checks: p*x in the row module, x not in the row module\n")
    return EXIT_OK


def _cmd_generic(args, out) -> int:
    config = _load_config(args.config)
    values = {}
    for name in ("rows", "cols", "nvars", "degree", "trials", "seed", "coeff_range",
                 "density"):
        v = _setting(args, config, name, None)
        if v is not None:
            values[name] = v
    missing = [k for k in ("rows", "cols", "nvars", "degree") if k not in values]
    if missing:
        raise UsageError("generic needs " + ", ".join(f"--{m}" for m in missing))
    try:
        spec = SampleSpec(**values)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    result = run_experiment(spec)
    if args.format == "json":
        out.write(json.dumps(result.to_dict(), indent=2) + "\n")
    else:
        out.write(summary_table(result))
    return EXIT_OK


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: analyze, witness or generic")
        handler = {"analyze": _cmd_analyze, "witness": _cmd_witness,
                   "generic": _cmd_generic}[args.command]
        return handler(args, out)
    except UsageError as exc:
        err.write(f"hautus: error: {exc}\n")
        return EXIT_USAGE
    except WitnessVerificationError as exc:
        err.write(f"hautus: invariant breach: {exc}\n")
        return EXIT_INVARIANT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
