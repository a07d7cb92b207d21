"""Command-line interface.

Exit status: 0 success, 1 validation or I/O failure, 2 semantic refusal
(morphism absent from the requested space, computon without an
expression), 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    ArithmeticOverflow,
    DecodeError,
    IncompleteConfiguration,
    MachineValidationError,
    NoSemantics,
    SelectorError,
)
from .evolution import Configuration, NotFoundWithin, detect_cycle, orbit
from .execution import Value, eval_morphism, parse_selector
from .export import export_dot, render_diagram, render_space_text
from .fileformat import FIXTURES, fixture_path, load_machine, orbit_report
from .space import maximal_space, space_at, space_stats

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_REFUSED = 2
EXIT_USAGE = 64

DEFAULT_MAX_STEPS = 10000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _non_negative(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text):
    value = _non_negative(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="compmachine", description="Run composition machines and inspect their program spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a machine file")
    p.add_argument("file")

    p = sub.add_parser("run", help="print the orbit report as JSON")
    p.add_argument("file")
    p.add_argument("--steps", type=_non_negative, required=True)
    p.add_argument("--initial", metavar="BITSTRING")

    p = sub.add_parser("diagram", help="print the space-time diagram")
    p.add_argument("file")
    p.add_argument("--steps", type=_non_negative, required=True)
    p.add_argument("--initial", metavar="BITSTRING")

    p = sub.add_parser("cycle", help="find the pre-period and period of the orbit")
    p.add_argument("file")
    p.add_argument("--max-steps", type=_positive, default=DEFAULT_MAX_STEPS)
    p.add_argument("--initial", metavar="BITSTRING")

    p = sub.add_parser("space", help="print a program space")
    p.add_argument("file")
    where = p.add_mutually_exclusive_group()
    where.add_argument("--at", type=_non_negative, metavar="T")
    where.add_argument("--maximal", action="store_true")
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")

    p = sub.add_parser("eval", help="evaluate a morphism on an integer input")
    p.add_argument("file")
    p.add_argument("--morphism", required=True, help='e.g. "f3∘f2∘f1", "f3.f2.f1", "f1" or "id:d1"')
    p.add_argument("--input", type=int, required=True)
    p.add_argument("--at", type=_non_negative, metavar="T")
    return parser


def _resolve(file):
    path = Path(file)
    if not path.exists() and file in FIXTURES:
        return fixture_path(file)
    return path


def _initial(m, bits):
    if bits is None:
        return m.initial_configuration
    try:
        return Configuration.from_bits(m.quiver.arrows, bits)
    except IncompleteConfiguration as exc:
        raise UsageError(f"--initial: {exc}") from None


def _print_json(obj, out):
    out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _space_json(ps, t):
    return {
        "t": t,
        "data_types": list(ps.data_types),
        "morphisms": [mo.as_dict() for mo in ps.morphisms],
        "stats": space_stats(ps),
    }


def _run(args, out) -> int:
    m = load_machine(_resolve(args.file))

    if args.command == "validate":
        out.write("OK\n")
    elif args.command == "run":
        _print_json(orbit_report(m, args.steps, _initial(m, args.initial)), out)
    elif args.command == "diagram":
        out.write(render_diagram(orbit(m, _initial(m, args.initial), args.steps)))
    elif args.command == "cycle":
        report = detect_cycle(m, _initial(m, args.initial), args.max_steps)
        if isinstance(report, NotFoundWithin):
            out.write(f"no cycle found within {report.max_steps} steps\n")
        else:
            out.write(json.dumps(report.as_dict()) + "\n")
    elif args.command == "space":
        if args.at is not None:
            ps = space_at(m, orbit(m, None, args.at)[args.at], args.at)
        else:
            ps = maximal_space(m)
        if args.format == "json":
            _print_json(_space_json(ps, args.at), out)
        elif args.format == "dot":
            out.write(export_dot(ps))
        else:
            out.write(render_space_text(ps))
    elif args.command == "eval":
        mo = parse_selector(m, args.morphism)
        if args.at is not None:
            ps = space_at(m, orbit(m, None, args.at)[args.at], args.at)
            where = f"the space at t={args.at}"
        else:
            ps = maximal_space(m)
            where = "the maximal space"
        if mo not in ps:
            raise SelectorError(f"{mo.label} is not in {where}")
        result = eval_morphism(m, mo, Value(args.input, mo.input))
        _print_json({"morphism": mo.label, "value": result.value, "data_type": result.data_type}, out)
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _run(args, out)
    except UsageError as exc:
        err.write(f"compmachine: {exc}\n")
        return EXIT_USAGE
    except MachineValidationError as exc:
        for d in exc.diagnostics:
            err.write(f"{d}\n")
        return EXIT_INVALID
    except (DecodeError, OSError) as exc:
        err.write(f"compmachine: {exc}\n")
        return EXIT_INVALID
    except (SelectorError, NoSemantics, ArithmeticOverflow) as exc:
        err.write(f"compmachine: {exc}\n")
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
