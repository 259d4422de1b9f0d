"""Command-line interface: ``permrack <command> ...``.

Exit status is 0 on success, 1 when the input is well formed but the answer
is negative or the data is invalid (not a rack, not isomorphic, bound
exceeded), and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import classify as cls
from . import coloring, enumeration, invariants, iso
from . import rack as rk

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_NAMED_RE = re.compile(r"(?P<kind>[RTC])(?P<n>\d+)|L(?P<p>\d+),(?P<m>-?\d+)|octahedron")


class UsageError(Exception):
    pass


def _dumps(data) -> str:
    return json.dumps(data, sort_keys=True)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    return p.read_text()


def named_rack(name: str) -> rk.Rack | None:
    """R<n>, T<n>, C<n>, L<p>,<m> or octahedron; None if `name` is none of these."""
    match = _NAMED_RE.fullmatch(name)
    if match is None:
        return None
    if name == "octahedron":
        return rk.octahedron()
    if match["kind"]:
        n = int(match["n"])
        return {"R": rk.dihedral, "T": rk.trivial, "C": rk.cyclic}[match["kind"]](n)
    return rk.linear_alexander(int(match["p"]), int(match["m"]))


def load_rack(source: str) -> rk.Rack:
    if source != "-" and not Path(source).exists():
        named = named_rack(source)
        if named is not None:
            return named
    return rk.loads(_read_text(source))


def format_rack(r: rk.Rack, fmt: str) -> str:
    if fmt == "table":
        return r.to_table_text().rstrip("\n")
    if fmt == "cycles":
        return r.to_cycles_text()
    return r.to_json()


def _emit_racks(racks, fmt: str, out) -> None:
    sep = "\n\n" if fmt == "table" else "\n"
    if racks:
        out.write(sep.join(format_rack(r, fmt) for r in racks) + "\n")


# -- commands ---------------------------------------------------------------

def _build_from_args(args) -> rk.Rack:
    name, params = args.name, args.params
    need = {"dihedral": 1, "trivial": 1, "cyclic": 1, "linear-alexander": 2, "quotient": 2, "octahedron": 0}
    if name not in need:
        named = named_rack(name)
        if named is None or params:
            raise UsageError(f"unknown rack {name!r}")
        return named
    if len(params) != need[name]:
        raise UsageError(f"{name} takes {need[name]} parameter(s)")
    try:
        if name == "quotient":
            coeffs = [int(c) for c in params[1].split(",")]
            return rk.alexander_quotient(int(params[0]), coeffs)
        ints = [int(x) for x in params]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    builders = {
        "dihedral": rk.dihedral,
        "trivial": rk.trivial,
        "cyclic": rk.cyclic,
        "linear-alexander": rk.linear_alexander,
        "octahedron": rk.octahedron,
    }
    return builders[name](*ints)


def cmd_build(args, out) -> int:
    try:
        r = _build_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit_racks([r], args.format, out)
    return EXIT_OK


def cmd_validate(args, out) -> int:
    text = _read_text(args.file)
    try:
        r = rk.loads(text)
    except rk.NotARackError as exc:
        out.write(_dumps(exc.report.to_dict()) + "\n")
        return EXIT_FAIL
    except (ValueError, KeyError, TypeError) as exc:
        out.write(_dumps({"is_rack": False, "error": str(exc)}) + "\n")
        return EXIT_FAIL
    out.write(_dumps({"is_rack": True, "k": rk.kind(r).k, "order": r.n, "quandle": rk.is_quandle(r)}) + "\n")
    return EXIT_OK


def cmd_info(args, out) -> int:
    r = load_rack(args.file)
    out.write(_dumps(invariants.summary(r)) + "\n")
    return EXIT_OK


def cmd_iso(args, out) -> int:
    a, b = load_rack(args.first), load_rack(args.second)
    res = iso.are_isomorphic(a, b)
    witness = None if res.witness is None else res.witness.to_cycle_string()
    out.write(_dumps({"isomorphic": res.isomorphic, "witness": witness}) + "\n")
    return EXIT_OK if res.isomorphic else EXIT_FAIL


def _mode(args) -> str:
    if args.quandles:
        return "quandles"
    if args.pracks:
        return "pracks"
    return "racks"


def cmd_enumerate(args, out) -> int:
    try:
        report = enumeration.enumerate_racks(args.order, _mode(args))
    except enumeration.EnumerationBoundExceeded as exc:
        print(f"error: bound exceeded: {exc}", file=sys.stderr)
        return EXIT_FAIL
    lines = [r.to_json() if args.format == "json" else _dumps({"rack": format_rack(r, args.format)})
             for r in report.classes]
    lines.append(_dumps({"summary": report.summary()}))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        out.write(_dumps({"summary": report.summary()}) + "\n")
    else:
        out.write(text)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    n = args.order
    try:
        pat = cls.parse_profile_shape(args.profile, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    mode = _mode(args)
    if mode == "racks":
        mode = "pracks"
    try:
        result = cls.classify_profile(pat, n, mode)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if result is None:
        try:
            report = enumeration.enumerate_racks(n, mode, cls.constant_spec(pat))
        except enumeration.EnumerationBoundExceeded as exc:
            print(f"error: bound exceeded: {exc}", file=sys.stderr)
            return EXIT_FAIL
        result = cls.ClassificationResult(report.classes, len(report.classes), "enumeration")
    doc = {
        "formula": result.formula_name,
        "order": n,
        "pattern": list(pat),
        "mode": mode,
        "predicted_count": result.predicted_count,
        "actual_count": result.count,
    }
    if args.format == "json":
        doc["racks"] = [r.to_dict() for r in result.representatives]
        out.write(_dumps(doc) + "\n")
    else:
        out.write(_dumps(doc) + "\n")
        _emit_racks(result.representatives, args.format, out)
    return EXIT_OK


def cmd_color(args, out) -> int:
    if args.pd is not None:
        text = _read_text(args.pd)
    elif args.pd_text is not None:
        text = args.pd_text
    else:
        raise UsageError("one of --pd or --pd-text is required")
    try:
        diagram = coloring.parse_pd(text)
    except coloring.PDParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.mirror:
        diagram = diagram.mirror()
    target = load_rack(args.target)
    out.write(_dumps(coloring.count_colorings(diagram, target).to_dict()) + "\n")
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _add_format(p: argparse.ArgumentParser, default: str = "json") -> None:
    p.add_argument("--format", choices=("table", "json", "cycles"), default=default)
    p.add_argument("--table", dest="format", action="store_const", const="table",
                   help="shorthand for --format table")


def _add_mode(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--quandles", action="store_true")
    g.add_argument("--pracks", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permrack", description="Finite racks and quandles as permutation sequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a named rack")
    p.add_argument("name", help="dihedral|trivial|cyclic|linear-alexander|quotient|octahedron, or R3, T4, C5, L5,2")
    p.add_argument("params", nargs="*")
    _add_format(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("validate", help="check the rack axioms for a JSON or table file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", help="print the invariants of a rack")
    p.add_argument("file", help="rack file or a named rack")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("iso", help="test two racks for isomorphism")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("enumerate", help="all racks of an order up to isomorphism")
    p.add_argument("order", type=int)
    _add_mode(p)
    p.add_argument("--out", help="write JSON lines here instead of stdout")
    _add_format(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="racks of a constant profile")
    p.add_argument("--profile", required=True, help='pattern such as "1,n-1" or "2,2"')
    p.add_argument("--order", type=int, required=True)
    _add_mode(p)
    _add_format(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("color", help="count knot diagram colorings by a quandle")
    p.add_argument("--pd", help="file holding a PD code")
    p.add_argument("--pd-text", help="PD code given inline")
    p.add_argument("--target", required=True, help="rack file or a named rack")
    p.add_argument("--mirror", action="store_true", help="color the mirror diagram")
    p.set_defaults(func=cmd_color)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except rk.NotARackError as exc:
        print(f"error: not a rack: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
