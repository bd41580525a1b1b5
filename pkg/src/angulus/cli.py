"""Command-line entry point.

Exit codes: 0 on success, 2 for invalid input or a violated invariant,
3 for numeric degeneracy beyond tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import side_diameter, solid_angle, spherical
from .anthyphairesis import anth_magnitudes, outcome_to_dict
from .errors import DegeneracyError, DomainError
from .magnitudes import parse_magnitude

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE = 0, 2, 3


def _round(obj, precision):
    if isinstance(obj, float):
        return float(f"{obj:.{precision}g}")
    if isinstance(obj, dict):
        return {k: _round(v, precision) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round(v, precision) for v in obj]
    return obj


def _cell(v):
    if v is None:
        return "-"
    if isinstance(v, list):
        return " ".join(map(str, v)) if v else "-"
    return str(v)


def render(result, fmt: str, precision: int) -> str:
    result = _round(result, precision)
    if fmt == "json":
        return json.dumps(result)
    rows = result if isinstance(result, list) else [result]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows({k: _cell(v) for k, v in r.items()} for r in rows)
        return buf.getvalue().rstrip("\n")
    if isinstance(result, dict):
        width = max(map(len, result))
        return "\n".join(f"{k:<{width}}  {_cell(v)}" for k, v in result.items())
    cols = list(rows[0])
    table = [cols] + [[_cell(r[c]) for c in cols] for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(cols))]
    return "\n".join("  ".join(x.rjust(w) for x, w in zip(line, widths)) for line in table)


def _angle(args, x):
    return math.radians(x) if args.degrees else x


def cmd_anth(args):
    a, b = parse_magnitude(args.a), parse_magnitude(args.b)
    return outcome_to_dict(anth_magnitudes(a, b, args.max_terms))


def cmd_sidediam(args):
    return side_diameter.table_rows(args.count)


def cmd_sphere_excess(args):
    t = spherical.make_triangle(*(_angle(args, x) for x in args.sides))
    records = spherical.excess_report(t, args.method, args.samples, args.seed)
    return records if args.method == "both" else records[0]


def cmd_solid_trihedral(args):
    t = solid_angle.validate_trihedral(*(_angle(args, x) for x in args.faces))
    omega = solid_angle.trihedral_solid_angle(t)
    return {"f1": t.f1, "f2": t.f2, "f3": t.f3, "solid_angle_sr": omega,
            "fraction_of_sphere": omega / solid_angle.FULL_SPHERE}


def cmd_solid_regular(args):
    fig = solid_angle.RegularVertexFigure(args.n, _angle(args, args.alpha))
    omega = solid_angle.regular_vertex_solid_angle(fig)
    return {"n": fig.n, "alpha": fig.alpha, "solid_angle_sr": omega,
            "fraction_of_sphere": omega / solid_angle.FULL_SPHERE}


def cmd_solid_platonic(args):
    corpus = solid_angle.load_corpus(args.data) if args.data else solid_angle.default_corpus()
    if args.name != "all":
        corpus = [e for e in corpus if e.name.lower() == args.name.lower()]
        if not corpus:
            raise DomainError(f"no vertex figure named {args.name!r} in corpus",
                              invariant="known solid")
    rows = solid_angle.platonic_table(args.samples, args.seed, corpus)
    return rows[0] if args.name != "all" else rows


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--precision", type=int, default=10,
                        help="significant digits for floating output (default 10)")
    common.add_argument("--degrees", action="store_true",
                        help="read angle arguments in degrees instead of radians")

    mc = argparse.ArgumentParser(add_help=False)
    mc.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="angulus",
        description="Anthyphairesis, side and diameter numbers, and solid angles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("anth", parents=[common], help="anthyphairesis of two exact magnitudes")
    p.add_argument("a", help='magnitude, e.g. "sqrt(2)" or "(1+sqrt(5))/2"')
    p.add_argument("b")
    p.add_argument("--max-terms", type=int, default=64)
    p.set_defaults(func=cmd_anth)

    p = sub.add_parser("sidediam", parents=[common], help="side and diameter number table")
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(func=cmd_sidediam)

    sphere = sub.add_parser("sphere", help="spherical triangles").add_subparsers(
        dest="sphere_command", required=True)
    p = sphere.add_parser("excess", parents=[common, mc], help="angle excess from three sides")
    p.add_argument("--sides", type=float, nargs=3, required=True, metavar=("A", "B", "C"))
    p.add_argument("--method", choices=("girard", "lhuilier", "both", "mc"), default="lhuilier")
    p.add_argument("--samples", type=int, default=10**6)
    p.set_defaults(func=cmd_sphere_excess)

    solid = sub.add_parser("solid", help="solid angles of vertices").add_subparsers(
        dest="solid_command", required=True)
    p = solid.add_parser("trihedral", parents=[common], help="vertex with three face angles")
    p.add_argument("faces", type=float, nargs=3, metavar="F")
    p.set_defaults(func=cmd_solid_trihedral)

    p = solid.add_parser("regular", parents=[common], help="n equal faces meeting at a vertex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.set_defaults(func=cmd_solid_regular)

    p = solid.add_parser("platonic", parents=[common, mc],
                         help="vertex solid angles of a corpus (default: Platonic solids)")
    p.add_argument("name", nargs="?", default="all")
    p.add_argument("--data", help="JSON corpus of vertex figures")
    p.add_argument("--samples", type=int, default=0,
                   help="Monte Carlo samples per entry (0 disables)")
    p.set_defaults(func=cmd_solid_platonic)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except DomainError as exc:
        suffix = f" [{exc.invariant}]" if exc.invariant else ""
        print(f"angulus: error: {exc}{suffix}", file=sys.stderr)
        return EXIT_INPUT
    except DegeneracyError as exc:
        print(f"angulus: numeric degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    print(render(result, args.format, args.precision))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
