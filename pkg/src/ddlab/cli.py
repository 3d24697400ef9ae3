"""``ddlab`` command-line entry point.

Every subcommand writes one JSON document (to ``--out`` or stdout) with a
``meta`` block holding the tool version, seed, subcommand and parsed
parameters.  Keys are sorted and no timestamps are recorded, so identical
arguments give byte-identical output.

Exit codes: 0 success, 1 malformed input or flags, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .construct import (
    AlignedConstructionParams,
    AngularPointSet,
    aligned_class_histogram,
    aligned_dist_sq_float,
    build_aligned,
    build_perpendicular,
    perp_params,
)
from .derivtest import ALL_RELATIONS, CaseTag, CircleConfig, Regime, coefficient_report, verify_appendix_b
from .geom import Circle3, classify_pair, points_from_json, points_to_json
from .metrics import (
    CountMode,
    DistanceHistogram,
    bipartite_histogram,
    cauchy_schwarz_bound,
    distinct_distances,
    float_histogram,
    histogram_to_json,
    quadruple_count,
)
from .rational import format_rational, parse_rational

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2
DEFAULT_SEED = 0


class InputError(Exception):
    """Malformed flags or input files."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _targets(text: str) -> list[tuple[int, int]]:
    out = []
    try:
        for item in text.split(";"):
            i, j = item.split(",")
            out.append((int(i), int(j)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("targets look like '5,1;5,9'") from exc
    return out


def _meta(args: argparse.Namespace, params: dict) -> dict:
    return {
        "tool": "ddlab",
        "version": __version__,
        "seed": args.seed,
        "subcommand": args.command,
        "params": params,
    }


def _emit(doc: dict, out: Optional[str]) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _fmt(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else format_rational(value)


# -- construct --------------------------------------------------------------------


def cmd_construct(args: argparse.Namespace) -> int:
    if args.kind == "perpendicular":
        params = perp_params(args.m, args.n, args.a, args.r, args.b, args.beta)
        cons = build_perpendicular(params)
        first, second = cons.exact_points()
        f1, f2 = cons.float_points()
        table = [
            {"j": j, "k": k, "dist_sq": format_rational(d)} for (j, k), d in cons.distance_table().items()
        ]
        doc = {
            "meta": _meta(args, {"kind": "perpendicular", **params.to_json()}),
            "kind": "perpendicular",
            "circles": [c.to_json() for c in cons.circles],
            "p1": points_to_json(first),
            "p2": points_to_json(second),
            "dist_sq_closed_form": table,
            "float_points": {"p1": [list(p) for p in f1], "p2": [list(p) for p in f2]},
        }
    else:
        params = AlignedConstructionParams(
            args.m, args.n, args.r1_sq, args.r2_sq, args.gap, args.lattice
        )
        p1, p2 = build_aligned(params)
        doc = {
            "meta": _meta(args, {"kind": "aligned", **params.to_json()}),
            "kind": "aligned",
            "p1": p1.to_json(),
            "p2": p2.to_json(),
            "float_points": {"p1": [list(p) for p in p1.float_points()], "p2": [list(p) for p in p2.float_points()]},
        }
    _emit(doc, args.out)
    return EXIT_OK


# -- count / histogram --------------------------------------------------------------


def _summary(h: DistanceHistogram, key_format=format_rational) -> dict:
    return {
        "distinct": h.distinct,
        "total_pairs": h.total,
        "histogram": histogram_to_json(h, key_format),
        "quadruples": quadruple_count(h),
        "cs_bound": format_rational(cauchy_schwarz_bound(h)),
        "ambiguous_gaps": h.ambiguous_gaps,
    }


def _point_list(data: Any, path: str):
    if isinstance(data, dict) and "points" in data:
        data = data["points"]
    try:
        return points_from_json(data)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _aligned_counts(doc: dict, mode: CountMode) -> dict:
    p1, p2 = AngularPointSet.from_json(doc["p1"]), AngularPointSet.from_json(doc["p2"])
    if mode.kind == "float":
        h = float_histogram(p1.float_points(), p2.float_points(), mode.epsilon)
        return {"key_kind": "dist_sq_float", **_summary(h, repr)}
    classes = aligned_class_histogram(p1, p2)
    h = DistanceHistogram(classes)
    out = {"key_kind": "angular_class", **_summary(h, int)}
    out["class_dist_sq_float"] = [[c, aligned_dist_sq_float(p1, p2, c)] for c in sorted(classes)]
    return out


def cmd_count(args: argparse.Namespace) -> int:
    mode = CountMode(args.mode, args.eps)
    params = {"mode": args.mode, "eps": args.eps if args.mode == "float" else None}
    if args.input is not None:
        if args.a is not None or args.b is not None:
            raise InputError("give either a construct file or --a/--b, not both")
        doc = _load_json(args.input)
        if not isinstance(doc, dict) or "p1" not in doc or "p2" not in doc:
            raise InputError(f"{args.input}: expected construct output with p1 and p2")
        params["input"] = Path(args.input).name
        if doc.get("kind") == "aligned":
            try:
                result = _aligned_counts(doc, mode)
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"{args.input}: bad aligned point set ({exc})") from None
        else:
            first, second = _point_list(doc["p1"], args.input), _point_list(doc["p2"], args.input)
            result = _bipartite(first, second, mode)
    else:
        if args.a is None or args.b is None:
            raise InputError("count needs a construct file or both --a and --b")
        params["a"], params["b"] = Path(args.a).name, Path(args.b).name
        first = _point_list(_load_json(args.a), args.a)
        second = _point_list(_load_json(args.b), args.b)
        result = _bipartite(first, second, mode)
    _emit({"meta": _meta(args, params), **result}, args.out)
    return EXIT_OK


def _bipartite(first, second, mode: CountMode) -> dict:
    h = bipartite_histogram(first, second, mode)
    key = format_rational if mode.kind == "exact" else repr
    return {"key_kind": "dist_sq" if mode.kind == "exact" else "dist_sq_float", **_summary(h, key)}


def cmd_histogram(args: argparse.Namespace) -> int:
    mode = CountMode(args.mode, args.eps)
    points = _point_list(_load_json(args.points), args.points)
    if len(points) < 2:
        raise InputError("need at least two points")
    h = distinct_distances(points, mode)
    key = format_rational if mode.kind == "exact" else repr
    params = {"mode": args.mode, "eps": args.eps if args.mode == "float" else None, "points": Path(args.points).name}
    doc = {
        "meta": _meta(args, params),
        "distinct": h.distinct,
        "total_pairs": h.total,
        "histogram": histogram_to_json(h, key),
        "ambiguous_gaps": h.ambiguous_gaps,
    }
    _emit(doc, args.out)
    return EXIT_OK


# -- classify ----------------------------------------------------------------------


def cmd_classify(args: argparse.Namespace) -> int:
    data = _load_json(args.circles)
    if isinstance(data, dict) and "circles" in data:
        data = data["circles"]
    if isinstance(data, dict):
        data = [data.get("c1"), data.get("c2")]
    if not isinstance(data, list) or len(data) != 2 or not all(isinstance(c, dict) for c in data):
        raise InputError(f"{args.circles}: expected two circles")
    c1, c2 = (Circle3.from_json(c) for c in data)
    doc = {
        "meta": _meta(args, {"circles": Path(args.circles).name}),
        "kind": classify_pair(c1, c2).value,
        "circles": [c1.to_json(), c2.to_json()],
    }
    _emit(doc, args.out)
    return EXIT_OK


# -- derivtest / verify-appendix ----------------------------------------------------


def cmd_derivtest(args: argparse.Namespace) -> int:
    cfg = CircleConfig.from_half_angles(
        args.case, p=args.p, q=args.q, r=args.r, alpha=args.u, beta=args.v, gamma=args.g
    )
    report = coefficient_report(cfg, args.targets, Regime(args.regime))
    params = {
        "case": args.case,
        "regime": args.regime,
        "p": _fmt(args.p),
        "q": _fmt(args.q),
        "r": _fmt(args.r),
        "u": _fmt(args.u),
        "v": _fmt(args.v),
        "g": _fmt(args.g),
        "targets": None if args.targets is None else [list(t) for t in args.targets],
    }
    doc = {"meta": _meta(args, params), **report.to_json(), "numerator": report.numerator.to_text()}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    relations = ALL_RELATIONS - set(args.disable_relation)
    summary = verify_appendix_b(trials=args.trials, seed=args.seed, relations=relations)
    params = {"trials": args.trials, "disabled_relations": sorted(args.disable_relation)}
    _emit({"meta": _meta(args, params), **summary}, args.out)
    return EXIT_OK if summary["all_passed"] else EXIT_VERIFY


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ddlab", description="Distinct distances between two circles in 3-space.")
    parser.add_argument(
        "--version",
        action="version",
        version=json.dumps({"tool": "ddlab", "version": __version__}),
        help="print the version as JSON and exit",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed (default 0)")
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("construct", help="generate a few-distance point configuration")
    p.add_argument("--kind", choices=("perpendicular", "aligned"), required=True)
    p.add_argument("--m", type=int, required=True, help="size of the first set")
    p.add_argument("--n", type=int, required=True, help="size of the second set")
    p.add_argument("--a", type=_rational, help="perpendicular: center offset, default 1")
    p.add_argument("--r", type=_rational, help="perpendicular: radius of the second circle, default 2")
    p.add_argument("--b", type=_rational, help="perpendicular: default 3/2")
    p.add_argument("--beta", type=_rational, help="perpendicular: geometric ratio P/Q")
    p.add_argument("--lattice", type=int, help="aligned: polygon size N, default max(m, n)")
    p.add_argument("--r1-sq", type=_rational, default=Fraction(1), help="aligned: squared first radius")
    p.add_argument("--r2-sq", type=_rational, default=Fraction(4), help="aligned: squared second radius")
    p.add_argument("--gap", type=_rational, default=Fraction(1), help="aligned: height of the second plane")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("count", help="bipartite distinct distances, quadruples and Cauchy-Schwarz bound")
    p.add_argument("input", nargs="?", help="output of 'ddlab construct'")
    p.add_argument("--a", help="JSON file with the first point set")
    p.add_argument("--b", help="JSON file with the second point set")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--eps", type=float, default=1e-9, help="relative bucket width in float mode")
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("histogram", help="distance histogram within one point set")
    p.add_argument("points", help="JSON list of points")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--eps", type=float, default=1e-9)
    common(p)
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("classify", help="aligned / perpendicular / generic for two circles")
    p.add_argument("circles", help="JSON with two circles")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("derivtest", help="numerator of the derivative test for one configuration")
    p.add_argument("--case", choices=[c.value for c in CaseTag], default="generic")
    for name in ("p", "q", "r"):
        p.add_argument(f"--{name}", type=_rational)
    p.add_argument("--u", type=_rational, help="half-angle tangent of alpha")
    p.add_argument("--v", type=_rational, help="half-angle tangent of beta")
    p.add_argument("--g", type=_rational, help="half-angle tangent of gamma")
    p.add_argument("--regime", choices=[r.value for r in Regime], default="reduced")
    p.add_argument("--targets", type=_targets, help="coefficients to report, e.g. '5,1;5,9'")
    common(p)
    p.set_defaults(func=cmd_derivtest)

    p = sub.add_parser("verify-appendix", help="check every coefficient identity and control")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument(
        "--disable-relation",
        action="append",
        default=[],
        choices=sorted(ALL_RELATIONS),
        help="drop a rewriting relation (mutation testing)",
    )
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors, --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"ddlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
