"""Command-line interface.

Exit codes: 0 success, 1 validation error, 2 budget exhausted,
3 a verify check failed, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import algebra, constructions
from .errors import GHError, MetricError
from .rationals import format_rational, parse_rational
from .search import GHResult, gh_exact, gh_lower_bound, gh_oracle, gh_upper_bound_greedy
from .spaces import Realization, diameter, dumps_space, hausdorff_in_ambient, load_space, scale
from .verify import verify_paper

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_VERIFY_FAIL, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _rat(text: str):
    try:
        return parse_rational(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _indices(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected IDX,IDX,..., got {text!r}") from None


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _result_dict(res: GHResult) -> dict:
    return {
        "value": format_rational(res.value),
        "status": res.status,
        "lower": format_rational(res.lower),
        "upper": format_rational(res.upper),
        "witness": [list(p) for p in res.witness.sorted_pairs()],
    }


# --- handlers -------------------------------------------------------------


def cmd_space_validate(args) -> int:
    try:
        X = load_space(args.file)
    except MetricError as exc:
        print(_dumps({"valid": False, "violations": [
            {"kind": v.kind, "indices": list(v.indices)} for v in exc.violations
        ]}))
        return EXIT_INVALID
    print(_dumps({"valid": True, "points": X.n, "diameter": format_rational(diameter(X))}))
    return EXIT_OK


def cmd_space_construct(args) -> int:
    params = {"n": args.n, "h": args.h, "p": args.p, "q": args.q, "a": args.a, "d": args.d, "phi": args.phi}
    if args.family == "gapped":
        params["a"] = params["a"] if params["a"] is not None else 0
    spec = constructions.FamilySpec(args.family, {k: v for k, v in params.items() if v is not None})
    X = spec.build()
    _emit(dumps_space(X) + "\n", args.out)
    return EXIT_OK


def cmd_space_scale(args) -> int:
    X = scale(load_space(args.file), args.factor)
    _emit(dumps_space(X) + "\n", args.out)
    return EXIT_OK


def cmd_dist_exact(args) -> int:
    res = gh_exact(load_space(args.a), load_space(args.b), budget=args.budget, deterministic=args.deterministic)
    print(_dumps(_result_dict(res)))
    return EXIT_OK if res.is_exact else EXIT_BUDGET


def cmd_dist_bounds(args) -> int:
    X, Y = load_space(args.a), load_space(args.b)
    upper, witness = gh_upper_bound_greedy(X, Y, args.restarts)
    print(_dumps({
        "lower": format_rational(gh_lower_bound(X, Y)),
        "upper": format_rational(upper),
        "witness": [list(p) for p in witness.sorted_pairs()],
    }))
    return EXIT_OK


def cmd_dist_oracle(args) -> int:
    print(_dumps(_result_dict(gh_oracle(load_space(args.a), load_space(args.b)))))
    return EXIT_OK


def cmd_dist_hausdorff(args) -> int:
    real = Realization(load_space(args.ambient), tuple(args.a), tuple(args.b))
    print(_dumps({"value": format_rational(hausdorff_in_ambient(real))}))
    return EXIT_OK


def cmd_probe_stabilizer(args) -> int:
    params = {"n": args.n, "p": args.p, "q": args.q, "h": args.h, "a": args.a, "d": args.d}
    spec = constructions.FamilySpec(args.family, {k: v for k, v in params.items() if v is not None})
    points = algebra.stabilizer_probe(spec, algebra.parse_lambda_grid(args.lambda_grid), args.restarts)
    _emit(algebra.probe_csv(points), args.out)
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    report = verify_paper(N=args.n, h=args.h, budget=args.budget, deterministic=args.deterministic)
    if args.report:
        Path(args.report).write_text(report.to_json(), encoding="utf-8")
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return EXIT_VERIFY_FAIL if report.failed else EXIT_OK


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="finitegh", description="Exact Gromov-Hausdorff distances between finite metric spaces.")
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    space = top.add_parser("space", help="read, build and rescale space files")
    space_sub = space.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = space_sub.add_parser("validate", help="check the metric axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_space_validate)

    p = space_sub.add_parser("construct", help="emit a built-in family as a space file")
    p.add_argument("--family", required=True, choices=constructions.FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--h", type=_rat)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=_rat)
    p.add_argument("--a", type=_rat)
    p.add_argument("--d", type=_rat)
    p.add_argument("--phi", choices=sorted(constructions.PHI_FUNCTIONS))
    p.add_argument("--out")
    p.set_defaults(func=cmd_space_construct)

    p = space_sub.add_parser("scale", help="multiply every distance by a factor")
    p.add_argument("file")
    p.add_argument("--factor", type=_rat, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_space_scale)

    dist = top.add_parser("dist", help="distances between space files")
    dist_sub = dist.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = dist_sub.add_parser("exact", help="exact GH distance by branch and bound")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--budget", type=int)
    p.add_argument("--deterministic", action="store_true")
    p.set_defaults(func=cmd_dist_exact)

    p = dist_sub.add_parser("bounds", help="diameter lower bound and greedy upper bound")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--restarts", type=int, default=8)
    p.set_defaults(func=cmd_dist_bounds)

    p = dist_sub.add_parser("oracle", help="exhaustive search over all correspondences (<= 4 points)")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_dist_oracle)

    p = dist_sub.add_parser("hausdorff", help="Hausdorff distance between two index subsets")
    p.add_argument("ambient")
    p.add_argument("--a", type=_indices, required=True)
    p.add_argument("--b", type=_indices, required=True)
    p.set_defaults(func=cmd_dist_hausdorff)

    probe = top.add_parser("probe", help="bound curves over scale factors")
    probe_sub = probe.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = probe_sub.add_parser("stabilizer", help="bounds on d_GH(X, lambda X) along a grid")
    p.add_argument("--family", default="geometric", choices=constructions.FAMILIES)
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=_rat)
    p.add_argument("--h", type=_rat)
    p.add_argument("--a", type=_rat)
    p.add_argument("--d", type=_rat)
    p.add_argument("--lambda-grid", required=True, metavar="START:END:STEP")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--out", metavar="FILE.csv")
    p.set_defaults(func=cmd_probe_stabilizer)

    verify = top.add_parser("verify", help="run the verification suite")
    verify_sub = verify.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = verify_sub.add_parser("paper", help="every finite-scale check, one report")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--h", type=_rat, default=parse_rational("1/2"))
    p.add_argument("--budget", type=int)
    p.add_argument("--report", metavar="FILE.json")
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of the text table")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except MetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (GHError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
