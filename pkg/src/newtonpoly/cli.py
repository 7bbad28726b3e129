"""Command line surface.

One verb per concept: polygon arithmetic, polyhedron volumes, series
resultants, Puiseux expansion, curve invariants, and the verification
suites.  Machine-readable output with --json, human text otherwise; domain
errors exit 1 with the error class name on stderr, parse errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import polygon as pg
from . import polyhedra as ph
from .product import product
from .errors import DomainError
from .invariants import (
    JacobianPolygon,
    briancon_speder_polygons,
    dual_degree,
    invariants_from_polygon,
    jacobian_polygon_direct,
    merle_polygon,
    milnor_number,
    semigroup_from_polygon,
    validate_semigroup,
)
from .puiseux import puiseux_expand
from .render import render_ascii, render_svg
from .series import (
    format_polynomial,
    format_series,
    intersection_number,
    newton_polygon_of,
    parse_polynomial,
    shifted_resultant,
    sylvester_resultant,
)
from .verify import DEFAULT_SEED, SUITES, run_suite

PRECISION_ENV = "NEWTONPOLY_PRECISION"


def _parse_polygon_arg(text: str) -> pg.NewtonPolygon:
    text = text.strip()
    if text.startswith("{") and '"' in text:
        return pg.loads(text)
    return pg.parse_compact(text)


def _polygon_out(p: pg.NewtonPolygon, args) -> str:
    if args.json:
        return pg.dumps(p)
    try:
        return pg.format_compact(p)
    except ValueError:
        return pg.dumps(p)


def _parse_semigroup_arg(text: str):
    text = text.strip()
    if not (text.startswith("<") and text.endswith(">")):
        raise ValueError("semigroup format is <b0,b1,...>")
    return validate_semigroup([int(v) for v in text[1:-1].split(",")])


def _parse_pairs_arg(text: str) -> JacobianPolygon:
    poly = pg.parse_compact(text)
    return JacobianPolygon(tuple((e.ell, e.h) for e in poly.edges))


def _default_precision(args):
    if getattr(args, "precision", None):
        return args.precision
    env = os.environ.get(PRECISION_ENV)
    return int(env) if env else None


def _report_payload(j: JacobianPolygon) -> dict:
    rep = invariants_from_polygon(j)
    return {"polygon": pg.to_json_dict(j.view), "pairs": list(j.pairs), "report": rep.to_json_dict()}


def _print_report(j: JacobianPolygon, args):
    if args.json:
        print(json.dumps(_report_payload(j)))
        return
    rep = invariants_from_polygon(j)
    print(f"polygon          {j}")
    print(f"mu^(n)           {rep.mu_n}")
    print(f"mu^(n-1)         {rep.mu_n1}")
    print(f"class diminution {rep.class_diminution}")
    print(f"theta1           {rep.theta1}")
    print(f"theta2           {rep.theta2}")
    print(f"determinacy      {rep.determinacy}")
    print(f"2*delta bracket  ({rep.delta_lower}, {rep.delta_upper}]")
    print(f"A_k type         {'yes' if rep.is_Ak else 'no'}")


# -- subcommand handlers ---------------------------------------------------------


def _cmd_polygon(args):
    if args.op == "sum":
        p = _parse_polygon_arg(args.operands[0])
        for other in args.operands[1:]:
            p = pg.polygon_sum(p, _parse_polygon_arg(other))
        print(_polygon_out(p, args))
    elif args.op == "product":
        p = _parse_polygon_arg(args.operands[0])
        for other in args.operands[1:]:
            p = product(p, _parse_polygon_arg(other))
        print(_polygon_out(p, args))
    elif args.op == "decompose":
        p = _parse_polygon_arg(args.operands[0])
        parts = pg.canonical_decomposition(p)
        if args.json:
            print(json.dumps([{"l": e.ell, "h": e.h} for e in parts]))
        else:
            print(" ".join(repr(e) for e in parts))
    elif args.op == "dominates":
        p = _parse_polygon_arg(args.operands[0])
        q = _parse_polygon_arg(args.operands[1])
        result = pg.dominates(p, q)
        print(json.dumps(result) if args.json else ("yes" if result else "no"))
    elif args.op == "render":
        polys = [_parse_polygon_arg(t) for t in args.operands]
        if args.format == "svg":
            sys.stdout.write(render_svg(polys, shade_between=len(polys) == 2))
        else:
            for p in polys:
                sys.stdout.write(render_ascii(p))
    return 0


def _cmd_polyhedron(args):
    if args.op == "covolume":
        n = ph.NewtonPolyhedron.from_json_dict(json.loads(args.operands[0]))
        v = ph.covolume(n)
        print(json.dumps(str(v)) if args.json else str(v))
    elif args.op == "mixed":
        ns = [ph.NewtonPolyhedron.from_json_dict(json.loads(t)) for t in args.operands]
        alpha = ph.MixedVolumeIndex(tuple(int(a) for a in args.alpha.split(",")))
        v = ph.mixed_covolume(ns, alpha)
        print(json.dumps(str(v)) if args.json else str(v))
    elif args.op == "multiplicity":
        n = ph.NewtonPolyhedron.from_json_dict(json.loads(args.operands[0]))
        e = ph.monomial_multiplicity(n)
        print(json.dumps(e) if args.json else str(e))
    return 0


def _cmd_series(args):
    if args.op == "polygon":
        f = parse_polynomial(args.operands[0])
        print(_polygon_out(newton_polygon_of(f), args))
    elif args.op == "resultant":
        f1 = parse_polynomial(args.operands[0])
        f2 = parse_polynomial(args.operands[1])
        r = sylvester_resultant(f1, f2)
        print(json.dumps(format_series(r)) if args.json else format_series(r))
    elif args.op == "shifted-resultant":
        f1 = parse_polynomial(args.operands[0])
        f2 = parse_polynomial(args.operands[1])
        r = shifted_resultant(f1, f2)
        print(json.dumps(format_polynomial(r)) if args.json else format_polynomial(r))
    elif args.op == "intersect":
        f1 = parse_polynomial(args.operands[0])
        f2 = parse_polynomial(args.operands[1])
        n = intersection_number(f1, f2)
        print(json.dumps(n) if args.json else str(n))
    return 0


def _cmd_puiseux(args):
    f = parse_polynomial(args.polynomial)
    branches = puiseux_expand(f, t_precision=_default_precision(args))
    if args.json:
        print(json.dumps([repr(b) for b in branches]))
    else:
        for b in branches:
            print(repr(b))
    return 0


def _cmd_curve(args):
    if args.op == "merle":
        s = _parse_semigroup_arg(args.operands[0])
        j = merle_polygon(s)
        if args.report:
            _print_report(j, args)
        else:
            print(json.dumps(_report_payload(j)["polygon"]) if args.json else repr(j))
    elif args.op == "invert":
        j = _parse_pairs_arg(args.operands[0])
        s = semigroup_from_polygon(j)
        print(json.dumps(list(s.generators)) if args.json else repr(s))
    elif args.op == "jacobian":
        f = parse_polynomial(args.operands[0])
        j = jacobian_polygon_direct(f, seed=args.seed)
        if args.report:
            _print_report(j, args)
        else:
            print(json.dumps(_report_payload(j)["polygon"]) if args.json else repr(j))
    elif args.op == "invariants":
        j = _parse_pairs_arg(args.operands[0])
        _print_report(j, args)
    elif args.op == "dual-degree":
        degree = args.degree if args.degree is not None else int(args.operands[0])
        dim = args.dimension if not args.operands[1:] else int(args.operands[1])
        sings = []
        if args.singularities:
            for chunk in args.singularities.split(";"):
                mu_n, mu_n1 = chunk.split(",")
                sings.append((int(mu_n), int(mu_n1)))
        v = dual_degree(degree, dim, sings)
        print(json.dumps(v) if args.json else str(v))
    elif args.op == "milnor":
        f = parse_polynomial(args.operands[0])
        print(milnor_number(f, seed=args.seed))
    elif args.op == "bs-example":
        beta = args.beta if args.beta is not None else int(args.operands[0])
        special, generic = briancon_speder_polygons(beta)
        if args.json:
            print(json.dumps({
                "special": pg.to_json_dict(special.view),
                "generic": pg.to_json_dict(generic.view),
                "dominates": pg.dominates(special.view, generic.view),
            }))
        else:
            print(f"special fibre: {special}")
            print(f"generic fibre: {generic}")
            print(f"lengths: {special.length()} = {generic.length()};"
                  f" heights: {special.height()} vs {generic.height()}")
            dom = pg.dominates(special.view, generic.view)
            print(f"special dominates generic: {'yes' if dom else 'no'}")
    return 0


def _cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in names:
        results = run_suite(name, seed=args.seed)
        for r in results:
            print(f"{name}: {r.line()}")
            failed += 0 if r.passed else 1
    if failed:
        print(f"{failed} check(s) failed", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newtonpoly",
        description="Newton polygon arithmetic, Puiseux expansion and jacobian polygon invariants",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_polygon = sub.add_parser("polygon", help="polygon monoid arithmetic")
    p_polygon.add_argument("op", choices=["sum", "product", "decompose", "dominates", "render"])
    p_polygon.add_argument("operands", nargs="+",
                           help="polygons as JSON or compact {l/h}+... notation")
    p_polygon.add_argument("--json", action="store_true")
    p_polygon.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p_polygon.set_defaults(func=_cmd_polygon)

    p_poly = sub.add_parser("polyhedron", help="d-dimensional covolume computations")
    p_poly.add_argument("op", choices=["covolume", "mixed", "multiplicity"])
    p_poly.add_argument("operands", nargs="+", help='polyhedra as {"dim": d, "generators": [...]}')
    p_poly.add_argument("--alpha", default="", help="mixed volume index, e.g. 1,1")
    p_poly.add_argument("--json", action="store_true")
    p_poly.set_defaults(func=_cmd_polyhedron)

    p_series = sub.add_parser("series", help="series and resultant algebra")
    p_series.add_argument("op", choices=["polygon", "resultant", "shifted-resultant", "intersect"])
    p_series.add_argument("operands", nargs="+", help="polynomials in the sparse text format")
    p_series.add_argument("--json", action="store_true")
    p_series.set_defaults(func=_cmd_series)

    p_puiseux = sub.add_parser("puiseux", help="Newton-Puiseux expansion")
    puiseux_sub = p_puiseux.add_subparsers(dest="op", required=True)
    p_expand = puiseux_sub.add_parser("expand")
    p_expand.add_argument("polynomial")
    p_expand.add_argument("--precision", type=int, default=None,
                          help=f"t-precision target (default: automatic, or ${PRECISION_ENV})")
    p_expand.add_argument("--json", action="store_true")
    p_expand.set_defaults(func=_cmd_puiseux)

    p_curve = sub.add_parser("curve", help="jacobian polygons and invariants")
    p_curve.add_argument("op", choices=["merle", "invert", "jacobian", "invariants",
                                        "dual-degree", "milnor", "bs-example"])
    p_curve.add_argument("operands", nargs="*")
    p_curve.add_argument("--report", action="store_true", help="print the invariant bundle")
    p_curve.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_curve.add_argument("--json", action="store_true")
    p_curve.add_argument("--degree", type=int, help="projective degree d for dual-degree")
    p_curve.add_argument("--dimension", type=int, default=2, help="ambient n for dual-degree")
    p_curve.add_argument("--singularities", default="",
                         help="dual-degree singularity list 'mu_n,mu_n1;...'")
    p_curve.add_argument("--beta", type=int, help="family parameter for bs-example")
    p_curve.set_defaults(func=_cmd_curve)

    p_verify = sub.add_parser("verify", help="run the acceptance suites")
    p_verify.add_argument("suite", choices=["all"] + list(SUITES))
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args) or 0
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
