"""Command-line front end.

Exit codes: 0 success, 1 invalid input (bad file, bad arguments, failed
validation), 2 a structural invariant failed.  With ``--json`` every
command prints one JSON object; errors become ``{"error": {...}}``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from .classify import is_semi_hyperbolic, is_weakly_jiang, nf_equals_n_profile, wecken_prediction
from .crystal import format_vector, load_input, validate_map_induces
from .errors import StructuralInvariantError, ValidationError
from .exactmath import DomainError, format_rational, render_polynomial
from .nielsen import lefschetz, nielsen_number, reidemeister_finite
from .oracle import flat_fix_enumerate, torus_fix_count
from .periodic import engine, export_boost_graph
from .zeta import minimal_zeta, nielsen_zeta, probe_rationality

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_STRUCTURAL = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


# -- commands ----------------------------------------------------------------


def cmd_validate(args, g, f) -> int:
    report = validate_map_induces(g, f)
    phi = {g.labels[a]: g.labels[f.phi[a]] for a in range(g.order)}
    payload = {
        "valid": report.ok,
        "dimension": g.dimension,
        "holonomy": list(g.labels),
        "phi": phi,
        "fsharp_id": [g.labels[a] for a in sorted(f.fsharp_id)],
        "linear_invertible": f.invertible,
        "checks": report.checks,
        "violations": [v.to_dict() for v in report.violations],
    }
    lines = [
        f"dimension: {g.dimension}",
        f"holonomy: order {g.order} ({', '.join(g.labels)})",
        "phi: " + ", ".join(f"{k} -> {v}" for k, v in phi.items()),
        "f_#(Id): {" + ", ".join(payload["fsharp_id"]) + "}",
        f"checks: {report.checks}, violations: {len(report.violations)}",
    ]
    for v in report.violations:
        extra = "" if v.residual is None else f" (residual {format_vector(v.residual)})"
        lines.append(f"  {v.generator}: {v.message}{extra}")
    lines.append("valid" if report.ok else "invalid")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_nielsen(args, g, f) -> int:
    rows = []
    for n in range(1, args.max_n + 1):
        rows.append({"n": n, "L": lefschetz(g, f, n), "N": nielsen_number(g, f, n),
                     "R_finite": reidemeister_finite(g, f, n),
                     "weakly_jiang": is_weakly_jiang(g, f, n)})
    text = _table(["n", "L(f^n)", "N(f^n)", "R finite", "weakly Jiang"],
                  [(r["n"], r["L"], r["N"], _yes(r["R_finite"]), _yes(r["weakly_jiang"])) for r in rows])
    _emit(args, {"rows": rows}, text)
    return EXIT_OK


def _class_dict(g, c) -> dict:
    return {"representative": g.labels[c.representative],
            "members": [g.labels[a] for a in c.members],
            "essential": c.essential, "det": format_rational(c.determinant),
            "n_a": c.n_a, "ie": c.ie}


def cmd_classes(args, g, f) -> int:
    classes = engine(g, f).classes(args.level)
    data = [_class_dict(g, c) for c in classes]
    text = f"level {args.level}: {len(classes)} classes\n" + _table(
        ["class", "members", "det(I-AD^k)", "essential", "N_A", "ie"],
        [(f"[{d['representative']}]_{args.level}", "{" + ", ".join(d["members"]) + "}",
          d["det"], _yes(d["essential"]), d["n_a"], d["ie"]) for d in data])
    _emit(args, {"level": args.level, "classes": data}, text)
    return EXIT_OK


def cmd_boost_graph(args, g, f) -> int:
    doc = export_boost_graph(g, f, args.n, args.format, args.ess_to_iness_only)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
        if args.json:
            print(json.dumps({"written": args.out, "format": args.format}))
    else:
        sys.stdout.write(doc)
    return EXIT_OK


def cmd_nf(args, g, f) -> int:
    e = engine(g, f)
    rows = [{"n": n, "N": nielsen_number(g, f, n), "IIB": e.iib(n), "NF": e.nf(n), "NP": e.np(n)}
            for n in range(1, args.max_n + 1)]
    text = _table(["n", "N(f^n)", "#IIB_n", "NF_n", "NP_n"],
                  [(r["n"], r["N"], r["IIB"], r["NF"], r["NP"]) for r in rows])
    _emit(args, {"rows": rows}, text)
    return EXIT_OK


def cmd_classify(args, g, f) -> int:
    semi = is_semi_hyperbolic(f, g)
    profile = nf_equals_n_profile(g, f, args.max_n)
    wecken = wecken_prediction(g, f, args.max_n)
    payload = {
        "charpoly": render_polynomial(semi.charpoly),
        "semi_hyperbolic": semi.result,
        "witness": None if semi.witness is None else {
            "order": semi.order, "cyclotomic": render_polynomial(semi.witness)},
        "nf_profile": {"verdict": profile.verdict, "n0": profile.n0, "reason": profile.reason,
                       "max_n": args.max_n},
        "wecken": wecken,
    }
    if semi.result:
        sh = "yes"
    else:
        sh = f"no (Phi_{semi.order} = {render_polynomial(semi.witness)} divides the characteristic polynomial)"
    verdict = profile.verdict if profile.n0 is None else f"{profile.verdict} n={profile.n0}"
    text = "\n".join([
        f"characteristic polynomial: {payload['charpoly']}",
        f"semi-hyperbolic: {sh}",
        f"NF_n = N(f^n) for n <= {args.max_n}: {verdict} ({profile.reason})",
        f"Wecken prediction: {wecken}",
    ])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_zeta(args, g, f) -> int:
    fn = nielsen_zeta if args.which == "nielsen" else minimal_zeta
    series = fn(g, f, args.terms)
    coeffs = [format_rational(c) for c in series.coefficients]
    payload = {"which": args.which, "terms": args.terms, "coefficients": coeffs}
    lines = [f"{args.which} zeta coefficients: {', '.join(coeffs)}"]
    if args.probe_rational is not None:
        form = probe_rationality(series, args.probe_rational)
        if form is None:
            payload["rational"] = None
            lines.append(f"no rational form with degrees <= {args.probe_rational}")
        else:
            payload["rational"] = {
                "numerator": render_polynomial(form.numerator, "z", ascending=True),
                "denominator": render_polynomial(form.denominator, "z", ascending=True),
                "consistent_to_order": form.order,
            }
            lines.append(str(form))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_oracle(args, g, f) -> int:
    k = args.n
    window = None if args.window == "all" else int(args.window)
    result = flat_fix_enumerate(g, f, k, window)
    predicted = nielsen_number(g, f, k)
    payload = {
        "k": k,
        "window": args.window,
        "predicted_N": predicted,
        "enumerated": result.count,
        "points": [{"point": [format_rational(x) for x in p.point],
                    "class": g.labels[p.class_representative]} for p in result.points],
        "infinite_classes": [g.labels[c] for c in result.infinite_classes],
    }
    lines = [f"N(f^{k}) = {predicted}",
             f"enumerated fixed points (window {args.window}): {result.count}"]
    for p in result.points:
        lines.append(f"  {format_vector(p.point)}  class [{g.labels[p.class_representative]}]_{k}")
    for c in result.infinite_classes:
        lines.append(f"  infinite class encountered: [{g.labels[c]}]_{k}")
    if g.order == 1 and f.linear.is_integral():
        t = torus_fix_count(f.linear, f.translation, k)
        payload["torus_count"] = "infinite" if t == math.inf else t
        lines.append(f"torus congruence count: {payload['torus_count']}")
    agree = result.count == predicted
    payload["agree"] = agree
    lines.append("agree" if agree else "disagree")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "nielsen": cmd_nielsen,
    "classes": cmd_classes,
    "boost-graph": cmd_boost_graph,
    "nf": cmd_nf,
    "classify": cmd_classify,
    "zeta": cmd_zeta,
    "oracle": cmd_oracle,
}


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def _window(text: str) -> str:
    if text != "all":
        _non_negative(text)
    return text


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--holonomy-bound", type=_positive, default=10000,
                        help="largest holonomy group to enumerate (default 10000)")

    parser = _Parser(prog="infranil", parents=[common],
                     description="Nielsen periodic point invariants of affine maps on flat manifolds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="JSON description of the group and map")
        return p

    add("validate", "check that the map induces a map on the quotient")
    p = add("nielsen", "L, N, Reidemeister finiteness and weak Jiang per iterate")
    p.add_argument("--max-n", type=_positive, default=6)
    p = add("classes", "~f^k equivalence classes at one level")
    p.add_argument("--level", type=_positive, default=1)
    p = add("boost-graph", "boosting graph over all levels dividing n")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--ess-to-iness-only", action="store_true",
                   help="keep only edges from essential to inessential classes")
    p = add("nf", "N, #IIB, NF and NP per iterate")
    p.add_argument("--max-n", type=_positive, default=6)
    p = add("classify", "semi-hyperbolicity, NF = N profile, Wecken prediction")
    p.add_argument("--max-n", type=_positive, default=12)
    p = add("zeta", "truncated Nielsen or minimal zeta function")
    p.add_argument("--terms", type=_positive, default=8)
    p.add_argument("--which", choices=["nielsen", "minimal"], default="nielsen")
    p.add_argument("--probe-rational", type=_non_negative, metavar="D",
                   help="look for a rational form with degrees <= D")
    p = add("oracle", "brute-force fixed point enumeration against N(f^k)")
    p.add_argument("--n", type=_positive, default=1)
    p.add_argument("--window", type=_window, default="3",
                   help="lattice search window, or 'all' for exhaustive unit-cell solving")
    return parser


def _fail(json_mode: bool, kind: str, message: str, code: int) -> int:
    if json_mode:
        print(json.dumps({"error": {"type": kind, "message": message}}))
    else:
        print(f"error: {message}", file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    json_mode = "--json" in argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail(json_mode, "usage", str(exc), EXIT_INVALID)
    try:
        g, f = load_input(args.input, args.holonomy_bound)
        return COMMANDS[args.command](args, g, f)
    except OSError as exc:
        return _fail(args.json, "io", f"{exc.strerror}: {exc.filename}", EXIT_INVALID)
    except ValidationError as exc:
        return _fail(args.json, "validation", str(exc), EXIT_INVALID)
    except StructuralInvariantError as exc:
        return _fail(args.json, "structural", str(exc), EXIT_STRUCTURAL)
    except (DomainError, ValueError) as exc:
        return _fail(args.json, "domain", str(exc), EXIT_INVALID)


if __name__ == "__main__":
    sys.exit(main())
