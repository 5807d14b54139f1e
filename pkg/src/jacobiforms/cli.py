"""Command line front end.

Subcommands: expand, bracket, deriv, verify, classify, iso, scan-conjecture.
All numbers on the command line are exact rationals written p/q; nothing is
ever parsed as floating point.  Output is deterministic for a fixed
configuration and seed.  Exit codes: 0 all checks passed, 1 a check failed,
2 usage error, 3 an internal invariant was violated.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import brackets, classifier, derivations, qseries, verifier
from .elements import (
    BigradedElement,
    InternalInvariantError,
    ParseError,
    format_element,
    parse_element,
    to_json_dict,
)

USAGE_ERROR = 2
INTERNAL_ERROR = 3


class UsageError(ValueError):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational: {text!r}")


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(part) for part in text.split(",") if part.strip() != ""]


def _element(text: str, allow_f2: bool) -> BigradedElement:
    try:
        return parse_element(text, allow_f2=allow_f2)
    except ParseError as exc:
        raise UsageError(f"bad element {text!r}: {exc}")


def _emit_element(value: BigradedElement, as_json: bool) -> None:
    if as_json:
        print(json.dumps(to_json_dict(value), sort_keys=True))
    else:
        print(format_element(value))


def _emit_reports(reports, as_json: bool, argv=None) -> bool:
    ok = all(r.passed for r in reports)
    reproduce = "jacobiforms " + " ".join(argv) if argv else None
    for r in reports:
        if r.witness is not None and reproduce:
            r.witness.setdefault("reproduce", reproduce)
    if as_json:
        print(json.dumps([r.to_json_dict() for r in reports], sort_keys=True))
    else:
        for r in reports:
            print(f"[{r.status.upper():4s}] {r.claim} {json.dumps(r.to_json_dict()['params'], sort_keys=True)}")
            if r.witness is not None:
                from .report import _jsonable

                print(f"        witness: {json.dumps(_jsonable(r.witness), sort_keys=True)}")
    return ok


# ----------------------------------------------------------------- families

_FAMILY_ARITY = {"accol": 3, "orc": 1, "src": 0, "crochet": 2, "scal": 2, "Crochet": 2}


def _family(name: str, params: list[Fraction]) -> brackets.BracketFamily:
    if name not in _FAMILY_ARITY:
        raise UsageError(f"unknown family {name!r}")
    if len(params) != _FAMILY_ARITY[name]:
        raise UsageError(f"family {name} takes {_FAMILY_ARITY[name]} parameters, got {len(params)}")
    builders = {
        "accol": brackets.accol,
        "orc": brackets.orc,
        "src": lambda: brackets.src(),
        "crochet": brackets.crochet,
        "scal": brackets.scal,
        "Crochet": brackets.rc_localized,
    }
    return builders[name](*params)


_DERIVATION_ARITY = {
    "serre": 0,
    "oberdieck": 0,
    "sharp": 0,
    "flat": 0,
    "pi": 0,
    "d_alpha": 1,
    "delta_beta": 1,
    "partial_u": 1,
    "serre_ab": 2,
}


def _derivation(name: str, params: list[Fraction]) -> derivations.Derivation:
    if name not in _DERIVATION_ARITY:
        raise UsageError(f"unknown derivation {name!r}")
    if len(params) != _DERIVATION_ARITY[name]:
        raise UsageError(
            f"derivation {name} takes {_DERIVATION_ARITY[name]} parameters, got {len(params)}"
        )
    return getattr(derivations, name)(*params)


# -------------------------------------------------------------- subcommands


def _cmd_expand(args) -> int:
    n, window = args.N, args.G
    named = {"E2", "E4", "E6", "A", "B", "J1", "J2", "Delta"}
    if args.what == "element":
        if not args.element:
            raise UsageError("--what element requires --element")
        bundle = qseries.make_bundle(n, window)
        series = qseries.evaluate(_element(args.element, args.allow_f2), bundle)
    elif args.what in named:
        if args.what == "J1":
            series = qseries.j1_series(n, window)
        elif args.what == "J2":
            series = qseries.j2_series(n)
        elif args.what == "E2":
            series = qseries.eisenstein(2, n)
        elif args.what in ("E4", "E6"):
            series = qseries.eisenstein(int(args.what[1]), n)
        elif args.what == "A":
            series = qseries.theta_quotient_A(n)
        elif args.what == "B":
            series = qseries.b_series(n, window)
        else:  # Delta
            series = Fraction(1, 1728) * (qseries.eisenstein(4, n) ** 3 - qseries.eisenstein(6, n) ** 2)
    else:
        raise UsageError(f"unknown expansion target {args.what!r}")
    if args.json:
        payload = {
            str(order): [
                {"w": r, "coeff": str(c)} for r, c in sorted(series.coefficient(order).items())
            ]
            for order in range(series.q_order + 1)
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for order in range(series.q_order + 1):
            print(f"q^{order}: {qseries.format_wpoly(series.coefficient(order))}")
        if not series.is_exact:
            print(f"# window: coefficients exact for |w-exponent| <= {series.window}")
    return 0


def _cmd_bracket(args) -> int:
    params = _rational_list(args.params) if args.params else []
    f = _element(args.f, args.allow_f2)
    g = _element(args.g, args.allow_f2)
    if args.family == "rc":
        if len(params):
            raise UsageError("family rc takes no parameters")
        value = brackets.rc_classical(args.n, f, g)
    else:
        value = brackets.bracket_n(_family(args.family, params), args.n, f, g)
    _emit_element(value, args.json)
    return 0


def _cmd_deriv(args) -> int:
    params = _rational_list(args.param) if args.param else []
    d = _derivation(args.name, params)
    f = _element(args.input, args.allow_f2)
    value = derivations.iterate(d, args.power, f)
    _emit_element(value, args.json)
    return 0


def _cmd_verify(args) -> int:
    params = _rational_list(args.params) if args.params else []
    rng = random.Random(args.seed)
    reports = []
    if args.suite in ("associativity", "poisson", "bidegree", "stability"):
        if not args.family:
            raise UsageError(f"suite {args.suite} requires --family")
        fam = _family(args.family, params)
        tag = f"{args.family}[{','.join(str(p) for p in params)}]"
        weight_cap = args.weight_cap if args.weight_cap is not None else 8
        index_cap = args.index_cap if args.index_cap is not None else 2
        capped = args.weight_cap is not None or args.index_cap is not None
        basis = verifier.monomial_basis(weight_cap, index_cap) if capped else None
        if args.suite == "associativity":
            reports.append(
                verifier.check_associativity(fam, args.nmax, basis, claim=f"associativity.{tag}")
            )
        elif args.suite == "poisson":
            reports.append(
                verifier.check_poisson(brackets.mu1(fam), basis, claim=f"poisson.{tag}")
            )
        elif args.suite == "bidegree":
            pairs = [
                (
                    verifier.random_homogeneous(rng, weight_cap, index_cap),
                    verifier.random_homogeneous(rng, weight_cap, index_cap),
                )
                for _ in range(args.pairs)
            ]
            reports.append(
                verifier.check_bidegree_law(fam, args.nmax, pairs, claim=f"bidegree.{tag}")
            )
        else:
            reports.append(
                verifier.check_stability(
                    fam, args.algebra, args.nmax, claim=f"stability.{args.algebra}.{tag}"
                )
            )
    elif args.suite == "vinset":
        u_values = _rational_list(args.u) if args.u else [Fraction(0), Fraction(1, 12), Fraction(-1, 6), Fraction(1)]
        reports.extend(verifier.check_vinset(u_values))
    else:
        raise UsageError(f"unknown suite {args.suite!r}")
    return 0 if _emit_reports(reports, args.json, getattr(args, '_argv', None)) else 1


def _cmd_classify(args) -> int:
    values = _rational_list(args.params)
    if len(values) != 10:
        raise UsageError("classify takes ten comma-separated rationals")
    p = classifier.PoissonParams.of(*values)
    residuals = classifier.relations_residual(p)
    labels = classifier.classify(p)
    payload = {
        "residuals": [str(r) for r in residuals],
        "admissible": all(r == 0 for r in residuals),
        "families": [
            {"name": label.name, "free": {k: str(v) for k, v in label.free}} for label in labels
        ],
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"admissible: {payload['admissible']}")
        print(f"families: {', '.join(f['name'] for f in payload['families']) or '(none)'}")
        if not payload["admissible"]:
            nonzero = [f"r{i + 1}={r}" for i, r in enumerate(residuals) if r != 0]
            print(f"nonzero residuals: {', '.join(nonzero)}")
    return 0


def _cmd_iso(args) -> int:
    src_triple = _rational_list(args.from_params)
    dst_triple = _rational_list(args.to_params)
    if len(src_triple) != 3 or len(dst_triple) != 3:
        raise UsageError("iso takes --from a,b,c and --to a2,b2,c2")
    flag, scaling = classifier.modular_isomorphic(dst_triple, src_triple)
    payload = {
        "isomorphic": flag,
        "scaling": [str(s) for s in scaling] if scaling else None,
        "normal_form_from": [str(x) for x in classifier.normal_form(*src_triple)],
        "normal_form_to": [str(x) for x in classifier.normal_form(*dst_triple)],
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        scaling_text = f"(lam, mu) = ({payload['scaling'][0]}, {payload['scaling'][1]})" if scaling else "none"
        print(f"isomorphic: {str(flag).lower()}")
        print(f"scaling: {scaling_text}")
    return 0


def _cmd_scan(args) -> int:
    u_values = _rational_list(args.u)
    report = verifier.scan_conjecture(u_values, args.nmax, args.weight_cap, args.index_cap)
    if report.witness is not None and getattr(args, "_argv", None):
        report.witness.setdefault("reproduce", "jacobiforms " + " ".join(args._argv))
    if args.json:
        print(json.dumps(report.to_json_dict(), sort_keys=True))
    else:
        for u, v, n, f, g, inside in report.details or []:
            print(f"u={u} v={v} n={n} f=({f}) g=({g}) in_Jtilde={str(inside).lower()}")
        print(f"[{report.status.upper():4s}] {report.claim}")
    return 0 if report.passed else 1


# --------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacobiforms",
        description="Exact Rankin-Cohen deformations on weak Jacobi forms",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for random sampling")
    common.add_argument("--allow-f2", action="store_true", help="accept F2 in element text, rewriting it as B*A^-1")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="q-expansions of the generators")
    p.add_argument("--what", required=True, choices=["E2", "E4", "E6", "A", "B", "J1", "J2", "Delta", "element"])
    p.add_argument("--element", default=None)
    p.add_argument("--N", type=int, default=10)
    p.add_argument("--G", type=int, default=24)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("bracket", parents=[common], help="evaluate one bracket of a family")
    p.add_argument("--family", required=True, choices=sorted(_FAMILY_ARITY) + ["rc"])
    p.add_argument("--params", default="")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("deriv", parents=[common], help="apply a named derivation")
    p.add_argument("--name", required=True, choices=sorted(_DERIVATION_ARITY))
    p.add_argument("--param", default="")
    p.add_argument("--input", required=True)
    p.add_argument("--power", type=int, default=1)
    p.set_defaults(func=_cmd_deriv)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=["associativity", "poisson", "bidegree", "stability", "vinset"])
    p.add_argument("--family", default=None, choices=sorted(_FAMILY_ARITY))
    p.add_argument("--params", default="")
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--weight-cap", type=int, default=None)
    p.add_argument("--index-cap", type=int, default=None)
    p.add_argument("--algebra", default="Jtilde", choices=["M", "Jtilde", "Q"])
    p.add_argument("--u", default="")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("classify", parents=[common], help="classify a ten-parameter bracket")
    p.add_argument("--params", required=True, help="alpha,beta,gamma,delta,lambda,mu,theta,epsilon,xi,eta")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("iso", parents=[common], help="decide conjugacy of two (a,b,c) families")
    p.add_argument("--from", dest="from_params", required=True)
    p.add_argument("--to", dest="to_params", required=True)
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("scan-conjecture", parents=[common], help="membership scan on the stability line")
    p.add_argument("--u", required=True)
    p.add_argument("--nmax", type=int, default=2)
    p.add_argument("--weight-cap", type=int, default=8)
    p.add_argument("--index-cap", type=int, default=2)
    p.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    args._argv = list(argv) if argv is not None else sys.argv[1:]
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
