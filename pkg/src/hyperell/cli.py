"""Command-line front end.

Subcommands: rank-bound, factors, integrate, verify, zeta.  Every
success path is oracle-checked in-process before anything is printed;
an unverified antiderivative can never leave with exit code 0.

Exit codes: 0 success, 2 parse error, 3 resource budget exceeded,
4 not decomposable / oracle FAIL.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys

from .curves import normalize_curve
from .domains import QQ
from .errors import (
    BadReductionError,
    HyperellError,
    NotDecomposableError,
    ParseError,
    ReduciblePolynomialError,
    ResourceLimitError,
)
from .expressions import (
    CurveFunction,
    EllipticExpression,
    FirstKind,
    LogTerm,
    SecondKind,
    ThirdKind,
    differentiate,
)
from .integrate import HyperellipticIntegrand, hyperelliptic_to_elliptic
from .morphisms import EllipticMorphism, elliptic_factors, verify_morphism
from .parsing import extend_tower, parse_element, parse_poly, parse_ratfunc
from .ratfunc import RationalFunction, _lift
from .towers import DEFAULT_TOWER_BUDGET, TowerField
from .unipoly import UniPoly
from .zeta import (
    DEFAULT_COUNT_BUDGET,
    UNBOUNDED,
    count_points,
    psi_from_counts,
    rank_bound,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_FAIL = 4

DEFAULT_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="hyperell",
        description="Exact elliptic decompositions of hyperelliptic integrals.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, curve=True):
        if curve:
            p.add_argument("--curve", required=True,
                           help="radicand S(x) of the curve y^2 = S")
        p.add_argument("--field", action="append", default=[],
                       metavar="POLY",
                       help="adjoin a generator, e.g. 'a^2 - 2' (repeatable)")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--budget-tower", type=int, default=DEFAULT_TOWER_BUDGET,
                       help="max total tower degree")
        p.add_argument("--budget-count", type=int, default=DEFAULT_COUNT_BUDGET,
                       help="max finite-field enumeration size")
        p.add_argument("--time-limit", type=int, default=0,
                       help="wall-clock limit in seconds (0 = none)")

    p = sub.add_parser("rank-bound",
                       help="bound the number of elliptic factors mod p")
    common(p)
    p.add_argument("--prime", action="append", type=int, default=[])

    p = sub.add_parser("factors", help="search for elliptic morphisms")
    common(p)
    p.add_argument("--bound", "-m", type=int, default=2,
                   help="degree bound for F")

    p = sub.add_parser("integrate",
                       help="decompose an integral P/(Q*sqrt(S))")
    common(p, curve=False)
    p.add_argument("--radicand", required=True, help="S(x) under the root")
    p.add_argument("--num", default="1", help="numerator P(x)")
    p.add_argument("--den", default="1", help="denominator Q(x)")
    p.add_argument("--bound", "-m", type=int, default=2)

    p = sub.add_parser("verify",
                       help="re-differentiate a stored integrate result")
    p.add_argument("--input", required=True,
                   help="JSON file produced by `integrate --json`")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("zeta", help="zeta numerator Psi_p of the curve mod p")
    common(p)
    p.add_argument("--prime", action="append", type=int, default=[])

    return top


def _tower(args) -> TowerField:
    t = TowerField(QQ, budget=args.budget_tower)
    for text in args.field:
        t = extend_tower(t, text)
    return t


def _emit(args, payload: dict, text_lines):
    if args.json:
        payload = {"schemaVersion": 1, **payload}
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _good_primes(args):
    return list(args.prime) if args.prime else list(DEFAULT_PRIMES)


def cmd_rank_bound(args) -> int:
    W = _tower(args)
    S = parse_poly(args.curve, W)
    curve = normalize_curve(S)
    table = []
    best = None
    for p in _good_primes(args):
        rb = rank_bound(curve, p, budget=args.budget_count)
        table.append(rb)
        if rb.is_bounded and (best is None or rb.value < best):
            best = rb.value
    minimum = UNBOUNDED if best is None else best
    _emit(args,
          {"command": "rank-bound", "curve": args.curve,
           "perPrime": [rb.to_json() for rb in table],
           "minimum": minimum},
          [f"p={rb.prime}: {rb.value}" for rb in table]
          + [f"minimum over good primes: {minimum}"])
    return EXIT_OK


def cmd_factors(args) -> int:
    W = _tower(args)
    S = parse_poly(args.curve, W)
    curve = normalize_curve(S)
    found = elliptic_factors(curve, args.bound)
    for mor in found:
        # spec for this command: nothing unverified is ever printed
        assert verify_morphism(S, mor), "internal: unverified morphism"
    _emit(args,
          {"command": "factors", "curve": args.curve, "bound": args.bound,
           "morphisms": [m.to_json() for m in found]},
          [f"{len(found)} morphism(s) with S*G^2 = F*(F-1)*(F-kappa):"]
          + [f"  kappa = {m.tower.to_str(m.kappa)}; F = {m.F.to_str()}; "
             f"G = {m.G.to_str()}" for m in found])
    return EXIT_OK


def cmd_integrate(args) -> int:
    W = _tower(args)
    S = parse_poly(args.radicand, W)
    P = parse_poly(args.num, W)
    Q = parse_poly(args.den, W)
    integrand = HyperellipticIntegrand.from_raw(P, Q, S)
    try:
        expr = hyperelliptic_to_elliptic(integrand, bound=args.bound)
    except NotDecomposableError as exc:
        stage = getattr(exc, "stage", None) or "divisor-reduction"
        _emit(args,
              {"command": "integrate", "oracle": "FAIL",
               "stage": stage, "reason": str(exc)},
              [f"FAIL ({stage}): {exc}"])
        return EXIT_FAIL
    ok = _oracle(expr, S, P, Q)
    verdict = "PASS" if ok else "FAIL"
    _emit(args,
          {"command": "integrate",
           "integrand": {"num": args.num, "den": args.den,
                         "radicand": args.radicand},
           "expression": expr.to_json(),
           "oracle": verdict},
          [expr.to_str(), f"oracle: {verdict}"])
    return EXIT_OK if ok else EXIT_FAIL


def _oracle(expr: EllipticExpression, S: UniPoly, P: UniPoly,
            Q: UniPoly) -> bool:
    """d/dx(expr) == P/(Q*sqrt(S)), checked in K(x)[y]/(y^2 - S)."""
    T = expr.dom
    rf = RationalFunction(_lift(P, T), _lift(Q, T))
    target = CurveFunction(expr.S, RationalFunction.zero(T),
                           rf / RationalFunction.from_poly(expr.S))
    return differentiate(expr) == target


def _load_tower(steps) -> TowerField:
    t = TowerField(QQ)
    for step in steps:
        coeffs = [parse_element(c, t) for c in step["minpoly"]]
        t = t.adjoin(UniPoly(t, coeffs), name=step["name"], check=False)
    return t


def _load_expression(doc: dict) -> EllipticExpression:
    W = _load_tower(doc["field"])
    S = parse_poly(doc["radicand"], W)
    alg = CurveFunction(S, parse_ratfunc(doc["algebraic"]["a"], W),
                        parse_ratfunc(doc["algebraic"]["b"], W))
    terms = []
    for t in doc["terms"]:
        if t["kind"] == "log":
            R = CurveFunction(S, parse_ratfunc(t["a"], W),
                              parse_ratfunc(t["b"], W))
            terms.append(LogTerm(parse_element(t["coeff"], W), R))
            continue
        mor = EllipticMorphism(parse_element(t["kappa"], W),
                               parse_ratfunc(t["F"], W),
                               parse_ratfunc(t["G"], W), W)
        coeff = parse_element(t["coeff"], W)
        if t["kind"] == "F":
            terms.append(FirstKind(coeff, mor))
        elif t["kind"] == "E":
            terms.append(SecondKind(coeff, mor))
        elif t["kind"] == "Pi":
            terms.append(ThirdKind(coeff, mor, parse_element(t["c"], W),
                                   parse_element(t["d"], W)))
        else:
            raise ParseError(f"unknown term kind {t['kind']!r}")
    return EllipticExpression(S, alg, terms)


def cmd_verify(args) -> int:
    with open(args.input) as fh:
        doc = json.load(fh)
    exprdoc = doc.get("expression", doc)
    expr = _load_expression(exprdoc)
    W = expr.dom
    integrand = doc.get("integrand")
    if integrand is None:
        raise ParseError("input JSON has no integrand to check against")
    P = parse_poly(integrand["num"], W)
    Q = parse_poly(integrand["den"], W)
    ok = _oracle(expr, expr.S, P, Q)
    verdict = "PASS" if ok else "FAIL"
    _emit(args, {"command": "verify", "oracle": verdict}, [f"oracle: {verdict}"])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_zeta(args) -> int:
    W = _tower(args)
    S = parse_poly(args.curve, W)
    curve = normalize_curve(S)
    g = curve.genus
    reports = []
    lines = []
    for p in _good_primes(args):
        try:
            counts, mods = [], []
            for i in range(1, g + 1):
                n, m = count_points(curve, p, i, budget=args.budget_count)
                counts.append(n)
                mods.append(m)
            psi = psi_from_counts(counts, p, modulus_polys=mods)
        except BadReductionError:
            reports.append({"p": p, "badReduction": True})
            lines.append(f"p={p}: bad reduction")
            continue
        reports.append(psi.to_json())
        lines.append(f"p={p}: {psi.poly().to_str('T')}  counts={counts}")
    _emit(args, {"command": "zeta", "curve": args.curve, "zeta": reports},
          lines)
    return EXIT_OK


_COMMANDS = {
    "rank-bound": cmd_rank_bound,
    "factors": cmd_factors,
    "integrate": cmd_integrate,
    "verify": cmd_verify,
    "zeta": cmd_zeta,
}


def _alarm_handler(signum, frame):
    raise ResourceLimitError("time limit exceeded", stage="time-limit")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    limit = getattr(args, "time_limit", 0)
    if limit:
        signal.signal(signal.SIGALRM, _alarm_handler)
        signal.alarm(limit)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, ReduciblePolynomialError, ValueError,
            OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        stage = getattr(exc, "stage", None) or "unknown"
        print(f"resource limit ({stage}): {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except NotDecomposableError as exc:
        stage = getattr(exc, "stage", None) or "unknown"
        print(f"FAIL ({stage}): {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        if limit:
            signal.alarm(0)


if __name__ == "__main__":
    sys.exit(main())
