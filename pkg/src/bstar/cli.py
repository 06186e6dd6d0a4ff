"""Command-line interface.

Exit codes: 0 success, 2 bad input (syntax, schema, usage), 3 a check
failed, 4 internal inconsistency (a bug).
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import certio
from .certify import (
    EulerCertificate,
    brieskorn_pham,
    compose,
    euler_field,
    integer_check,
    suspension_certificate,
    verify_certificate,
    verify_euler,
)
from .errors import BstarError, ExprSyntaxError, InternalInconsistency, NotWeightedHomogeneous
from .parsing import parse_factored, parse_poly
from .star import cofactors_sum_form, cofactors_theorem_form, star

EXIT_OK, EXIT_INPUT, EXIT_CHECK, EXIT_INTERNAL = 0, 2, 3, 4

log = logging.getLogger("bstar")


class CheckFailed(Exception):
    pass


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_star(args):
    a = parse_factored(args.a)
    b = parse_factored(args.b)
    result = star(a, b)
    _emit(args, {"star": result.format(args.var), "roots": certio.btilde_to_json(result)}, result.format(args.var))


def cmd_cofactors(args):
    b = parse_factored(args.b)
    c = parse_factored(args.c)
    pair = cofactors_sum_form(b, c) if args.sum_form else cofactors_theorem_form(b, c)
    payload = {"star": str(star(b, c)), "form": pair.form, "A": str(pair.A), "B": str(pair.B)}
    _emit(args, payload, f"A(s,t) = {pair.A}\nB(s,t) = {pair.B}")


def _verify_one(path, integers):
    cert = certio.load(path)
    if isinstance(cert, EulerCertificate):
        report = verify_euler(cert)
        ints = integer_check(cert.to_certificate(), integers) if integers else None
    else:
        report = verify_certificate(cert)
        ints = integer_check(cert, integers) if integers else None
    return path, report, ints


def cmd_verify(args):
    jobs = max(1, args.jobs)
    if jobs > 1 and len(args.certificates) > 1:
        with ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(lambda p: _verify_one(p, args.integers), args.certificates))
    else:
        results = [_verify_one(p, args.integers) for p in args.certificates]
    ok = True
    payload = []
    lines = []
    for path, report, ints in results:
        entry = {"file": path, **report.as_dict()}
        passed = report.passed and (ints is None or ints.passed)
        ok = ok and passed
        for name, good, detail in report.checks:
            lines.append(f"{'PASS' if good else 'FAIL'} {path}: {name}" + (f" ({detail})" if detail else ""))
        if report.residual is not None:
            lines.append(f"     residual: {report.residual}")
        if ints is not None:
            entry["integers"] = ints.as_dict()
            for name, good, _ in ints.checks:
                lines.append(f"{'PASS' if good else 'FAIL'} {path}: integer check {name}")
        entry["passed"] = passed
        payload.append(entry)
    _emit(args, payload if len(payload) > 1 else payload[0], "\n".join(lines))
    if not ok:
        raise CheckFailed("verification failed")


def cmd_euler(args):
    variables = tuple(v.strip() for v in args.vars.split(",")) if args.vars else None
    g = parse_poly(args.g, variables)
    weights = [Fraction(w.strip()) for w in args.weights.split(",")]
    try:
        chi = euler_field(g, weights, variables or g.variables)
    except NotWeightedHomogeneous as exc:
        _emit(args, {"euler_field": None, "error": str(exc)}, f"not weighted homogeneous: {exc}")
        raise CheckFailed(str(exc)) from exc
    _emit(args, {"euler_field": str(chi)}, str(chi))


def cmd_suspension(args):
    cert = suspension_certificate(args.r, args.var)
    if args.output:
        certio.save(cert, args.output)
    _emit(args, certio.to_json(cert), certio.dumps(cert).rstrip() if not args.output else f"wrote {args.output}")


def cmd_compose(args):
    cf = certio.load(args.f)
    eg = certio.load(args.g)
    if isinstance(cf, EulerCertificate):
        cf = cf.to_certificate()
    if not isinstance(eg, EulerCertificate):
        raise ExprSyntaxError(f"{args.g} is not an euler-certificate")
    for name, report in (("F", verify_certificate(cf)), ("G", verify_euler(eg))):
        if not report:
            print(f"input {name} does not verify: {report.failures()}", file=sys.stderr)
            raise CheckFailed("input certificate does not verify")
    h = compose(cf, eg, check_inputs=False)
    if args.output:
        certio.save(h, args.output)
    _emit(
        args,
        certio.to_json(h),
        f"h = {h.f}\nbtilde = {h.btilde}\nR(s) = {h.operator}" + (f"\nwrote {args.output}" if args.output else ""),
    )


def _parse_bp_term(text):
    var, sep, exp = text.partition(":")
    if not sep or not var or not exp.isdigit():
        raise ExprSyntaxError(f"expected VAR:EXPONENT, got {text!r}")
    return var, int(exp)


def cmd_bp(args):
    terms = [_parse_bp_term(t) for t in args.terms]
    cert, stages = brieskorn_pham(terms)
    ints = integer_check(cert, args.integers) if args.integers else None
    if args.output:
        certio.save(cert, args.output)
    last = stages[-1][2] if stages else None
    payload = {
        "function": str(cert.f),
        "btilde": cert.btilde.format("s"),
        "roots": certio.btilde_to_json(cert.btilde),
        "stages": [{"variable": v, "exponent": r, "A": str(p.A), "B": str(p.B)} for v, r, p in stages],
        "operator": str(cert.operator),
        "certificate": certio.to_json(cert),
    }
    lines = [f"h = {cert.f}", f"btilde = {cert.btilde}"]
    if last is not None:
        lines += [f"A(s,t) = {last.A}", f"B(s,t) = {last.B}"]
    lines.append(f"R(s) = {cert.operator}")
    if ints is not None:
        payload["integers"] = ints.as_dict()
        lines.append(f"integer check k=1..{args.integers}: {'PASS' if ints else 'FAIL'}")
    if args.output:
        lines.append(f"wrote {args.output}")
    _emit(args, payload, "\n".join(lines))
    if ints is not None and not ints:
        raise CheckFailed("integer check failed")


def build_parser():
    parser = argparse.ArgumentParser(prog="bstar", description="Star operation and Thom-Sebastiani functional equations.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("star", parents=[common], help="star of two factored polynomials")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--var", default="s", help="variable used for printing")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("cofactors", parents=[common], help="A(s,t), B(s,t) for (b*c)(s) = A b(s-t) + B c(t)")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("--sum-form", action="store_true", help="(b*c)(s+t) = A b(s) + B c(t) instead")
    p.set_defaults(func=cmd_cofactors)

    p = sub.add_parser("verify", parents=[common], help="verify certificate files")
    p.add_argument("certificates", nargs="+", metavar="CERT.json")
    p.add_argument("--integers", type=int, default=0, metavar="K", help="also check k = 1..K on plain powers")
    p.add_argument("--jobs", type=int, default=1, metavar="N")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("euler", parents=[common], help="Euler field sum w_j y_j d_j for a weighted-homogeneous g")
    p.add_argument("g")
    p.add_argument("--weights", required=True, help="comma-separated rationals")
    p.add_argument("--vars", help="comma-separated variable order (default: order of appearance)")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("suspension", parents=[common], help="Euler certificate for z^r")
    p.add_argument("r", type=int)
    p.add_argument("--var", default="z")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_suspension)

    p = sub.add_parser("compose", parents=[common], help="certificate for f+g")
    p.add_argument("f", metavar="F.json")
    p.add_argument("g", metavar="G.json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("bp", parents=[common], help="Brieskorn-Pham sum by iterated composition, e.g. bp x:2 y:3")
    p.add_argument("terms", nargs="+", metavar="VAR:EXP")
    p.add_argument("--integers", type=int, default=0, metavar="K")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bp)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args.func(args)
    except CheckFailed:
        return EXIT_CHECK
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (BstarError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
