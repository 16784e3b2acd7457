"""Command-line front end.

Bundle files are JSON::

    {"field": {"kind": "prime", "p": 5} | {"kind": "rational"},
     "rank": 2,
     "transition": [[entry, ...], ...]}

where an entry is a list of ``[exponent, "coeff"]`` pairs (``[]`` is zero).
Reports go to stdout as compact JSON.  Exit codes: 0 ok, 1 domain error or
failed verification, 2 usage error, 3 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from .arith import Field, LaurentPolynomial, Polynomial, RationalFunction, format_poly
from .bundle import (Germ, InvalidBundle, VectorBundle, germ_divisor, order_at, validate_bundle)
from .divisors import Point
from .sections import OracleInconsistency, h0, splitting_type_oracle
from .splitting import (CriterionFailure, CrossCheckFailure, SplittingCertificate, greedy_basis,
                        random_bundle, repair_boost, repair_filter, split, verify_certificate)
from .matrix import Matrix


class ParseError(ValueError):
    pass


# -- scalar and bundle encodings -------------------------------------------

def parse_field(obj, where="$.field") -> Field:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError(f"{where}: expected an object with a 'kind'")
    if obj["kind"] == "rational":
        return Field.rational()
    if obj["kind"] == "prime":
        p = obj.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError(f"{where}.p: expected an integer")
        try:
            return Field.prime(p)
        except ValueError as exc:
            raise ParseError(f"{where}.p: {exc}") from None
    raise ParseError(f"{where}.kind: unknown field kind {obj['kind']!r}")


def parse_field_flag(text: str) -> Field:
    s = text.strip()
    if s.lower() in ("q", "qq", "rational"):
        return Field.rational()
    m = re.fullmatch(r"(?:GF\(|F|p=)?(\d+)\)?", s, flags=re.IGNORECASE)
    if not m:
        raise ParseError(f"unrecognized field {text!r}")
    try:
        return Field.prime(int(m.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _check_coeff(field, c, where):
    if not isinstance(c, str):
        raise ParseError(f"{where}: coefficient must be a string")
    if field.p and not re.fullmatch(r"\s*[+-]?\d+\s*", c):
        raise ParseError(f"{where}: malformed integer coefficient {c!r}")
    try:
        return field(c)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def parse_entry(field, obj, where) -> LaurentPolynomial:
    if not isinstance(obj, list):
        raise ParseError(f"{where}: entry must be a list of [exponent, coeff] pairs")
    terms = []
    for k, pair in enumerate(obj):
        w = f"{where}[{k}]"
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ParseError(f"{w}: expected [exponent, coeff]")
        e, c = pair
        if not isinstance(e, int) or isinstance(e, bool):
            raise ParseError(f"{w}[0]: exponent must be an integer")
        terms.append((e, _check_coeff(field, c, f"{w}[1]")))
    return LaurentPolynomial(field, terms)


def encode_entry(x) -> list:
    """Sorted ``[exponent, coeff]`` pairs of a Polynomial or LaurentPolynomial."""
    if isinstance(x, Polynomial):
        x = LaurentPolynomial.from_poly(x)
    return [[e, x.field.format(c)] for e, c in sorted(x.terms().items())]


def _parse_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def bundle_from_json(doc) -> VectorBundle:
    if not isinstance(doc, dict):
        raise ParseError("$: expected a JSON object")
    for key in ("field", "rank", "transition"):
        if key not in doc:
            raise ParseError(f"$: missing key {key!r}")
    field = parse_field(doc["field"])
    rank = doc["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise ParseError("$.rank: expected a positive integer")
    rows = doc["transition"]
    if not isinstance(rows, list) or len(rows) != rank:
        raise ParseError(f"$.transition: expected {rank} rows")
    T = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != rank:
            raise ParseError(f"$.transition[{i}]: expected {rank} entries")
        T.append([parse_entry(field, e, f"$.transition[{i}][{j}]") for j, e in enumerate(row)])
    return validate_bundle(field, rank, Matrix(T))


def parse_bundle(text: str) -> VectorBundle:
    """Parse and validate a bundle document."""
    return bundle_from_json(_parse_json(text))


def bundle_to_json(E: VectorBundle) -> dict:
    return {"field": E.field.to_json(), "rank": E.rank,
            "transition": [[encode_entry(x) for x in E.transition.row(i)] for i in range(E.rank)]}


def serialize_bundle(E: VectorBundle) -> str:
    return json.dumps(bundle_to_json(E), separators=(",", ":"))


def certificate_to_json(cert: SplittingCertificate) -> dict:
    def mat(M, var):
        return {"variable": var,
                "entries": [[encode_entry(x) for x in M.row(i)] for i in range(M.rows)]}
    return {"degrees": list(cert.degrees), "A": mat(cert.A, "t"), "B": mat(cert.B, "s")}


def certificate_from_json(field: Field, doc) -> SplittingCertificate:
    if isinstance(doc, dict) and "certificate" in doc:
        doc = doc["certificate"]
    if not isinstance(doc, dict):
        raise ParseError("certificate: expected an object")
    for key in ("degrees", "A", "B"):
        if key not in doc:
            raise ParseError(f"certificate: missing key {key!r}")
    degrees = doc["degrees"]
    if not isinstance(degrees, list) or not all(isinstance(d, int) for d in degrees):
        raise ParseError("certificate.degrees: expected a list of integers")

    def mat(obj, name, var):
        where = f"certificate.{name}"
        if not isinstance(obj, dict) or obj.get("variable") != var:
            raise ParseError(f"{where}: expected an object with variable {var!r}")
        rows = obj.get("entries")
        if not isinstance(rows, list) or not rows:
            raise ParseError(f"{where}.entries: expected a non-empty list of rows")
        out = []
        for i, row in enumerate(rows):
            if not isinstance(row, list):
                raise ParseError(f"{where}.entries[{i}]: expected a list")
            line = []
            for j, e in enumerate(row):
                lp = parse_entry(field, e, f"{where}.entries[{i}][{j}]")
                if not lp.is_polynomial():
                    raise ParseError(f"{where}.entries[{i}][{j}]: negative exponent")
                line.append(lp.to_poly())
            out.append(line)
        try:
            return Matrix(out)
        except ValueError as exc:
            raise ParseError(f"{where}: {exc}") from None

    return SplittingCertificate(tuple(degrees), mat(doc["A"], "A", "t"), mat(doc["B"], "B", "s"))


# -- rational-function strings ----------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([-+*^()]))")


def parse_poly(field: Field, text: str) -> Polynomial:
    """Integer-coefficient polynomial in ``t`` with ``+ - * ^ ( )``."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at position {pos} in {text!r}")
        tokens.append((m.group(1) or m.group(2) or m.group(3), m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("", len(text)))
    i = 0

    def peek():
        return tokens[i][0]

    def take(expected=None):
        nonlocal i
        tok, at = tokens[i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r} at position {at} in {text!r}")
        i += 1
        return tok

    def expr():
        acc = term()
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = unary()
        while peek() == "*":
            take()
            acc = acc * unary()
        return acc

    def unary():
        if peek() == "-":
            take()
            return -unary()
        if peek() == "+":
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == "^":
            take()
            tok, at = tokens[i]
            if not tok.isdigit():
                raise ParseError(f"expected a non-negative exponent at position {at} in {text!r}")
            take()
            base = base ** int(tok)
        return base

    def atom():
        tok, at = tokens[i]
        if tok.isdigit():
            take()
            return Polynomial.constant(field, int(tok))
        if tok == "t":
            take()
            return Polynomial.t(field)
        if tok == "(":
            take()
            v = expr()
            take(")")
            return v
        raise ParseError(f"unexpected {tok or 'end of input'!r} at position {at} in {text!r}")

    result = expr()
    if peek() != "":
        raise ParseError(f"trailing input at position {tokens[i][1]} in {text!r}")
    return result


def parse_rational_function(field: Field, text: str) -> RationalFunction:
    parts = text.split("/")
    if len(parts) > 2:
        raise ParseError(f"more than one '/' in {text!r}")
    num = parse_poly(field, parts[0])
    den = parse_poly(field, parts[1]) if len(parts) == 2 else Polynomial.one(field)
    if not den:
        raise ParseError(f"zero denominator in {text!r}")
    return RationalFunction(num, den)


def parse_germ(field: Field, text: str) -> Germ:
    return Germ(parse_rational_function(field, part) for part in text.split(";"))


def format_rf(f: RationalFunction) -> str:
    if f.den.is_one():
        return format_poly(f.num)
    return f"({format_poly(f.num)})/({format_poly(f.den)})"


def parse_point(field: Field, text: str) -> Point:
    if text.strip().lower() in ("inf", "infinity"):
        return Point.infinity()
    c = parse_poly(field, text)
    if c.degree < 1:
        raise ParseError(f"point {text!r} must be 'inf' or a polynomial of positive degree")
    try:
        return Point.finite(c.monic())
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# -- commands -----------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _header(cmd, E):
    return {"command": cmd, "field": E.field.to_json(), "rank": E.rank, "c1": E.c1}


def cmd_split(args):
    E = parse_bundle(_read(args.bundle))
    kind, cert = split(E)
    report = _header("split", E)
    report["splitting_type"] = list(kind)
    verdict = verify_certificate(E, cert)
    if not args.no_certificate:
        report["certificate"] = certificate_to_json(cert)
    if args.divisors:
        basis = greedy_basis(E)
        report["divisors"] = [{"germ": [format_rf(f) for f in g.coords], "degree": d,
                               "divisor": D.to_json()}
                              for g, d, D in zip(basis.germs, basis.degrees, basis.divisors)]
    if args.h0_table:
        lo, hi = -max(kind) - 1, -min(kind) + 1
        report["h0"] = [{"twist": k, "h0": h0(E, k)} for k in range(lo, hi + 1)]
    report["oracle_type"] = list(splitting_type_oracle(E))
    report["verified"] = bool(verdict)
    return (0 if verdict else 3), report


def cmd_h0(args):
    E = parse_bundle(_read(args.bundle))
    report = _header("h0", E)
    report["twist"] = args.twist
    report["h0"] = h0(E, args.twist)
    return 0, report


def cmd_divisor(args):
    E = parse_bundle(_read(args.bundle))
    g = parse_germ(E.field, args.germ)
    if g.rank != E.rank:
        raise ParseError(f"germ has {g.rank} coordinates, bundle has rank {E.rank}")
    D = germ_divisor(E, g)
    report = _header("divisor", E)
    report["germ"] = [format_rf(f) for f in g.coords]
    report["divisor"] = D.to_json()
    report["degree"] = D.degree
    return 0, report


def cmd_verify(args):
    E = parse_bundle(_read(args.bundle))
    cert = certificate_from_json(E.field, _parse_json(_read(args.certificate)))
    verdict = verify_certificate(E, cert)
    report = _header("verify", E)
    report["verified"] = verdict.ok
    report["reasons"] = list(verdict.reasons)
    return (0 if verdict else 1), report


def cmd_gen(args):
    field = parse_field_flag(args.field)
    try:
        degrees = [int(x) for x in args.type.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"malformed --type {args.type!r}") from None
    if not degrees:
        raise ParseError("--type needs at least one degree")
    docs = []
    for i in range(args.count):
        E, truth = random_bundle(args.seed + i, field, len(degrees), degrees, args.ops)
        doc = bundle_to_json(E)
        doc["ground_truth"] = list(truth)
        doc["seed"] = args.seed + i
        docs.append(doc)
    if args.count == 1:
        return 0, docs[0]
    return 0, {"command": "gen", "instances": docs}


def cmd_repair_demo(args):
    E = parse_bundle(_read(args.bundle))
    P = parse_point(E.field, args.point)
    germs = [parse_germ(E.field, g) for g in args.germ]
    if any(g.rank != E.rank for g in germs):
        raise ParseError("germ length does not match the bundle rank")
    report = _header("repair-demo", E)
    report["point"] = "inf" if P.is_infinity else format_poly(P.cluster)
    report["orders"] = [order_at(E, g, P) for g in germs]
    J = repair_filter(E, germs, P)
    report["filter"] = J
    out = repair_boost(E, [germs[i] for i in J], P)
    report["boost"] = {
        "coefficients": [format_rf(f) for f in out.coefficients],
        "new_germ": [format_rf(f) for f in out.new_germ.coords],
        "new_divisor": germ_divisor(E, out.new_germ).to_json(),
        "old_degree": out.old_degree,
        "new_degree": out.new_degree,
    }
    return 0, report


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="p1split", description="Splitting type of vector bundles on P^1.")
    ap.add_argument("--pretty", action="store_true", help="human-readable output")
    ap.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", help="splitting type with certificate")
    p.add_argument("bundle")
    p.add_argument("--no-certificate", action="store_true")
    p.add_argument("--divisors", action="store_true", help="list the greedy basis divisors")
    p.add_argument("--h0-table", action="store_true", help="include h0 of nearby twists")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("h0", help="dimension of global sections")
    p.add_argument("bundle")
    p.add_argument("--twist", type=int, default=0)
    p.set_defaults(func=cmd_h0)

    p = sub.add_parser("divisor", help="divisor of a germ")
    p.add_argument("bundle")
    p.add_argument("--germ", required=True, help='coordinates as "f1;f2;..."')
    p.set_defaults(func=cmd_divisor)

    p = sub.add_parser("verify", help="check a splitting certificate")
    p.add_argument("bundle")
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="random bundle with known splitting type")
    p.add_argument("--type", required=True, help='degrees "d1,d2,..."')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ops", type=int, default=4)
    p.add_argument("--field", default="rational")
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("repair-demo", help="run the filter and boost repair steps")
    p.add_argument("bundle")
    p.add_argument("--point", required=True, help='"inf" or a cluster polynomial such as "t-1"')
    p.add_argument("--germ", action="append", required=True)
    p.set_defaults(func=cmd_repair_demo)
    return ap


def _pretty(report) -> str:
    lines = []

    def walk(key, val, indent):
        pad = "  " * indent
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            for k, v in val.items():
                walk(k, v, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], (dict, list)):
            lines.append(f"{pad}{key}:")
            for v in val:
                lines.append(f"{pad}  - {json.dumps(v, separators=(', ', ': '))}")
        else:
            lines.append(f"{pad}{key}: {json.dumps(val)}")

    for k, v in report.items():
        walk(k, v, 0)
    return "\n".join(lines)


def _execute(args):
    start = time.perf_counter()
    try:
        code, report = args.func(args)
    except (CrossCheckFailure, OracleInconsistency, CriterionFailure, AssertionError) as exc:
        return 3, {"command": args.command, "error": {"kind": type(exc).__name__, "message": str(exc)}}
    except (ParseError, InvalidBundle, ValueError, ArithmeticError) as exc:
        return 1, {"command": args.command, "error": {"kind": type(exc).__name__, "message": str(exc)}}
    if args.timing:
        report["timing"] = round(time.perf_counter() - start, 6)
    return code, report


def run(argv=None):
    """Execute a command; returns ``(exit_code, report)``.  Usage errors raise SystemExit(2)."""
    return _execute(build_parser().parse_args(argv))


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    code, report = _execute(args)
    if args.pretty:
        print(_pretty(report))
    else:
        print(json.dumps(report, separators=(",", ":")))
    return code


if __name__ == "__main__":
    sys.exit(main())
