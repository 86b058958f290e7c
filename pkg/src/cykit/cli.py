"""Command line front end: ``cy <command> [options]``.

Operators may be given inline, as a file path, as ``-`` for stdin, or as a
catalog id/alias.  ``--format machine`` switches every command to
line-oriented ``key value`` output.

Exit status: 0 ok, 1 a check failed, 2 usage/parse/lookup error,
3 precondition or domain violation, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog as cat
from .cystruct import (
    cy2_check,
    cy5_check,
    exterior_power_operator,
    verify_identities,
    wronskian_lift,
    yang_pullback,
)
from .diffops import (
    DifferenceOperator,
    de_to_diff,
    diff_to_de,
    holonomic_enumerate,
    superseeker_lookup,
    superseeker_signature,
)
from .errors import (
    CykitError,
    DomainError,
    EnumerationError,
    InconsistencyError,
    NotFoundError,
    OperatorSyntaxError,
    PreconditionError,
    SignatureError,
    StructuralError,
)
from .exact import Polynomial, format_coeff, format_poly
from .families import (
    BINOM_LIFT,
    DEGREE_TWO,
    HYPER_SECOND,
    HadamardFamily,
    HypergeometricQuinticSpec,
    binom_lift_third,
    hadamard_product,
    hypergeometric_quintic,
    pullback_closed_form,
)
from .frobenius import (
    equivalence_transformation,
    equivalent_k,
    frobenius_basis,
    mirror_map,
    mum_check,
    series_annihilator,
    yukawa_coupling,
)
from .opalg import ThetaOperator, weyl_right_divide
from .text import parse_difference, parse_expression, parse_operator, render_difference, render_operator

ORDER_ENV = "CYKIT_ORDER"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INCONSISTENT = 0, 1, 2, 3, 4


def default_order() -> int:
    raw = os.environ.get(ORDER_ENV, "")
    try:
        return int(raw) if raw else 12
    except ValueError:
        raise DomainError(f"{ORDER_ENV}={raw!r} is not an integer") from None


class Output:
    def __init__(self, fmt: str, stream=None):
        self.machine = fmt == "machine"
        self.stream = stream or sys.stdout

    def line(self, text: str = ""):
        print(text, file=self.stream)

    def kv(self, key: str, value, label: str | None = None):
        if self.machine:
            self.line(f"{key} {_flat(value)}")
        else:
            self.line(f"{label or key}: {_pretty(value)}")

    def operator(self, L: ThetaOperator, key: str = "operator"):
        if self.machine:
            rec = render_operator(L, "machine").splitlines()
            self.line(f"{key}.order {L.order}")
            self.line(f"{key}.degree {L.degree}")
            for i, row in enumerate(rec[2:]):
                self.line(f"{key}.P{i} {row}")
        else:
            self.line(render_operator(L, "theta"))

    def series(self, key: str, coeffs, label: str | None = None):
        self.kv(key, list(coeffs), label)


def _flat(value) -> str:
    if isinstance(value, bool):
        return "pass" if value else "fail"
    if isinstance(value, Fraction):
        return format_coeff(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_flat(v) for v in value)
    return str(value)


def _pretty(value) -> str:
    if isinstance(value, (list, tuple)):
        return ", ".join(_flat(v) for v in value)
    return _flat(value)


# operator arguments

def _read_source(arg: str) -> str | None:
    if arg == "-":
        return sys.stdin.read()
    p = Path(arg)
    if len(arg) < 256 and "\n" not in arg and p.is_file():
        return p.read_text(encoding="utf-8")
    return None


def resolve_operator(arg: str) -> ThetaOperator:
    text = _read_source(arg)
    if text is not None:
        return parse_operator(text)
    try:
        entry = cat.catalog_get(arg)
    except NotFoundError as missing:
        try:
            return parse_operator(arg)
        except OperatorSyntaxError:
            if _looks_like_id(arg):
                raise missing from None
            raise
    if entry.operator is None:
        raise PreconditionError(f"catalog entry {entry.id!r} has no operator")
    return entry.operator


def _looks_like_id(arg: str) -> bool:
    return not any(ch in arg for ch in "^+ ") and any(ch.isalpha() and ch not in "xTz" for ch in arg)


def resolve_difference(arg: str) -> DifferenceOperator:
    text = _read_source(arg)
    src = arg if text is None else text
    if src.strip().startswith("CYOP") or ("x" in src or "T" in src):
        return de_to_diff(resolve_operator(arg))
    return parse_difference(src)


def _second_order_or_operator(arg: str):
    key = arg.strip("()")
    if key in HYPER_SECOND or key in DEGREE_TWO:
        return key, None
    return None, resolve_operator(arg)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not a rational number: {text!r}") from None


def _poly_T(text: str) -> Polynomial:
    L = parse_expression(text)
    if L.degree > 0:
        raise DomainError(f"expected a polynomial in T, got {text!r}")
    return L.P(0)


# commands

def cmd_parse(args, out: Output) -> int:
    L = resolve_operator(args.operator)
    if out.machine:
        out.line(render_operator(L, "machine"))
    else:
        out.line(render_operator(L, "theta"))
        out.kv("order", L.order)
        out.kv("degree", L.degree)
    return EXIT_OK


def cmd_render(args, out: Output) -> int:
    L = resolve_operator(args.operator)
    style = args.style or ("machine" if out.machine else "theta")
    out.line(render_operator(L, style))
    return EXIT_OK


def cmd_frobenius(args, out: Output) -> int:
    L = resolve_operator(args.operator)
    fb = frobenius_basis(L, args.order)
    for i, y in enumerate(fb.solutions):
        for j, part in enumerate(y.parts):
            out.series(f"y{i}.log{j}", part.coefficients(args.order), f"y{i} [log^{j}/{j}!]")
    return EXIT_OK


def cmd_mirror(args, out: Output) -> int:
    L = resolve_operator(args.operator)
    md = mirror_map(L, args.order)
    out.series("q", md.q.coefficients(args.order), "q(x)")
    out.series("x", md.x_of_q.coefficients(args.order), "x(q)")
    return EXIT_OK


def cmd_yukawa(args, out: Output) -> int:
    md = yukawa_coupling(resolve_operator(args.operator), args.order)
    out.series("K", [1, *md.K_coeffs], "K(q)")
    return EXIT_OK


def cmd_instantons(args, out: Output) -> int:
    md = yukawa_coupling(resolve_operator(args.operator), args.order)
    out.series("N", md.instantons, "N_k")
    out.kv("normalizer", md.normalizer)
    out.series("cN", [md.normalizer * n for n in md.instantons], "normalized N_k")
    return EXIT_OK


def cmd_check(args, out: Output) -> int:
    L = resolve_operator(args.operator)
    if args.which == "mum":
        ok = mum_check(L)
        out.kv("mum", ok)
    elif args.which == "cy2":
        ok = cy2_check(L)
        out.kv("cy2", ok)
    elif args.which == "cy5":
        ok = cy5_check(L)
        out.kv("cy5", ok)
    else:
        reports = verify_identities(L, args.order)
        for r in reports:
            if out.machine:
                v = "inf" if r.residual_valuation == float("inf") else r.residual_valuation
                out.line(f"{r.ident} {_flat(r.passed)} {v}")
            else:
                out.line(str(r))
        ok = all(r.passed for r in reports)
        out.kv("identities", ok)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_pullback(args, out: Output) -> int:
    out.operator(yang_pullback(resolve_operator(args.operator)))
    return EXIT_OK


def cmd_lift(args, out: Output) -> int:
    out.operator(wronskian_lift(resolve_operator(args.operator)))
    return EXIT_OK


def cmd_exterior(args, out: Output) -> int:
    try:
        idx = tuple(int(t) for t in args.indices.split(","))
    except ValueError:
        raise DomainError(f"bad index list {args.indices!r}") from None
    E = exterior_power_operator(resolve_operator(args.operator), idx)
    out.operator(E)
    if not out.machine:
        out.kv("order", E.order)
        out.kv("degree", E.degree)
    return EXIT_OK


def cmd_hadamard(args, out: Output) -> int:
    lname, lop = _second_order_or_operator(args.left)
    rname, rop = _second_order_or_operator(args.right)
    if lname and rname:
        try:
            out.operator(hadamard_product(lname, rname))
            return EXIT_OK
        except DomainError:
            pass
    from .families import second_order

    fam = HadamardFamily(lop or second_order(lname), rop or second_order(rname))
    need = (fam.k + 1) * (args.dmax + 1) + 10
    seq = fam.sequence(need)
    L = series_annihilator(seq, fam.k, args.dmax)
    if L is None:
        raise StructuralError(f"no annihilator of order <= {fam.k} and degree <= {args.dmax}")
    out.operator(L)
    return EXIT_OK


def cmd_binomlift(args, out: Output) -> int:
    if args.name:
        if args.name not in BINOM_LIFT:
            raise NotFoundError(args.name, sorted(BINOM_LIFT))
        _, P, c = BINOM_LIFT[args.name]
    elif args.P is not None and args.c is not None:
        P, c = _poly_T(args.P), _rational(args.c)
    else:
        raise DomainError("give a table name or both --P and --c")
    out.operator(binom_lift_third(P, c))
    return EXIT_OK


def cmd_hyper5(args, out: Output) -> int:
    spec = HypergeometricQuinticSpec.from_a(_rational(args.a2), _rational(args.a4), _rational(args.c))
    L = hypergeometric_quintic(spec)
    out.operator(L)
    if args.pullback:
        out.operator(yang_pullback(L), "pullback")
    return EXIT_OK


def cmd_closedform(args, out: Output) -> int:
    out.operator(pullback_closed_form(_rational(args.alpha), _rational(args.beta), _rational(args.c)))
    return EXIT_OK


def cmd_equiv(args, out: Output) -> int:
    A, B = resolve_operator(args.A), resolve_operator(args.B)
    ok = equivalent_k(A, B, args.order, args.twist)
    out.kv("equivalent", ok)
    if not ok and args.twist == 1 and equivalent_k(A, B, args.order, -1):
        out.kv("equivalent_twisted", True, "equivalent after q -> -q")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_transform(args, out: Output) -> int:
    f, g = equivalence_transformation(resolve_operator(args.A), resolve_operator(args.B), args.order)
    out.series("f", f.coefficients(args.order))
    out.series("g", g.coefficients(args.order))
    return EXIT_OK


def cmd_de2diff(args, out: Output) -> int:
    R = de_to_diff(resolve_operator(args.operator))
    out.line(render_difference(R, "machine" if out.machine else "text"))
    return EXIT_OK


def cmd_diff2de(args, out: Output) -> int:
    out.operator(diff_to_de(resolve_difference(args.operator)))
    return EXIT_OK


def cmd_enumerate(args, out: Output) -> int:
    R = resolve_difference(args.operator)
    initial = [_rational(t) for t in args.initial.split(",")] if args.initial else [Fraction(1)]
    out.series("A", holonomic_enumerate(R, initial, args.n), "A_n")
    return EXIT_OK


def cmd_factor(args, out: Output) -> int:
    L = resolve_operator(args.operator)
    terms = (args.kmax + 1) * (args.dmax + 1) + 10
    try:
        coeffs = frobenius_basis(L, terms).y0.coefficients(terms)
    except PreconditionError:
        # not MUM: fall back to the power series solution through the recursion
        coeffs = holonomic_enumerate(de_to_diff(L), [1], terms - 1)
    R = series_annihilator(coeffs, args.kmax, args.dmax)
    if R is None:
        out.kv("factor", "none")
        return EXIT_FAIL
    div = weyl_right_divide(L, R)
    out.operator(R, "factor")
    out.kv("exact", div.exact, "right division exact")
    if div.exact and div.quotient_theta is not None:
        out.operator(div.quotient_theta, "quotient")
    return EXIT_OK if div.exact else EXIT_FAIL


def _parse_q0(arg: str):
    toks = arg.split()
    if len(toks) == 3 and all(t.lstrip("-").isdigit() for t in toks):
        a, b, c = (int(t) for t in toks)
        return Polynomial([c, b, a], "n")
    if "n" in arg and not any(ch in arg for ch in "xTN"):
        return _poly_T(arg.replace("n", "T")).with_var("n")
    return None


def cmd_superseek(args, out: Output) -> int:
    q0 = _parse_q0(args.source)
    sig = superseeker_signature(q0 if q0 is not None else resolve_operator(args.source))
    ids = superseeker_lookup(sig)
    out.kv("Q0", format_poly(sig.Q0, "n"))
    out.kv("D", sig.D)
    out.kv("key", list(sig.key))
    out.kv("ids", ids or ["none"])
    return EXIT_OK if ids else EXIT_FAIL


def _entry_flags(e) -> list[str]:
    return [f for f, on in (("corrected", e.corrected), ("excluded", e.excluded)) if on]


def cmd_catalog(args, out: Output) -> int:
    c = cat.default_catalog()
    if args.action == "list":
        for ident in c.ids():
            e = c.entries[ident]
            extra = " ".join(e.tags + _entry_flags(e))
            out.line(f"{ident} {extra}".rstrip() if out.machine else f"{ident:24s} {extra}".rstrip())
        if args.rows:
            for row in c.rows:
                out.line(f"{row.id} {' '.join(row.ids)}")
        return EXIT_OK
    if args.action == "show":
        if not args.id:
            raise DomainError("catalog show needs an id")
        e = c.get(args.id)
        out.kv("id", e.id)
        if e.aliases:
            out.kv("aliases", e.aliases)
        out.kv("source", e.source or "-")
        out.kv("tags", e.tags or ["-"])
        out.kv("flags", _entry_flags(e) or ["-"])
        if e.Q0 is not None:
            out.kv("Q0", format_poly(e.Q0, "n"))
        if e.printed:
            out.kv("printed", e.printed)
        if e.notes:
            out.kv("notes", e.notes)
        if e.operator is not None:
            out.operator(e.operator)
        return EXIT_OK
    return _verify_all(c, out)


def verify_entry(e) -> dict[str, bool]:
    L = e.operator
    res = {"roundtrip": parse_operator(render_operator(L, "theta")) == L.canonical()
           and parse_operator(render_operator(L, "machine")) == L.canonical()}
    res["mum"] = mum_check(L)
    if L.order == 4 and not e.excluded and "factorable" not in e.tags:
        res["cy2"] = cy2_check(L)
    return res


def _verify_all(c, out: Output) -> int:
    failed = 0
    for ident in c.ids():
        e = c.entries[ident]
        if e.operator is None:
            continue
        res = verify_entry(e)
        bad = [k for k, v in res.items() if not v]
        tolerated = e.excluded and bad and set(bad) <= {"mum", "cy2"}
        status = "pass" if not bad else "excluded" if tolerated else "fail"
        if status == "fail":
            failed += 1
        detail = " ".join(f"{k}={_flat(v)}" for k, v in res.items())
        out.line(f"{ident} {status} {detail}")
    for row in c.rows:
        if row.garbled or row.Q0 is None:
            continue
        D = superseeker_signature(row.Q0).D
        if D != row.printed_D or row.D_text_value not in (None, D):
            status = "erratum" if row.erratum else "fail"
            failed += status == "fail"
            out.line(f"{row.id} {status} printed_D={row.printed_D} computed_D={D}")
    out.kv("failures", failed)
    return EXIT_OK if not failed else EXIT_FAIL


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS so a subcommand-level default never masks a global --format
    common.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS)
    ordered = argparse.ArgumentParser(add_help=False)
    ordered.add_argument("--order", "-M", type=int, default=None, help=f"series order (default ${ORDER_ENV} or 12)")

    p = argparse.ArgumentParser(prog="cy", description="Calabi-Yau differential operator toolkit")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, *parents, operand="operator"):
        sp = sub.add_parser(name, help=help_text, parents=[common, *parents])
        if operand:
            sp.add_argument(operand, help="inline text, file path, '-' or catalog id")
        sp.set_defaults(func=func)
        return sp

    add("parse", cmd_parse, "parse and canonicalize an operator")
    add("render", cmd_render, "print an operator").add_argument("--style", choices=("theta", "machine"))
    add("frobenius", cmd_frobenius, "Frobenius basis at x = 0", ordered)
    add("mirror", cmd_mirror, "mirror map", ordered)
    add("yukawa", cmd_yukawa, "Yukawa coupling K(q)", ordered)
    add("instantons", cmd_instantons, "instanton numbers", ordered)
    sp = add("check", cmd_check, "structural checks", ordered, operand=None)
    sp.add_argument("which", choices=("mum", "cy2", "cy5", "identities"))
    sp.add_argument("operator")
    add("pullback", cmd_pullback, "fourth-order pullback of an order-5 operator")
    add("lift", cmd_lift, "order-5 Wronskian lift of an order-4 operator")
    add("exterior", cmd_exterior, "exterior power operator").add_argument("--indices", default="0,1,2")
    sp = add("hadamard", cmd_hadamard, "Hadamard product", operand=None)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--dmax", type=int, default=8)
    sp = add("binomlift", cmd_binomlift, "binomial lift of a third-order operator", operand=None)
    sp.add_argument("name", nargs="?", help=", ".join(BINOM_LIFT))
    sp.add_argument("--P", help="quadratic in T")
    sp.add_argument("--c")
    sp = add("hyper5", cmd_hyper5, "hypergeometric quintic", operand=None)
    for opt in ("--a2", "--a4", "--c"):
        sp.add_argument(opt, required=True)
    sp.add_argument("--pullback", action="store_true")
    sp = add("closedform", cmd_closedform, "closed-form fourth-order pullback", operand=None)
    for opt in ("--alpha", "--beta", "--c"):
        sp.add_argument(opt, required=True)
    for name, func, help_text in (("equiv", cmd_equiv, "compare Yukawa couplings"),
                                  ("transform", cmd_transform, "transformation between two operators")):
        sp = add(name, func, help_text, ordered, operand=None)
        sp.add_argument("A")
        sp.add_argument("B")
        if name == "equiv":
            sp.add_argument("--twist", type=int, choices=(1, -1), default=1)
    add("de2diff", cmd_de2diff, "theta operator to recursion")
    add("diff2de", cmd_diff2de, "recursion to theta operator")
    sp = add("enumerate", cmd_enumerate, "extend a recursive sequence")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--initial", help="comma separated A_0,A_1,...")
    sp = add("factor", cmd_factor, "find a right factor by series fitting")
    sp.add_argument("--kmax", type=int, default=4)
    sp.add_argument("--dmax", type=int, default=4)
    add("superseek", cmd_superseek, "quadratic signature lookup", operand="source")
    sp = add("catalog", cmd_catalog, "inspect the catalog", operand=None)
    sp.add_argument("action", choices=("list", "show", "verify-all"))
    sp.add_argument("id", nargs="?")
    sp.add_argument("--rows", action="store_true", help="also list signature rows")
    return p


def _exit_code(err: CykitError) -> int:
    if isinstance(err, (OperatorSyntaxError, NotFoundError)):
        return EXIT_USAGE
    if isinstance(err, (InconsistencyError, StructuralError)):
        return EXIT_INCONSISTENT
    if isinstance(err, (PreconditionError, DomainError, SignatureError, EnumerationError)):
        return EXIT_PRECONDITION
    return EXIT_INCONSISTENT


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = Output(args.format)
    try:
        if getattr(args, "order", "absent") is None:
            args.order = default_order()
        return args.func(args, out)
    except CykitError as err:
        print(f"cy: error: {err}", file=sys.stderr)
        return _exit_code(err)
    except (ValueError, ZeroDivisionError) as err:
        print(f"cy: error: {err}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
