"""Operator text grammar and renderers.

Grammar (``T`` is theta; no implicit multiplication)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'x' | 'T' | '(' expr ')'

Products are taken in the Weyl algebra, so ``T*x`` is ``x*(T+1)``.  Division
is only allowed by nonzero constants, which is how rationals ``p/q`` are
written.  A text starting with ``CYOP`` is read as a machine record.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import OperatorSyntaxError
from .exact import Polynomial, format_coeff, format_poly
from .opalg import ThetaOperator, theta_poly

MACHINE_VERSION = 1

_TOKEN = re.compile(r"\s*(?:(\d+)|(theta|θ|[xTz])|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise OperatorSyntaxError(f"unexpected character {text[pos]!r}", pos,
                                      ["number", "x", "T", "operator", "parenthesis"])
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            name = m.group(2)
            toks.append(("sym", "T" if name in ("theta", "θ") else name, start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise OperatorSyntaxError(f"unexpected {self._describe(t)}", t[2], [repr(op)])
        return t

    @staticmethod
    def _describe(t):
        if t[0] == "end":
            return "end of input"
        return repr(str(t[1]))

    def parse(self) -> ThetaOperator:
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise OperatorSyntaxError(f"unexpected {self._describe(t)}", t[2], ["'+'", "'-'", "'*'", "end of input"])
        return e

    def expr(self):
        acc = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "*/":
                self.take()
                rhs_tok = self.peek()
                rhs = self.unary()
                if t[1] == "*":
                    acc = acc * rhs
                else:
                    c = _as_constant(rhs)
                    if c is None:
                        raise OperatorSyntaxError("division by a non-constant is not polynomial",
                                                  rhs_tok[2], ["nonzero constant divisor"])
                    if c == 0:
                        raise OperatorSyntaxError("division by zero", rhs_tok[2], ["nonzero constant divisor"])
                    acc = acc * (1 / c)
            else:
                return acc

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] == "op" and e[1] == "(":
                inner = self.take()
                if inner[0] != "int":
                    raise OperatorSyntaxError(f"unexpected {self._describe(inner)}", inner[2], ["integer exponent"])
                self.expect_op(")")
                e = inner
            if e[0] != "int":
                raise OperatorSyntaxError(f"unexpected {self._describe(e)}", e[2], ["integer exponent"])
            return base ** e[1]
        return base

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return ThetaOperator.scalar(t[1])
        if t[0] == "sym":
            if t[1] == "T":
                return ThetaOperator([theta_poly([0, 1])])
            return ThetaOperator.x()
        if t[0] == "op" and t[1] == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise OperatorSyntaxError(f"unexpected {self._describe(t)}", t[2], ["number", "x", "T", "'('"])


def _as_constant(L: ThetaOperator):
    if not L.polys:
        return Fraction(0)
    if L.degree == 0 and L.order == 0:
        return L.polys[0][0]
    return None


def parse_expression(text: str) -> ThetaOperator:
    """Parse without canonicalizing (keeps the exact scalar normalization)."""
    return _Parser(text).parse()


def parse_operator(text: str) -> ThetaOperator:
    """Parse theta-grammar text or a machine record into a canonical operator."""
    stripped = text.strip()
    if stripped.startswith("CYOP"):
        return parse_machine(stripped).canonical()
    return parse_expression(text).canonical()


def parse_machine(text: str) -> ThetaOperator:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip() and not ln.strip().startswith("#")]
    offset = 0
    if not lines or not lines[0].startswith("CYOP"):
        raise OperatorSyntaxError("machine record must start with 'CYOP'", 0, ["CYOP"])
    head = lines[0].split()
    if len(head) != 2 or head[1] != str(MACHINE_VERSION):
        raise OperatorSyntaxError(f"unsupported machine record header {lines[0]!r}", 0, [f"CYOP {MACHINE_VERSION}"])
    offset += len(lines[0]) + 1
    m = re.fullmatch(r"order\s+(\d+)\s+degree\s+(-?\d+)", lines[1]) if len(lines) > 1 else None
    if not m:
        raise OperatorSyntaxError("missing 'order K degree D' line", offset, ["order K degree D"])
    k, d = int(m.group(1)), int(m.group(2))
    rows = lines[2:]
    if len(rows) != d + 1:
        raise OperatorSyntaxError(f"expected {d + 1} coefficient lines, found {len(rows)}", offset, [])
    polys = []
    for row in rows:
        try:
            coeffs = [Fraction(tok) for tok in row.split()]
        except ValueError:
            raise OperatorSyntaxError(f"bad coefficient line {row!r}", offset, ["rational numbers"]) from None
        polys.append(theta_poly(coeffs))
    L = ThetaOperator(polys)
    if L.order != k or L.degree != d:
        raise OperatorSyntaxError(f"header says order {k} degree {d}, data has order {L.order} degree {L.degree}",
                                  offset, [])
    return L


def _factor_sign_content(p: Polynomial) -> tuple[int, Fraction, Polynomial]:
    content, prim = p.primitive()
    sign = 1 if content > 0 else -1
    return sign, abs(content), prim


def render_theta(L: ThetaOperator) -> str:
    if not L.polys:
        return "0"
    pieces: list[tuple[int, str]] = []
    for i, p in enumerate(L.polys):
        if not p:
            continue
        sign, content, prim = _factor_sign_content(p)
        factors = []
        if content != 1:
            factors.append(format_coeff(content))
        if i == 1:
            factors.append("x")
        elif i > 1:
            factors.append(f"x^{i}")
        if prim != Polynomial([1]):
            ps = format_poly(prim, "T")
            multi = sum(1 for c in prim.coeffs if c) > 1
            factors.append(f"({ps})" if multi and (factors or sign < 0) else ps)
        if not factors:
            factors.append("1")
        pieces.append((sign, "*".join(factors)))
    out = ("-" if pieces[0][0] < 0 else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += (" - " if sign < 0 else " + ") + body
    return out


def render_machine(L: ThetaOperator) -> str:
    k = max(L.order, 0)
    lines = [f"CYOP {MACHINE_VERSION}", f"order {L.order} degree {L.degree}"]
    for p in L.polys:
        lines.append(" ".join(format_coeff(p[j]) for j in range(k + 1)))
    return "\n".join(lines)


def render_operator(L: ThetaOperator, style: str = "theta") -> str:
    if style == "theta":
        return render_theta(L)
    if style == "machine":
        return render_machine(L)
    raise ValueError(f"unknown style {style!r}")


# difference operators: ``n`` is the index and ``N`` the forward shift, N*n = (n+1)*N

def parse_difference(text: str):
    """Parse ``sum q_i(n)*N^i`` (or a ``CYDIFF 1`` record) into a DifferenceOperator.

    The shift algebra has the same commutation rule as (T, x), so the
    expression is read by the theta parser under the renaming n -> T, N -> x.
    """
    from .diffops import DifferenceOperator

    stripped = text.strip()
    if stripped.startswith("CYDIFF"):
        return _parse_difference_record(stripped)
    bad = re.search(r"[xTzθ]|theta", text)
    if bad:
        raise OperatorSyntaxError(f"unexpected symbol {bad.group(0)!r} in a difference operator", bad.start(),
                                  ["n", "N"])
    L = parse_expression(text.replace("N", "x").replace("n", "T"))
    return DifferenceOperator([p.shift(-i).with_var("n") for i, p in enumerate(L.polys)])


def _parse_difference_record(text: str):
    from .diffops import DifferenceOperator

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if lines[0].split() != ["CYDIFF", str(MACHINE_VERSION)]:
        raise OperatorSyntaxError(f"unsupported record header {lines[0]!r}", 0, [f"CYDIFF {MACHINE_VERSION}"])
    m = re.fullmatch(r"order\s+(\d+)", lines[1]) if len(lines) > 1 else None
    if not m or len(lines) != int(m.group(1)) + 3:
        raise OperatorSyntaxError("malformed difference record", len(lines[0]) + 1, ["order R", "R+1 rows"])
    try:
        return DifferenceOperator([Polynomial([Fraction(t) for t in row.split()], "n") for row in lines[2:]])
    except ValueError:
        raise OperatorSyntaxError("bad coefficient row", len(lines[0]) + 1, ["rational numbers"]) from None


def render_difference(R, style: str = "text") -> str:
    if style == "machine":
        width = max(q.degree for q in R.coeffs) + 1
        rows = [" ".join(format_coeff(q[j]) for j in range(width)) for q in R.coeffs]
        return "\n".join([f"CYDIFF {MACHINE_VERSION}", f"order {R.order}", *rows])
    terms = []
    for i, q in enumerate(R.coeffs):
        if not q:
            continue
        shift = "" if i == 0 else "*N" if i == 1 else f"*N^{i}"
        terms.append(f"({format_poly(q, 'n')}){shift}")
    return " + ".join(terms)
