"""Text form of graded polynomials.

Grammar (whitespace is insignificant)::

    poly    := [sign] mono (sign mono)*
    mono    := [coef] factor | coef          # a bare coefficient must be 0
    coef    := INT ['/' INT]
    factor  := VAR | '(' poly ['*' poly] ')'
    VAR     := 'x' DIGITS ':(' BIT (',' BIT)* ')'

Every product needs its own parentheses, so ``(a * b * c)`` is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .free import Mul, Poly, Term, Var
from .group import GroupElem

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<var>x(?P<vid>\d+)\s*:\s*\((?P<bits>\s*[01](?:\s*,\s*[01])*\s*)\))
  | (?P<ungraded>x\d+)
  | (?P<num>\d+)
  | (?P<op>[-+*/()])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind == "ungraded":
            raise ParseError(f"variable {m.group()} has no grade (write e.g. {m.group()}:(1,0))", text, pos)
        if kind == "var":
            bits = tuple(int(b) for b in m.group("bits").replace(" ", "").split(","))
            if len(bits) > 3:
                raise ParseError("grades live in Z2^k with k <= 3", text, pos)
            toks.append(("var", Var(int(m.group("vid")), GroupElem(bits)), pos))
        elif kind == "num":
            toks.append(("num", int(m.group()), pos))
        elif kind == "op":
            toks.append((m.group(), None, pos))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.k = None
        self.grades: dict = {}

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}, found {self.describe(tok)}")
        self.i += 1
        return tok

    def describe(self, tok):
        return "end of input" if tok[0] == "end" else repr(self.text[tok[2]:tok[2] + 12].split()[0])

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def poly(self) -> Poly:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        out = self.mono().scale(sign)
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            out = out + self.mono().scale(sign)
        return out

    def coef(self) -> Fraction:
        num = self.take("num")
        if self.peek()[0] == "/":
            self.take()
            den_tok = self.peek()
            if den_tok[0] != "num":
                self.fail("malformed rational: denominator expected")
            den = self.take()[1]
            if den == 0:
                self.fail("malformed rational: zero denominator", den_tok)
            return Fraction(num[1], den)
        return Fraction(num[1])

    def mono(self) -> Poly:
        c = Fraction(1)
        if self.peek()[0] == "num":
            tok = self.peek()
            c = self.coef()
            if self.peek()[0] not in ("var", "("):
                if c != 0:
                    self.fail("constant terms are not allowed (the free algebra has no unit)", tok)
                return Poly()
        return self.factor().scale(c)

    def factor(self) -> Poly:
        tok = self.peek()
        if tok[0] == "var":
            self.take()
            v = tok[1]
            if self.k is None:
                self.k = v.grade.k
            elif v.grade.k != self.k:
                self.fail(f"grade {v.grade} is not in Z2^{self.k}", tok)
            if self.grades.setdefault(v.id, v.grade) != v.grade:
                self.fail(f"x{v.id} already has grade {self.grades[v.id]}", tok)
            return Poly.from_term(v)
        if tok[0] == "(":
            self.take()
            left = self.poly()
            if self.peek()[0] == "*":
                self.take()
                right = self.poly()
                if self.peek()[0] == "*":
                    self.fail("products are nonassociative: parenthesize every product of two factors")
                self.take(")")
                return left * right
            self.take(")")
            return left
        self.fail(f"expected a variable or '(', found {self.describe(tok)}")

    def parse(self) -> Poly:
        out = self.poly()
        tok = self.peek()
        if tok[0] == "*":
            self.fail("products must be parenthesized: write (a * b)")
        if tok[0] != "end":
            self.fail(f"unexpected {self.describe(tok)}")
        return out


def parse(text: str) -> Poly:
    return _Parser(text).parse()


def parse_term(text: str) -> Term:
    f = parse(text)
    ms = f.monomials()
    if len(ms) != 1 or ms[0][0] != 1:
        raise ValueError(f"not a single monomial: {text!r}")
    return ms[0][1]


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.id}:{t.grade}"
    return f"({format_term(t.left)} * {format_term(t.right)})"


def _coef_prefix(c: Fraction) -> str:
    c = abs(c)
    return "" if c == 1 else f"{c} "


def format_poly(f: Poly) -> str:
    ms = f.monomials()
    if not ms:
        return "0"
    parts = []
    for n, (c, t) in enumerate(ms):
        body = _coef_prefix(c) + format_term(t)
        if n == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def serialize(f: Poly) -> str:
    """One signed monomial per line, canonical order; ``parse`` reads it back."""
    ms = f.monomials()
    if not ms:
        return "0\n"
    return "".join(("-" if c < 0 else "+") + _coef_prefix(c) + format_term(t) + "\n" for c, t in ms)
