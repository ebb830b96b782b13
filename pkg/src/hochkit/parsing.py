"""Text format for weighted-homogeneous algebras.

Grammar (statements end with ``;``, ``#`` starts a comment)::

    var NAME weight INT ;
    rel POLY ;

    POLY   := ["-"|"+"] term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" INT)?
    atom   := NAME | INT ["/" INT] | "(" POLY ")"
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .gca import Algebra, Element, PresentationError, Variable
from .resolvent import AffineAlgebra


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9']*)|(?P<op>[-+*^/();]))")


@dataclass
class Token:
    kind: str          # "num", "name", "op", "end"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    for lineno, raw in enumerate(text.splitlines() or [""], start=1):
        line = raw.split("#", 1)[0]
        pos = 0
        while True:
            while pos < len(line) and line[pos].isspace():
                pos += 1
            if pos >= len(line):
                break
            m = _TOKEN.match(line, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
            kind = m.lastgroup
            start = m.start(kind)
            tokens.append(Token(kind, m.group(kind), lineno, start + 1))
            pos = m.end()
    last_line = max(1, len(text.splitlines()))
    tokens.append(Token("end", "", last_line, len((text.splitlines() or [""])[-1]) + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], alg: Algebra | None):
        self.toks = tokens
        self.i = 0
        self.alg = alg

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column)

    def next(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "name") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            found = self.tok.text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}")
        return self.next()

    def integer(self) -> int:
        if self.tok.kind != "num":
            self.fail(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        return int(self.next().text)

    # -- polynomials -----------------------------------------------------------

    def poly(self) -> Element:
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        total = self.term() * sign
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.next().text
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self) -> Element:
        value = self.factor()
        while self.accept("*"):
            value = value * self.factor()
        return value

    def factor(self) -> Element:
        base = self.atom()
        if self.accept("^"):
            base = base ** self.integer()
        return base

    def atom(self) -> Element:
        tok = self.tok
        if tok.kind == "num":
            num = int(self.next().text)
            if self.accept("/"):
                den_tok = self.tok
                den = self.integer()
                if den == 0:
                    self.fail("division by zero", den_tok)
                return self.alg.scalar(Fraction(num, den))
            return self.alg.scalar(num)
        if tok.kind == "name":
            if tok.text not in self.alg.index:
                self.fail(f"unknown variable {tok.text!r}")
            self.next()
            return self.alg.gen(tok.text)
        if self.accept("("):
            inner = self.poly()
            self.expect(")")
            return inner
        self.fail(f"unexpected {tok.text or 'end of input'!r}")


def parse_polynomial(text: str, alg: Algebra) -> Element:
    """Parse a polynomial in the variables of ``alg``."""
    p = _Parser(tokenize(text), alg)
    value = p.poly()
    if p.tok.kind != "end":
        p.fail(f"unexpected {p.tok.text!r} after expression")
    return value


def parse_algebra(text: str) -> AffineAlgebra:
    """Parse ``var``/``rel`` statements into an AffineAlgebra."""
    toks = tokenize(text)
    p = _Parser(toks, None)
    variables: list[Variable] = []
    rel_spans: list[tuple[int, int, Token]] = []
    while p.tok.kind != "end":
        kw = p.tok
        if p.accept("var"):
            name_tok = p.tok
            if name_tok.kind != "name":
                p.fail("expected a variable name")
            p.next()
            if any(v.name == name_tok.text for v in variables):
                p.fail(f"variable {name_tok.text!r} declared twice", name_tok)
            p.expect("weight")
            neg = p.accept("-")
            wt_tok = p.tok
            weight = p.integer() * (-1 if neg else 1)
            if weight <= 0:
                p.fail(f"variable {name_tok.text!r} needs a positive weight, got {weight}", wt_tok)
            p.expect(";")
            variables.append(Variable(name_tok.text, 0, weight))
        elif p.accept("rel"):
            start = p.i
            while p.tok.kind != "end" and p.tok.text != ";":
                p.next()
            rel_spans.append((start, p.i, kw))
            p.expect(";")
        else:
            p.fail(f"expected 'var' or 'rel', found {kw.text!r}")
    if not variables:
        raise ParseError("no variables declared", 1, 1)
    ring = Algebra(variables, name="P")
    relations = []
    for k, (start, stop, kw) in enumerate(rel_spans, start=1):
        sub = _Parser(toks[start:stop] + [Token("end", "", kw.line, kw.column)], ring)
        if sub.tok.kind == "end":
            raise ParseError(f"relation {k} is empty", kw.line, kw.column)
        f = sub.poly()
        if sub.tok.kind != "end":
            sub.fail(f"unexpected {sub.tok.text!r} in relation {k}")
        if not f:
            raise ParseError(f"relation {k} is zero", kw.line, kw.column)
        weights = sorted({w for _, w in f.bidegrees()})
        if len(weights) != 1:
            raise ParseError(f"relation {k} ({f}) is not weight-homogeneous: weights {weights}",
                             kw.line, kw.column)
        relations.append(f)
    try:
        return AffineAlgebra(ring, relations)
    except PresentationError as exc:  # pragma: no cover - guarded above
        raise ParseError(str(exc), 1, 1) from None


def format_algebra(A: AffineAlgebra) -> str:
    lines = [f"var {v.name} weight {v.weight};" for v in A.ring.variables]
    lines += [f"rel {f};" for f in A.relations]
    return "\n".join(lines) + "\n"


def same_presentation(A: AffineAlgebra, B: AffineAlgebra) -> bool:
    """Identical variable tables and identical relation lists."""
    va = [(v.name, v.degree, v.weight) for v in A.ring.variables]
    vb = [(v.name, v.degree, v.weight) for v in B.ring.variables]
    if va != vb or len(A.relations) != len(B.relations):
        return False
    return all(f.terms == g.terms for f, g in zip(A.relations, B.relations))
