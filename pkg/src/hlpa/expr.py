"""Parser for algebra expressions such as ``2/3 * h[1,2] - h*[1,2] * v1``.

Grammar (juxtaposition also multiplies, so printed elements parse back)::

    expr      := ['-'] term (('+' | '-') term)*
    term      := factor (['*'] factor)*
    factor    := scalar | generator | '(' expr ')'
    scalar    := INT ['/' INT]
    generator := VERTEX | EDGE '[' INT ',' INT ']' | EDGE '*[' INT ',' INT ']'

A term without any generator denotes that multiple of the identity (the sum
of all vertices).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import AlgebraElement, combine, multiply
from .errors import ParseError
from .fields import QQ, Field
from .hypergraph import Hypergraph, Letter

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/()\[\],]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", 1, col)
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(_Tok("end", "", n + 1))
    return out


class _Parser:
    def __init__(self, text: str, H: Hypergraph, field: Field) -> None:
        self.toks = _tokenize(text)
        self.k = 0
        self.H = H
        self.field = field

    @property
    def cur(self) -> _Tok:
        return self.toks[self.k]

    def peek(self, d: int = 1) -> _Tok:
        return self.toks[min(self.k + d, len(self.toks) - 1)]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.cur
        return ParseError(msg, 1, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.cur
        if tok.text != text or tok.kind == "end":
            raise self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        self.k += 1
        return tok

    def integer(self) -> int:
        tok = self.cur
        if tok.kind != "int":
            raise self.error(f"expected an integer, found {tok.text or 'end of input'!r}")
        self.k += 1
        return int(tok.text)

    # values are either ("s", scalar) or ("e", AlgebraElement)

    def to_element(self, val) -> AlgebraElement:
        if val[0] == "e":
            return val[1]
        return AlgebraElement.unit(self.H, self.field).scale(val[1])

    def add(self, x, y, sign: int):
        if x[0] == "s" and y[0] == "s":
            return ("s", x[1] + sign * y[1])
        return ("e", combine(1, self.to_element(x), sign, self.to_element(y)))

    def mul(self, x, y):
        if x[0] == "s" and y[0] == "s":
            return ("s", x[1] * y[1])
        if x[0] == "s":
            return ("e", y[1].scale(x[1]))
        if y[0] == "s":
            return ("e", x[1].scale(y[1]))
        return ("e", multiply(x[1], y[1]))

    def parse(self) -> AlgebraElement:
        val = self.expr()
        if self.cur.kind != "end":
            raise self.error(f"unexpected {self.cur.text!r}")
        return self.to_element(val)

    def expr(self):
        if self.cur.text == "-" and self.cur.kind == "op":
            self.k += 1
            val = self.mul(("s", self.field(-1)), self.term())
        else:
            val = self.term()
        while self.cur.kind == "op" and self.cur.text in "+-":
            sign = 1 if self.cur.text == "+" else -1
            self.k += 1
            val = self.add(val, self.term(), sign)
        return val

    def starts_factor(self) -> bool:
        t = self.cur
        return t.kind in ("int", "name") or (t.kind == "op" and t.text == "(")

    def term(self):
        val = self.factor()
        while True:
            if self.cur.kind == "op" and self.cur.text == "*":
                self.k += 1
                if not self.starts_factor():
                    raise self.error("binary '*' needs a factor on its right")
                val = self.mul(val, self.factor())
            elif self.starts_factor():
                val = self.mul(val, self.factor())
            else:
                return val

    def factor(self):
        tok = self.cur
        if tok.kind == "int":
            num = self.integer()
            if self.cur.text == "/" and self.cur.kind == "op":
                self.k += 1
                den_tok = self.cur
                den = self.integer()
                if den == 0:
                    raise self.error("zero denominator", den_tok)
                try:
                    return ("s", self.field.fraction(num, den))
                except Exception as exc:
                    raise self.error(str(exc), den_tok) from None
            return ("s", self.field(num))
        if tok.kind == "name":
            return ("e", self.generator())
        if tok.text == "(":
            self.k += 1
            val = self.expr()
            self.expect(")")
            return val
        raise self.error(f"expected a factor, found {tok.text or 'end of input'!r}")

    def generator(self) -> AlgebraElement:
        tok = self.cur
        name = tok.text
        self.k += 1
        H = self.H
        if name in H.vertex_set:
            return AlgebraElement.vertex(H, name, self.field)
        if name not in H.edge_map:
            raise self.error(f"unknown generator {name!r}", tok)
        star = False
        if self.cur.text == "*" and self.peek().text == "[":
            star = True
            self.k += 1
        self.expect("[")
        itok = self.cur
        i = self.integer()
        self.expect(",")
        jtok = self.cur
        j = self.integer()
        self.expect("]")
        e = H.edge_map[name]
        if not 1 <= i <= len(e.source):
            raise self.error(f"source index {i} out of range 1..{len(e.source)} for {name!r}", itok)
        if not 1 <= j <= len(e.range):
            raise self.error(f"range index {j} out of range 1..{len(e.range)} for {name!r}", jtok)
        return AlgebraElement.word(H, (Letter(name, i, j, star),), self.field)


def parse_expression(text: str, H: Hypergraph, field: Field = QQ) -> AlgebraElement:
    """Parse and normalize an expression over the generators of ``H``."""
    return _Parser(text, H, field).parse()
