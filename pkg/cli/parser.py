"""
Polynomial text parser.

Grammar:
    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | 'x' | 'y' | 'z' | '(' expr ')'
    NUMBER := INT ('/' INT)?

Field headers read "Q" or "Q(zeta N)", optionally prefixed by "field".
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from algebra.curves import BivarCurve
from algebra.fields import FieldDescriptor, Q, Scalar
from algebra.poly import Poly
from errors import ParseError, ResourceCapExceeded
from settings import ALGEBRA_CAPS

Terms = Dict[Tuple[int, int], Scalar]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<var>[xyz])|(?P<op>[-+*^()]))")
_FIELD = re.compile(r"^\s*(?:field\s+)?Q\s*(?:\(\s*zeta\s+(?P<order>\d+)\s*\))?\s*$")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            stripped = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + stripped]!r}", pos + stripped, text)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind).replace(" ", ""), start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def parse_field(text: str) -> FieldDescriptor:
    match = _FIELD.match(text)
    if not match:
        raise ParseError(f"unknown field header {text!r}", 0, text)
    if match.group("order") is None:
        return Q
    order = int(match.group("order"))
    if order < 1:
        raise ParseError("cyclotomic order must be positive", match.start("order"), text)
    return FieldDescriptor.cyclotomic(order)


class _Parser:
    def __init__(self, text: str, field: FieldDescriptor):
        self.text = text
        self.field = field
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def expect(self, text: str):
        if self.current.text != text:
            raise ParseError(f"expected {text!r}", self.current.position, self.text)
        self.advance()

    def parse(self) -> Terms:
        if self.current.kind == "end":
            raise ParseError("empty expression", 0, self.text)
        value = self.expr()
        if self.current.kind != "end":
            raise ParseError(f"unexpected {self.current.text!r}", self.current.position, self.text)
        return value

    # -- grammar ------------------------------------------------------------
    def expr(self) -> Terms:
        value = self.term()
        while self.current.text in ("+", "-"):
            sign = self.advance().text
            rhs = self.term()
            value = _add(value, rhs if sign == "+" else _scale(rhs, -self.field.one()))
        return value

    def term(self) -> Terms:
        value = self.unary()
        while self.current.text == "*":
            self.advance()
            value = _mul(value, self.unary(), self.field)
        return value

    def unary(self) -> Terms:
        if self.current.text == "-":
            self.advance()
            return _scale(self.unary(), -self.field.one())
        if self.current.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Terms:
        base = self.atom()
        if self.current.text != "^":
            return base
        self.advance()
        token = self.current
        if token.kind != "num" or "/" in token.text:
            raise ParseError("exponent must be a nonnegative integer", token.position, self.text)
        self.advance()
        exponent, cap = int(token.text), ALGEBRA_CAPS["degree_cap"]
        if exponent > cap:
            raise ResourceCapExceeded(f"exponent {exponent} at position {token.position} is above the degree cap",
                                      cap="degree_cap", limit=cap)
        result = {(0, 0): self.field.one()}
        for _ in range(exponent):
            result = _mul(result, base, self.field)
        return result

    def atom(self) -> Terms:
        token = self.current
        if token.kind == "num":
            self.advance()
            num, _, den = token.text.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", token.position, self.text)
            return _constant(self.field.scalar(Fraction(int(num), int(den or 1))))
        if token.kind == "var":
            self.advance()
            if token.text == "x":
                return {(1, 0): self.field.one()}
            if token.text == "y":
                return {(0, 1): self.field.one()}
            if self.field.is_rational:
                raise ParseError("z needs a cyclotomic field header", token.position, self.text)
            return _constant(self.field.gen())
        if token.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {token.text or 'end of input'!r}", token.position, self.text)


def _constant(c: Scalar) -> Terms:
    return {} if c.is_zero() else {(0, 0): c}


def _add(a: Terms, b: Terms) -> Terms:
    out = dict(a)
    for e, c in b.items():
        total = out.get(e, c - c) + c
        if total.is_zero():
            out.pop(e, None)
        else:
            out[e] = total
    return out


def _scale(a: Terms, c: Scalar) -> Terms:
    return {e: v * c for e, v in a.items()}


def _mul(a: Terms, b: Terms, field: FieldDescriptor) -> Terms:
    out: Terms = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            e = (i1 + i2, j1 + j2)
            out[e] = out.get(e, field.zero()) + c1 * c2
    return {e: c for e, c in out.items() if not c.is_zero()}


def parse_terms(text: str, field: FieldDescriptor = Q) -> Terms:
    return _Parser(text, field).parse()


def parse_poly(text: str, field: FieldDescriptor = Q) -> Union[Poly, BivarCurve]:
    """A Poly in x, or a BivarCurve when y occurs."""
    terms = parse_terms(text, field)
    if any(j for _, j in terms):
        return BivarCurve.from_terms(field, terms)
    degree = max((i for i, _ in terms), default=-1)
    return Poly(field, tuple(terms.get((i, 0), field.zero()) for i in range(degree + 1)))


def parse_univariate(text: str, field: FieldDescriptor = Q) -> Poly:
    result = parse_poly(text, field)
    if not isinstance(result, Poly):
        raise ParseError("expected a polynomial in x alone", text.find("y"), text)
    return result


def parse_curve(text: str, field: FieldDescriptor = Q) -> BivarCurve:
    return BivarCurve.from_terms(field, parse_terms(text, field))


def parse_scalar(text: str, field: FieldDescriptor = Q) -> Scalar:
    terms = parse_terms(text, field)
    if any(e != (0, 0) for e in terms):
        raise ParseError("expected a constant", 0, text)
    return terms.get((0, 0), field.zero())
