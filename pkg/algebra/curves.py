"""
Plane curves G(x, y) = 0 over an exact field, and resultant elimination.

Resultants go through sympy's dense multivariate layer over QQ. A
cyclotomic coefficient is lifted to a polynomial in an extra variable t,
the resultant is taken over Q[t, ...], and t is reduced modulo the
cyclotomic polynomial afterwards; the resultant is a polynomial in the
coefficients, so the reduction commutes with it.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from sympy.polys.densebasic import dmp_from_dict, dmp_to_dict
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dmp_resultant
from sympy.polys.sqfreetools import dmp_sqf_part

from algebra.fields import FieldDescriptor, Scalar, format_terms
from algebra.poly import Poly, poly_gcd, squarefree_part
from errors import FieldMismatch, InputError

logger = logging.getLogger(__name__)

Terms = Dict[Tuple[int, ...], Scalar]


def _clean(terms: Terms) -> Terms:
    return {e: c for e, c in terms.items() if not c.is_zero()}


def terms_mul(a: Terms, b: Terms, field: FieldDescriptor) -> Terms:
    out: Terms = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(i + j for i, j in zip(ea, eb))
            out[key] = out.get(key, field.zero()) + ca * cb
    return _clean(out)


def terms_pow(a: Terms, k: int, field: FieldDescriptor, nvars: int) -> Terms:
    result: Terms = {(0,) * nvars: field.one()}
    for _ in range(k):
        result = terms_mul(result, a, field)
    return result


def _degree_in(terms: Terms, index: int) -> int:
    return max((e[index] for e in terms), default=-1)


def eliminate(p: Terms, q: Terms, nvars: int, index: int, field: FieldDescriptor) -> Terms:
    """Resultant of p and q with respect to variable `index`; keys drop that slot."""
    p, q = _clean(p), _clean(q)
    if not p or not q:
        raise InputError("resultant of a zero polynomial")
    dp, dq = _degree_in(p, index), _degree_in(q, index)
    rest = [k for k in range(nvars) if k != index]
    if dp <= 0 and dq <= 0:
        raise InputError("both inputs are constant in the eliminated variable")
    if dp == 0:
        return {tuple(e[k] for k in rest): c for e, c in terms_pow(p, dq, field, nvars).items()}
    if dq == 0:
        return {tuple(e[k] for k in rest): c for e, c in terms_pow(q, dp, field, nvars).items()}

    if field.is_rational:
        u = nvars - 1

        def lift(terms: Terms) -> dict:
            return {(e[index],) + tuple(e[k] for k in rest): c.to_rational() for e, c in terms.items()}
    else:
        u = nvars

        def lift(terms: Terms) -> dict:
            out = {}
            for e, c in terms.items():
                for t_exp, value in enumerate(c.coeffs):
                    if value:
                        out[(e[index], t_exp) + tuple(e[k] for k in rest)] = value
            return out

    res = dmp_resultant(dmp_from_dict(lift(p), u, QQ), dmp_from_dict(lift(q), u, QQ), u, QQ)
    flat = dmp_to_dict(res, u - 1)
    if field.is_rational:
        return _clean({key: field.scalar(c) for key, c in flat.items()})
    vectors: Dict[Tuple[int, ...], list] = {}
    for key, c in flat.items():
        t_exp, rest_key = key[0], key[1:]
        vector = vectors.setdefault(rest_key, [])
        vector.extend([QQ.zero] * (t_exp + 1 - len(vector)))
        vector[t_exp] += c
    return _clean({key: Scalar.from_vector(field, vector) for key, vector in vectors.items()})


# -- bivariate polynomials as rows: H = sum_i rows[i](y) * x^i ----------------

def _rows(terms: Terms, field: FieldDescriptor) -> List[Poly]:
    width = _degree_in(terms, 0) + 1
    columns: List[Dict[int, Scalar]] = [dict() for _ in range(width)]
    for (i, j), c in terms.items():
        columns[i][j] = c
    rows = []
    for column in columns:
        top = max(column, default=-1)
        rows.append(Poly(field, tuple(column.get(j, field.zero()) for j in range(top + 1))))
    return rows


def _trim(rows: List[Poly]) -> List[Poly]:
    rows = list(rows)
    while rows and rows[-1].is_zero():
        rows.pop()
    return rows


def _unrows(rows: List[Poly]) -> Terms:
    return {(i, j): c for i, row in enumerate(rows) for j, c in enumerate(row.coeffs) if not c.is_zero()}


def _content(rows: List[Poly]) -> Poly:
    result = Poly.zero(rows[0].field)
    for row in rows:
        if not row.is_zero():
            result = poly_gcd(result, row) if not result.is_zero() else row.monic()
    return result


def _divide_rows(rows: List[Poly], divisor: Poly) -> List[Poly]:
    return [row.exact_div(divisor) for row in rows]


def _primitive(rows: List[Poly]) -> List[Poly]:
    return _divide_rows(rows, _content(rows))


def _prem(a: List[Poly], b: List[Poly]) -> List[Poly]:
    a, b = _trim(a), _trim(b)
    field = b[-1].field
    while a and len(a) >= len(b):
        shift = len(a) - len(b)
        lead_a, lead_b = a[-1], b[-1]
        scaled = [row * lead_b for row in a]
        for j, row in enumerate(b):
            scaled[j + shift] = scaled[j + shift] - row * lead_a
        a = _trim(scaled)
    return a or [Poly.zero(field)]


def _rows_gcd(a: List[Poly], b: List[Poly]) -> List[Poly]:
    common = poly_gcd(_content(a), _content(b))
    a, b = _primitive(_trim(a)), _primitive(_trim(b))
    if len(a) < len(b):
        a, b = b, a
    while _trim(b):
        r = _trim(_prem(a, b))
        a, b = b, (_primitive(r) if r else [])
    return [row * common for row in _primitive(a)]


def _rows_exact_div(a: List[Poly], b: List[Poly]) -> List[Poly]:
    a, b = _trim(a), _trim(b)
    field = b[-1].field
    quotient = [Poly.zero(field)] * max(len(a) - len(b) + 1, 1)
    while a and len(a) >= len(b):
        shift = len(a) - len(b)
        q = a[-1].exact_div(b[-1])
        if q is None:
            raise ArithmeticError("inexact bivariate division")
        quotient[shift] = q
        for j, row in enumerate(b):
            a[j + shift] = a[j + shift] - q * row
        a = _trim(a)
    if a:
        raise ArithmeticError("inexact bivariate division")
    return quotient


def bivariate_squarefree(terms: Terms, field: FieldDescriptor) -> Terms:
    """Squarefree part of a bivariate polynomial, up to a scalar."""
    if field.is_rational:
        dense = dmp_from_dict({e: c.to_rational() for e, c in terms.items()}, 1, QQ)
        return _clean({e: field.scalar(c) for e, c in dmp_to_dict(dmp_sqf_part(dense, 1, QQ), 1).items()})
    rows = _rows(terms, field)
    content = _content(rows)
    if len(_trim(rows)) <= 1:
        return _unrows([squarefree_part(content)])
    primitive = _divide_rows(rows, content)
    derivative = [row * i for i, row in enumerate(primitive)][1:]
    common = _rows_gcd(primitive, derivative)
    reduced = _rows_exact_div(primitive, common)
    return _unrows([row * squarefree_part(content) for row in reduced])


# -- curves -------------------------------------------------------------------

def _monomial_text(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


@dataclass(frozen=True, eq=False)
class BivarCurve:
    """Defining polynomial of a plane curve, scaled so its leading term is 1."""

    field: FieldDescriptor
    terms: Tuple[Tuple[Tuple[int, int], Scalar], ...]

    @classmethod
    def from_terms(cls, field: FieldDescriptor, terms: Dict[Tuple[int, int], object]) -> "BivarCurve":
        cleaned = _clean({e: field.scalar(c) for e, c in terms.items()})
        if not cleaned:
            raise InputError("the zero polynomial does not define a curve")
        if all(e == (0, 0) for e in cleaned):
            raise InputError("a nonzero constant does not define a curve")
        lead = cleaned[max(cleaned)]
        scale = lead.inverse()
        ordered = tuple(sorted(((e, c * scale) for e, c in cleaned.items()), key=lambda item: item[0], reverse=True))
        return cls(field, ordered)

    @classmethod
    def graph(cls, h: Poly) -> "BivarCurve":
        """y - h(x)."""
        terms = {(i, 0): -c for i, c in enumerate(h.coeffs)}
        terms[(0, 1)] = terms.get((0, 1), h.field.zero()) + h.field.one()
        return cls.from_terms(h.field, terms)

    @classmethod
    def graph_x(cls, h: Poly) -> "BivarCurve":
        """x - h(y)."""
        terms = {(0, j): -c for j, c in enumerate(h.coeffs)}
        terms[(1, 0)] = terms.get((1, 0), h.field.zero()) + h.field.one()
        return cls.from_terms(h.field, terms)

    @classmethod
    def vertical(cls, field: FieldDescriptor, a) -> "BivarCurve":
        return cls.from_terms(field, {(1, 0): 1, (0, 0): -field.scalar(a)})

    @classmethod
    def horizontal(cls, field: FieldDescriptor, b) -> "BivarCurve":
        return cls.from_terms(field, {(0, 1): 1, (0, 0): -field.scalar(b)})

    def as_dict(self) -> Dict[Tuple[int, int], Scalar]:
        return dict(self.terms)

    @property
    def deg_x(self) -> int:
        return max(e[0] for e, _ in self.terms)

    @property
    def deg_y(self) -> int:
        return max(e[1] for e, _ in self.terms)

    @property
    def total_degree(self) -> int:
        return max(e[0] + e[1] for e, _ in self.terms)

    def evaluate(self, x, y) -> Scalar:
        x, y = self.field.scalar(x), self.field.scalar(y)
        total = self.field.zero()
        for (i, j), c in self.terms:
            total = total + c * (x ** i) * (y ** j)
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivarCurve):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field, self.terms))

    def sort_key(self) -> Tuple:
        return (self.total_degree, tuple((e, c.sort_key()) for e, c in self.terms))

    def __str__(self) -> str:
        ordered = sorted(self.terms, key=lambda item: (item[0][0] + item[0][1], item[0][0]), reverse=True)
        pieces = []
        for (i, j), c in ordered:
            text = str(c) if c.is_rational() else f"({c})"
            pieces.append((text, _monomial_text(i, j)))
        return format_terms(pieces)

    def __repr__(self) -> str:
        return f"BivarCurve({self}, {self.field.label})"


def resultant_elim(g: BivarCurve, h: BivarCurve, var: str) -> Poly:
    """Res_var(G, H) as a polynomial in the remaining variable."""
    if g.field != h.field:
        raise FieldMismatch("curves over different fields")
    if var not in ("x", "y"):
        raise InputError(f"unknown elimination variable {var!r}")
    index = 0 if var == "x" else 1
    reduced = eliminate(g.as_dict(), h.as_dict(), 2, index, g.field)
    top = max((e[0] for e in reduced), default=-1)
    return Poly(g.field, tuple(reduced.get((k,), g.field.zero()) for k in range(top + 1)))
