"""
Dense univariate polynomials over an exact field, linear polynomials, and
the composition toolkit built on them (compose, iterate, chebyshev,
conjugate).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple, Union

from algebra.fields import FieldDescriptor, Q, Scalar, format_terms, power_text
from errors import FieldMismatch, InputError, ResourceCapExceeded
from settings import ALGEBRA_CAPS

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Poly:
    """Ascending coefficients; the empty tuple is the zero polynomial."""

    field: FieldDescriptor
    coeffs: Tuple[Scalar, ...]

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        for c in coeffs:
            if c.field != self.field:
                raise FieldMismatch(f"coefficient over {c.field.label} in a polynomial over {self.field.label}")
        object.__setattr__(self, "coeffs", tuple(coeffs))

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_coeffs(cls, field: FieldDescriptor, values: Iterable) -> "Poly":
        return cls(field, tuple(field.scalar(v) for v in values))

    @classmethod
    def zero(cls, field: FieldDescriptor = Q) -> "Poly":
        return cls(field, ())

    @classmethod
    def constant(cls, field: FieldDescriptor, value) -> "Poly":
        return cls(field, (field.scalar(value),))

    @classmethod
    def x(cls, field: FieldDescriptor = Q) -> "Poly":
        return cls(field, (field.zero(), field.one()))

    @classmethod
    def monomial(cls, field: FieldDescriptor, k: int, value=1) -> "Poly":
        return cls(field, (field.zero(),) * k + (field.scalar(value),))

    # -- shape --------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else self.field.zero()

    def coeff(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def valuation(self) -> int:
        """Multiplicity of 0 as a root."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        raise ValueError("the zero polynomial has no valuation")

    def support(self) -> List[int]:
        return [i for i, c in enumerate(self.coeffs) if not c.is_zero()]

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine polynomials over {self.field.label} and {other.field.label}")
            return other
        if isinstance(other, LinearPoly):
            return other.as_poly()
        return Poly.constant(self.field, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, tuple(out))

    __rmul__ = __mul__

    def scale(self, value) -> "Poly":
        value = self.field.scalar(value)
        return Poly(self.field, tuple(c * value for c in self.coeffs))

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise InputError("negative powers of polynomials are not polynomials")
        result, base = Poly.constant(self.field, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> Tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coeffs)
        inv_lc = other.lc.inverse()
        quotient = [self.field.zero()] * max(len(remainder) - other.degree, 0)
        for shift in range(len(remainder) - len(other.coeffs), -1, -1):
            c = remainder[shift + other.degree] * inv_lc
            quotient[shift] = c
            if c.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                remainder[shift + j] = remainder[shift + j] - c * b
        return Poly(self.field, tuple(quotient)), Poly(self.field, tuple(remainder[: other.degree] if other.degree > 0 else ()))

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> Optional["Poly"]:
        """self / other when the division is exact, otherwise None."""
        quotient, remainder = divmod(self, other)
        return quotient if remainder.is_zero() else None

    def derivative(self) -> "Poly":
        return Poly(self.field, tuple(c * i for i, c in enumerate(self.coeffs) if i > 0))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.lc.inverse())

    def stretch(self, k: int) -> "Poly":
        """P(x) -> P(x^k)."""
        out = [self.field.zero()] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return Poly(self.field, tuple(out))

    def shrink(self, k: int) -> Optional["Poly"]:
        """Inverse of stretch: P with self = P(x^k), or None."""
        if any(not c.is_zero() and i % k for i, c in enumerate(self.coeffs)):
            return None
        return Poly(self.field, self.coeffs[::k])

    def shift_down(self, k: int) -> "Poly":
        """self / x^k, assuming x^k divides self."""
        return Poly(self.field, self.coeffs[k:])

    def __call__(self, value) -> Scalar:
        value = self.field.scalar(value) if not isinstance(value, Scalar) else value
        result = self.field.zero()
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def compose(self, inner: "Poly") -> "Poly":
        """Horner composition self(inner) without degree checks."""
        inner = self._coerce(inner)
        result = Poly.zero(self.field)
        for c in reversed(self.coeffs):
            result = result * inner + Poly(self.field, (c,))
        return result

    # -- comparison / presentation -------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, LinearPoly):
            other = other.as_poly()
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def sort_key(self) -> Tuple:
        return (self.degree, tuple(c.sort_key() for c in reversed(self.coeffs)))

    def to_text(self, var: str = "x") -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            text = str(c) if c.is_rational() else f"({c})"
            terms.append((text, power_text(var, k)))
        return format_terms(terms)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Poly({self}, {self.field.label})"


@dataclass(frozen=True)
class LinearPoly:
    """The invertible polynomial a*x + b."""

    a: Scalar
    b: Scalar

    def __post_init__(self):
        if self.a.field != self.b.field:
            raise FieldMismatch("linear coefficients over different fields")
        if self.a.is_zero():
            raise InputError("a linear polynomial needs a nonzero slope")

    @classmethod
    def make(cls, field: FieldDescriptor, a=1, b=0) -> "LinearPoly":
        return cls(field.scalar(a), field.scalar(b))

    @classmethod
    def identity(cls, field: FieldDescriptor = Q) -> "LinearPoly":
        return cls.make(field, 1, 0)

    @classmethod
    def from_poly(cls, p: Poly) -> "LinearPoly":
        if p.degree != 1:
            raise InputError(f"{p} is not linear")
        return cls(p.coeffs[1], p.coeffs[0])

    @property
    def field(self) -> FieldDescriptor:
        return self.a.field

    def is_identity(self) -> bool:
        return self.a.is_one() and self.b.is_zero()

    def inverse(self) -> "LinearPoly":
        inv = self.a.inverse()
        return LinearPoly(inv, -self.b * inv)

    def after(self, other: "LinearPoly") -> "LinearPoly":
        """self o other."""
        return LinearPoly(self.a * other.a, self.a * other.b + self.b)

    def __call__(self, value) -> Scalar:
        return self.a * value + self.b

    def as_poly(self) -> Poly:
        return Poly(self.field, (self.b, self.a))

    def sort_key(self) -> Tuple:
        return (self.a.sort_key(), self.b.sort_key())

    def __str__(self) -> str:
        return str(self.as_poly())


PolyLike = Union[Poly, LinearPoly]


def as_poly(p: PolyLike) -> Poly:
    return p.as_poly() if isinstance(p, LinearPoly) else p


def compose(f: PolyLike, g: PolyLike, degree_cap: Optional[int] = None) -> Poly:
    """f o g, refusing to build anything above the degree cap."""
    f, g = as_poly(f), as_poly(g)
    if f.field != g.field:
        raise FieldMismatch(f"compose over {f.field.label} and {g.field.label}")
    cap = ALGEBRA_CAPS["degree_cap"] if degree_cap is None else degree_cap
    if f.degree > 0 and g.degree > 0 and f.degree * g.degree > cap:
        raise ResourceCapExceeded(f"composition of degree {f.degree * g.degree} exceeds the cap",
                                  cap="degree_cap", limit=cap)
    result = f.compose(g)
    if f.degree > 0 and g.degree > 0:
        assert result.degree == f.degree * g.degree, "degree multiplicativity failed"
    return result


def compose_all(*factors: PolyLike, degree_cap: Optional[int] = None) -> Poly:
    """factors[0] o factors[1] o ... o factors[-1]."""
    result = as_poly(factors[-1])
    for factor in reversed(factors[:-1]):
        result = compose(factor, result, degree_cap)
    return result


def iterate(f: PolyLike, m: int, degree_cap: Optional[int] = None) -> Poly:
    """The m-fold iterate of f; iterate(f, 0) is x."""
    f = as_poly(f)
    if m < 0:
        raise InputError("iterate count must be nonnegative")
    if f.degree < 1:
        raise InputError("iterate needs a nonconstant polynomial")
    cap = ALGEBRA_CAPS["degree_cap"] if degree_cap is None else degree_cap
    if f.degree > 1 and f.degree ** m > cap:
        raise ResourceCapExceeded(f"iterate of degree {f.degree}^{m} exceeds the cap",
                                  cap="degree_cap", limit=cap)
    result = Poly.x(f.field)
    for _ in range(m):
        result = compose(f, result, cap)
    return result


@lru_cache(maxsize=None)
def chebyshev(delta: int, field: FieldDescriptor = Q) -> Poly:
    """Normalized Chebyshev polynomial: T(x + 1/x) = x^delta + x^-delta."""
    if delta < 1:
        raise InputError("chebyshev needs delta >= 1")
    x = Poly.x(field)
    prev, cur = Poly.constant(field, 2), x
    for _ in range(delta - 1):
        prev, cur = cur, x * cur - prev
    return cur


def conjugate(l: LinearPoly, f: PolyLike) -> Poly:
    """l o f o l^-1."""
    f = as_poly(f)
    if l.field != f.field:
        raise FieldMismatch("conjugating across fields")
    return compose(l.as_poly(), compose(f, l.inverse().as_poly()))


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over the coefficient field."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def squarefree_part(f: Poly) -> Poly:
    if f.degree < 1:
        return f.monic()
    return (f // poly_gcd(f, f.derivative())).monic()


def power_x(field: FieldDescriptor, k: int) -> Poly:
    return Poly.monomial(field, k)


def embed_poly(f: Poly, target: FieldDescriptor) -> Poly:
    """The same polynomial read over a larger cyclotomic field."""
    return Poly(target, tuple(c.embed(target) for c in f.coeffs))
