"""
Exact coefficient fields: the rationals and the cyclotomic fields Q(zeta_m).

A cyclotomic element is a coefficient vector in powers of zeta, kept reduced
modulo the m-th cyclotomic polynomial so that equal values have equal
vectors. Rational coefficients are sympy ``QQ`` elements throughout.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import cyclotomic_poly, totient
from sympy.polys.densearith import dup_mul, dup_rem
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_invert

from errors import FieldMismatch, InputError

logger = logging.getLogger(__name__)

RATIONALS = "Q"
CYCLOTOMIC = "cyclotomic"


def to_qq(value):
    """Convert an int, Fraction, sympy Rational or QQ element to QQ."""
    if isinstance(value, bool):
        raise TypeError("booleans are not field elements")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if QQ.of_type(value):
        return value
    if getattr(value, "is_Rational", False):
        return QQ.from_sympy(value)
    raise TypeError(f"cannot read {value!r} as a rational number")


def qq_to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def format_terms(terms: Sequence[Tuple[str, str]]) -> str:
    """Join (sign-carrying coefficient text, monomial) pairs into one expression."""
    pieces: List[str] = []
    for coeff, monomial in terms:
        if not monomial:
            text = coeff
        elif coeff == "1":
            text = monomial
        elif coeff == "-1":
            text = "-" + monomial
        else:
            text = f"{coeff}*{monomial}"
        if not pieces:
            pieces.append(text)
        elif text.startswith("-"):
            pieces.append(" - " + text[1:])
        else:
            pieces.append(" + " + text)
    return "".join(pieces) if pieces else "0"


def power_text(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{k}"


@lru_cache(maxsize=None)
def _cyclotomic_modulus(m: int) -> Tuple:
    """Dense (descending) coefficients of the m-th cyclotomic polynomial over QQ."""
    poly = cyclotomic_poly(m, polys=True)
    return tuple(QQ(int(c)) for c in poly.all_coeffs())


def _descending(values: Sequence) -> list:
    return dup_strip(list(reversed(list(values))))


def _ascending(dense: Sequence, length: int) -> Tuple:
    values = list(reversed(list(dense)))
    if len(values) > length:
        raise ValueError("vector longer than the field degree")
    return tuple(values + [QQ.zero] * (length - len(values)))


@dataclass(frozen=True)
class FieldDescriptor:
    """Q, or Q(zeta_m) realized as the quotient by the m-th cyclotomic polynomial."""

    kind: str = RATIONALS
    order: int = 1

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.order != 1:
                raise InputError("the rational field carries no cyclotomic order")
        elif self.kind == CYCLOTOMIC:
            if not isinstance(self.order, int) or self.order < 1:
                raise InputError(f"cyclotomic order must be a positive integer, got {self.order!r}")
            if self.order <= 2:
                raise InputError(f"Q(zeta {self.order}) is Q itself; use field Q")
        else:
            raise InputError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldDescriptor":
        return cls(RATIONALS, 1)

    @classmethod
    def cyclotomic(cls, m: int) -> "FieldDescriptor":
        return cls(CYCLOTOMIC, m)

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONALS

    @property
    def degree(self) -> int:
        return 1 if self.is_rational else int(totient(self.order))

    @property
    def label(self) -> str:
        return "Q" if self.is_rational else f"Q(zeta {self.order})"

    def modulus(self) -> list:
        return list(_cyclotomic_modulus(self.order))

    def zero(self) -> "Scalar":
        return Scalar(self, (QQ.zero,) * self.degree)

    def one(self) -> "Scalar":
        return self.scalar(1)

    def gen(self) -> "Scalar":
        """The generator zeta_m (raises over Q)."""
        if self.is_rational:
            raise FieldMismatch("the generator z needs a cyclotomic field header")
        return Scalar.from_vector(self, [QQ.zero, QQ.one])

    def scalar(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"scalar over {value.field.label} used over {self.label}")
            return value
        return Scalar(self, (to_qq(value),) + (QQ.zero,) * (self.degree - 1))

    @property
    def unit_order(self) -> int:
        """Order of the (cyclic) group of roots of unity inside the field."""
        if self.is_rational:
            return 2
        return self.order if self.order % 2 == 0 else 2 * self.order

    def root_of_unity(self, k: int) -> Optional["Scalar"]:
        """A primitive k-th root of unity in the field, or None."""
        if k < 1 or self.unit_order % k:
            return None
        if self.is_rational:
            generator = self.scalar(-1)
        elif self.order % 2:
            generator = -self.gen()
        else:
            generator = self.gen()
        return generator ** (self.unit_order // k)

    def roots_of_unity(self, k: int) -> List["Scalar"]:
        """All roots of unity of order dividing k, in power order of a primitive one."""
        h = gcd(k, self.unit_order)
        primitive = self.root_of_unity(h)
        return [primitive ** i for i in range(h)]

    def embeds_in(self, other: "FieldDescriptor") -> bool:
        return self.is_rational or (not other.is_rational and other.order % self.order == 0)


@dataclass(frozen=True, eq=False)
class Scalar:
    """An exact field element with a canonical coefficient vector."""

    field: FieldDescriptor
    coeffs: Tuple

    @classmethod
    def from_vector(cls, field: FieldDescriptor, values: Iterable) -> "Scalar":
        """Reduce an arbitrary-length vector in powers of zeta into canonical form."""
        values = [to_qq(v) for v in values] or [QQ.zero]
        if field.is_rational:
            if any(v for v in values[1:]):
                raise FieldMismatch("powers of z appear in a rational value")
            return cls(field, (values[0],))
        if len(values) > field.degree:
            reduced = dup_rem(_descending(values), field.modulus(), QQ)
            return cls(field, _ascending(reduced, field.degree))
        return cls(field, tuple(values) + (QQ.zero,) * (field.degree - len(values)))

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field.label} with {other.field.label}")
            return other
        return self.field.scalar(other)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == QQ.one and not any(self.coeffs[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self):
        if not self.is_rational():
            raise FieldMismatch(f"{self} is not rational")
        return self.coeffs[0]

    def to_fraction(self) -> Fraction:
        return qq_to_fraction(self.to_rational())

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "Scalar":
        other = self._coerce(other)
        return Scalar(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "Scalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Scalar":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        other = self._coerce(other)
        if self.field.is_rational:
            return Scalar(self.field, (self.coeffs[0] * other.coeffs[0],))
        if other.is_rational():
            c = other.coeffs[0]
            return Scalar(self.field, tuple(a * c for a in self.coeffs))
        if self.is_rational():
            c = self.coeffs[0]
            return Scalar(self.field, tuple(c * b for b in other.coeffs))
        product = dup_mul(_descending(self.coeffs), _descending(other.coeffs), QQ)
        reduced = dup_rem(product, self.field.modulus(), QQ)
        return Scalar(self.field, _ascending(reduced, self.field.degree))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Scalar(self.field, (QQ.one / self.coeffs[0],) + self.coeffs[1:])
        inv = dup_invert(_descending(self.coeffs), self.field.modulus(), QQ)
        return Scalar(self.field, _ascending(inv, self.field.degree))

    def __truediv__(self, other) -> "Scalar":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.coeffs == other.coeffs
        try:
            return self.coeffs == self.field.scalar(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(qq_to_fraction(self.coeffs[0]))
        return hash((self.field, tuple(qq_to_fraction(c) for c in self.coeffs)))

    # -- Galois structure ---------------------------------------------------
    def galois(self, j: int) -> "Scalar":
        """Apply the automorphism zeta -> zeta^j."""
        if self.field.is_rational:
            return self
        m = self.field.order
        vector = [QQ.zero] * m
        for i, c in enumerate(self.coeffs):
            vector[(i * j) % m] += c
        return Scalar.from_vector(self.field, vector)

    def norm(self):
        """Field norm down to Q."""
        if self.field.is_rational:
            return self.coeffs[0]
        m = self.field.order
        result = self.field.one()
        for j in range(1, m):
            if gcd(j, m) == 1:
                result = result * self.galois(j)
        return result.to_rational()

    def embed(self, target: FieldDescriptor) -> "Scalar":
        if target == self.field:
            return self
        if not self.field.embeds_in(target):
            raise FieldMismatch(f"{self.field.label} does not embed in {target.label}")
        if self.field.is_rational:
            return target.scalar(self.coeffs[0])
        step = target.order // self.field.order
        vector = [QQ.zero] * (step * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            vector[i * step] = c
        return Scalar.from_vector(target, vector)

    # -- presentation -------------------------------------------------------
    def bit_height(self) -> int:
        return max(max(int(c.numerator).bit_length(), int(c.denominator).bit_length()) for c in self.coeffs)

    def sort_key(self) -> Tuple:
        return tuple(self.coeffs)

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        terms = [(str(c), power_text("z", k)) for k, c in reversed(list(enumerate(self.coeffs))) if c]
        return format_terms(terms)

    def __repr__(self) -> str:
        return f"Scalar({self}, {self.field.label})"


Q = FieldDescriptor.rationals()
