"""
Roots that live in the current coefficient field.

Over Q the work is delegated to sympy's factorization. Over Q(zeta_m) roots
are found with the norm/shift method: shift until the norm down to Q is
squarefree, factor the norm over Q, and pull each factor back with a gcd
over the cyclotomic field.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.factortools import dup_factor_list
from sympy.polys.sqfreetools import dup_sqf_p

from algebra.fields import FieldDescriptor, Scalar
from algebra.poly import Poly, poly_gcd, squarefree_part
from settings import ALGEBRA_CAPS

logger = logging.getLogger(__name__)


def _dense_rational(f: Poly) -> list:
    return [c.to_rational() for c in reversed(f.coeffs)]


def _from_dense(field: FieldDescriptor, dense: Sequence) -> Poly:
    return Poly(field, tuple(field.scalar(c) for c in reversed(list(dense))))


def _distinct_sorted(values: Iterable[Scalar]) -> List[Scalar]:
    return sorted(set(values), key=lambda s: s.sort_key())


def _rational_roots(f: Poly) -> List[Scalar]:
    _, factors = dup_factor_list(_dense_rational(f), QQ)
    roots = []
    for factor, _multiplicity in factors:
        if len(factor) == 2:
            roots.append(f.field.scalar(-factor[1] / factor[0]))
    return _distinct_sorted(roots)


def norm_down(g: Poly) -> list:
    """Product of all Galois conjugates of g, as a dense rational polynomial."""
    field = g.field
    product = Poly.constant(field, 1)
    for j in range(1, field.order):
        if gcd(j, field.order) == 1:
            product = product * Poly(field, tuple(c.galois(j) for c in g.coeffs))
    return _dense_rational(product)


def _cyclotomic_roots(f: Poly) -> List[Scalar]:
    field = f.field
    f = squarefree_part(f)
    if f.degree == 1:
        return [-f.coeffs[0] / f.coeffs[1]]
    zeta = field.gen()
    for s in range(0, 4 * field.degree * f.degree + 4):
        shift = zeta * s
        g = f.compose(Poly(field, (-shift, field.one())))
        norm = norm_down(g)
        if not dup_sqf_p(norm, QQ):
            continue
        _, factors = dup_factor_list(norm, QQ)
        roots = []
        for factor, _multiplicity in factors:
            if len(factor) - 1 > field.degree:
                continue
            common = poly_gcd(g, _from_dense(field, factor))
            if common.degree == 1:
                roots.append(-common.coeffs[0] / common.coeffs[1] - shift)
        logger.debug("norm shift %d splits %s over %s into %d roots", s, f, field.label, len(roots))
        return _distinct_sorted(roots)
    raise ArithmeticError(f"no squarefree norm shift found for {f}")


def roots_in_field(f: Poly) -> List[Scalar]:
    """Distinct roots of f in its own coefficient field, canonically sorted."""
    if f.degree < 1:
        return []
    if f.field.is_rational:
        return _rational_roots(f)
    return _cyclotomic_roots(f)


def nth_roots(value: Scalar, k: int) -> List[Scalar]:
    """All in-field solutions of a^k = value."""
    field = value.field
    if k == 1:
        return [value]
    if value.is_zero():
        return [field.zero()]
    return roots_in_field(Poly.monomial(field, k) - Poly.constant(field, value))


def cyclotomic_hint(f: Poly, max_order: Optional[int] = None) -> Optional[int]:
    """Smallest cyclotomic order (containing f's field) over which f gains a root."""
    limit = ALGEBRA_CAPS["hint_max_order"] if max_order is None else max_order
    for order in range(3, limit + 1):
        if order % 4 == 2:
            continue
        target = FieldDescriptor.cyclotomic(order)
        if target == f.field or not f.field.embeds_in(target):
            continue
        lifted = Poly(target, tuple(c.embed(target) for c in f.coeffs))
        if roots_in_field(lifted):
            return order
    return None


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    old_r, r, old_u, u, old_v, v = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


@dataclass(frozen=True)
class MonomialSolution:
    """Solutions a != 0 of a system a^e_i = r_i."""

    consistent: bool
    free: bool = False
    exponent: int = 0
    value: Optional[Scalar] = None
    roots: Tuple[Scalar, ...] = dataclass_field(default_factory=tuple)

    @property
    def in_field(self) -> bool:
        return self.consistent and (self.free or bool(self.roots))

    def equation(self, var: str = "a") -> str:
        if not self.consistent or self.free:
            return ""
        return f"{var}^{self.exponent} = {self.value}"

    def equation_poly(self) -> Optional[Poly]:
        if not self.consistent or self.free:
            return None
        field = self.value.field
        return Poly.monomial(field, self.exponent) - Poly.constant(field, self.value)

    def hint(self) -> Optional[int]:
        poly = self.equation_poly()
        return cyclotomic_hint(poly) if poly is not None and not self.roots else None


def solve_monomial_system(field: FieldDescriptor, equations: Iterable[Tuple[int, Scalar]]) -> MonomialSolution:
    """Decide a^e = r jointly over the algebraic closure and list the in-field a."""
    reduced: List[Tuple[int, Scalar]] = []
    for e, r in equations:
        r = field.scalar(r)
        if r.is_zero():
            return MonomialSolution(consistent=False)
        if e == 0:
            if not r.is_one():
                return MonomialSolution(consistent=False)
            continue
        reduced.append((e, r) if e > 0 else (-e, r.inverse()))
    if not reduced:
        return MonomialSolution(consistent=True, free=True)

    g, value = reduced[0]
    for e, r in reduced[1:]:
        d, u, v = _ext_gcd(g, e)
        value, g = (value ** u) * (r ** v), d
    for e, r in reduced:
        if value ** (e // g) != r:
            return MonomialSolution(consistent=False)
    return MonomialSolution(consistent=True, exponent=g, value=value, roots=tuple(nth_roots(value, g)))
