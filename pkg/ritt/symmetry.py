"""
Linear symmetries of a polynomial.

gamma_group collects the linear ell with A o ell = L o A. On the Tschirnhaus
form they are the scalings zeta*x with zeta^g = 1, g the gcd of the gaps
d - i between the top degree and the other occupied degrees; everything is
transported back through the normalizing maps. m_infinity follows the chain
ell -> L -> L' -> ... inside that group: ell commutes with f^k exactly when
the chain returns to ell after k steps.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Callable, Dict, List, Optional, Tuple

from algebra.fields import FieldDescriptor
from algebra.poly import LinearPoly, Poly, compose, iterate
from errors import FieldExtensionRequired, HypothesisViolation, InputError, ResourceCapExceeded
from ritt.conjugacy import symmetry_gap, tschirnhaus
from ritt.decompose import left_factor_solve
from ritt.semiconj import solve_p
from settings import ALGEBRA_CAPS

logger = logging.getLogger(__name__)

INFINITE = "infinite"
FINITE = "finite"

# iterates above this degree are trusted to the companion chain instead of recomposed
VERIFY_DEGREE = 256


@dataclass(frozen=True)
class LinearGroup:
    kind: str
    elements: Tuple[LinearPoly, ...] = ()
    companions: Tuple[LinearPoly, ...] = ()
    generator: Optional[LinearPoly] = None
    full_order: Optional[int] = None
    extension_hint: Optional[int] = None
    periods: Tuple[int, ...] = ()
    stable: Optional[bool] = None

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def order(self) -> Optional[int]:
        return len(self.elements) if self.is_finite else None

    def contains(self, ell: LinearPoly) -> bool:
        return ell in self.elements

    def is_group(self) -> bool:
        """Identity, closure, inverses, and enumeration by powers of the generator."""
        if not self.is_finite:
            return True
        members = set(self.elements)
        identity = LinearPoly.identity(self.elements[0].field)
        if identity not in members:
            return False
        for a in self.elements:
            if a.inverse() not in members:
                return False
            for b in self.elements:
                if a.after(b) not in members:
                    return False
        powers, current = {identity}, self.generator
        while current not in powers:
            powers.add(current)
            current = self.generator.after(current)
        return powers == members


def _generator(elements: List[LinearPoly], bound: int) -> LinearPoly:
    identity = LinearPoly.identity(elements[0].field)
    for candidate in elements:
        powers, current = {identity}, candidate
        while current != identity:
            powers.add(current)
            current = candidate.after(current)
        if powers == set(elements):
            return candidate
    # elements commuting with different iterates can compose to one outside the bound
    raise ResourceCapExceeded(f"the linear maps found at iter_bound {bound} are not closed under composition; "
                              f"raise iter_bound", cap="iter_bound", limit=bound)


def _extension_order(field: FieldDescriptor, g: int) -> Optional[int]:
    base = 1 if field.is_rational else field.order
    m = base * g // gcd(base, g)
    if m % 4 == 2:
        m //= 2
    return m if m >= 3 else None


def gamma_group(A: Poly, strict: bool = False) -> LinearGroup:
    """{ell : A o ell = L o A}, each element shipped with its companion L."""
    if A.degree < 2:
        raise InputError("gamma_group needs degree at least 2")
    form = tschirnhaus(A)
    if form.is_power:
        return LinearGroup(INFINITE)
    field, d = A.field, A.degree
    g = symmetry_gap(form.normal)
    roots = field.roots_of_unity(g)
    hint = _extension_order(field, g) if len(roots) < g else None
    if strict and hint is not None:
        raise FieldExtensionRequired(f"Gamma has order {g} but only {len(roots)} elements in the field",
                                     equation=f"zeta^{g} = 1", hint=hint)

    elements, companions = [], []
    back = form.outer.inverse()
    for zeta in roots:
        ell = form.shift.after(LinearPoly(zeta, field.zero())).after(form.shift.inverse())
        L = back.after(LinearPoly(zeta ** d, field.zero())).after(form.outer)
        assert compose(A, ell.as_poly()) == compose(L.as_poly(), A), "symmetry failed verification"
        elements.append(ell)
        companions.append(L)
    generator = elements[1] if len(elements) > 1 else elements[0]
    return LinearGroup(FINITE, tuple(elements), tuple(companions), generator, g, hint)


def _companion_rule(f: Poly) -> Tuple[List[LinearPoly], Callable[[LinearPoly], Optional[LinearPoly]]]:
    form = tschirnhaus(f)
    field, d = f.field, f.degree
    if form.is_power:
        center = form.shift.b
        if form.outer(center).is_zero():
            raise HypothesisViolation(f"{f} is linearly conjugate to x^{d}")
        back = form.outer.inverse()

        def companion(ell: LinearPoly) -> Optional[LinearPoly]:
            if ell(center) != center:
                return None
            return back.after(LinearPoly(ell.a ** d, field.zero())).after(form.outer)

        # a companion fixes the center only when its slope is a d-th root of unity, and then it is x
        return [LinearPoly.identity(field)], companion
    group = gamma_group(f)
    table: Dict[LinearPoly, LinearPoly] = dict(zip(group.elements, group.companions))
    return list(group.elements), table.get


def _chain_period(ell: LinearPoly, companion, bound: int) -> Optional[int]:
    current = ell
    for k in range(1, bound + 1):
        current = companion(current)
        if current is None:
            return None
        if current == ell:
            return k
    return None


def _commuting(f: Poly, bound: int) -> Dict[LinearPoly, int]:
    candidates, companion = _companion_rule(f)
    found = {}
    for ell in candidates:
        k = _chain_period(ell, companion, bound)
        if k is not None:
            found[ell] = k
    return found


def m_infinity(f: Poly, iter_bound: Optional[int] = None) -> LinearGroup:
    """Linear polynomials commuting with f^k for some k <= iter_bound."""
    if f.degree < 2:
        raise InputError("m_infinity needs degree at least 2")
    bound = f.degree if iter_bound is None else iter_bound
    if bound < 1:
        raise InputError("iter_bound must be positive")
    found = _commuting(f, bound)
    stable = set(found) == set(_commuting(f, 2 * bound))

    for ell, k in found.items():
        if f.degree ** k <= VERIFY_DEGREE:
            F = iterate(f, k)
            assert compose(ell.as_poly(), F) == compose(F, ell.as_poly()), "commuting element failed verification"

    ordered = sorted(found, key=lambda l: (not l.is_identity(), l.sort_key()))
    return LinearGroup(FINITE, tuple(ordered), (), _generator(ordered, bound), len(ordered), None,
                       tuple(found[l] for l in ordered), stable)


def commutes_with_iterate(f: Poly, g: Poly, bound: int, degree_cap: Optional[int] = None) -> Optional[int]:
    """Smallest n <= bound with g o f^n = f^n o g."""
    if f.degree < 2 or g.degree < 1:
        raise InputError("commutes_with_iterate needs deg f >= 2 and deg g >= 1")
    cap = ALGEBRA_CAPS["degree_cap"] if degree_cap is None else degree_cap
    F = Poly.x(f.field)
    for n in range(1, bound + 1):
        F = compose(f, F, cap)
        if compose(g, F, cap) == compose(F, g, cap):
            return n
    return None


def common_commuting_iterate(f: Poly, bound: Optional[int] = None) -> Optional[int]:
    """Smallest n <= bound such that f^n commutes with all of m_infinity(f, bound)."""
    group = m_infinity(f, bound)
    limit = f.degree if bound is None else bound
    n = 1
    for k in group.periods:
        n = n * k // gcd(n, k)
    return n if n <= limit else None


@dataclass(frozen=True)
class AlignedIterates:
    ell: LinearPoly
    N: int
    chain: Tuple[LinearPoly, ...]
    within_half_degree: bool


def align_iterates(f: Poly, g: Poly, L: LinearPoly, n: int) -> AlignedIterates:
    """(ell, N) with f^N = (ell o g o ell^-1)^N, from f^n = L o g^n."""
    if f.field != g.field:
        raise InputError("align_iterates across fields")
    d = f.degree
    if g.degree != d or d < 2:
        raise HypothesisViolation("f and g need equal degree at least 2")
    if tschirnhaus(f).is_power or tschirnhaus(g).is_power:
        raise HypothesisViolation("f and g must not be cyclic")
    if 2 * n < d + 1:
        raise HypothesisViolation(f"n = {n} is below (deg + 1)/2")
    if iterate(f, n) != compose(L.as_poly(), iterate(g, n)):
        raise HypothesisViolation("f^n != L o g^n")

    chain = [LinearPoly.identity(f.field)]
    for _ in range(n):
        step = left_factor_solve(compose(f, chain[-1].as_poly()), g)
        if step is None or step.degree != 1:
            break
        chain.append(LinearPoly.from_poly(step))

    best = None
    for j in range(len(chain)):
        for i in range(j):
            if chain[i] == chain[j] and (best is None or j - i < best[1]):
                best = (i, j - i)
    if best is None:
        raise HypothesisViolation("no repetition among the peeled linear factors")
    i, N = best
    ell = chain[i]
    conjugated = compose(ell.as_poly(), compose(g, ell.inverse().as_poly()))
    assert iterate(f, N) == iterate(conjugated, N), "aligned iterates failed verification"
    if 2 * N > d:
        logger.warning("⚠️ aligned iterate N=%d exceeds half the degree %d", N, d)
    return AlignedIterates(ell, N, tuple(chain), 2 * N <= d)


@dataclass(frozen=True)
class CommutingCandidate:
    poly: Poly
    iterate_index: int


def lowest_commuting_search(f: Poly, iter_bound: int, deg_cap: int) -> Optional[CommutingCandidate]:
    """Lowest-degree p of degree >= 2 with p o f^m = f^m o p for some m <= iter_bound."""
    if f.degree < 2:
        raise InputError("lowest_commuting_search needs degree at least 2")
    for b in range(2, deg_cap + 1):
        for m in range(1, iter_bound + 1):
            if b * f.degree ** m > ALGEBRA_CAPS["degree_cap"]:
                break
            F = iterate(f, m)
            for p in solve_p(F, F, b):
                if p.degree == b:
                    return CommutingCandidate(p, m)
    return None
