"""
Functional decomposition of polynomials.

Right and left factor solvers, complete decomposition chains (right factors
found degree by degree from the top coefficients, then confirmed by a left
solve), the gcd/lcm refinement of a double decomposition a o b = c o d, and
the split of a composite of the form x^s P(x)^n.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from math import gcd
from typing import Dict, List, Optional, Tuple

from algebra.fields import FieldDescriptor, Scalar
from algebra.poly import LinearPoly, Poly, compose, compose_all, embed_poly
from algebra.roots import cyclotomic_hint, nth_roots
from errors import DegreeMismatch, FieldExtensionRequired, HypothesisViolation, InputError, ResourceCapExceeded
from settings import ALGEBRA_CAPS

logger = logging.getLogger(__name__)


def _quotient_degree(F: Poly, g: Poly) -> Optional[int]:
    if g.degree < 1:
        raise DegreeMismatch(f"the outer factor {g} must be nonconstant")
    if F.degree < 1 or F.degree % g.degree:
        return None
    return F.degree // g.degree


def right_factor_solve(F: Poly, g: Poly) -> List[Poly]:
    """All h over F's field with F = g o h."""
    if F.field != g.field:
        raise InputError("right_factor_solve across fields")
    r = _quotient_degree(F, g)
    if r is None:
        raise DegreeMismatch(f"deg {g} does not divide deg {F}")
    field, n = F.field, g.degree
    ratio = F.lc / g.lc
    leads = nth_roots(ratio, n)
    if not leads:
        return _extension_hint(F, g, ratio)

    solutions = []
    for a in leads:
        pivot = g.lc * a ** (n - 1) * n
        h = [field.zero()] * r + [a]
        for j in range(1, r + 1):
            residual = F - compose(g, Poly(field, tuple(h)))
            h[r - j] = residual.coeff(n * r - j) / pivot
        candidate = Poly(field, tuple(h))
        if compose(g, candidate) == F:
            solutions.append(candidate)
    return sorted(solutions, key=lambda p: p.sort_key())


def _extension_hint(F: Poly, g: Poly, ratio: Scalar) -> List[Poly]:
    equation = Poly.monomial(F.field, g.degree) - Poly.constant(F.field, ratio)
    hint = cyclotomic_hint(equation)
    text = f"a^{g.degree} = {ratio}"
    if hint is None:
        raise FieldExtensionRequired(f"leading coefficient of a right factor needs a root of {text}", equation=text)
    target = FieldDescriptor.cyclotomic(hint)
    lifted = right_factor_solve(embed_poly(F, target), embed_poly(g, target))
    if lifted:
        raise FieldExtensionRequired(f"right factors exist only over {target.label}", equation=text, hint=hint,
                                     partial={"solutions": [str(h) for h in lifted]})
    return []


def left_factor_solve(F: Poly, h: Poly) -> Optional[Poly]:
    """The g with F = g o h, read off the h-adic expansion of F, or None."""
    if F.field != h.field:
        raise InputError("left_factor_solve across fields")
    if h.degree < 1:
        raise DegreeMismatch(f"the inner factor {h} must be nonconstant")
    if F.degree % h.degree:
        return None
    digits = []
    rest = F
    while not rest.is_zero():
        rest, digit = divmod(rest, h)
        if digit.degree > 0:
            return None
        digits.append(digit.coeff(0))
    return Poly(F.field, tuple(digits))


def normalized_right_factor(F: Poly, s: int) -> Optional[Tuple[Poly, Poly]]:
    """(g, h) with F = g o h, h monic of degree s with h(0) = 0, or None."""
    if s < 1 or F.degree % s:
        return None
    field, n = F.field, F.degree
    r = n // s
    if s == 1:
        return F, Poly.x(field)
    target = F.monic()
    h = [field.zero()] * s + [field.one()]
    for j in range(1, s):
        power = Poly(field, tuple(h)) ** r
        h[s - j] = (target.coeff(n - j) - power.coeff(n - j)) / r
    candidate = Poly(field, tuple(h))
    outer = left_factor_solve(F, candidate)
    if outer is None:
        return None
    return outer, candidate


@dataclass(frozen=True)
class DecompositionChain:
    factors: Tuple[Poly, ...]

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(p.degree for p in self.factors)

    def recompose(self) -> Poly:
        return compose_all(*self.factors)

    def sort_key(self) -> Tuple:
        return (self.degrees, tuple(p.sort_key() for p in self.factors))


@dataclass
class DecompositionReport:
    target: Poly
    chains: List[DecompositionChain] = dataclass_field(default_factory=list)

    @property
    def quotient(self) -> List[DecompositionChain]:
        """One representative per degree sequence."""
        # a degree sequence fixes every normalized right factor, so no two distinct chains share one
        seen: Dict[Tuple[int, ...], DecompositionChain] = {}
        for chain in self.chains:
            seen.setdefault(chain.degrees, chain)
        return list(seen.values())


def _chains(f: Poly) -> List[Tuple[Poly, ...]]:
    found: List[Tuple[Poly, ...]] = []
    for s in range(2, f.degree // 2 + 1):
        if f.degree % s:
            continue
        split = normalized_right_factor(f, s)
        if split is None:
            continue
        outer, inner = split
        for head in _chains(outer):
            found.append(head + (inner,))
    return found or [(f,)]


def complete_decompositions(f: Poly, degree_cap: Optional[int] = None) -> DecompositionReport:
    """All maximal chains, right factors normalized monic with zero constant."""
    cap = ALGEBRA_CAPS["decompose_degree_cap"] if degree_cap is None else degree_cap
    if f.degree < 2:
        raise InputError("decomposition needs degree at least 2")
    if f.degree > cap:
        raise ResourceCapExceeded(f"degree {f.degree} is above the decomposition cap", cap="decompose_degree_cap",
                                  limit=cap)
    chains = [DecompositionChain(c) for c in set(_chains(f))]
    chains.sort(key=lambda c: c.sort_key())
    for chain in chains:
        assert chain.recompose() == f, "decomposition chain does not recompose"
    logger.info("🧩 %s has %d maximal chain(s)", f, len(chains))
    return DecompositionReport(f, chains)


@dataclass(frozen=True)
class EngstromCertificate:
    g: Poly
    h: Poly
    a_hat: Poly
    b_hat: Poly
    c_hat: Poly
    d_hat: Poly
    ell: Optional[LinearPoly] = None

    def check(self, a: Poly, b: Poly, c: Poly, d: Poly) -> bool:
        return (compose(self.g, self.a_hat) == a and compose(self.g, self.c_hat) == c
                and compose(self.b_hat, self.h) == b and compose(self.d_hat, self.h) == d
                and compose(self.a_hat, self.b_hat) == compose(self.c_hat, self.d_hat))


def engstrom_refine(a: Poly, b: Poly, c: Poly, d: Poly) -> EngstromCertificate:
    """Common left factor of degree gcd(deg a, deg c), common right factor of degree gcd(deg b, deg d)."""
    for p in (a, b, c, d):
        if p.degree < 1:
            raise InputError(f"{p} is constant")
    F = compose(a, b)
    if F != compose(c, d):
        raise HypothesisViolation("a o b and c o d differ")

    inner_split = normalized_right_factor(b, gcd(b.degree, d.degree))
    lcm = b.degree * d.degree // gcd(b.degree, d.degree)
    outer_split = normalized_right_factor(F, lcm)
    if inner_split is None or outer_split is None:
        raise HypothesisViolation("no common refinement of the two decompositions")
    b_hat, h = inner_split
    d_hat = left_factor_solve(d, h)
    g, W = outer_split
    a_hat, c_hat = left_factor_solve(W, b), left_factor_solve(W, d)
    if d_hat is None or a_hat is None or c_hat is None:
        raise HypothesisViolation("no common refinement of the two decompositions")

    ell = None
    if a.degree == c.degree:
        ell = LinearPoly.from_poly(c_hat).inverse().after(LinearPoly.from_poly(a_hat))
    certificate = EngstromCertificate(g, h, a_hat, b_hat, c_hat, d_hat, ell)
    if not certificate.check(a, b, c, d):
        raise HypothesisViolation("refinement failed verification")
    return certificate


def poly_nth_roots(Q: Poly, n: int) -> List[Poly]:
    """All P over Q's field with P^n = Q."""
    if Q.is_zero():
        return [Q]
    if Q.degree == 0:
        return [Poly.constant(Q.field, r) for r in nth_roots(Q.lc, n)]
    if Q.degree % n:
        return []
    return right_factor_solve(Q, Poly.monomial(Q.field, n))


def _pick(roots: List[Poly]) -> Poly:
    for root in roots:
        if root.lc.is_one():
            return root
    return roots[0]


@dataclass(frozen=True)
class PowerFormSplit:
    j: int
    k: int
    P1: Poly
    P2: Poly
    ell: LinearPoly
    coprime_sn: bool
    coprime_jn: bool
    coprime_kn: bool


def _power_part(poly: Poly, n: int, what: str) -> Tuple[int, Poly]:
    valuation = poly.valuation()
    rest = poly.shift_down(valuation)
    roots = poly_nth_roots(rest, n)
    if not roots:
        hint = cyclotomic_hint(Poly.monomial(poly.field, n) - rest) if rest.degree == 0 else None
        if hint is not None:
            raise FieldExtensionRequired(f"{what} needs an n-th root of its leading coefficient",
                                         equation=f"P^{n} = {rest}", hint=hint)
        raise HypothesisViolation(f"{what} is not of the form x^j P(x)^{n}")
    return valuation, _pick(roots)


def decompose_power_form(A: Poly, B: Poly, s: int, n: int) -> PowerFormSplit:
    """Split A o B = x^s P(x)^n into A = x^j P1^n o ell and B = ell^-1 o x^k P2^n."""
    if s < 1 or n < 1:
        raise InputError("s and n must be positive")
    if A.degree < 1 or B.degree < 1:
        raise InputError("A and B must be nonconstant")
    target = compose(A, B)
    if target.valuation() < s or not poly_nth_roots(target.shift_down(s), n):
        raise HypothesisViolation(f"A o B is not x^{s} P(x)^{n}")

    lead = B.lc.inverse()
    ell = LinearPoly(lead, -B.coeff(0) * lead)
    k, P2 = _power_part(compose(ell.as_poly(), B), n, "the normalized inner factor")
    j, P1 = _power_part(compose(A, ell.inverse().as_poly()), n, "the outer factor")

    x = Poly.x(A.field)
    assert compose(x ** j * P1 ** n, ell.as_poly()) == A
    assert compose(ell.inverse().as_poly(), x ** k * P2 ** n) == B
    return PowerFormSplit(j, k, P1, P2, ell, gcd(s, n) == 1, gcd(j, n) == 1, gcd(k, n) == 1)
