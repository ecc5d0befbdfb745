"""
Semiconjugacy f o p = p o eta: checking, solving for eta or p, the normal
form of a semiconjugacy of coprime degrees, and the bounded search for a
common polynomial semiconjugate to iterates of two maps.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, List, Optional, Tuple

from algebra.poly import LinearPoly, Poly, compose, iterate
from algebra.roots import cyclotomic_hint, nth_roots, roots_in_field
from errors import FieldExtensionRequired, HypothesisViolation, InputError, ResourceCapExceeded
from ritt.conjugacy import classify, tschirnhaus
from ritt.decompose import complete_decompositions, poly_nth_roots, right_factor_solve
from settings import ALGEBRA_CAPS, SEARCH_CAPS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SemiconjWitness:
    f: Poly
    p: Poly
    eta: Poly


def semiconj_check(w: SemiconjWitness) -> bool:
    """True iff f o p = p o eta."""
    return compose(w.f, w.p) == compose(w.p, w.eta)


def solve_eta_all(f: Poly, p: Poly) -> List[Poly]:
    if f.degree < 2 or p.degree < 1:
        raise InputError("solve_eta needs deg f >= 2 and deg p >= 1")
    return right_factor_solve(compose(f, p), p)


def solve_eta(f: Poly, p: Poly) -> Optional[Poly]:
    """eta with f o p = p o eta, preferring the one sharing f's leading coefficient."""
    solutions = solve_eta_all(f, p)
    for eta in solutions:
        if eta.lc == f.lc:
            return eta
    return solutions[0] if solutions else None


@dataclass
class SolvePReport:
    solutions: List[Poly] = dataclass_field(default_factory=list)
    # degree b -> equation whose roots lie outside the field
    missing: Dict[int, str] = dataclass_field(default_factory=dict)
    hints: Dict[int, Optional[int]] = dataclass_field(default_factory=dict)


def solve_p_report(f: Poly, eta: Poly, deg_bound: int, degree_cap: Optional[int] = None) -> SolvePReport:
    if f.field != eta.field:
        raise InputError("solve_p across fields")
    if f.degree != eta.degree or f.degree < 2:
        raise InputError("solve_p needs deg f = deg eta >= 2")
    cap = ALGEBRA_CAPS["degree_cap"] if degree_cap is None else degree_cap
    field, d = f.field, f.degree
    report = SolvePReport()
    for b in range(1, deg_bound + 1):
        if b * d > cap:
            raise ResourceCapExceeded(f"solve_p at degree {b} needs compositions above the cap", cap="degree_cap",
                                      limit=cap)
        target = eta.lc ** b / f.lc
        leads = nth_roots(target, d - 1)
        if not leads:
            report.missing[b] = f"a^{d - 1} = {target}"
            report.hints[b] = cyclotomic_hint(Poly.monomial(field, d - 1) - Poly.constant(field, target))
            continue
        for a in leads:
            pivot = f.lc * a ** (d - 1) * d
            coeffs = [field.zero()] * b + [a]
            for k in range(1, b + 1):
                current = Poly(field, tuple(coeffs))
                residual = compose(f, current) - compose(current, eta)
                coeffs[b - k] = -residual.coeff(b * d - k) / pivot
            candidate = Poly(field, tuple(coeffs))
            if compose(f, candidate) == compose(candidate, eta):
                report.solutions.append(candidate)
    report.solutions.sort(key=lambda p: p.sort_key())
    return report


def solve_p(f: Poly, eta: Poly, deg_bound: int, strict: bool = False) -> List[Poly]:
    """All in-field p with 1 <= deg p <= deg_bound and f o p = p o eta."""
    report = solve_p_report(f, eta, deg_bound)
    if strict and report.missing and not report.solutions:
        b = min(report.missing)
        raise FieldExtensionRequired("leading coefficient of p lies outside the field", equation=report.missing[b],
                                     hint=report.hints[b])
    return report.solutions


def brute_force_p(f: Poly, eta: Poly, deg_bound: int, height: Optional[int] = None) -> List[Poly]:
    """Every p with rational coefficients of height <= height solving f o p = p o eta."""
    height = SEARCH_CAPS["oracle_height"] if height is None else height
    values = sorted({Fraction(a, q) for q in range(1, height + 1) for a in range(-height, height + 1)})
    found = []
    for b in range(1, deg_bound + 1):
        for coeffs in product(values, repeat=b + 1):
            if coeffs[-1] == 0:
                continue
            p = Poly.from_coeffs(f.field, coeffs)
            if compose(f, p) == compose(p, eta):
                found.append(p)
    return sorted(found, key=lambda p: p.sort_key())


@dataclass(frozen=True)
class InouNormalForm:
    """ell1 o f o ell1^-1 = x^c P(x)^b, ell1 o p o ell2^-1 = x^b, ell2 o eta o ell2^-1 = x^c P(x^b)."""

    ell1: LinearPoly
    ell2: LinearPoly
    b: int
    c: int
    P: Poly
    congruence_flag: bool
    congruence_mod_b: bool


def inou_normal_form(w: SemiconjWitness) -> InouNormalForm:
    f, p, eta = w.f, w.p, w.eta
    if not semiconj_check(w):
        raise HypothesisViolation("f o p != p o eta")
    d, b = f.degree, p.degree
    if gcd(d, b) != 1:
        raise HypothesisViolation(f"deg f = {d} and deg p = {b} are not coprime")
    if not classify(f).disintegrated:
        raise HypothesisViolation(f"{f} is not disintegrated")

    field = f.field
    if b == 1:
        fixed = roots_in_field(f - Poly.x(field))
        if not fixed:
            raise FieldExtensionRequired("no fixed point of f in the field", equation=f"{f - Poly.x(field)} = 0",
                                         hint=cyclotomic_hint(f - Poly.x(field)))
        ell1 = LinearPoly(field.one(), -fixed[0])
        ell2 = ell1.after(LinearPoly.from_poly(p))
    else:
        form = tschirnhaus(p)
        if not form.is_power:
            raise HypothesisViolation(f"{p} is not cyclic")
        ell1, ell2 = form.outer, form.shift.inverse()

    f_prime = compose(ell1.as_poly(), compose(f, ell1.inverse().as_poly()))
    eta_prime = compose(ell2.as_poly(), compose(eta, ell2.inverse().as_poly()))
    c = eta_prime.valuation()
    P = eta_prime.shift_down(c).shrink(b)
    x = Poly.x(field)
    if P is None or f_prime != x ** c * P ** b:
        raise HypothesisViolation("the conjugated pair is not of the form x^c P(x)^b")
    assert compose(ell1.as_poly(), compose(p, ell2.inverse().as_poly())) == x ** b
    # d = c + b deg P, so congruence_mod_b always holds; congruence_flag is reported, not enforced
    return InouNormalForm(ell1, ell2, b, c, P, (c - b) % d == 0, (c - d) % b == 0)


# -- common semiconjugate search ---------------------------------------------

@dataclass(frozen=True)
class CommonWitness:
    N: int
    eta: Poly
    p: Poly
    q: Poly

    def check(self, f: Poly, g: Poly) -> bool:
        F, G = iterate(f, self.N), iterate(g, self.N)
        return compose(F, self.p) == compose(self.p, self.eta) and compose(G, self.q) == compose(self.q, self.eta)


@dataclass
class CommonSearchResult:
    witness: Optional[CommonWitness]
    strategy: str = ""
    transcript: List[str] = dataclass_field(default_factory=list)

    @property
    def status(self) -> str:
        return "found" if self.witness is not None else "not found (bounded search)"


def _candidates(F: Poly, deg_cap: int) -> List[Tuple[str, Poly, Poly]]:
    """(strategy, eta, p) with F o p = p o eta."""
    field = F.field
    found = [("identity", F, Poly.x(field))]
    if F.degree <= ALGEBRA_CAPS["decompose_degree_cap"]:
        for chain in complete_decompositions(F).chains:
            for cut in range(1, len(chain.factors)):
                A = chain.factors[0]
                for factor in chain.factors[1:cut]:
                    A = compose(A, factor)
                tail = chain.factors[cut]
                for factor in chain.factors[cut + 1:]:
                    tail = compose(tail, factor)
                if A.degree <= deg_cap:
                    found.append(("swap", compose(tail, A), A))
    x = Poly.x(field)
    for x0 in roots_in_field(F - x):
        ell1 = LinearPoly(field.one(), -x0)
        shifted = compose(ell1.as_poly(), compose(F, ell1.inverse().as_poly()))
        j = shifted.valuation()
        rest = shifted.shift_down(j)
        for b in range(2, min(rest.degree, deg_cap) + 1):
            roots = poly_nth_roots(rest, b) if rest.degree % b == 0 else []
            for P1 in roots[:1]:
                W = x ** j * P1.stretch(b)
                p = compose(ell1.inverse().as_poly(), x ** b)
                found.append(("power form", W, p))
    unique = {}
    for strategy, eta, p in found:
        unique.setdefault((eta, p), (strategy, eta, p))
    return sorted(unique.values(), key=lambda item: (item[2].degree, item[2].sort_key(), item[1].sort_key()))


def common_semiconjugate(f: Poly, g: Poly, N_max: Optional[int] = None, deg_cap: Optional[int] = None
                         ) -> CommonSearchResult:
    """Bounded search for N, eta, p, q with f^N o p = p o eta and g^N o q = q o eta."""
    N_max = SEARCH_CAPS["n_max"] if N_max is None else N_max
    deg_cap = SEARCH_CAPS["deg_cap"] if deg_cap is None else deg_cap
    if N_max < 1 or deg_cap < 1:
        raise InputError("N_max and deg_cap must be positive")
    if f.field != g.field:
        raise InputError("common_semiconjugate across fields")
    if f.degree != g.degree or f.degree < 2:
        raise InputError("common_semiconjugate needs equal degrees >= 2")
    bound = SEARCH_CAPS["solve_p_deg_bound"]
    transcript: List[str] = []
    for N in range(1, N_max + 1):
        if f.degree ** N > ALGEBRA_CAPS["degree_cap"]:
            raise ResourceCapExceeded(f"iterates of order {N} exceed the degree cap", cap="degree_cap",
                                      limit=ALGEBRA_CAPS["degree_cap"], transcript=transcript)
        F, G = iterate(f, N), iterate(g, N)
        left, right = _candidates(F, deg_cap), _candidates(G, deg_cap)
        pairs = sorted(product(left, right), key=lambda pair: pair[0][2].degree + pair[1][2].degree)
        transcript.append(f"N={N}: {len(left)} x {len(right)} candidate pairs")
        for (s1, eta_f, p), (s2, eta_g, q) in pairs:
            strategy = f"{s1}/{s2}"
            if eta_f == eta_g:
                return CommonSearchResult(CommonWitness(N, eta_f, p, q), strategy, transcript)
            if eta_f.degree != eta_g.degree:
                continue
            for P in solve_p(eta_f, eta_g, bound):
                if p.degree * P.degree <= deg_cap:
                    witness = CommonWitness(N, eta_g, compose(p, P), q)
                    return CommonSearchResult(witness, strategy + " + solve_p", transcript)
            for Q in solve_p(eta_g, eta_f, bound):
                if q.degree * Q.degree <= deg_cap:
                    witness = CommonWitness(N, eta_f, p, compose(q, Q))
                    return CommonSearchResult(witness, strategy + " + solve_p", transcript)
        if F.degree <= 3 and F.field.is_rational:
            oracle = brute_force_p(F, G, 2)
            if oracle:
                return CommonSearchResult(CommonWitness(N, G, oracle[0], Poly.x(f.field)), "oracle", transcript)
        transcript.append(f"N={N}: no witness")
    logger.info("🔎 no common semiconjugate for %s and %s up to N=%d", f, g, N_max)
    return CommonSearchResult(None, "", transcript)


@dataclass
class ClassWitness:
    members: List[int]
    N: Optional[int] = None
    theta: Optional[Poly] = None
    maps: Dict[int, Poly] = dataclass_field(default_factory=dict)


def approx_classes(fs: List[Poly], N_max: Optional[int] = None, deg_cap: Optional[int] = None) -> List[ClassWitness]:
    """Partition by pairwise common_semiconjugate success, then chain one theta per class."""
    parent = list(range(len(fs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if find(i) == find(j) or fs[i].degree != fs[j].degree:
                continue
            if common_semiconjugate(fs[i], fs[j], N_max, deg_cap).witness is not None:
                parent[find(j)] = find(i)

    groups: Dict[int, List[int]] = {}
    for i in range(len(fs)):
        groups.setdefault(find(i), []).append(i)

    classes = []
    for members in groups.values():
        first = members[0]
        N, theta = 1, fs[first]
        maps = {first: Poly.x(theta.field)}
        for j in members[1:]:
            result = common_semiconjugate(theta, iterate(fs[j], N), N_max, deg_cap)
            if result.witness is None:
                theta = None
                break
            w = result.witness
            maps = {i: compose(p, w.p) for i, p in maps.items()}
            maps[j] = w.q
            N, theta = N * w.N, w.eta
        classes.append(ClassWitness(members, N if theta is not None else None, theta,
                                    maps if theta is not None else {}))
    return classes
