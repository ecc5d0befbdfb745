"""
Equivalence and linear conjugacy of polynomials.

Everything here goes through two normal forms that leave no room for a
translation: the Tschirnhaus form M o f o S (monic, no x^(d-1) term, no
constant term), under which equivalence is a pure scaling, and the
translated form f(x + beta) - beta (no x^(d-1) term), under which linear
conjugacy is a pure scaling. A scaling alpha is pinned down by equations
alpha^e = r, which are decided over the algebraic closure before in-field
solutions are listed.
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Tuple

from algebra.fields import FieldDescriptor, Scalar
from algebra.poly import LinearPoly, Poly, chebyshev, compose
from algebra.roots import MonomialSolution, solve_monomial_system
from errors import DegreeMismatch, FieldExtensionRequired, InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TschirnhausForm:
    """f = outer^-1 o normal o shift^-1."""

    original: Poly
    normal: Poly
    shift: LinearPoly
    outer: LinearPoly

    @property
    def is_power(self) -> bool:
        return self.normal == Poly.monomial(self.normal.field, self.normal.degree)


def tschirnhaus(f: Poly) -> TschirnhausForm:
    if f.degree < 1:
        raise InputError(f"{f} is constant")
    field, d = f.field, f.degree
    beta = -f.coeff(d - 1) / (f.lc * d)
    shift = LinearPoly(field.one(), beta)
    shifted = compose(f, shift.as_poly())
    inv = f.lc.inverse()
    outer = LinearPoly(inv, -shifted.coeff(0) * inv)
    return TschirnhausForm(f, compose(outer.as_poly(), shifted), shift, outer)


def translated(f: Poly) -> Tuple[Poly, Scalar]:
    """(f(x + beta) - beta, beta) with the x^(d-1) term removed."""
    beta = -f.coeff(f.degree - 1) / (f.lc * f.degree)
    return compose(f, Poly(f.field, (beta, f.field.one()))) - Poly.constant(f.field, beta), beta


def symmetry_gap(normal: Poly) -> int:
    """gcd of d - i over the nonzero lower coefficients of a Tschirnhaus form (0 for x^d)."""
    d = normal.degree
    g = 0
    for i in normal.support():
        if i < d:
            g = gcd(g, d - i)
    return g


def _scaling(pairs: List[Tuple[int, Scalar, Scalar]], field: FieldDescriptor) -> Optional[MonomialSolution]:
    """Solve alpha^e = left/right over all (e, left, right); None when the zero patterns differ."""
    equations = []
    for e, left, right in pairs:
        if left.is_zero() != right.is_zero():
            return None
        if not left.is_zero():
            equations.append((e, left / right))
    solution = solve_monomial_system(field, equations)
    return solution if solution.consistent else None


def _candidates(solution: MonomialSolution, field: FieldDescriptor) -> List[Scalar]:
    return [field.one()] if solution.free else list(solution.roots)


@dataclass(frozen=True)
class EquivalenceReport:
    witness: Optional[Tuple[LinearPoly, LinearPoly]]
    over_closure: bool
    equation: str = ""
    hint: Optional[int] = None


def equivalence_report(f: Poly, g: Poly) -> EquivalenceReport:
    """Decide L2 o f o L1 = g over the closure; the witness, if any, is in-field."""
    if f.field != g.field:
        raise InputError("equivalence across fields")
    if f.degree != g.degree or f.degree < 1:
        raise DegreeMismatch(f"equivalence needs equal positive degrees, got {f.degree} and {g.degree}")
    field, d = f.field, f.degree
    nf, ng = tschirnhaus(f), tschirnhaus(g)
    solution = _scaling([(d - i, nf.normal.coeff(i), ng.normal.coeff(i)) for i in range(d)], field)
    if solution is None:
        return EquivalenceReport(None, False)
    if not solution.in_field:
        return EquivalenceReport(None, True, solution.equation("alpha"), solution.hint())

    alpha = _candidates(solution, field)[0]
    inner = LinearPoly(alpha, field.zero())
    outer = LinearPoly(alpha ** (-d), field.zero())
    L2 = ng.outer.inverse().after(outer).after(nf.outer)
    L1 = nf.shift.after(inner).after(ng.shift.inverse())
    assert compose(L2.as_poly(), compose(f, L1.as_poly())) == g, "equivalence witness failed"
    return EquivalenceReport((L1, L2), True, solution.equation("alpha"))


def equivalence_witness(f: Poly, g: Poly, strict: bool = False) -> Optional[Tuple[LinearPoly, LinearPoly]]:
    """(L1, L2) with L2 o f o L1 = g over the current field, or None."""
    report = equivalence_report(f, g)
    if strict and report.witness is None and report.over_closure:
        raise FieldExtensionRequired("equivalence needs a larger field", equation=report.equation, hint=report.hint)
    return report.witness


@dataclass(frozen=True)
class ConjugacyReport:
    witness: Optional[LinearPoly]
    witnesses: Tuple[LinearPoly, ...]
    over_closure: bool
    equation: str = ""
    hint: Optional[int] = None


def linear_conjugacy(f: Poly, g: Poly) -> ConjugacyReport:
    """All in-field ell with ell o f o ell^-1 = g, decided over the closure first."""
    if f.field != g.field:
        raise InputError("conjugacy across fields")
    if f.degree != g.degree or f.degree < 1:
        raise DegreeMismatch(f"conjugacy needs equal positive degrees, got {f.degree} and {g.degree}")
    field = f.field
    F0, beta_f = translated(f)
    G0, beta_g = translated(g)
    solution = _scaling([(i - 1, F0.coeff(i), G0.coeff(i)) for i in range(f.degree + 1)], field)
    if solution is None:
        return ConjugacyReport(None, (), False)
    if not solution.in_field:
        return ConjugacyReport(None, (), True, solution.equation("a"), solution.hint())
    witnesses = []
    for a in _candidates(solution, field):
        ell = LinearPoly(a, beta_g - a * beta_f)
        if compose(ell.as_poly(), compose(f, ell.inverse().as_poly())) == g:
            witnesses.append(ell)
    witnesses.sort(key=lambda l: l.sort_key())
    if not witnesses:
        return ConjugacyReport(None, (), True, solution.equation("a"))
    return ConjugacyReport(witnesses[0], tuple(witnesses), True, solution.equation("a"))


@dataclass(frozen=True)
class ShapeReport:
    degree: int
    is_cyclic: bool
    is_dihedral: bool
    dihedral_over_closure: bool
    conj_to_power: Optional[LinearPoly]
    conj_to_pm_chebyshev: Optional[Tuple[int, LinearPoly]]
    disintegrated: bool
    cyclic_witness: Optional[Tuple[LinearPoly, LinearPoly]] = None
    dihedral_witness: Optional[Tuple[LinearPoly, LinearPoly]] = None


def _require_in_field(report: ConjugacyReport, target: str, partial: dict) -> Optional[LinearPoly]:
    if report.over_closure and report.witness is None:
        raise FieldExtensionRequired(f"a conjugacy to {target} exists only over a larger field",
                                     equation=report.equation, hint=report.hint, partial=partial)
    return report.witness


def classify(f: Poly) -> ShapeReport:
    if f.degree < 2:
        raise InputError("classify needs degree at least 2")
    field, d = f.field, f.degree
    form = tschirnhaus(f)
    is_cyclic = form.is_power
    cyclic_witness = equivalence_report(f, Poly.monomial(field, d)).witness if is_cyclic else None

    dihedral = EquivalenceReport(None, False)
    if d >= 3:
        dihedral = equivalence_report(f, chebyshev(d, field))
    partial = {"is_cyclic": is_cyclic, "is_dihedral": dihedral.witness is not None}

    to_power = _require_in_field(linear_conjugacy(f, Poly.monomial(field, d)), f"x^{d}", partial)
    to_chebyshev = None
    chebyshev_found = False
    for sign in (1, -1):
        report = linear_conjugacy(f, chebyshev(d, field).scale(sign))
        if report.over_closure:
            chebyshev_found = True
            to_chebyshev = (sign, _require_in_field(report, "+-T", partial))
            break

    disintegrated = to_power is None and not chebyshev_found
    shape = ShapeReport(d, is_cyclic, dihedral.witness is not None, dihedral.over_closure, to_power, to_chebyshev,
                        disintegrated, cyclic_witness, dihedral.witness)
    logger.debug("classified %s: cyclic=%s dihedral=%s disintegrated=%s", f, is_cyclic, shape.is_dihedral,
                 disintegrated)
    return shape


@dataclass(frozen=True)
class PowerNormalForm:
    """ell1 o A o ell2 = x^s P(x^n)."""

    ell1: LinearPoly
    ell2: LinearPoly
    s: int
    n: int
    P: Poly

    def rebuild(self) -> Poly:
        field = self.P.field
        return Poly.monomial(field, self.s) * self.P.stretch(self.n)


def power_normal_form(A: Poly) -> Optional[PowerNormalForm]:
    """None exactly when A is cyclic."""
    if A.degree < 2:
        raise InputError("power_normal_form needs degree at least 2")
    form = tschirnhaus(A)
    if form.is_power:
        return None
    n = symmetry_gap(form.normal)
    s = form.normal.valuation()
    P = form.normal.shift_down(s).shrink(n)
    result = PowerNormalForm(form.outer, form.shift, s, n, P)
    assert compose(form.outer.as_poly(), compose(A, form.shift.as_poly())) == result.rebuild()
    return result
