"""
Periodic plane curves of split maps (x, y) -> (f(x), g(y)).

The image of a curve is computed by two eliminations: first y against
v = g(y), then x against u = f(x). Curves are compared through their
normalized squarefree defining polynomials.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from algebra.curves import BivarCurve, bivariate_squarefree, eliminate
from algebra.poly import LinearPoly, Poly, compose, iterate
from algebra.roots import roots_in_field
from errors import CurveCollapsed, FieldMismatch, InputError, ResourceCapExceeded
from ritt.semiconj import solve_p
from ritt.symmetry import commutes_with_iterate, m_infinity
from settings import ALGEBRA_CAPS, SEARCH_CAPS

logger = logging.getLogger(__name__)


def squarefree_curve(C: BivarCurve) -> BivarCurve:
    return BivarCurve.from_terms(C.field, bivariate_squarefree(C.as_dict(), C.field))


def curve_image(C: BivarCurve, f: Poly, g: Poly, degree_cap: Optional[int] = None) -> BivarCurve:
    """Closure of (f x g)(C)."""
    field = C.field
    if f.field != field or g.field != field:
        raise FieldMismatch("curve and maps over different fields")
    if f.degree < 1 or g.degree < 1:
        raise InputError("curve_image needs nonconstant f and g")
    cap = ALGEBRA_CAPS["curve_degree_cap"] if degree_cap is None else degree_cap
    if C.total_degree * max(f.degree, g.degree) > cap:
        raise ResourceCapExceeded(f"image of a degree {C.total_degree} curve may exceed the curve cap",
                                  cap="curve_degree_cap", limit=cap)

    # variables (x, y, v): drop y against v - g(y)
    curve = {(i, j, 0): c for (i, j), c in C.terms}
    graph_g = {(0, k, 0): -c for k, c in enumerate(g.coeffs) if not c.is_zero()}
    graph_g[(0, 0, 1)] = field.one()
    first = eliminate(curve, graph_g, 3, 1, field)

    # variables (x, v, u): drop x against u - f(x)
    lifted = {(i, j, 0): c for (i, j), c in first.items()}
    graph_f = {(k, 0, 0): -c for k, c in enumerate(f.coeffs) if not c.is_zero()}
    graph_f[(0, 0, 1)] = graph_f.get((0, 0, 1), field.zero()) + field.one()
    second = eliminate(lifted, graph_f, 3, 0, field)

    image = {(u, v): c for (v, u), c in second.items()}
    if not image or all(e == (0, 0) for e in image):
        raise CurveCollapsed(f"the image of {C} degenerated during elimination")
    result = BivarCurve.from_terms(field, bivariate_squarefree(image, field))
    logger.debug("image of %s is %s", C, result)
    return result


@dataclass(frozen=True)
class PeriodCertificate:
    curve: BivarCurve
    period: int
    image_chain: Tuple[BivarCurve, ...]

    def verify(self, f: Poly, g: Poly) -> bool:
        chain = self.image_chain
        if len(chain) != self.period + 1 or chain[0] != self.curve or chain[-1] != self.curve:
            return False
        if any(chain[k] == self.curve for k in range(1, self.period)):
            return False
        return all(curve_image(chain[k - 1], f, g) == chain[k] for k in range(1, len(chain)))


def curve_period(C: BivarCurve, f: Poly, g: Poly, N_max: int) -> Optional[PeriodCertificate]:
    """Minimal N <= N_max with (f x g)^N (C) = C, with the image chain."""
    if N_max < 1:
        raise InputError("N_max must be positive")
    start = squarefree_curve(C)
    chain = [start]
    for k in range(1, N_max + 1):
        chain.append(curve_image(chain[-1], f, g))
        if chain[-1] == start:
            logger.info("🔁 %s has period %d", start, k)
            return PeriodCertificate(start, k, tuple(chain))
    return None


@dataclass(frozen=True)
class ProjectionProfile:
    x_constant: bool
    y_constant: bool


def projection_profile(C: BivarCurve) -> ProjectionProfile:
    """x_constant when C is a vertical line family x = const (no y), likewise for y."""
    return ProjectionProfile(C.deg_y == 0, C.deg_x == 0)


@dataclass(frozen=True)
class DiagonalCurve:
    curve: BivarCurve
    g: Poly
    commuting_index: int
    certificate: Optional[PeriodCertificate]


def ms_diagonal_curves(f: Poly, deg_cap: int, iter_bound: int) -> List[DiagonalCurve]:
    """Graphs y = g(x) and x = g(y) for g = f^m o L, L in M(f^inf), g commuting with an iterate of f."""
    field = f.field
    group = m_infinity(f, iter_bound)
    candidates = []
    power, m = Poly.x(field), 0
    while power.degree <= deg_cap:
        for L in group.elements:
            candidates.append(compose(power, L.as_poly()))
        m += 1
        if f.degree ** m > deg_cap:
            break
        power = iterate(f, m)

    seen = set()
    found = []
    for g in sorted(set(candidates), key=lambda p: p.sort_key()):
        n = commutes_with_iterate(f, g, iter_bound)
        if n is None:
            continue
        for curve in (BivarCurve.graph(g), BivarCurve.graph_x(g)):
            if curve in seen:
                continue
            seen.add(curve)
            found.append(DiagonalCurve(curve, g, n, curve_period(curve, f, f, n)))
    return found


@dataclass(frozen=True)
class PeriodicCurve:
    curve: BivarCurve
    period: int
    kind: str


def periodic_curve_search(f: Poly, g: Poly, N_max: Optional[int] = None, deg_cap: Optional[int] = None,
                          include_lines: bool = True) -> List[PeriodicCurve]:
    """Periodic lines through periodic points and periodic graphs of low degree under f x g."""
    N_max = SEARCH_CAPS["n_max"] if N_max is None else N_max
    deg_cap = SEARCH_CAPS["solve_p_deg_bound"] if deg_cap is None else deg_cap
    field = f.field
    found: List[PeriodicCurve] = []
    seen = set()

    def record(curve: BivarCurve, N: int, kind: str):
        if curve not in seen:
            seen.add(curve)
            found.append(PeriodicCurve(curve, N, kind))

    for N in range(1, N_max + 1):
        F, G = iterate(f, N), iterate(g, N)
        x = Poly.x(field)
        if include_lines:
            for a in roots_in_field(F - x):
                record(BivarCurve.vertical(field, a), N, "vertical")
            for b in roots_in_field(G - x):
                record(BivarCurve.horizontal(field, b), N, "horizontal")
        if f.degree != g.degree:
            continue
        # y = P(x) is periodic iff G o P = P o F; x = Q(y) iff F o Q = Q o G
        for P in solve_p(G, F, deg_cap):
            record(BivarCurve.graph(P), N, "graph")
        for Q in solve_p(F, G, deg_cap):
            record(BivarCurve.graph_x(Q), N, "graph")
    return found
