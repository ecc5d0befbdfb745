#!/usr/bin/env python3
"""
Curve images and periods under split maps, and the uniform period constants.
"""

import random
from fractions import Fraction

import pytest

from algebra.curves import BivarCurve
from algebra.fields import FieldDescriptor, Q
from algebra.poly import Poly
from errors import FieldMismatch, InputError, ResourceCapExceeded
from periodic.bounds import bound_c, bound_c1, closed_form_c2
from periodic.curves import (curve_image, curve_period, ms_diagonal_curves, periodic_curve_search,
                             projection_profile)

x = Poly.x(Q)


def line(a, b, c=0, field=Q):
    """a*x + b*y + c = 0"""
    return BivarCurve.from_terms(field, {(1, 0): a, (0, 1): b, (0, 0): c})


def test_diagonal_is_invariant():
    diagonal = BivarCurve.graph(x)
    assert curve_image(diagonal, x ** 2, x ** 2) == diagonal
    assert curve_image(diagonal, x ** 2 + 1, x ** 2 + 1) == diagonal


def test_antidiagonal_folds_onto_diagonal():
    assert curve_image(line(1, 1), x ** 2, x ** 2) == line(1, -1)
    assert curve_period(line(1, 1), x ** 2, x ** 2, 3) is None


def test_image_of_graph():
    # (t, t + 1) -> (t^2, t^2 + 2t + 1): y = x + 2*sqrt(x) + 1
    image = curve_image(BivarCurve.graph(x + 1), x ** 2, x ** 2)
    assert image.deg_x == 2 and image.deg_y == 2
    for t in (Fraction(1), Fraction(2), Fraction(-3, 2)):
        assert image.evaluate(t ** 2, (t + 1) ** 2).is_zero()


def test_vertical_line_through_fixed_point():
    certificate = curve_period(BivarCurve.vertical(Q, 1), x ** 2, x ** 2 + 1, 2)
    assert certificate.period == 1
    assert projection_profile(certificate.curve).x_constant


def test_torsion_translate_has_period_three():
    K = FieldDescriptor.cyclotomic(7)
    X, z = Poly.x(K), K.gen()
    C = BivarCurve.from_terms(K, {(1, 0): K.one(), (0, 1): -z})
    certificate = curve_period(C, X ** 2, X ** 2, 5)
    assert certificate.period == 3
    assert certificate.image_chain[1] == BivarCurve.from_terms(K, {(1, 0): K.one(), (0, 1): -z ** 2})
    assert certificate.verify(X ** 2, X ** 2)


@pytest.mark.parametrize("order,period", [(3, 2), (7, 3), (15, 4)])
def test_torsion_translate_periods(order, period):
    K = FieldDescriptor.cyclotomic(order)
    X, z = Poly.x(K), K.gen()
    C = BivarCurve.from_terms(K, {(1, 0): K.one(), (0, 1): -z})
    certificate = curve_period(C, X ** 2, X ** 2, 5)
    assert certificate.period == period
    assert certificate.verify(X ** 2, X ** 2)


def test_curve_image_guards():
    diagonal = BivarCurve.graph(x)
    with pytest.raises(ResourceCapExceeded):
        curve_image(diagonal, x ** 2, x ** 2, degree_cap=1)
    with pytest.raises(InputError):
        curve_image(diagonal, Poly.constant(Q, 2), x ** 2)
    K = FieldDescriptor.cyclotomic(3)
    with pytest.raises(FieldMismatch):
        curve_image(diagonal, Poly.x(K) ** 2, x ** 2)
    with pytest.raises(InputError):
        curve_period(diagonal, x ** 2, x ** 2, 0)


def test_diagonal_curves_of_odd_cubic():
    f = x ** 3 + x
    found = ms_diagonal_curves(f, 3, 2)
    curves = {d.curve for d in found}
    assert len(found) == 6
    assert line(1, -1) in curves and line(1, 1) in curves
    assert BivarCurve.graph(f) in curves and BivarCurve.graph_x(f) in curves
    for diagonal in found:
        assert diagonal.commuting_index == 1
        assert diagonal.certificate is not None and diagonal.certificate.period == 1


def test_periodic_curve_search_with_lines():
    found = periodic_curve_search(x ** 2, x ** 2, N_max=1, deg_cap=2)
    kinds = [c.kind for c in found]
    assert kinds.count("vertical") == 2 and kinds.count("horizontal") == 2
    graphs = {c.curve for c in found if c.kind == "graph"}
    assert graphs == {BivarCurve.graph(x), BivarCurve.graph(x ** 2), BivarCurve.graph_x(x ** 2)}


def test_periodic_curve_search_between_conjugate_maps():
    f, g = x ** 2 + 1, x ** 2 - 2 * x + 3
    found = periodic_curve_search(f, g, N_max=1, deg_cap=2, include_lines=False)
    curves = {c.curve for c in found}
    assert curves == {BivarCurve.graph(x + 1), BivarCurve.graph(x ** 2 + 2), BivarCurve.graph_x(x ** 2 - 2 * x + 2)}
    for c in found:
        assert curve_image(c.curve, f, g) == c.curve


def test_mixed_pair_has_no_periodic_graphs():
    assert periodic_curve_search(x ** 3 + x, x ** 3, N_max=3, deg_cap=2, include_lines=False) == []


def test_bound_c1():
    assert bound_c1(2, 2).value.value == 32
    assert bound_c1(3, 2).value.value == 162
    third = bound_c1(2, 3).value
    assert third.is_exact and third.value == 2 ** 134
    with pytest.raises(InputError):
        bound_c1(2, 1)


def test_bound_c():
    assert bound_c(5, 1).value.value == 1
    assert bound_c(2, 2).value.value == 2147483648
    assert bound_c(3, 2).value.value == Fraction(3 ** 162, 2)
    assert closed_form_c2(3).value == bound_c(3, 2).value.value
    with pytest.raises(InputError):
        bound_c(1, 2)


def test_bound_c_goes_symbolic():
    result = bound_c(2, 3)
    assert result.value.kind == "symbolic"
    assert result.value.log2 > 1e40
    assert len(result.trace) == 3
    assert str(result.value).startswith("max")


def test_bound_c_odd_degree_halves_are_exact_rationals():
    second = bound_c(3, 2).value
    assert second.is_exact and not second.is_integral
    assert second.parity is None
    assert bound_c(2, 2).value.is_integral
    assert bound_c(2, 2).value.parity == 0


def test_bound_c_closed_form_up_to_degree_four():
    for d in (2, 3, 4):
        assert bound_c(d, 2).value == closed_form_c2(d)
    assert bound_c(4, 2).value.value == 2 ** 1023


def test_bound_c_beyond_float_range_stays_symbolic():
    result = bound_c(3, 3)
    value = result.value
    assert value.kind == "symbolic"
    assert value.log2 == float("inf")
    # log2(log2(3^c1(3,3))) with c1(3,3) = 324 * 3^648
    assert 1035 < value.log2_log2 < 1037
    assert not value.is_integral
    assert len(result.trace) == 3

    assert bound_c(4, 3).value.kind == "symbolic"
    assert bound_c(2, 3).value.is_integral


def test_bound_c1_tower_estimate():
    third = bound_c1(3, 3).value
    assert third.is_exact and third.value == 324 * 3 ** 648
    fourth = bound_c1(3, 4).value
    assert fourth.kind == "symbolic"
    assert 1037 < fourth.log2_log2 < 1039
    assert fourth.parity == 0


def test_curve_image_vanishes_on_sampled_points():
    rng = random.Random(20)
    nonzero = [-2, -1, 1, 2]
    for _ in range(4):
        f = Poly.from_coeffs(Q, [rng.randint(-2, 2), rng.randint(-2, 2), rng.choice(nonzero)])
        g = Poly.from_coeffs(Q, [rng.randint(-2, 2), rng.randint(-2, 2), rng.choice(nonzero)])
        h = Poly.from_coeffs(Q, [rng.randint(-2, 2)] + [rng.randint(-2, 2) for _ in range(rng.randint(0, 1))]
                             + [rng.choice(nonzero)])
        image = curve_image(BivarCurve.graph(h), f, g)
        for _ in range(20):
            a = Q.scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
            assert image.evaluate(f(a), g(h(a))).is_zero()
