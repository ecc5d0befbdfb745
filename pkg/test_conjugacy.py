#!/usr/bin/env python3
"""
Tschirnhaus forms, equivalence, linear conjugacy and the shape classifier.
"""

import random
from fractions import Fraction

import pytest

from algebra.fields import Q
from algebra.poly import LinearPoly, Poly, chebyshev, compose, conjugate, iterate
from errors import DegreeMismatch, FieldExtensionRequired, InputError
from ritt.conjugacy import (classify, equivalence_report, equivalence_witness, linear_conjugacy,
                            power_normal_form, symmetry_gap, translated, tschirnhaus)
from ritt.symmetry import gamma_group

x = Poly.x(Q)


def test_tschirnhaus_form():
    f = 2 * (x + 1) ** 3 + 3
    form = tschirnhaus(f)
    assert form.is_power
    assert form.normal == x ** 3
    assert compose(form.outer.as_poly(), compose(f, form.shift.as_poly())) == form.normal


def test_translated_form_drops_second_coefficient():
    f = x ** 3 + 3 * x ** 2 + 1
    F0, beta = translated(f)
    assert F0.coeff(2).is_zero()
    assert beta == Q.scalar(-1)


def test_symmetry_gap():
    assert symmetry_gap(x ** 3 + x) == 2
    assert symmetry_gap(x ** 4 + x) == 3
    assert symmetry_gap(x ** 5) == 0


def test_equivalence_of_quadratics():
    L1, L2 = equivalence_witness(x ** 2 + 1, x ** 2)
    assert compose(L2.as_poly(), compose(x ** 2 + 1, L1.as_poly())) == x ** 2


def test_equivalence_different_shapes():
    report = equivalence_report(x ** 3 + x, x ** 3)
    assert report.witness is None and not report.over_closure


def test_equivalence_over_closure_only():
    report = equivalence_report(x ** 3 + x, chebyshev(3))
    assert report.witness is None and report.over_closure
    assert report.equation.startswith("alpha^2")
    assert equivalence_witness(x ** 3 + x, chebyshev(3)) is None
    with pytest.raises(FieldExtensionRequired):
        equivalence_witness(x ** 3 + x, chebyshev(3), strict=True)


def test_equivalence_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        equivalence_report(x ** 2, x ** 3)


def test_scaling_equivalence_has_no_translation():
    rng = random.Random(11)
    checked = 0
    for _ in range(30):
        s, n = rng.choice([(1, 2), (2, 3), (1, 3)])
        P = Poly.from_coeffs(Q, [rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(-3, 3), 1])
        f = x ** s * P ** n
        if f.degree < 5 or gamma_group(f).order != 1:
            continue
        a = rng.choice([2, -1, Fraction(1, 2), 3])
        c = rng.choice([-2, 1, Fraction(1, 3), 5])
        g = compose(f, a * x).scale(c)
        L1, L2 = equivalence_witness(f, g)
        assert L1.b.is_zero() and L2.b.is_zero()
        assert L1.a == Q.scalar(a) and L2.a == Q.scalar(c)
        checked += 1
    assert checked > 0


def test_conjugacy_recovers_random_witness():
    rng = random.Random(5)
    for _ in range(20):
        f = Poly.from_coeffs(Q, [rng.randint(-3, 3), rng.randint(1, 3), rng.randint(-3, 3), rng.choice([1, 2])])
        ell = LinearPoly.make(Q, rng.choice([-2, -1, 3, Fraction(1, 2)]), rng.randint(-3, 3))
        report = linear_conjugacy(f, conjugate(ell, f))
        assert ell in report.witnesses
        for w in report.witnesses:
            assert conjugate(w, f) == conjugate(ell, f)


def test_conjugacy_to_power_map_needs_extension():
    report = linear_conjugacy(2 * x ** 3, x ** 3)
    assert report.witness is None and report.over_closure
    assert report.equation == "a^2 = 2"


def test_classify_quadratic():
    shape = classify(x ** 2 + 1)
    assert shape.is_cyclic and not shape.is_dihedral
    assert shape.disintegrated
    assert shape.cyclic_witness is not None


def test_classify_odd_cubic():
    shape = classify(x ** 3 + x)
    assert not shape.is_cyclic and not shape.is_dihedral
    assert shape.dihedral_over_closure
    assert shape.disintegrated


def test_classify_power_and_chebyshev():
    power = classify(x ** 3)
    assert power.is_cyclic and not power.disintegrated
    assert power.conj_to_power is not None

    for delta in (3, 4, 5):
        shape = classify(chebyshev(delta))
        assert shape.is_dihedral and not shape.disintegrated
        sign, ell = shape.conj_to_pm_chebyshev
        assert sign == 1 and conjugate(ell, chebyshev(delta)) == chebyshev(delta)


def test_classify_conjugated_chebyshev():
    ell = LinearPoly.make(Q, 2, 1)
    shape = classify(conjugate(ell, chebyshev(3)))
    assert not shape.disintegrated
    assert shape.conj_to_pm_chebyshev is not None


def test_classify_requires_extension():
    with pytest.raises(FieldExtensionRequired) as info:
        classify(2 * x ** 3)
    assert info.value.details["partial"]["is_cyclic"] is True


def test_classify_rejects_linear():
    with pytest.raises(InputError):
        classify(x + 1)


def test_power_normal_form():
    form = power_normal_form(x ** 3 + x)
    assert (form.s, form.n) == (1, 2)
    assert form.P == x + 1
    assert form.ell1.is_identity() and form.ell2.is_identity()

    A = compose(x ** 3 + x, x + 1).scale(2) + 5
    form = power_normal_form(A)
    assert (form.s, form.n) == (1, 2)
    assert compose(form.ell1.as_poly(), compose(A, form.ell2.as_poly())) == form.rebuild()


def test_power_normal_form_of_cyclic_is_none():
    assert power_normal_form(x ** 5) is None
    assert power_normal_form((x - 2) ** 4 + 7) is None


CONJUGATORS = [LinearPoly.make(Q, 2, 1), LinearPoly.make(Q, -1, 3), LinearPoly.make(Q, Fraction(1, 2), -1)]


@pytest.mark.parametrize("delta", range(2, 9))
def test_power_and_chebyshev_conjugates_are_not_disintegrated(delta):
    for ell in CONJUGATORS:
        for base in (x ** delta, chebyshev(delta), -chebyshev(delta)):
            assert not classify(conjugate(ell, base)).disintegrated


def test_disintegration_is_conjugation_invariant():
    rng = random.Random(20)
    for f in (x ** 2 + 1, x ** 3 + x, x ** 3 + x ** 2 + 7):
        assert classify(f).disintegrated
        for _ in range(20):
            ell = LinearPoly.make(Q, rng.choice([-3, -1, 2, Fraction(1, 3), Fraction(-2, 5)]), rng.randint(-4, 4))
            assert classify(conjugate(ell, f)).disintegrated


def test_iterates_of_disintegrated_maps_are_neither_cyclic_nor_dihedral():
    for f, n in ((x ** 2 + 1, 4), (x ** 2 - 3 * x, 4), (x ** 3 + x, 2), (x ** 3 + x ** 2 + 7, 2)):
        shape = classify(iterate(f, n))
        assert not shape.is_cyclic
        assert not shape.is_dihedral and not shape.dihedral_over_closure


def _random_poly(rng, degree):
    return Poly.from_coeffs(Q, [rng.randint(-3, 3) for _ in range(degree)] + [rng.choice([-2, -1, 1, 2])])


def test_swapping_a_disintegrated_composite_keeps_it_disintegrated():
    rng = random.Random(41)
    checked = 0
    while checked < 50:
        A, B = _random_poly(rng, rng.randint(2, 3)), _random_poly(rng, rng.randint(2, 3))
        try:
            forward = classify(compose(A, B))
        except FieldExtensionRequired:
            continue
        if not forward.disintegrated:
            continue
        assert classify(compose(B, A)).disintegrated
        checked += 1


def test_power_normal_forms_are_never_cyclic():
    rng = random.Random(37)
    for _ in range(30):
        s, n = rng.choice([(1, 2), (1, 3), (2, 3), (3, 2), (1, 4), (3, 4)])
        P = Poly.from_coeffs(Q, [rng.choice([-2, -1, 1, 2])] + [rng.randint(-2, 2) for _ in range(rng.randint(0, 1))]
                             + [rng.choice([-1, 1, 2])])
        L1, L2 = rng.choice(CONJUGATORS), rng.choice(CONJUGATORS)
        A = compose(L1.as_poly(), compose(x ** s * compose(P, x ** n), L2.as_poly()))
        form = power_normal_form(A)
        assert form is not None
        assert form.s > 0 and form.n >= 2 and not form.P.coeff(0).is_zero()
        try:
            cyclic = classify(A).is_cyclic
        except FieldExtensionRequired as e:
            cyclic = e.partial["is_cyclic"]
        assert not cyclic


def test_family_rewrites_only_scale_the_outside():
    rng = random.Random(310)
    checked = 0
    while checked < 25:
        s, n = rng.choice([(1, 2), (1, 3), (2, 3), (3, 2)])
        P = Poly.from_coeffs(Q, [rng.choice([-2, -1, 1, 2])] + [rng.randint(-2, 2) for _ in range(rng.randint(0, 1))]
                             + [rng.choice([-1, 1, 2])])
        f = x ** s * P ** n
        if equivalence_report(f, chebyshev(f.degree)).over_closure:
            continue
        a = rng.choice([2, -1, Fraction(1, 2), 3])
        c = rng.choice([1, -1, 2])
        g = x ** s * (c * compose(P, a * x)) ** n
        L1, L2 = equivalence_witness(f, g)
        assert compose(L2.as_poly(), compose(f, L1.as_poly())) == g
        assert L2.b.is_zero()
        checked += 1
