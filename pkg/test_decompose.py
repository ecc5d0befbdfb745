#!/usr/bin/env python3
"""
Right/left factor solvers, complete decompositions, the gcd/lcm refinement
of a double decomposition and the x^s P(x)^n split.
"""

import random
from fractions import Fraction

import pytest

from algebra.fields import Q
from algebra.poly import LinearPoly, Poly, chebyshev, compose
from errors import DegreeMismatch, FieldExtensionRequired, HypothesisViolation, ResourceCapExceeded
from ritt.decompose import (complete_decompositions, decompose_power_form, engstrom_refine, left_factor_solve,
                            normalized_right_factor, poly_nth_roots, right_factor_solve)

x = Poly.x(Q)


def random_poly(rng, degree):
    coeffs = [rng.randint(-4, 4) for _ in range(degree)] + [rng.choice([-2, -1, 1, 3])]
    return Poly.from_coeffs(Q, coeffs)


def test_right_factor_examples():
    assert set(right_factor_solve(x ** 4 + 2 * x ** 2 + 1, x ** 2)) == {x ** 2 + 1, -x ** 2 - 1}
    assert set(right_factor_solve(x ** 6, x ** 2)) == {x ** 3, -x ** 3}
    assert right_factor_solve(x ** 4 + x, x ** 2) == []


def test_right_factor_needs_extension():
    with pytest.raises(FieldExtensionRequired) as info:
        right_factor_solve(2 * x ** 2, x ** 2)
    assert info.value.hint == 8
    assert info.value.exit_status == 4


def test_right_factor_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        right_factor_solve(x ** 3, x ** 2)


def test_left_factor_examples():
    assert left_factor_solve(x ** 4 + 2 * x ** 2 + 1, x ** 2) == x ** 2 + 2 * x + 1
    assert left_factor_solve(x ** 6, x ** 3) == x ** 2
    assert left_factor_solve(x ** 3 + x, x ** 2) is None
    with pytest.raises(DegreeMismatch):
        left_factor_solve(x ** 2, Poly.constant(Q, 3))


def test_solver_roundtrip():
    rng = random.Random(2024)
    for _ in range(100):
        g = random_poly(rng, rng.randint(1, 3))
        h = random_poly(rng, rng.randint(1, 2))
        F = compose(g, h)
        assert h in right_factor_solve(F, g)
        assert left_factor_solve(F, h) == g


def test_normalized_right_factor():
    outer, inner = normalized_right_factor(x ** 4 + 2 * x ** 2 + 1, 2)
    assert inner == x ** 2 and outer == (x + 1) ** 2
    assert normalized_right_factor(x ** 4 + x, 2) is None
    assert normalized_right_factor(x ** 3 + x, 1) == (x ** 3 + x, x)


def test_complete_decompositions():
    report = complete_decompositions(x ** 4)
    assert [c.degrees for c in report.chains] == [(2, 2)]

    report = complete_decompositions((x ** 2 + x) ** 2)
    assert (x ** 2, x ** 2 + x) in [c.factors for c in report.chains]

    T6 = chebyshev(6)
    report = complete_decompositions(T6)
    assert (x ** 2 - 2, x ** 3 - 3 * x) in [c.factors for c in report.chains]
    for chain in report.chains:
        assert chain.recompose() == T6
        assert chain.degrees[0] * chain.degrees[1] == 6
    assert sorted(c.degrees for c in report.quotient) == [(2, 3), (3, 2)]


def test_prime_degree_is_indecomposable():
    report = complete_decompositions(x ** 5 + x + 1)
    assert [c.factors for c in report.chains] == [(x ** 5 + x + 1,)]


def test_decomposition_cap():
    with pytest.raises(ResourceCapExceeded):
        complete_decompositions(x ** 8, degree_cap=4)


def test_engstrom_shared_translation():
    a, b, c, d = x ** 2, x ** 2 + x, (x - 1) ** 2, x ** 2 + x + 1
    certificate = engstrom_refine(a, b, c, d)
    assert certificate.check(a, b, c, d)
    assert certificate.ell == LinearPoly.make(Q, 1, 1)
    assert compose(c, certificate.ell.as_poly()) == a
    assert compose(certificate.ell.inverse().as_poly(), d) == b


def test_engstrom_coprime_monomials():
    certificate = engstrom_refine(x ** 2, x ** 3, x ** 3, x ** 2)
    assert certificate.g.degree == 1 and certificate.h.degree == 1
    assert compose(certificate.a_hat, certificate.b_hat) == x ** 6
    assert certificate.ell is None


def test_engstrom_identical_decompositions():
    a, b = x ** 2 + 1, x ** 3 + x
    certificate = engstrom_refine(a, b, a, b)
    assert certificate.g == a and certificate.h == b
    assert certificate.a_hat.degree == 1 and certificate.d_hat.degree == 1


def test_engstrom_chebyshev_swap():
    a, b = chebyshev(2), chebyshev(3)
    certificate = engstrom_refine(a, b, b, a)
    assert certificate.check(a, b, b, a)
    assert certificate.g.degree == 1 and certificate.h.degree == 1


def test_engstrom_random_quadruples():
    rng = random.Random(100)
    for k in range(100):
        if k % 2 == 0:
            g, h = random_poly(rng, rng.randint(2, 3)), random_poly(rng, rng.randint(2, 3))
            ell = LinearPoly.make(Q, rng.choice([-2, -1, 2, 3]), rng.randint(-3, 3))
            a, b, c, d = compose(g, ell), compose(ell.inverse(), h), g, h
        else:
            n = rng.choice([2, 3])
            while True:
                s, P = rng.randint(0, 2), random_poly(rng, rng.randint(0, 2))
                if P.coeff(0).is_zero():
                    continue
                m = s + n * P.degree
                if m >= 2 and m % n:
                    break
            a, b, c, d = x ** s * P ** n, x ** n, x ** n, x ** s * compose(P, x ** n)
            if rng.random() < 0.5:
                ell = LinearPoly.make(Q, rng.choice([-1, 2, Fraction(1, 2)]), rng.randint(-2, 2))
                a, b = compose(a, ell), compose(ell.inverse(), b)
        certificate = engstrom_refine(a, b, c, d)
        assert certificate.check(a, b, c, d)
        assert (certificate.ell is not None) == (a.degree == c.degree)


def test_engstrom_rejects_unequal_composites():
    with pytest.raises(HypothesisViolation):
        engstrom_refine(x ** 2, x + 1, x ** 2, x)


def test_poly_nth_roots():
    assert set(poly_nth_roots((x + 1) ** 2, 2)) == {x + 1, -x - 1}
    assert poly_nth_roots(x ** 3 + 1, 2) == []


def test_power_form_split():
    A, B = x ** 3 * (x + 1) ** 2, x ** 2
    split = decompose_power_form(A, B, 6, 2)
    assert (split.j, split.k) == (3, 2)
    assert split.P1 == x + 1
    assert split.P2 == Poly.constant(Q, 1)
    assert split.ell.is_identity()
    assert split.coprime_jn and not split.coprime_sn


def test_power_form_identity_inner():
    A = x * (x + 1) ** 2
    split = decompose_power_form(A, x, 1, 2)
    assert (split.j, split.k) == (1, 1)
    assert split.P1 == x + 1
    assert split.coprime_sn and split.coprime_jn and split.coprime_kn


def test_power_form_rejects_wrong_shape():
    with pytest.raises(HypothesisViolation):
        decompose_power_form(x ** 2 + 1, x + 1, 1, 2)
