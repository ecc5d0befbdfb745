"""
Exact orbits of split maps Phi = F1 x F2 on the plane, return sets
{n : Phi^n(alpha) in C}, their reductions modulo primes, and a
preperiodicity check with escape certificates.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from algebra.curves import BivarCurve
from algebra.fields import FieldDescriptor, Scalar, qq_to_fraction
from algebra.poly import Poly
from errors import BadReduction, FieldMismatch, InputError
from settings import DML_CONFIG

logger = logging.getLogger(__name__)

Point = Tuple[Scalar, Scalar]


@dataclass(frozen=True)
class OrbitPoint:
    index: int
    point: Point


@dataclass
class Orbit:
    points: List[OrbitPoint] = dataclass_field(default_factory=list)
    truncated_at: Optional[int] = None


def _point(field: FieldDescriptor, alpha: Sequence) -> Point:
    return field.scalar(alpha[0]), field.scalar(alpha[1])


def _height(point: Point) -> int:
    return max(point[0].bit_height(), point[1].bit_height())


def orbit(F1: Poly, F2: Poly, alpha: Sequence, N: int, height_cap: Optional[int] = None) -> Orbit:
    """Phi^n(alpha) for n <= N, stopping before a point whose height exceeds the cap."""
    if F1.field != F2.field:
        raise FieldMismatch("F1 and F2 over different fields")
    if N < 0:
        raise InputError("N must be nonnegative")
    cap = DML_CONFIG["height_cap_bits"] if height_cap is None else height_cap
    point = _point(F1.field, alpha)
    result = Orbit([OrbitPoint(0, point)])
    for n in range(1, N + 1):
        point = (F1(point[0]), F2(point[1]))
        if _height(point) > cap:
            result.truncated_at = n
            logger.info("✂️ orbit truncated at index %d (height above %d bits)", n, cap)
            break
        result.points.append(OrbitPoint(n, point))
    return result


@dataclass
class ReturnSet:
    indices: Tuple[int, ...]
    truncated_at: Optional[int] = None


def return_set_exact(F1: Poly, F2: Poly, alpha: Sequence, C: BivarCurve, N: int,
                     height_cap: Optional[int] = None) -> ReturnSet:
    if C.field != F1.field:
        raise FieldMismatch("curve and maps over different fields")
    path = orbit(F1, F2, alpha, N, height_cap)
    hits = tuple(p.index for p in path.points if C.evaluate(*p.point).is_zero())
    return ReturnSet(hits, path.truncated_at)


# -- reduction modulo primes -------------------------------------------------

def _rationals(values: Iterable[Scalar]) -> List:
    out = []
    for v in values:
        if not v.is_rational():
            raise InputError("reduction modulo p is restricted to rational inputs")
        out.append(v.to_rational())
    return out


@dataclass(frozen=True)
class ReductionInput:
    """All rational data of a return-set problem, gathered once."""

    f1: Tuple
    f2: Tuple
    curve: Tuple[Tuple[Tuple[int, int], object], ...]
    alpha: Tuple


def _gather(F1: Poly, F2: Poly, alpha: Sequence, C: BivarCurve) -> ReductionInput:
    for thing in (F1, F2, C):
        if not thing.field.is_rational:
            raise InputError(f"mod-p filters accept only rational inputs, got {thing.field.label}")
    point = _point(F1.field, alpha)
    curve = tuple((e, c.to_rational()) for e, c in C.terms)
    return ReductionInput(tuple(_rationals(F1.coeffs)), tuple(_rationals(F2.coeffs)), curve,
                          tuple(_rationals(point)))


def _bad_condition(data: ReductionInput, p: int) -> Optional[str]:
    values = list(data.f1) + list(data.f2) + [c for _, c in data.curve] + list(data.alpha)
    if any(int(v.denominator) % p == 0 for v in values):
        return "denominator"
    if int(data.f1[-1].numerator) % p == 0 or int(data.f2[-1].numerator) % p == 0:
        return "degree"
    if all(int(c.numerator) % p == 0 for _, c in data.curve):
        return "curve"
    return None


def _reduce(values: Sequence, primes: np.ndarray) -> np.ndarray:
    """values[k] mod primes[j] as an array of shape (len(values), len(primes))."""
    out = np.zeros((len(values), len(primes)), dtype=np.int64)
    for k, v in enumerate(values):
        num, den = int(v.numerator), int(v.denominator)
        out[k] = [num % p * pow(den, -1, p) % p for p in primes.tolist()]
    return out


def _pow_mod(base: np.ndarray, k: int, primes: np.ndarray) -> np.ndarray:
    result = np.ones_like(base)
    for _ in range(k):
        result = result * base % primes
    return result


def _horner(coeffs: np.ndarray, x: np.ndarray, primes: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(x)
    for row in coeffs[::-1]:
        acc = (acc * x + row) % primes
    return acc


@dataclass
class ModPReturnSet:
    prime: int
    indices: Tuple[int, ...]
    alpha2_tail: int
    alpha2_period: int


def _cycle(values: List[int], coeffs: List[int], p: int) -> Tuple[int, int]:
    """(tail, period) of an orbit mod p, extending values with the map given by coeffs until a repeat."""
    seen: Dict[int, int] = {}
    for n, v in enumerate(values):
        if v in seen:
            return seen[v], n - seen[v]
        seen[v] = n
    n, current = len(values), values[-1]
    while True:
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * current + c) % p
        if acc in seen:
            return seen[acc], n - seen[acc]
        seen[acc] = n
        n, current = n + 1, acc


def return_sets_modp(F1: Poly, F2: Poly, alpha: Sequence, C: BivarCurve, primes: Iterable[int], N: int
                     ) -> Tuple[Dict[int, ModPReturnSet], Dict[int, str]]:
    """Return sets modulo every good prime at once; bad primes come back with their failed condition."""
    data = _gather(F1, F2, alpha, C)
    good, bad = [], {}
    for p in primes:
        if p == 2 or not isprime(p) or p >= 2 ** 31:
            raise InputError(f"{p} is not an odd prime below 2^31")
        condition = _bad_condition(data, p)
        if condition is None:
            good.append(p)
        else:
            bad[p] = condition
    if not good:
        return {}, bad

    P = np.array(good, dtype=np.int64)
    c1, c2 = _reduce(data.f1, P), _reduce(data.f2, P)
    curve_coeffs = _reduce([c for _, c in data.curve], P)
    x, y = _reduce(data.alpha, P)

    hits: Dict[int, List[int]] = {p: [] for p in good}
    ys = [y.copy()]
    for n in range(N + 1):
        total = np.zeros_like(x)
        for (e, _), coeff in zip(data.curve, curve_coeffs):
            i, j = e
            total = (total + coeff * (_pow_mod(x, i, P) * _pow_mod(y, j, P) % P)) % P
        for p in np.array(good)[total == 0].tolist():
            hits[p].append(n)
        if n < N:
            x, y = _horner(c1, x, P), _horner(c2, y, P)
            ys.append(y.copy())

    results = {}
    for col, p in enumerate(good):
        # the alpha2 orbit mod p is eventually periodic
        tail, period = _cycle([int(v[col]) for v in ys], [int(r[col]) for r in c2], p)
        results[p] = ModPReturnSet(p, tuple(hits[p]), tail, period)
    return results, bad


def return_set_modp(F1: Poly, F2: Poly, alpha: Sequence, C: BivarCurve, p: int, N: int) -> ModPReturnSet:
    results, bad = return_sets_modp(F1, F2, alpha, C, [p], N)
    if p in bad:
        raise BadReduction(f"bad reduction at p = {p}: {bad[p]}", prime=p, condition=bad[p])
    return results[p]


# -- preperiodicity ------------------------------------------------------------

PREPERIODIC, ESCAPE, UNKNOWN = "preperiodic", "escape", "unknown"


@dataclass
class PreperiodicResult:
    status: str
    tail: Optional[int] = None
    period: Optional[int] = None
    escape_index: Optional[int] = None
    radius: Optional[Fraction] = None
    recheck: List[Fraction] = dataclass_field(default_factory=list)


def escape_radius(f: Poly) -> Fraction:
    """R >= 1 with |f(x)| >= 2|x| whenever |x| >= R."""
    coeffs = [qq_to_fraction(c) for c in _rationals(f.coeffs)]
    lower = sum(abs(c) for c in coeffs[:-1])
    return max(Fraction(1), (2 + lower) / abs(coeffs[-1]))


def preperiodic_check(f: Poly, a, N: int, height_cap: Optional[int] = None,
                      recheck: Optional[int] = None) -> PreperiodicResult:
    if N < 1:
        raise InputError("N must be positive")
    cap = DML_CONFIG["height_cap_bits"] if height_cap is None else height_cap
    extra = DML_CONFIG["escape_recheck"] if recheck is None else recheck
    x = f.field.scalar(a)
    seen: Dict[Scalar, int] = {}
    radius = None
    if f.field.is_rational and f.degree >= 2:
        radius = escape_radius(f)

    for n in range(N + 1):
        if x in seen:
            return PreperiodicResult(PREPERIODIC, tail=seen[x], period=n - seen[x])
        seen[x] = n
        if radius is not None and abs(x.to_fraction()) >= radius:
            values, current = [], x
            for _ in range(extra):
                nxt = f(current)
                if abs(nxt.to_fraction()) <= abs(current.to_fraction()):
                    raise ArithmeticError("escape certificate failed its recheck")
                values.append(nxt.to_fraction())
                current = nxt
            return PreperiodicResult(ESCAPE, escape_index=n, radius=radius, recheck=values)
        if x.bit_height() > cap:
            break
        x = f(x)
    return PreperiodicResult(UNKNOWN, radius=radius)
