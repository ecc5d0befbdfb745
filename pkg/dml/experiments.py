"""
Return-set surveys: one exact return set against its reductions modulo a
list of primes, tabulated with pandas.
"""

import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set

import pandas as pd

from algebra.curves import BivarCurve
from algebra.fields import Q
from algebra.poly import Poly
from dml.orbits import return_set_exact, return_sets_modp
from dml.progressions import Progression, progression_decompose
from periodic.curves import curve_period
from settings import DML_CONFIG

logger = logging.getLogger(__name__)


class ReturnSetSurvey:
    def __init__(self, F1: Poly, F2: Poly, alpha: Sequence, C: BivarCurve, N: int,
                 primes: Optional[Sequence[int]] = None, height_cap: Optional[int] = None):
        self.F1, self.F2, self.alpha, self.C, self.N = F1, F2, alpha, C, N
        self.primes = list(DML_CONFIG["primes"] if primes is None else primes)
        self.height_cap = height_cap
        self.exact = None
        self.table: Optional[pd.DataFrame] = None

    def run(self) -> pd.DataFrame:
        """One row per prime: reduction status, mod-p hits, and whether they cover the exact set."""
        self.exact = return_set_exact(self.F1, self.F2, self.alpha, self.C, self.N, self.height_cap)
        exact = set(self.exact.indices)
        results, bad = return_sets_modp(self.F1, self.F2, self.alpha, self.C, self.primes, self.N)
        rows = []
        for p in self.primes:
            if p in bad:
                rows.append({"prime": p, "good": False, "condition": bad[p], "hits": None,
                             "sound": None, "alpha2_period": None})
                continue
            found = results[p]
            rows.append({
                "prime": p,
                "good": True,
                "condition": "",
                "hits": found.indices,
                "sound": exact <= set(found.indices),
                "alpha2_period": found.alpha2_period,
            })
        columns = ["prime", "good", "condition", "hits", "sound", "alpha2_period"]
        # object dtype keeps None as None for the bad-prime rows
        self.table = pd.DataFrame(rows, columns=columns, dtype=object).astype({"prime": "int64", "good": "bool"})
        unsound = self.table[self.table["good"] & self.table["sound"].eq(False)]
        if not unsound.empty:
            logger.error("❌ mod-p filter missed exact returns at p = %s", list(unsound["prime"]))
        return self.table

    def _good_rows(self) -> pd.DataFrame:
        if self.table is None:
            self.run()
        return self.table[self.table["good"]]

    def cumulative_intersections(self) -> List[Set[int]]:
        """Running intersection of mod-p return sets over the good primes, in prime order."""
        running: Optional[Set[int]] = None
        out = []
        for hits in self._good_rows()["hits"]:
            running = set(hits) if running is None else running & set(hits)
            out.append(running)
        return out

    def intersection(self) -> Set[int]:
        chain = self.cumulative_intersections()
        return chain[-1] if chain else set(range(self.N + 1))

    def false_positives(self) -> pd.DataFrame:
        exact = set(self.exact.indices) if self.exact else set()
        rows = self._good_rows()
        extra = rows["hits"].apply(lambda hits: tuple(sorted(set(hits) - exact)))
        return pd.DataFrame({"prime": rows["prime"], "extra": extra})[extra.apply(len) > 0]

    def summary(self) -> dict:
        rows = self._good_rows()
        return {
            "exact": list(self.exact.indices),
            "truncated_at": self.exact.truncated_at,
            "good_primes": int(len(rows)),
            "bad_primes": int((~self.table["good"]).sum()),
            "sound": bool(rows["sound"].all()),
            "intersection": sorted(self.intersection()),
        }

    def report(self):
        print("=== RETURN SET SURVEY ===")
        summary = self.summary()
        print(f"Exact return set: {summary['exact']}")
        print(f"Good primes: {summary['good_primes']}, bad primes: {summary['bad_primes']}")
        print(f"Intersection over good primes: {summary['intersection']}")
        fp = self.false_positives()
        if not fp.empty:
            print("False positives by prime:")
            print(fp.to_string(index=False))
        return summary


def random_instance(rng: random.Random, max_degree: int = 3, height: int = 3):
    """Random rational split map, starting point and curve of low degree."""
    def poly():
        d = rng.randint(2, max_degree)
        coeffs = [rng.randint(-height, height) for _ in range(d)] + [rng.choice([1, -1, 2])]
        return Poly.from_coeffs(Q, coeffs)

    terms = {(i, j): rng.randint(-height, height) for i in range(3) for j in range(3) if i + j <= 2}
    terms[(1, 0)] = terms.get((1, 0)) or 1
    alpha = (rng.randint(-2, 2), rng.randint(-2, 2))
    return poly(), poly(), alpha, BivarCurve.from_terms(Q, terms)


@dataclass
class CoherenceReport:
    period: Optional[int]
    first_return: Optional[int]
    progressions: Optional[List[Progression]]
    compatible: bool


def coherence_check(F1: Poly, F2: Poly, alpha: Sequence, C: BivarCurve, N_max: int, horizon: int,
                    small_multiple: int = 4) -> CoherenceReport:
    """Return indices past the first hit on a periodic curve should repeat with a modulus tied to its period."""
    certificate = curve_period(C, F1, F2, N_max)
    returns = return_set_exact(F1, F2, alpha, C, horizon)
    indices = set(returns.indices)
    period = certificate.period if certificate else None
    first = min(indices) if indices else None
    progressions = progression_decompose(indices, horizon) if returns.truncated_at is None else None
    if period is None or first is None or progressions is None:
        return CoherenceReport(period, first, progressions, True)
    compatible = all(
        p.b == 0 or any((period * k) % p.b == 0 for k in range(1, small_multiple + 1))
        for p in progressions if p.a >= first
    )
    return CoherenceReport(period, first, progressions, compatible)
