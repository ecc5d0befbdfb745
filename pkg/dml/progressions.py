"""
Arithmetic progressions {a + b*k : k >= 0} (singletons when b = 0) and
the decomposition of an index set into finitely many of them.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from errors import InputError


@dataclass(frozen=True, order=True)
class Progression:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise InputError(f"progression {self.a} + {self.b}k needs nonnegative a and b")

    def members(self, horizon: int) -> Set[int]:
        if self.a > horizon:
            return set()
        if self.b == 0:
            return {self.a}
        return set(range(self.a, horizon + 1, self.b))

    def __str__(self) -> str:
        return f"{{{self.a} + {self.b}k}}"


def union(progressions: Iterable[Progression], horizon: int) -> Set[int]:
    covered: Set[int] = set()
    for prog in progressions:
        covered |= prog.members(horizon)
    return covered


def _is_eventually_periodic(chi: Sequence[bool], tail: int, period: int) -> bool:
    return all(chi[n] == chi[n + period] for n in range(tail, len(chi) - period))


def _cover(chi: Sequence[bool], tail: int, period: int) -> List[Progression]:
    found = []
    covered = set()
    for r in range(tail, min(tail + period, len(chi))):
        if not chi[r]:
            continue
        start = r
        # walk the progression back while it stays inside the set
        while start - period >= 0 and chi[start - period]:
            start -= period
        found.append(Progression(start, period))
        covered.update(range(start, len(chi), period))
    for n in range(tail):
        if chi[n] and n not in covered:
            found.append(Progression(n, 0))
    return sorted(found)


def progression_decompose(S: Iterable[int], horizon: int) -> Optional[List[Progression]]:
    """Fewest progressions whose union meets [0, horizon] in exactly S; None if no eventually periodic pattern fits."""
    indices = set(S)
    if horizon < 0:
        raise InputError("horizon must be nonnegative")
    if any(n < 0 or n > horizon for n in indices):
        raise InputError(f"indices must lie in [0, {horizon}]")
    chi = [n in indices for n in range(horizon + 1)]
    limit = max(1, horizon // 3)

    best: Optional[Tuple[int, List[Progression]]] = None
    for period in range(1, limit + 1):
        for tail in range(0, limit + 1):
            if not _is_eventually_periodic(chi, tail, period):
                continue
            cover = _cover(chi, tail, period)
            if union(cover, horizon) != indices:
                continue
            key = (len(cover), cover)
            if best is None or key < best:
                best = key
            # a longer tail with the same period only adds singletons
            break
    return None if best is None else best[1]
