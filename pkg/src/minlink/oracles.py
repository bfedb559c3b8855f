"""Brute-force references for small instances."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence

from .frechet import decide_frechet, segment_in_tube
from .geom import PolyCurve, Segment, dist


class OracleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = 9
    max_subsets: int = 1 << 16
    time_cap: float = 60.0

    def __post_init__(self):
        if self.max_n <= 0 or self.max_subsets <= 0 or self.time_cap <= 0:
            raise ValueError("budget values must be positive")


DEFAULT_BUDGET = OracleBudget()


def _subsequences(n: int, inner: int, order: str) -> Iterable[tuple]:
    combos = itertools.combinations(range(2, n), inner)
    if order == "reverse":
        combos = reversed(list(combos))
    for c in combos:
        yield (1, *c, n)


def _brute_min_links(P: PolyCurve, feasible: Callable[[List[int]], bool],
                     budget: OracleBudget, order: str) -> int:
    n = P.n
    if n > budget.max_n:
        raise OracleBudgetExceeded(f"n={n} exceeds max_n={budget.max_n}")
    t0 = time.monotonic()
    tried = 0
    for inner in range(0, n - 1):
        for idx in _subsequences(n, inner, order):
            tried += 1
            if tried > budget.max_subsets or time.monotonic() - t0 > budget.time_cap:
                raise OracleBudgetExceeded("oracle budget exhausted")
            if feasible(list(idx)):
                return len(idx) - 1
    raise AssertionError("the full vertex sequence is always feasible")


def brute_vr_frechet(P: PolyCurve, delta: float, budget: OracleBudget = DEFAULT_BUDGET,
                     order: str = "lex") -> int:
    """Fewest links over all vertex subsequences within global Frechet distance delta."""
    def ok(idx):
        return decide_frechet(P, PolyCurve(tuple(P.vertex(i) for i in idx)), delta)
    return _brute_min_links(P, ok, budget, order)


def brute_vr_hausdorff(P: PolyCurve, delta: float, budget: OracleBudget = DEFAULT_BUDGET,
                       order: str = "lex") -> int:
    """Same, with every link contained in the delta-tube of P."""
    def ok(idx):
        return all(segment_in_tube(Segment(P.vertex(a), P.vertex(b)), P, delta)
                   for a, b in zip(idx[:-1], idx[1:]))
    return _brute_min_links(P, ok, budget, order)


def subset_sum_brute(A, B: Optional[int] = None) -> bool:
    """Enumerate all subsets; ``A`` may also be an instance carrying ``A`` and ``B``."""
    if B is None:
        A, B = A.A, A.B
    if len(A) > 20:
        raise OracleBudgetExceeded("subset enumeration limited to 20 items")
    return any(sum(c) == B for r in range(len(A) + 1) for c in itertools.combinations(A, r))


def discrete_frechet(ps: Sequence[Sequence[float]], qs: Sequence[Sequence[float]]) -> float:
    """Discrete Frechet distance of two point sequences (iterative DP)."""
    m = len(qs)
    prev = [0.0] * m
    for i, p in enumerate(ps):
        cur = [0.0] * m
        for j, q in enumerate(qs):
            d = dist(p, q)
            if i == 0 and j == 0:
                cur[j] = d
            elif i == 0:
                cur[j] = max(cur[j - 1], d)
            elif j == 0:
                cur[j] = max(prev[0], d)
            else:
                cur[j] = max(min(prev[j], prev[j - 1], cur[j - 1]), d)
        prev = cur
    return prev[-1]
