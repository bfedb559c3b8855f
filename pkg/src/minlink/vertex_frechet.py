"""Vertex-restricted min-# simplification under the global Frechet distance.

Dynamic program over the free-space surface of a curve and its complete
shortcut graph.  Each vertex ``v`` owns a *spine*: the parameters ``t`` of the
curve with ``|P(t) - p_v| <= delta``.  Spines are cut into elementary
intervals at every endpoint of every spine's free intervals; the minimum
number of strips (links) needed to reach a point is constant on each of them.
Costs are pushed from spine ``u`` to spine ``v`` through the strip of the
shortcut ``p_u p_v`` and merged with a lower envelope.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .envelope import lower_envelope
from .frechet import _sweep_strip
from .geom import EPS_GEOM, ParamInterval, PolyCurve, Segment, ball_edge_free_interval

INF = math.inf

# free intervals closer than this are merged at edge junctions
_MERGE_GAP = 1e-12


@dataclass
class ElementaryInterval:
    spine: int
    span: ParamInterval
    index: int
    cost: float = INF
    pred: Optional[Tuple[int, int]] = None


@dataclass
class CostEnvelope:
    pieces: List[Tuple[ParamInterval, tuple]]

    def __post_init__(self):
        self._starts = [iv.lo for iv, _ in self.pieces]

    def at(self, t: float):
        k = bisect.bisect_right(self._starts, t) - 1
        while k >= 0:
            iv, lab = self.pieces[k]
            if iv.contains(t):
                return lab
            if iv.hi < t:
                return None
            k -= 1
        return None


@dataclass
class SimplificationResult:
    indices: List[int]
    link_count: int
    achieved: bool = True
    points: Optional[list] = None
    spans: Optional[List[Tuple[float, float]]] = None
    stats: Dict = field(default_factory=dict)


def compute_spines(P: PolyCurve, delta: float, eps: float = EPS_GEOM) -> List[List[ParamInterval]]:
    """Free intervals of every spine, 0-based list over vertices 1..n."""
    verts = P.vertices
    spines = []
    for pv in verts:
        merged: List[ParamInterval] = []
        for k in range(1, P.n):
            iv = ball_edge_free_interval(pv, delta, verts[k - 1], verts[k], eps).shift(k)
            if not iv:
                continue
            if merged and iv.lo <= merged[-1].hi + _MERGE_GAP:
                last = merged[-1]
                merged[-1] = ParamInterval(last.lo, max(last.hi, iv.hi))
            else:
                merged.append(iv)
        spines.append(merged)
    return spines


def elementary_intervals(spines: Sequence[Sequence[ParamInterval]],
                         extra_cuts: Sequence[float] = ()) -> List[List[ElementaryInterval]]:
    """Cut every spine's free intervals at the global set of interval endpoints.

    Pieces are half-open ``[s, s')`` except the last piece of each free
    interval, which keeps its closed end.
    """
    cuts = set(extra_cuts)
    for spine in spines:
        for iv in spine:
            cuts.add(iv.lo)
            cuts.add(iv.hi)
    S = sorted(cuts)
    out = []
    for v, spine in enumerate(spines, start=1):
        elems: List[ElementaryInterval] = []
        for iv in spine:
            a = bisect.bisect_right(S, iv.lo)
            b = bisect.bisect_left(S, iv.hi)
            inner = S[a:b]
            bounds = [iv.lo, *inner, iv.hi]
            if iv.lo == iv.hi:
                elems.append(ElementaryInterval(v, ParamInterval(iv.lo, iv.hi), len(elems)))
                continue
            for s, e in zip(bounds[:-1], bounds[1:]):
                last = e == iv.hi
                elems.append(ElementaryInterval(v, ParamInterval(s, e, True, last), len(elems)))
        out.append(elems)
    return out


def subdivide(frontiers: Sequence[Sequence[Tuple[ParamInterval, tuple]]],
              elems: Sequence[ElementaryInterval]) -> CostEnvelope:
    """Lower envelope of all labelled reachable intervals landing on one spine,
    and assignment of its value to each elementary interval of that spine."""
    pieces = [p for fr in frontiers for p in fr]
    env = CostEnvelope(lower_envelope(pieces))
    for e in elems:
        lab = env.at(e.span.lo)
        if lab is not None and lab[0] < e.cost:
            e.cost = lab[0]
            e.pred = (lab[1], lab[2])
    return env


def _entry_cells(n: int, elems: Sequence[ElementaryInterval]):
    """Bucket finite-cost elementary intervals by the cells of P they touch."""
    cells = [[] for _ in range(n)]
    for e in elems:
        if e.cost == INF:
            continue
        iv = e.span
        label = (e.cost, e.index)
        k0 = max(1, int(math.floor(iv.lo)))
        k1 = min(n - 1, int(math.floor(iv.hi)))
        for k in range(k0, k1 + 1):
            if iv.lo <= k + 1 and iv.hi >= k:
                cells[k].append((max(iv.lo, float(k)), label))
    return cells


def min_link_simplify_vr(P: PolyCurve, delta: float, eps: float = EPS_GEOM,
                         extra_cuts: Sequence[float] = ()) -> SimplificationResult:
    """Fewest-link vertex subsequence whose global Frechet distance to P is <= delta."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    n = P.n
    verts = P.vertices
    spines = compute_spines(P, delta, eps)
    L = elementary_intervals(spines, extra_cuts)

    # start: the free interval of spine 1 that contains parameter 1
    for e in L[0]:
        if spines[0] and spines[0][0].lo <= 1.0 and e.span.hi <= spines[0][0].hi:
            e.cost = 0
    cells_cache = {1: _entry_cells(n, L[0])}

    for v in range(2, n + 1):
        frontiers = []
        for u in range(1, v):
            cells = cells_cache[u]
            if not any(cells):
                continue
            fr = _sweep_strip(verts, Segment(verts[u - 1], verts[v - 1]), delta, cells, eps,
                              lower_envelope)
            frontiers.append([(iv, (lab[0] + 1, u, lab[1])) for iv, lab in fr])
        subdivide(frontiers, L[v - 1])
        cells_cache[v] = _entry_cells(n, L[v - 1])

    final = None
    for e in L[n - 1]:
        if e.span.contains(float(n)):
            final = e
    stats = {"elementary_counts": [len(x) for x in L],
             "costs": [[(e.span, e.cost) for e in elems] for elems in L]}
    if final is None or final.cost == INF:
        return SimplificationResult(list(range(1, n + 1)), n - 1, achieved=False, stats=stats)

    indices = [n]
    e = final
    while e.pred is not None:
        u, r = e.pred
        e = L[u - 1][r]
        indices.append(u)
    indices.reverse()
    if indices[0] != 1:
        raise RuntimeError("backtracking did not reach the first spine")
    res = SimplificationResult(indices, len(indices) - 1, True, stats=stats)
    res.points = [verts[i - 1] for i in indices]
    res.stats["cost"] = final.cost
    return res
