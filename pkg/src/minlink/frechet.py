"""Free-space machinery: Frechet decision, distance, tube containment, strip reachability."""

from __future__ import annotations

import math
from typing import Any, List, Sequence, Tuple

from .geom import (EMPTY, EPS_GEOM, GeometryError, ParamInterval, PolyCurve, Segment,
                   ball_edge_free_interval, closed, dist, quadratic_le_zero)

# slack for comparing parameters of free intervals
PARAM_SLACK = 1e-12

Frontier = List[Tuple[ParamInterval, Any]]


def _reach_lo(reach: ParamInterval, free: ParamInterval) -> ParamInterval:
    """Part of ``free`` at or above the lowest reachable parameter."""
    if free.is_empty or reach.is_empty:
        return EMPTY
    lo = max(reach.lo, free.lo)
    if lo > free.hi + PARAM_SLACK:
        return EMPTY
    return closed(min(lo, free.hi), free.hi)


def decide_frechet(P: PolyCurve, Q: PolyCurve, delta: float, eps: float = EPS_GEOM) -> bool:
    """Alt-Godau decision: is the Frechet distance of P and Q at most delta?"""
    if P.dim != Q.dim:
        raise GeometryError("dimension mismatch")
    if delta < 0:
        return False
    pv, qv = P.vertices, Q.vertices
    n, m = len(pv), len(qv)
    if dist(pv[0], qv[0]) > delta + eps or dist(pv[-1], qv[-1]) > delta + eps:
        return False
    # bottom[i]: reachable part of the horizontal boundary at Q-vertex j on P-edge i
    # left: reachable part of the vertical boundary at P-vertex i on Q-edge j
    bottom = []
    ok = True
    for i in range(n - 1):
        free = ball_edge_free_interval(qv[0], delta, pv[i], pv[i + 1], eps)
        if ok and free and free.lo <= PARAM_SLACK:
            bottom.append(free)
            ok = free.hi >= 1.0 - PARAM_SLACK
        else:
            bottom.append(EMPTY)
            ok = False
    left_ok = True
    for j in range(m - 1):
        free_left = ball_edge_free_interval(pv[0], delta, qv[j], qv[j + 1], eps)
        if left_ok and free_left and free_left.lo <= PARAM_SLACK:
            left = free_left
            left_ok = free_left.hi >= 1.0 - PARAM_SLACK
        else:
            left = EMPTY
            left_ok = False
        new_bottom = []
        for i in range(n - 1):
            bot = bottom[i]
            free_right = ball_edge_free_interval(pv[i + 1], delta, qv[j], qv[j + 1], eps)
            free_top = ball_edge_free_interval(qv[j + 1], delta, pv[i], pv[i + 1], eps)
            if bot:
                right = free_right
            else:
                right = _reach_lo(left, free_right)
            if left:
                top = free_top
            else:
                top = _reach_lo(bot, free_top)
            new_bottom.append(top)
            left = right
        bottom = new_bottom
        # `left` now holds the reachable right boundary of the last column
        last_right = left
    if m == 1:
        return True
    # corner (n, m) is reachable via the last right boundary or the top of the last cell
    return (bool(last_right) and last_right.hi >= 1.0 - PARAM_SLACK) or \
        (bool(bottom[-1]) and bottom[-1].hi >= 1.0 - PARAM_SLACK)


def frechet_distance(P: PolyCurve, Q: PolyCurve, tol: float = None) -> float:
    """Frechet distance by bisection over the decision procedure."""
    hi = max(dist(p, q) for p in P.vertices for q in Q.vertices)
    if tol is None:
        tol = max(hi, 1.0) * 1e-9
    if tol <= 0:
        raise GeometryError("tol must be positive")
    lo = max(dist(P.vertices[0], Q.vertices[0]), dist(P.vertices[-1], Q.vertices[-1]))
    if decide_frechet(P, Q, lo, eps=0.25 * tol):
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if decide_frechet(P, Q, mid, eps=0.25 * tol):
            hi = mid
        else:
            lo = mid
    return hi


def capsule_cover_interval(edge: Segment, delta: float, seg: Segment,
                           eps: float = EPS_GEOM) -> ParamInterval:
    """Parameters of ``seg`` within distance delta of ``edge`` (a convex set)."""
    a, b = edge.a, edge.b
    pieces = [ball_edge_free_interval(a, delta, seg.a, seg.b, eps),
              ball_edge_free_interval(b, delta, seg.a, seg.b, eps)]
    u = [y - x for x, y in zip(a, b)]
    uu = sum(c * c for c in u)
    if uu > 1e-300:
        # w(t) = seg(t) - a = w0 + t w1
        w0 = [s - x for s, x in zip(seg.a, a)]
        w1 = [y - x for x, y in zip(seg.a, seg.b)]
        # projection onto the edge direction, normalized to [0, 1]
        p0 = sum(x * y for x, y in zip(w0, u)) / uu
        p1 = sum(x * y for x, y in zip(w1, u)) / uu
        band = _linear_range(p0, p1, 0.0, 1.0)
        # perpendicular components
        r0 = [x - p0 * c for x, c in zip(w0, u)]
        r1 = [x - p1 * c for x, c in zip(w1, u)]
        A = sum(x * x for x in r1)
        B = 2.0 * sum(x * y for x, y in zip(r0, r1))
        C = sum(x * x for x in r0) - delta * delta
        roots = quadratic_le_zero(A, B, C, (delta + eps) ** 2 - delta * delta)
        if band is not None and roots is not None:
            lo = max(band[0], roots[0], 0.0)
            hi = min(band[1], roots[1], 1.0)
            if lo <= hi:
                pieces.append(closed(lo, hi))
    pieces = [p for p in pieces if p]
    if not pieces:
        return EMPTY
    return closed(min(p.lo for p in pieces), max(p.hi for p in pieces))


def _linear_range(c0: float, c1: float, lo: float, hi: float):
    """{t : lo <= c0 + c1 t <= hi} as (tlo, thi) or None."""
    if c1 == 0.0:
        return (-math.inf, math.inf) if lo <= c0 <= hi else None
    t1, t2 = (lo - c0) / c1, (hi - c0) / c1
    return (min(t1, t2), max(t1, t2))


def segment_in_tube(seg: Segment, P: PolyCurve, delta: float, eps: float = EPS_GEOM) -> bool:
    """True iff every point of seg lies within delta of P."""
    ivs = []
    for k in range(1, P.n):
        iv = capsule_cover_interval(P.edge(k), delta, seg, eps)
        if iv:
            ivs.append(iv)
    ivs.sort(key=lambda iv: iv.lo)
    length = dist(seg.a, seg.b)
    gap = eps / length if length > 0 else math.inf
    reach = 0.0
    for iv in ivs:
        if iv.lo > reach + gap:
            return False
        reach = max(reach, iv.hi)
    return bool(ivs) and reach >= 1.0 - gap


def directed_hausdorff_segment(seg: Segment, P: PolyCurve, tol: float = 1e-9) -> float:
    """max over points of seg of the distance to P, by bisection on tube containment."""
    lo, hi = 0.0, max(dist(x, p) for x in (seg.a, seg.b) for p in P.vertices)
    if segment_in_tube(seg, P, 0.0, eps=0.25 * tol):
        return 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if segment_in_tube(seg, P, mid, eps=0.25 * tol):
            hi = mid
        else:
            lo = mid
    return hi


def _pareto(front):
    """Keep (label, j) pairs not dominated by a smaller label with lower j."""
    front.sort(key=lambda x: (x[0], x[1]))
    out = []
    best = math.inf
    for label, j in front:
        if j < best:
            out.append((label, j))
            best = j
    return out


def reach_through_strip(P: PolyCurve, shortcut: Segment, delta: float, entries,
                        eps: float = EPS_GEOM) -> Frontier:
    """Propagate labelled entry intervals on the bottom spine to the top spine.

    The strip is the free space of ``P`` (horizontal, parameter in [1, n])
    against ``shortcut`` (vertical, local parameter in [0, 1]).  ``entries``
    is a sequence of ``(ParamInterval, label)`` with intervals inside the free
    space of ``shortcut.a``.  Returns the reachable part of the free space of
    ``shortcut.b`` as disjoint sorted ``(ParamInterval, label)`` pieces, each
    carrying the smallest label of any entry that reaches it.
    """
    from .envelope import lower_envelope

    n = P.n
    verts = P.vertices
    # bucket entries by cell; an entry contributes its lowest point in the cell
    cells = [[] for _ in range(n)]
    for iv, label in entries:
        if not iv:
            continue
        k0 = max(1, int(math.floor(iv.lo)))
        k1 = min(n - 1, int(math.floor(iv.hi)))
        for k in range(k0, k1 + 1):
            if iv.lo <= k + 1 and iv.hi >= k:
                cells[k].append((max(iv.lo, float(k)), label))
    return _sweep_strip(verts, shortcut, delta, cells, eps, lower_envelope)


def _sweep_strip(verts, shortcut: Segment, delta: float, cells, eps, lower_envelope) -> Frontier:
    n = len(verts)
    out = []
    front = []  # pareto list of (label, lowest reachable local parameter) on the left boundary
    for k in range(1, n):
        here = cells[k]
        top = ball_edge_free_interval(shortcut.b, delta, verts[k - 1], verts[k], eps).shift(k)
        if top:
            if front:
                out.append((top, front[0][0]))
            if here:
                best = None
                for x0, label in sorted(here, key=lambda e: (e[0], e[1])):
                    if best is not None and not label < best:
                        continue
                    best = label
                    lo = max(x0, top.lo)
                    if lo <= top.hi:
                        out.append((closed(lo, top.hi), label))
        right = ball_edge_free_interval(verts[k], delta, shortcut.a, shortcut.b, eps)
        if not right:
            front = []
            continue
        nxt = []
        if here:
            nxt.append((min(label for _, label in here), right.lo))
        for label, j0 in front:
            if j0 <= right.hi + PARAM_SLACK:
                nxt.append((label, min(max(j0, right.lo), right.hi)))
        front = _pareto(nxt)
    return lower_envelope(out)


def reach_through_strip_naive(P: PolyCurve, shortcut: Segment, delta: float, entries,
                              eps: float = EPS_GEOM) -> Frontier:
    """Reference version: propagate each entry on its own, then take the envelope."""
    from .envelope import lower_envelope

    pieces = []
    for iv, label in entries:
        for piece, _ in reach_through_strip(P, shortcut, delta, [(iv, 0)], eps):
            pieces.append((piece, label))
    return lower_envelope(pieces)
