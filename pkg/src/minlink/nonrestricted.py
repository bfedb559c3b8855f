"""(1+eps)-approximate non-restricted min-# simplification under the Frechet distance.

Every vertex p_i gets a grid of candidate points: the corners of a cubic
lattice of side eps*delta/(2 sqrt d), anchored at p_i, restricted to cells
meeting the delta-ball.  Links between candidates of balls i < j are
checked against P[i, j] and the fewest-link path from p_1 to p_n is found
breadth first.

Every link within (1 + eps/2) delta of its subcurve is in the graph and no
link farther than (1 + eps) delta is.  Links in between may go either way,
which is what makes batching cheap: corners are grouped into octree-like
blocks, and since the Frechet distance of a segment to a fixed curve is
1-Lipschitz in the end points, a block pair is settled by its centre link
whenever the block radius fits in the slack.  Blocks of radius eps*delta/4
are always settled, so single corners are never tested one by one.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .frechet import decide_frechet
from .geom import EPS_GEOM, GeometryError, PolyCurve, Segment
from .vertex_frechet import SimplificationResult

log = logging.getLogger(__name__)


@dataclass
class BallGrid:
    center: Tuple[float, ...]
    delta: float
    side: float
    lattice: np.ndarray  # (N, d) integer offsets, lexicographically sorted
    corners: np.ndarray  # (N, d) coordinates

    def __len__(self):
        return len(self.lattice)


def ball_grid_corners(p: Sequence[float], delta: float, eps: float, d: Optional[int] = None) -> BallGrid:
    """Corners of every lattice cell whose interior comes closer than delta to p.

    With delta == 0 the grid is just {p}.
    """
    p = tuple(float(x) for x in p)
    d = len(p) if d is None else d
    if len(p) != d:
        raise GeometryError("dimension mismatch")
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if delta == 0:
        z = np.zeros((1, d), dtype=np.int64)
        return BallGrid(p, 0.0, 0.0, z, np.array([p], dtype=float))
    side = eps * delta / (2.0 * math.sqrt(d))
    R = delta / side  # ball radius in lattice units, = 2 sqrt(d) / eps
    m = int(math.ceil(R))
    axis = np.arange(-m - 1, m + 1, dtype=np.int64)
    low = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)
    gap = np.maximum(np.maximum(low, -low - 1), 0).astype(float)
    cells = low[(gap * gap).sum(axis=1) < R * R]
    offs = np.stack(np.meshgrid(*([np.arange(2)] * d), indexing="ij"), axis=-1).reshape(-1, d)
    lattice = np.unique((cells[:, None, :] + offs[None, :, :]).reshape(-1, d), axis=0)
    corners = np.asarray(p)[None, :] + lattice * side
    return BallGrid(p, float(delta), side, lattice, corners)


def validate(seg: Segment, sub: PolyCurve, delta: float, eps: float) -> bool:
    """Keep a link if it is within (1 + eps/2) delta of its subcurve."""
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    return decide_frechet(seg.as_curve(), sub, (1.0 + 0.5 * eps) * delta)


def link_ok(A: np.ndarray, B: np.ndarray, start, interior: np.ndarray, end, thr,
            eps: float = EPS_GEOM) -> np.ndarray:
    """Vectorized Frechet decision of segments A[k]B[k] against one polyline.

    The polyline is ``start, interior..., end``.  A segment is within ``thr``
    of it iff both end points are, and the interior vertices can be matched to
    non-decreasing parameters of the segment, each within ``thr`` of its
    vertex.  Matching greedily to the earliest admissible parameter decides it.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    m = len(A)
    thr = np.broadcast_to(np.asarray(thr, dtype=float), (m,)) + eps
    thr2 = thr * thr
    ok = thr >= 0
    ok &= ((A - np.asarray(start)) ** 2).sum(axis=1) <= thr2
    ok &= ((B - np.asarray(end)) ** 2).sum(axis=1) <= thr2
    if len(interior) == 0:
        return ok
    D = B - A
    dd = (D * D).sum(axis=1)
    flat = dd <= 1e-300
    safe = np.where(flat, 1.0, dd)
    t = np.zeros(m)
    for q in interior:
        W = A - q
        b = (D * W).sum(axis=1)
        c = (W * W).sum(axis=1) - thr2
        disc = b * b - dd * c
        sq = np.sqrt(np.maximum(disc, 0.0))
        lo = np.maximum((-b - sq) / safe, 0.0)
        hi = np.minimum((-b + sq) / safe, 1.0)
        lo = np.where(flat, 0.0, lo)
        hi = np.where(flat, np.where(c <= 0, 1.0, -1.0), hi)
        hi = np.where(disc < 0, -1.0, hi)
        t = np.maximum(t, lo)
        ok &= t <= hi + 1e-12
    return ok


class _Hierarchy:
    """Corner blocks of one ball at levels 0..top; level 0 blocks are corners."""

    def __init__(self, grid: BallGrid):
        self.grid = grid
        d = grid.lattice.shape[1]
        self.keys = []      # per level: (K, d) block keys
        self.inverse = []   # per level: corner -> block
        self.centers = []   # per level: (K, d)
        self.radius = []    # per level: scalar
        self.children = []  # per level L >= 1: (start, order) into level L-1 blocks
        z = grid.lattice
        L = 0
        while True:
            keys, inv = np.unique(z >> L, axis=0, return_inverse=True)
            inv = inv.reshape(-1)
            w = 1 << L
            self.keys.append(keys)
            self.inverse.append(inv)
            self.centers.append(np.asarray(grid.center)[None, :]
                                + (keys * w + 0.5 * (w - 1)) * grid.side)
            self.radius.append(0.5 * (w - 1) * grid.side * math.sqrt(d))
            if L > 0:
                parent = _row_lookup(keys, self.keys[L - 1] >> 1)
                order = np.argsort(parent, kind="stable")
                start = np.searchsorted(parent[order], np.arange(len(keys) + 1))
                self.children.append((start, order))
            else:
                self.children.append(None)
            if len(keys) == 1 or (L > 0 and len(keys) <= 1 << d):
                break
            L += 1
        self.top = L

    def level(self, L):
        return min(L, self.top)


def _row_lookup(keys: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Index of every row of ``rows`` in the sorted unique ``keys``."""
    kv = np.ascontiguousarray(keys).view([("", keys.dtype)] * keys.shape[1]).reshape(-1)
    rv = np.ascontiguousarray(rows).view([("", rows.dtype)] * rows.shape[1]).reshape(-1)
    return np.searchsorted(kv, rv)


def _expand_pairs(hier_a, La, pa, hier_c, Lc, pc):
    """Children pairs of block pairs; a side already at level 0 stays put."""
    def kids(h, L, blocks):
        if L == 0 or L > h.top:
            return np.ones(len(blocks), dtype=np.int64), None
        start, order = h.children[L]
        return start[blocks + 1] - start[blocks], (start, order)

    ka, sa = kids(hier_a, La, pa)
    kc, sc = kids(hier_c, Lc, pc)
    tot = ka * kc
    rep = np.repeat(np.arange(len(pa)), tot)
    off = np.arange(tot.sum()) - np.repeat(np.cumsum(tot) - tot, tot)
    ia, ic = off // kc[rep], off % kc[rep]
    if sa is None:
        na = pa[rep]
    else:
        na = sa[1][sa[0][pa[rep]] + ia]
    if sc is None:
        nc = pc[rep]
    else:
        nc = sc[1][sc[0][pc[rep]] + ic]
    return na, nc


def _connect(hier_a: _Hierarchy, frontier: np.ndarray, hier_c: _Hierarchy, open_c: np.ndarray,
             start, interior, end, thr_lo: float, thr_hi: float, eps: float) -> np.ndarray:
    """For every corner of ball c, a frontier corner of ball a it links to, or -1.

    Links within ``thr_lo`` of the subcurve are always found; links farther
    than ``thr_hi`` never are.  Block pairs are accepted when their centre
    link passes at ``thr_hi - r`` and dropped when it fails at ``thr_lo + r``.
    """
    big = np.iinfo(np.int64).max
    best = np.full(len(open_c), -1, dtype=np.int64)
    if not frontier.any() or not open_c.any():
        return best
    L = max(hier_a.top, hier_c.top)
    la, lc = hier_a.level(L), hier_c.level(L)
    pa = np.unique(hier_a.inverse[la][frontier])
    pc = np.unique(hier_c.inverse[lc][open_c])
    pa, pc = np.repeat(pa, len(pc)), np.tile(pc, len(pa))
    fidx = np.flatnonzero(frontier)
    while len(pa):
        la, lc = hier_a.level(L), hier_c.level(L)
        # smallest frontier corner per block, and which blocks still hold open corners
        first = np.full(len(hier_a.keys[la]), big)
        np.minimum.at(first, hier_a.inverse[la][fidx], fidx)
        still = open_c & (best < 0)
        has_open = np.zeros(len(hier_c.keys[lc]), dtype=bool)
        has_open[hier_c.inverse[lc][still]] = True
        keep = (first[pa] < big) & has_open[pc]
        pa, pc = pa[keep], pc[keep]
        if not len(pa):
            break
        r = max(hier_a.radius[la], hier_c.radius[lc])
        A = hier_a.centers[la][pa]
        C = hier_c.centers[lc][pc]
        if r == 0:
            sure = link_ok(A, C, start, interior, end, thr_lo, eps)
            maybe = np.zeros(len(pa), dtype=bool)
        else:
            sure = link_ok(A, C, start, interior, end, thr_hi - r, eps) if thr_hi >= r else \
                np.zeros(len(pa), dtype=bool)
            maybe = link_ok(A, C, start, interior, end, thr_lo + r, eps) & ~sure
        if sure.any():
            blk_pred = np.full(len(hier_c.keys[lc]), big)
            np.minimum.at(blk_pred, pc[sure], first[pa[sure]])
            cand = blk_pred[hier_c.inverse[lc]]
            newly = still & (cand < big)
            best[newly] = cand[newly]
        if L == 0 or not maybe.any():
            break
        pa, pc = _expand_pairs(hier_a, la if la == L else 0, pa[maybe], hier_c,
                               lc if lc == L else 0, pc[maybe])
        L -= 1
    return best


def simplify_nonrestricted(P: PolyCurve, delta: float, eps: float,
                           tol: float = EPS_GEOM) -> SimplificationResult:
    """Fewest-link path in the corner shortcut graph.

    The result's ``indices`` are the ball (vertex) indices hosting each
    output vertex, ``points`` the output vertices and ``spans`` the
    subcurve [i, j] each link was validated against.
    """
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if delta < 0:
        raise ValueError("delta must be non-negative")
    n, d = P.n, P.dim
    verts = np.asarray(P.vertices, dtype=float)
    thr_lo, thr_hi = (1.0 + 0.5 * eps) * delta, (1.0 + eps) * delta
    grids = {}
    for i in range(1, n + 1):
        if i in (1, n):
            grids[i] = ball_grid_corners(P.vertex(i), 0.0, eps, d)
        else:
            grids[i] = ball_grid_corners(P.vertex(i), delta, eps, d)
    hier = {i: _Hierarchy(g) for i, g in grids.items()}
    reached = {i: np.zeros(len(g), dtype=bool) for i, g in grids.items()}
    pred = {i: np.full((len(g), 2), -1, dtype=np.int64) for i, g in grids.items()}
    reached[1][0] = True
    frontier = {i: reached[i].copy() for i in grids}
    level = 0
    while not reached[n][0]:
        level += 1
        new = {i: np.zeros(len(g), dtype=bool) for i, g in grids.items()}
        # the end point first: once it is reached the other balls do not matter
        for j in [n, *range(2, n)]:
            if new[n][0]:
                break
            for i in range(1, j):
                if not frontier[i].any():
                    continue
                open_c = ~reached[j] & ~new[j]
                best = _connect(hier[i], frontier[i], hier[j], open_c,
                                verts[i - 1], verts[i:j - 1], verts[j - 1], thr_lo, thr_hi, tol)
                hit = best >= 0
                new[j] |= hit
                pred[j][hit, 0] = i
                pred[j][hit, 1] = best[hit]
        for i in grids:
            reached[i] |= new[i]
        if not any(x.any() for x in new.values()):
            break
        frontier = new
    sizes = {i: len(g) for i, g in grids.items()}
    stats = {"grid_sizes": sizes, "bfs_levels": level}
    if not reached[n][0]:
        log.warning("no path in the corner graph for delta=%g eps=%g", delta, eps)
        return SimplificationResult([], 0, achieved=False, stats=stats)
    path = [(n, 0)]
    while path[-1] != (1, 0):
        b, c = path[-1]
        path.append(tuple(int(x) for x in pred[b][c]))
    path.reverse()
    indices = [b for b, _ in path]
    points = [tuple(float(x) for x in grids[b].corners[c]) for b, c in path]
    spans = [(float(a), float(b)) for a, b in zip(indices[:-1], indices[1:])]
    return SimplificationResult(indices, len(path) - 1, True, points, spans, stats)
