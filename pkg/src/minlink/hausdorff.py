"""Vertex-restricted min-# under the directed Hausdorff distance from P' to P."""

from __future__ import annotations

from collections import deque
from typing import List

from .frechet import segment_in_tube
from .geom import EPS_GEOM, PolyCurve, Segment
from .vertex_frechet import SimplificationResult


def valid_shortcut_hd(P: PolyCurve, i: int, j: int, delta: float, eps: float = EPS_GEOM) -> bool:
    if not 1 <= i < j <= P.n:
        raise ValueError(f"need 1 <= i < j <= n, got {i}, {j}")
    if j == i + 1:
        return True
    return segment_in_tube(Segment(P.vertex(i), P.vertex(j)), P, delta, eps)


def shortcut_validity(P: PolyCurve, delta: float, eps: float = EPS_GEOM) -> List[List[bool]]:
    """valid[i][j] for 1 <= i < j <= n (row/column 0 unused)."""
    n = P.n
    valid = [[False] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            valid[i][j] = valid_shortcut_hd(P, i, j, delta, eps)
    return valid


def simplify_vr_hausdorff(P: PolyCurve, delta: float, eps: float = EPS_GEOM) -> SimplificationResult:
    if delta < 0:
        raise ValueError("delta must be non-negative")
    n = P.n
    valid = shortcut_validity(P, delta, eps)
    pred = [0] * (n + 1)
    seen = [False] * (n + 1)
    seen[1] = True
    queue = deque([1])
    while queue:
        i = queue.popleft()
        for j in range(i + 1, n + 1):
            if not seen[j] and valid[i][j]:
                seen[j] = True
                pred[j] = i
                queue.append(j)
    indices = [n]
    while indices[-1] != 1:
        indices.append(pred[indices[-1]])
    indices.reverse()
    res = SimplificationResult(indices, len(indices) - 1, True)
    res.points = [P.vertex(i) for i in indices]
    return res
