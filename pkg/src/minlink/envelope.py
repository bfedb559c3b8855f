"""Lower envelope of labelled parameter intervals."""

from __future__ import annotations

import heapq
from typing import Any, List, Sequence, Tuple

from .geom import ParamInterval


def lower_envelope(pieces: Sequence[Tuple[ParamInterval, Any]]) -> List[Tuple[ParamInterval, Any]]:
    """Pointwise-minimum label over a set of labelled intervals.

    Labels only need ``<`` and ``==``.  The result is sorted, pairwise
    disjoint, and merges neighbouring parts that carry equal labels.
    """
    items = [(iv, lab) for iv, lab in pieces if not iv.is_empty]
    if not items:
        return []
    breaks = sorted({iv.lo for iv, _ in items} | {iv.hi for iv, _ in items})
    order = sorted(range(len(items)), key=lambda k: items[k][0].lo)
    heap = []
    pos = 0
    atoms = []  # (lo, lo_closed, hi, hi_closed, label)

    deferred = []
    for bi, b in enumerate(breaks):
        for k in deferred:
            heapq.heappush(heap, (_Key(items[k][1]), k))
        deferred = []
        while pos < len(order) and items[order[pos]][0].lo <= b:
            k = order[pos]
            if items[k][0].lo == b and not items[k][0].lo_closed:
                deferred.append(k)
            else:
                heapq.heappush(heap, (_Key(items[k][1]), k))
            pos += 1
        while heap:
            iv = items[heap[0][1]][0]
            if iv.hi < b or (iv.hi == b and not iv.hi_closed):
                heapq.heappop(heap)
            else:
                break
        if heap:
            atoms.append((b, True, b, True, items[heap[0][1]][1]))
        if bi + 1 == len(breaks):
            break
        nxt = breaks[bi + 1]
        for k in deferred:
            heapq.heappush(heap, (_Key(items[k][1]), k))
        deferred = []
        while heap and items[heap[0][1]][0].hi <= b:
            heapq.heappop(heap)
        if heap:
            atoms.append((b, False, nxt, False, items[heap[0][1]][1]))

    out = []
    cur = None
    for lo, lc, hi, hc, lab in atoms:
        if cur is not None and cur[2] == lo and (cur[3] or lc) and cur[4] == lab:
            cur = (cur[0], cur[1], hi, hc, lab)
            continue
        if cur is not None:
            out.append((ParamInterval(cur[0], cur[2], cur[1], cur[3]), cur[4]))
        cur = (lo, lc, hi, hc, lab)
    if cur is not None:
        out.append((ParamInterval(cur[0], cur[2], cur[1], cur[3]), cur[4]))
    return out


class _Key:
    """Heap key comparing labels only (ties fall back to insertion index)."""

    __slots__ = ("label",)

    def __init__(self, label):
        self.label = label

    def __lt__(self, other):
        return self.label < other.label

    def __eq__(self, other):
        return self.label == other.label


def value_at(envelope: Sequence[Tuple[ParamInterval, Any]], t: float):
    """Label of the envelope piece containing t, or None."""
    for iv, lab in envelope:
        if iv.contains(t):
            return lab
    return None
