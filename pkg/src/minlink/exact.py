"""Exact arithmetic for tube containment with rational input.

Interval end points produced by intersecting a segment with a disc are roots
of quadratics with rational coefficients, i.e. numbers ``a + b*sqrt(r)``.
Comparing two of them reduces to the sign of ``A + B sqrt(R) + C sqrt(S)``,
which is decided by repeated squaring.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Q = Fraction
RPoint = Tuple[Fraction, Fraction]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def rational_sqrt(r: Fraction) -> Optional[Fraction]:
    """sqrt(r) if it is rational, else None."""
    if r < 0:
        return None
    n, d = r.numerator, r.denominator
    sn, sd = math.isqrt(n), math.isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


def sign_surd1(A: Fraction, B: Fraction, R: Fraction) -> int:
    """Sign of A + B sqrt(R), R >= 0."""
    sb = _sign(B) if R > 0 else 0
    sa = _sign(A)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare A^2 with B^2 R
    return sa * _sign(A * A - B * B * R)


def sign_surd2(A: Fraction, B: Fraction, R: Fraction, C: Fraction, S: Fraction) -> int:
    """Sign of A + B sqrt(R) + C sqrt(S), with R, S >= 0."""
    if R == 0 or B == 0:
        return sign_surd1(A, C, S)
    if S == 0 or C == 0:
        return sign_surd1(A, B, R)
    # sign of w = B sqrt(R) + C sqrt(S)
    sw = sign_surd1(Fraction(0), B, R) if _sign(B) == _sign(C) else \
        _sign(B) * _sign(B * B * R - C * C * S)
    sa = _sign(A)
    if sw == 0:
        return sa
    if sa == 0 or sa == sw:
        return sw
    # opposite signs: compare A^2 with w^2 = B^2 R + C^2 S + 2 B C sqrt(R S)
    return sa * sign_surd1(A * A - B * B * R - C * C * S, -2 * B * C, R * S)


@functools.total_ordering
class Surd:
    """The real number a + b sqrt(r) with rational a, b and r >= 0."""

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b=0, r=0):
        a, b, r = Fraction(a), Fraction(b), Fraction(r)
        if r < 0:
            raise ValueError("negative radicand")
        s = rational_sqrt(r) if b != 0 else Fraction(0)
        if s is not None:
            a, b, r = a + b * s, Fraction(0), Fraction(0)
        self.a, self.b, self.r = a, b, r

    def _cmp(self, other) -> int:
        if not isinstance(other, Surd):
            other = Surd(other)
        return sign_surd2(self.a - other.a, self.b, self.r, -other.b, other.r)

    def __eq__(self, other):
        return self._cmp(other) == 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __hash__(self):
        return hash((self.a, self.b, self.r))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.r))

    def __repr__(self):
        if self.b == 0:
            return f"Surd({self.a})"
        return f"Surd({self.a} + {self.b}*sqrt({self.r}))"


def _dot(u, v) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def _sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


Interval = Tuple[Surd, Surd]


def _quad_interval(a: Fraction, b: Fraction, c: Fraction) -> Optional[Interval]:
    """{t : a t^2 + 2 b t + c <= 0} for a > 0."""
    disc = b * b - a * c
    if disc < 0:
        return None
    return Surd(-b / a, -1 / a, disc), Surd(-b / a, 1 / a, disc)


def _clip(iv: Optional[Interval], lo: Surd, hi: Surd) -> Optional[Interval]:
    if iv is None:
        return None
    l, h = max(iv[0], lo), min(iv[1], hi)
    return (l, h) if l <= h else None


def capsule_interval(p0: Sequence[Fraction], p1: Sequence[Fraction], e0: Sequence[Fraction],
                     e1: Sequence[Fraction], delta: Fraction) -> Optional[Interval]:
    """Parameters t in [0,1] of p0 + t (p1 - p0) within distance delta of segment e0 e1."""
    zero, one = Surd(0), Surd(1)
    D = _sub(p1, p0)
    dd = _dot(D, D)
    d2 = delta * delta
    pieces: List[Interval] = []
    for c in (e0, e1):
        W = _sub(p0, c)
        if dd == 0:
            if _dot(W, W) <= d2:
                pieces.append((zero, one))
            continue
        iv = _clip(_quad_interval(dd, _dot(D, W), _dot(W, W) - d2), zero, one)
        if iv is not None:
            pieces.append(iv)
    E = _sub(e1, e0)
    L2 = _dot(E, E)
    if L2 > 0:
        W0 = _sub(p0, e0)
        # projection parameter on the edge line: lam(t) = (W0.E + t D.E) / L2 in [0, 1]
        w0e, de = _dot(W0, E), _dot(D, E)
        if de == 0:
            lam_iv = (zero, one) if 0 <= w0e <= L2 else None
        else:
            r0, r1 = -w0e / de, (L2 - w0e) / de
            lam_iv = _clip((Surd(min(r0, r1)), Surd(max(r0, r1))), zero, one)
        if lam_iv is not None:
            A2 = dd * L2 - de * de
            B2 = _dot(W0, D) * L2 - w0e * de
            C2 = _dot(W0, W0) * L2 - w0e * w0e - d2 * L2
            if A2 == 0:
                cyl = (zero, one) if C2 <= 0 else None
            else:
                cyl = _quad_interval(A2, B2, C2)
            iv = _clip(cyl, *lam_iv) if cyl is not None else None
            if iv is not None:
                pieces.append(iv)
    if not pieces:
        return None
    return min(p[0] for p in pieces), max(p[1] for p in pieces)


def segment_in_tube_exact(p0: Sequence[Fraction], p1: Sequence[Fraction],
                          vertices: Sequence[Sequence[Fraction]], delta: Fraction) -> bool:
    """Is the segment p0 p1 inside the closed delta-neighbourhood of the polyline?"""
    ivs = []
    for e0, e1 in zip(vertices[:-1], vertices[1:]):
        iv = capsule_interval(p0, p1, e0, e1, delta)
        if iv is not None:
            ivs.append(iv)
    ivs.sort(key=lambda iv: iv[0])
    reach = Surd(0)
    started = False
    for lo, hi in ivs:
        if lo > reach:
            break
        started = True
        if hi > reach:
            reach = hi
    return started and reach >= 1


def on_segment(p: Sequence[Fraction], a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    """Exact test that the planar point p lies on the closed segment ab."""
    cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    if cross != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
