"""Points, segments, parametrized polygonal curves and free-interval solving.

Curves are parametrized over ``[1, n]`` so that ``P(i)`` is the i-th vertex
(1-based) and ``P(i + lam)`` interpolates linearly along the i-th edge.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

log = logging.getLogger(__name__)

Point = Tuple[float, ...]

EPS_GEOM = 1e-9
DENSIFY_STEP = 1e-3


class GeometryError(ValueError):
    """Raised for out-of-domain parameters and malformed geometry."""


@dataclass(frozen=True)
class Tolerances:
    eps_geom: float = EPS_GEOM
    densify_step: float = DENSIFY_STEP

    def __post_init__(self):
        if not self.eps_geom > 0:
            raise GeometryError("eps_geom must be positive")


@dataclass(frozen=True)
class ParamInterval:
    """Sub-interval of a parameter domain with endpoint closedness flags.

    The empty interval is the single value ``EMPTY`` (lo > hi).
    """

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    @property
    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    def __bool__(self):
        return not self.is_empty

    def contains(self, t: float) -> bool:
        if self.is_empty:
            return False
        if t < self.lo or t > self.hi:
            return False
        if t == self.lo and not self.lo_closed:
            return False
        if t == self.hi and not self.hi_closed:
            return False
        return True

    def shift(self, offset: float) -> "ParamInterval":
        if self.is_empty:
            return EMPTY
        return ParamInterval(self.lo + offset, self.hi + offset, self.lo_closed, self.hi_closed)

    @property
    def length(self) -> float:
        return 0.0 if self.is_empty else self.hi - self.lo


EMPTY = ParamInterval(math.inf, -math.inf, False, False)


def closed(lo: float, hi: float) -> ParamInterval:
    return ParamInterval(lo, hi) if lo <= hi else EMPTY


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise GeometryError("segment endpoints differ in dimension")

    def at(self, t: float) -> Point:
        return lerp(self.a, self.b, t)

    def as_curve(self) -> "PolyCurve":
        return PolyCurve((self.a, self.b))


@dataclass(frozen=True)
class PolyCurve:
    vertices: Tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(tuple(float(c) for c in v) for v in self.vertices)
        if len(verts) < 2:
            raise GeometryError("a curve needs at least two vertices")
        d = len(verts[0])
        if d < 1:
            raise GeometryError("dimension must be at least 1")
        for v in verts:
            if len(v) != d:
                raise GeometryError("vertices differ in dimension")
            if not all(math.isfinite(c) for c in v):
                raise GeometryError("non-finite coordinate")
        object.__setattr__(self, "vertices", verts)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def __len__(self):
        return len(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def vertex(self, i: int) -> Point:
        """1-based vertex access."""
        return self.vertices[i - 1]

    def edge(self, k: int) -> Segment:
        """1-based edge ``k`` from vertex k to vertex k+1."""
        return Segment(self.vertices[k - 1], self.vertices[k])

    def __call__(self, t: float) -> Point:
        return eval_curve(self, t)


def dist(p: Sequence[float], q: Sequence[float]) -> float:
    return math.sqrt(sum((a - b) * (a - b) for a, b in zip(p, q)))


def dist2(p: Sequence[float], q: Sequence[float]) -> float:
    return sum((a - b) * (a - b) for a, b in zip(p, q))


def lerp(a: Point, b: Point, t: float) -> Point:
    if t == 0:
        return tuple(a)
    if t == 1:
        return tuple(b)
    return tuple((1.0 - t) * x + t * y for x, y in zip(a, b))


def eval_curve(P: PolyCurve, t: float) -> Point:
    n = P.n
    if not (1 <= t <= n):
        raise GeometryError(f"parameter {t} outside [1, {n}]")
    i = int(math.floor(t))
    if i == t:
        return P.vertices[i - 1]
    return lerp(P.vertices[i - 1], P.vertices[i], t - i)


def subcurve(P: PolyCurve, s: float, t: float) -> PolyCurve:
    if s > t:
        raise GeometryError(f"subcurve bounds reversed: {s} > {t}")
    if s < 1 or t > P.n:
        raise GeometryError(f"subcurve bounds outside [1, {P.n}]")
    start, end = eval_curve(P, s), eval_curve(P, t)
    if s == t:
        return PolyCurve((start, end))
    inner = [P.vertices[k - 1] for k in range(int(math.floor(s)) + 1, int(math.ceil(t)))]
    return PolyCurve((start, *inner, end))


def segment_frechet(s1: Segment, s2: Segment) -> float:
    if len(s1.a) != len(s2.a):
        raise GeometryError("dimension mismatch")
    return max(dist(s1.a, s2.a), dist(s1.b, s2.b))


def quadratic_le_zero(A: float, B: float, C: float, slack: float = 0.0):
    """Solve ``A t^2 + B t + C <= 0`` for convex (A >= 0) quadratics.

    Returns ``(lo, hi)`` or None. ``slack`` is added to C's allowance, i.e. a
    negative discriminant within ``slack`` is treated as a tangency.
    """
    if A <= 0.0:
        if B == 0.0:
            return (-math.inf, math.inf) if C <= slack else None
        root = -C / B
        return (-math.inf, root) if B > 0 else (root, math.inf)
    disc = B * B - 4.0 * A * C
    if disc < 0.0:
        if disc >= -4.0 * A * slack:
            r = -B / (2.0 * A)
            return (r, r)
        return None
    sq = math.sqrt(disc)
    # numerically stable root pair
    if B >= 0:
        q = -0.5 * (B + sq)
    else:
        q = -0.5 * (B - sq)
    if q == 0.0:
        return (0.0, 0.0)
    r1, r2 = q / A, C / q
    return (min(r1, r2), max(r1, r2))


def ball_edge_free_interval(center: Sequence[float], delta: float, a: Sequence[float],
                            b: Sequence[float], eps: float = EPS_GEOM) -> ParamInterval:
    """Parameters ``t`` in [0,1] with ``|a + t (b - a) - center| <= delta``.

    Distances within ``eps`` of delta count as free (closed tangency).
    """
    if len(center) != len(a) or len(a) != len(b):
        raise GeometryError("dimension mismatch")
    ab = [y - x for x, y in zip(a, b)]
    ca = [x - c for x, c in zip(a, center)]
    A = sum(v * v for v in ab)
    if A <= 1e-300:
        return closed(0.0, 1.0) if math.sqrt(sum(v * v for v in ca)) <= delta + eps else EMPTY
    B = 2.0 * sum(u * v for u, v in zip(ab, ca))
    C = sum(v * v for v in ca) - delta * delta
    slack = (delta + eps) ** 2 - delta * delta
    roots = quadratic_le_zero(A, B, C, slack)
    if roots is None:
        # the squared slack vanishes for small delta; retest the closest point directly
        r = min(max(-B / (2.0 * A), 0.0), 1.0)
        if math.sqrt(sum((x + r * u) ** 2 for x, u in zip(ca, ab))) <= delta + eps:
            return closed(r, r)
        return EMPTY
    lo, hi = max(roots[0], 0.0), min(roots[1], 1.0)
    if lo > hi:
        tol = eps / math.sqrt(A)
        if roots[1] < 0.0 and roots[1] >= -tol:
            return closed(0.0, 0.0)
        if roots[0] > 1.0 and roots[0] <= 1.0 + tol:
            return closed(1.0, 1.0)
        return EMPTY
    return closed(lo, hi)


def diameter(P: PolyCurve) -> float:
    vs = P.vertices
    return max(dist(p, q) for p in vs for q in vs)


def curve_length(P: PolyCurve) -> float:
    return sum(dist(P.vertices[k], P.vertices[k + 1]) for k in range(P.n - 1))


def densify(P: PolyCurve, step: float) -> list:
    """Sample P so consecutive samples are at most ``step`` apart; keeps every vertex."""
    out = [P.vertices[0]]
    for k in range(P.n - 1):
        a, b = P.vertices[k], P.vertices[k + 1]
        m = max(1, int(math.ceil(dist(a, b) / step)))
        out.extend(lerp(a, b, s / m) for s in range(1, m + 1))
    return out


def clean_vertices(vertices: Iterable[Sequence[float]]) -> PolyCurve:
    """Build a curve, collapsing consecutive duplicate vertices.

    Closed curves (first vertex equal to last) are rejected.
    """
    verts = [tuple(float(c) for c in v) for v in vertices]
    out = []
    for v in verts:
        if out and v == out[-1]:
            continue
        out.append(v)
    if len(out) < len(verts):
        log.warning("collapsed %d duplicate consecutive vertices", len(verts) - len(out))
    if len(out) < 2:
        raise GeometryError("curve has fewer than two distinct vertices")
    if len(out) > 2 and out[0] == out[-1]:
        raise GeometryError("closed curves are not supported")
    return PolyCurve(tuple(out))
