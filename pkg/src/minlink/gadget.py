"""Subset Sum to curve-restricted min-# (directed Hausdorff P' -> P) gadget.

The curve is a stack of nearly horizontal levels r^0, l^1, r^1, ..., r^{n-1}, t
spaced 2*delta + gamma apart, joined by connector pieces m^i and f^i far to
the side.  Small spikes leave zero-width holes (or width ~zeta holes) in the
gap between neighbouring levels.  A (2n-1)-link simplification has to pass
one hole per gap; since holes sit midway between levels, every link reflects
the x-coordinate about its hole, and choosing the hole tied to a_i adds a_i
to the x-coordinate two levels later.

Everything here is exact: coordinates are Fractions and tube containment is
decided with ``exact``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import on_segment, segment_in_tube_exact

RPoint = Tuple[Fraction, Fraction]

SCALE = Fraction(1, 2 ** 20)


class GadgetError(ValueError):
    pass


def parse_fraction(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise GadgetError(f"not a rational number: {s!r}") from exc


def fmt_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SubsetSumInstance:
    A: Tuple[int, ...]
    B: int

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        if not self.A:
            raise GadgetError("A must not be empty")
        if any(not isinstance(a, int) or a <= 0 for a in self.A):
            raise GadgetError("A must hold positive integers")
        if not isinstance(self.B, int) or self.B <= 0:
            raise GadgetError("B must be a positive integer")
        if Fraction(self.A[-1], 2) > self.B:
            raise GadgetError(
                f"last element {self.A[-1]} violates 0.5*a_n <= B={self.B}; "
                "reorder A (see reorder_for_gadget)")

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def delta(self) -> int:
        return max(self.A)


def reorder_for_gadget(A: Sequence[int], B: int) -> Tuple[int, ...]:
    """Move an element with 0.5*a <= B to the end, keeping the rest in order."""
    A = list(A)
    if A and A[-1] <= 2 * B:
        return tuple(A)
    for k in range(len(A) - 1, -1, -1):
        if A[k] <= 2 * B:
            return tuple(A[:k] + A[k + 1:] + [A[k]])
    raise GadgetError(f"no element a of A satisfies 0.5*a <= B={B}")


@dataclass(frozen=True)
class GadgetParams:
    gamma: Fraction
    zeta: Fraction = Fraction(0)

    @staticmethod
    def default(inst: SubsetSumInstance) -> "GadgetParams":
        return GadgetParams(Fraction(inst.delta) * SCALE, Fraction(0))

    def check(self, delta) -> None:
        g, z = Fraction(self.gamma), Fraction(self.zeta)
        if g <= 0:
            raise GadgetError("gamma must be positive")
        if z < 0:
            raise GadgetError("zeta must be non-negative")
        if g > Fraction(delta) * SCALE:
            raise GadgetError("gamma must be at most delta / 2^20")
        if z > g * SCALE:
            raise GadgetError("zeta must be at most gamma / 2^20")


@dataclass(frozen=True)
class Level:
    name: str
    start: int  # vertex index range [start, end] of the horizontal part
    end: int
    y: Fraction


@dataclass(frozen=True)
class Gap:
    lower: str
    upper: str
    holes: Tuple[Fraction, ...]
    y: Fraction  # midway between the two levels


@dataclass
class GadgetCurve:
    instance: SubsetSumInstance
    params: GadgetParams
    vertices: List[RPoint]
    levels: List[Level]
    gaps: List[Gap]

    @property
    def delta(self) -> Fraction:
        return Fraction(self.instance.delta)

    @property
    def k(self) -> int:
        return 2 * self.instance.n - 1

    def level(self, name: str) -> Level:
        for lv in self.levels:
            if lv.name == name:
                return lv
        raise GadgetError(f"unknown level {name!r}")

    def gap_below(self, upper: str) -> Gap:
        for g in self.gaps:
            if g.upper == upper:
                return g
        raise GadgetError(f"no gap below level {upper!r}")

    def gap_above(self, lower: str) -> Gap:
        for g in self.gaps:
            if g.lower == lower:
                return g
        raise GadgetError(f"no gap above level {lower!r}")


def expected_vertex_count(n: int) -> int:
    """r^0 and m^0, then l, f, r, m for each i in 1..n-1, then t."""
    return (8 + 2) + (n - 1) * (9 + 2 + 9 + 2) + 10


def _pieces(inst: SubsetSumInstance, params: GadgetParams):
    """Named vertex lists of every subcurve, in curve order."""
    A, B, n = inst.A, Fraction(inst.B), inst.n
    d = Fraction(inst.delta)
    g, z = Fraction(params.gamma), Fraction(params.zeta)
    h = Fraction(1, 2)

    def a(i):  # 1-based
        return Fraction(A[i - 1])

    out = []
    a1 = a(1)
    out.append(("r0", [
        (Fraction(0), Fraction(0)), (g / 4, Fraction(0)), (h * g, h * g + z), (3 * g / 4, Fraction(0)),
        (h * a1 + g / 4, Fraction(0)), (h * a1 + h * g, h * g + z), (h * a1 + 3 * g / 4, Fraction(0)),
        (d, Fraction(0))]))

    def m(i):
        y = (4 * i - 1) * d + (2 * i - h) * g
        return [((4 * i + 1) * d, y), ((4 * i + 3) * d + g, y)]

    out.append(("m0", m(0)))
    for i in range(1, n):
        yl = (4 * i - 2) * d + (2 * i - 1) * g
        ylo = (4 * i - 2) * d + (2 * i - Fraction(3, 2)) * g - z
        out.append((f"l{i}", [
            ((4 * i - 1) * d + g, yl), (h * a(i) + 3 * g / 4, yl), (h * a(i) + h * g, ylo),
            (h * a(i) + g / 4, yl), (3 * g / 4, yl), (h * g, ylo),
            (Fraction(0), (4 * i - 2) * d + (2 * i - h) * g + z), (-g / 4, yl), ((-4 * i + 2) * d, yl)]))
        yf = (4 * i - 3) * d + (2 * i - Fraction(3, 2)) * g
        out.append((f"f{i}", [((-4 * i + 2) * d, yf), (-4 * i * d - g, yf)]))
        yr = 4 * i * d + 2 * i * g
        yhi = 4 * i * d + (2 * i + h) * g + z
        out.append((f"r{i}", [
            (-4 * i * d - g, yr), (-g / 4, yr), (Fraction(0), 4 * i * d + (2 * i - h) * g - z),
            (h * g, yhi), (3 * g / 4, yr), (h * a(i + 1) + g / 4, yr), (h * a(i + 1) + h * g, yhi),
            (h * a(i + 1) + 3 * g / 4, yr), ((4 * i + 1) * d, yr)]))
        out.append((f"m{i}", m(i)))
    yt = (4 * n - 2) * d + (2 * n - 1) * g
    ytop = (4 * n - 1) * d + (2 * n - h) * g
    ylo = (4 * n - 2) * d + (2 * n - Fraction(3, 2)) * g - z
    an = a(n)
    out.append(("t", [
        ((4 * n - 1) * d + g, ytop), ((-4 * n + 4) * d - g, ytop), ((-4 * n + 4) * d - g, yt),
        (g / 4, yt), (h * g, ylo), (3 * g / 4, yt), (h * an + g / 4, yt), (h * an + h * g, ylo),
        (h * an + 3 * g / 4, yt), (B + n * g, yt)]))
    return out


def _spikes(vertices, lv: Level, upward: bool):
    return {x for x, y in vertices[lv.start:lv.end + 1] if (y > lv.y if upward else y < lv.y)}


def generate_gadget(inst: SubsetSumInstance, params: Optional[GadgetParams] = None) -> GadgetCurve:
    if params is None:
        params = GadgetParams.default(inst)
    params.check(inst.delta)
    vertices: List[RPoint] = []
    levels: List[Level] = []
    for name, pts in _pieces(inst, params):
        start = len(vertices)
        vertices.extend(pts)
        if name[0] in "rl":
            levels.append(Level(name, start, start + len(pts) - 1, pts[0][1]))
        elif name == "t":
            # the horizontal part of t runs from t_2 to t_9
            levels.append(Level(name, start + 2, start + 9, pts[2][1]))
    if len(vertices) != expected_vertex_count(inst.n):
        raise AssertionError("vertex count does not match the subcurve lists")
    gaps = []
    for lo, up in zip(levels[:-1], levels[1:]):
        ups, downs = _spikes(vertices, lo, True), _spikes(vertices, up, False)
        if ups != downs:
            raise AssertionError(f"spikes of {lo.name} and {up.name} are not aligned")
        gaps.append(Gap(lo.name, up.name, tuple(sorted(ups)), (lo.y + up.y) / 2))
    return GadgetCurve(inst, params, vertices, levels, gaps)


@dataclass
class HolePath:
    choices: Tuple[int, ...]  # per two-hole gap: 0 = gamma-only hole, 1 = hole tied to a_i
    vertices: List[Tuple[RPoint, str]]  # (point, host level)

    @property
    def link_count(self) -> int:
        return len(self.vertices) - 1

    def subset(self, inst: SubsetSumInstance) -> List[int]:
        return [a for a, c in zip(inst.A, self.choices) if c]


def path_from_choices(curve: GadgetCurve, choices: Sequence[int]) -> HolePath:
    """Follow the holes picked by ``choices`` with the reflection rule."""
    pos = curve.vertices[0]
    verts = [(pos, curve.levels[0].name)]
    it = iter(choices)
    used = []
    for gap in curve.gaps:
        if len(gap.holes) == 1:
            hx = gap.holes[0]
        else:
            try:
                c = next(it)
            except StopIteration:
                break
            used.append(c)
            hx = gap.holes[c]
        pos = (2 * hx - pos[0], curve.level(gap.upper).y)
        verts.append((pos, gap.upper))
    return HolePath(tuple(used), verts)


def solve_gadget(curve: GadgetCurve) -> Optional[HolePath]:
    """Search all 2^n hole sequences for one ending at the last vertex of P."""
    if not curve.levels or len(curve.gaps) != len(curve.levels) - 1:
        raise GadgetError("malformed gadget metadata")
    two = sum(1 for g in curve.gaps if len(g.holes) == 2)
    if two != curve.instance.n or any(len(g.holes) not in (1, 2) for g in curve.gaps):
        raise GadgetError("malformed gadget metadata: unexpected hole counts")
    end = curve.vertices[-1]
    for choices in itertools.product((0, 1), repeat=two):
        path = path_from_choices(curve, choices)
        if path.vertices[-1][0] == end:
            return path
    return None


def reachable_x_set(inst: SubsetSumInstance, params: Optional[GadgetParams], i: int) -> set:
    """x-coordinates reachable on l^i (on t for i == n) in 2i-1 links through holes."""
    if not 1 <= i <= inst.n:
        raise GadgetError(f"level index {i} outside 1..{inst.n}")
    curve = generate_gadget(inst, params)
    target = "t" if i == inst.n else f"l{i}"
    xs = set()
    for choices in itertools.product((0, 1), repeat=i):
        path = path_from_choices(curve, choices)
        for (x, _), host in path.vertices:
            if host == target:
                xs.add(x)
    return xs


def _line_x_at(p: RPoint, q: RPoint, y: Fraction) -> Fraction:
    return p[0] + (y - p[1]) * (q[0] - p[0]) / (q[1] - p[1])


def skip_vertex_x(inst: SubsetSumInstance, params: Optional[GadgetParams], level: str,
                  hole_choice: str) -> Fraction:
    """x of the vertex that lines up two consecutive holes so that ``level`` is skipped.

    ``level`` is ``"l<i>"`` (vertex on r^{i-1}) or ``"r<i>"`` (vertex on l^i);
    ``hole_choice`` picks the left (gamma-only) or right (a_i) hole of the
    two-hole gap.
    """
    if hole_choice not in ("left", "right"):
        raise GadgetError("hole_choice must be 'left' or 'right'")
    curve = generate_gadget(inst, params)
    if level not in {lv.name for lv in curve.levels} or level in ("r0", "t"):
        raise GadgetError(f"cannot skip level {level!r}")
    below, above = curve.gap_below(level), curve.gap_above(level)
    c = 0 if hole_choice == "left" else 1
    h1 = (below.holes[c] if len(below.holes) == 2 else below.holes[0], below.y)
    h2 = (above.holes[c] if len(above.holes) == 2 else above.holes[0], above.y)
    host = curve.level(below.lower)
    return _line_x_at(h1, h2, host.y)


@dataclass
class Verification:
    ok: bool
    violations: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_simplification(curve: GadgetCurve, path: HolePath) -> Verification:
    bad: List[str] = []
    pts = [p for p, _ in path.vertices]
    if path.link_count != curve.k:
        bad.append(f"{path.link_count} links, expected {curve.k}")
    if not pts or pts[0] != curve.vertices[0] or pts[-1] != curve.vertices[-1]:
        bad.append("end points differ from the curve's")
    order = {lv.name: k for k, lv in enumerate(curve.levels)}
    last = -1
    for k, (p, host) in enumerate(path.vertices):
        if host not in order:
            bad.append(f"vertex {k}: unknown host {host!r}")
            continue
        if order[host] <= last:
            bad.append(f"vertex {k}: host {host} out of order")
        last = order[host]
        lv = curve.levels[order[host]]
        seg = curve.vertices[lv.start:lv.end + 1]
        if not any(on_segment(p, u, v) for u, v in zip(seg[:-1], seg[1:])):
            bad.append(f"vertex {k} is not on {host}")
    for k, (p, q) in enumerate(zip(pts[:-1], pts[1:])):
        if not segment_in_tube_exact(p, q, curve.vertices, curve.delta):
            bad.append(f"link {k} leaves the delta-tube")
    return Verification(not bad, bad)


def gadget_to_json(curve: GadgetCurve) -> dict:
    inst, prm = curve.instance, curve.params
    return {
        "kind": "gadget",
        "A": list(inst.A),
        "B": inst.B,
        "gamma": fmt_fraction(prm.gamma),
        "zeta": fmt_fraction(prm.zeta),
        "delta": inst.delta,
        "k": curve.k,
        "dim": 2,
        "vertices": [[fmt_fraction(x), fmt_fraction(y)] for x, y in curve.vertices],
        "vertices_float": [[float(x), float(y)] for x, y in curve.vertices],
        "levels": [{"name": lv.name, "start": lv.start, "end": lv.end, "y": fmt_fraction(lv.y)}
                   for lv in curve.levels],
        "holes": [{"lower": g.lower, "upper": g.upper, "y": fmt_fraction(g.y),
                   "x": [fmt_fraction(x) for x in g.holes]} for g in curve.gaps],
    }


def gadget_from_json(doc: dict) -> GadgetCurve:
    """Rebuild a gadget and check the stored coordinates and metadata against it."""
    try:
        inst = SubsetSumInstance(tuple(int(a) for a in doc["A"]), int(doc["B"]))
        params = GadgetParams(parse_fraction(doc["gamma"]), parse_fraction(doc.get("zeta", "0")))
        stored = [(parse_fraction(x), parse_fraction(y)) for x, y in doc["vertices"]]
        levels = [(lv["name"], int(lv["start"]), int(lv["end"]), parse_fraction(lv["y"]))
                  for lv in doc["levels"]]
        holes = [(g["lower"], g["upper"], tuple(parse_fraction(x) for x in g["x"]))
                 for g in doc["holes"]]
    except (KeyError, TypeError) as exc:
        raise GadgetError(f"malformed gadget file: missing or bad field {exc}") from exc
    curve = generate_gadget(inst, params)
    if stored != curve.vertices:
        raise GadgetError("stored vertices do not match the instance")
    if levels != [(lv.name, lv.start, lv.end, lv.y) for lv in curve.levels]:
        raise GadgetError("stored level metadata does not match the instance")
    if holes != [(g.lower, g.upper, g.holes) for g in curve.gaps]:
        raise GadgetError("stored hole metadata does not match the instance")
    return curve


def random_instances(count: int = 64, seed: int = 0, max_n: int = 6,
                     max_a: int = 20) -> List[SubsetSumInstance]:
    """Seeded instances, about half of them solvable, all respecting the ordering rule."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        A = [rng.randint(1, max_a) for _ in range(n)]
        if rng.random() < 0.5:
            sub = [a for a in A if rng.random() < 0.5] or [rng.choice(A)]
            B = sum(sub)
        else:
            B = rng.randint(1, sum(A))
        try:
            out.append(SubsetSumInstance(reorder_for_gadget(A, B), B))
        except GadgetError:
            continue
    return out


def instance_summary(curve: GadgetCurve) -> Dict:
    return {"A": list(curve.instance.A), "B": curve.instance.B, "delta": curve.instance.delta,
            "k": curve.k, "vertices": len(curve.vertices)}
