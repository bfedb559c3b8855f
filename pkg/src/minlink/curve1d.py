"""Curve-restricted min-# under the global Frechet distance for curves in R^1.

The dog walks along P; the man walks the simplification and is dragged by a
leash of length delta.  The man only moves when the leash is taut, so his
walk turns only when the dog has come back a full 2*delta from an extreme.
Each turn of the man is a vertex of the output; its value is located on P
after the previous vertex, which keeps the output curve-restricted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .geom import EPS_GEOM, GeometryError, PolyCurve


@dataclass
class Curve1DResult:
    vertices: List[Tuple[float, float]]  # (parameter on P, value)
    visits: int = 0

    @property
    def link_count(self) -> int:
        return len(self.vertices) - 1

    def curve(self) -> PolyCurve:
        return PolyCurve(tuple((x,) for _, x in self.vertices))


class _Locator:
    """Finds the earliest parameter >= the last one where P takes a value."""

    def __init__(self, xs):
        self.xs = xs
        self.edge = 0  # 0-based edge index of the last located parameter
        self.param = 1.0
        self.visits = 0

    def find(self, value: float) -> float:
        xs = self.xs
        k = self.edge
        while k < len(xs) - 1:
            self.visits += 1
            a, b = xs[k], xs[k + 1]
            lo_t = self.param - (k + 1) if k == self.edge else 0.0
            if min(a, b) <= value <= max(a, b):
                lam = 0.0 if a == b else (value - a) / (b - a)
                lam = min(max(lam, 0.0), 1.0)
                if lam > lo_t:
                    self.edge, self.param = k, k + 1 + lam
                    return self.param
            k += 1
        raise GeometryError(f"value {value} not found on the remaining curve")


def greedy_simplify_1d(P: PolyCurve, delta: float, eps: float = EPS_GEOM) -> Curve1DResult:
    """Moves smaller than ``eps`` (relative to the curve's extent) are ignored so
    that rounding in ``dog -/+ delta`` does not create spurious turns."""
    if P.dim != 1:
        raise GeometryError("greedy_simplify_1d needs a 1-dimensional curve")
    if delta < 0:
        raise ValueError("delta must be non-negative")
    xs = [v[0] for v in P.vertices]
    n = len(xs)
    loc = _Locator(xs)
    out = [(1.0, xs[0])]
    man = xs[0]
    tol = eps * max(1.0, max(abs(x) for x in xs), delta)
    heading = 0  # +1 man last moved up, -1 down, 0 not yet moved
    visits = 0

    def turn_at(value):
        s = loc.find(value)
        out.append((s, value))

    for t in range(1, n):
        visits += 1
        dog = xs[t]
        new = min(max(man, dog - delta), dog + delta)
        if abs(new - man) > tol:
            step = 1 if new > man else -1
            if heading and step != heading:
                turn_at(man)
            heading = step
            man = new
    # the man walks to the end point while the dog waits there
    end = xs[-1]
    if abs(man - end) > tol:
        step = 1 if end > man else -1
        if heading and step != heading:
            turn_at(man)
    if out[-1][0] != float(n):
        out.append((float(n), end))
    return Curve1DResult(out, visits + loc.visits)
