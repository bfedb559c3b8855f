"""Seeded random instances shared by the self-test and the test suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import List

from .geom import PolyCurve, clean_vertices, dist


@dataclass(frozen=True)
class Instance:
    curve: PolyCurve
    delta: float
    quantile: float
    seed: int


def pairwise_quantile(P: PolyCurve, q: float) -> float:
    ds = sorted(dist(a, b) for a, b in itertools.combinations(P.vertices, 2))
    k = min(len(ds) - 1, max(0, int(round(q * (len(ds) - 1)))))
    return ds[k]


def random_curve(rng: random.Random, n: int, d: int, scale: float = 10.0) -> PolyCurve:
    while True:
        pts = [tuple(rng.uniform(0, scale) for _ in range(d)) for _ in range(n)]
        try:
            P = clean_vertices(pts)
        except ValueError:
            continue
        if P.n == n:
            return P


def vr_corpus(count: int = 200, seed: int = 0, n_range=(4, 9), dims=(1, 2, 3),
              quantiles=(0.25, 0.5, 0.75)) -> List[Instance]:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        d = dims[k % len(dims)]
        q = quantiles[(k // len(dims)) % len(quantiles)]
        n = rng.randint(*n_range)
        P = random_curve(rng, n, d)
        out.append(Instance(P, pairwise_quantile(P, q), q, k))
    return out


def curve1d_corpus(count: int = 500, seed: int = 0, max_n: int = 12) -> List[Instance]:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(2, max_n)
        P = random_curve(rng, n, 1)
        if n == 2:
            delta = rng.uniform(0, 3)
        else:
            delta = pairwise_quantile(P, rng.choice((0.1, 0.25, 0.5, 0.75)))
        out.append(Instance(P, delta, -1.0, k))
    return out
