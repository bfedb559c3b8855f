import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from minlink.envelope import lower_envelope, value_at
from minlink.frechet import (capsule_cover_interval, decide_frechet, directed_hausdorff_segment,
                             frechet_distance, reach_through_strip, reach_through_strip_naive,
                             segment_in_tube)
from minlink.geom import (ParamInterval, PolyCurve, Segment, ball_edge_free_interval, densify,
                          dist, subcurve)
from minlink.oracles import discrete_frechet
from conftest import U_CURVE
from strategies import curves

PEAK = PolyCurve(((0, 0), (1, 1), (2, 0)))
BASE = PolyCurve(((0, 0), (2, 0)))


def test_decide_examples():
    P = PolyCurve(((0, 0), (3, 1), (1, 4), (5, 5)))
    assert decide_frechet(P, P, 0)
    A, B = PolyCurve(((0, 0), (1, 0))), PolyCurve(((0, 1), (1, 1)))
    assert not decide_frechet(A, B, 0.999)
    assert decide_frechet(A, B, 1.0)
    assert decide_frechet(PEAK, BASE, 1.0)
    assert not decide_frechet(PEAK, BASE, 0.99)


def test_distance_examples():
    assert frechet_distance(PEAK, PEAK) == pytest.approx(0, abs=1e-8)
    A, B = PolyCurve(((0, 0), (1, 0))), PolyCurve(((0, 1), (1, 1)))
    assert frechet_distance(A, B) == pytest.approx(1, abs=1e-8)
    assert frechet_distance(PEAK, BASE, 1e-9) == pytest.approx(1, abs=1e-8)


def test_capsule_examples():
    e = Segment((0, 0), (10, 0))
    iv = capsule_cover_interval(e, 1, Segment((0, 0), (10, 0)))
    assert (iv.lo, iv.hi) == (0, 1)
    assert not capsule_cover_interval(e, 1, Segment((0, 2), (10, 2)))
    iv = capsule_cover_interval(e, 1, Segment((5, -2), (5, 2)))
    assert (iv.lo, iv.hi) == pytest.approx((0.25, 0.75))


def test_tube_examples():
    assert segment_in_tube(Segment((0, 0), (10, 0)), PolyCurve(((0, 0), (10, 0))), 0)
    gap = Segment((0, 0), (3, 0))
    assert not segment_in_tube(gap, U_CURVE, 1)
    assert segment_in_tube(gap, U_CURVE, 1.6)
    assert directed_hausdorff_segment(gap, U_CURVE) == pytest.approx(1.5, abs=1e-8)


@given(curves(max_n=5), curves(max_n=5), st.floats(0, 10), st.floats(0, 10))
def test_decide_monotone_and_symmetric(P, Q, d1, d2):
    if P.dim != Q.dim:
        return
    lo, hi = sorted((d1, d2))
    if decide_frechet(P, Q, lo):
        assert decide_frechet(P, Q, hi)
    assert decide_frechet(P, Q, lo) == decide_frechet(Q, P, lo) or \
        abs(frechet_distance(P, Q) - lo) < 1e-6


def test_against_discrete_frechet():
    rng = random.Random(7)
    h = 0.02
    for _ in range(100):
        P = PolyCurve(tuple((rng.uniform(0, 3), rng.uniform(0, 3)) for _ in range(rng.randint(2, 4))))
        Q = PolyCurve(tuple((rng.uniform(0, 3), rng.uniform(0, 3)) for _ in range(rng.randint(2, 4))))
        cont = frechet_distance(P, Q)
        disc = discrete_frechet(densify(P, h), densify(Q, h))
        # the discrete distance of densified curves overestimates by at most the step
        assert cont - 1e-7 <= disc <= cont + h


def test_tube_matches_dense_sampling():
    rng = random.Random(3)
    step = 1e-3
    for _ in range(60):
        P = PolyCurve(tuple((rng.uniform(0, 4), rng.uniform(0, 4)) for _ in range(rng.randint(2, 5))))
        seg = Segment((rng.uniform(0, 4), rng.uniform(0, 4)), (rng.uniform(0, 4), rng.uniform(0, 4)))
        hd = directed_hausdorff_segment(seg, P)
        m = int(dist(seg.a, seg.b) / step) + 1
        sampled = max(_point_curve_dist(seg.at(k / m), P) for k in range(m + 1))
        assert sampled <= hd + 1e-7
        assert hd <= sampled + step


def _point_curve_dist(p, P):
    best = math.inf
    for k in range(1, P.n):
        a, b = P.edge(k).a, P.edge(k).b
        ab = [y - x for x, y in zip(a, b)]
        L = sum(c * c for c in ab)
        t = 0.0 if L == 0 else max(0.0, min(1.0, sum((pp - x) * c for pp, x, c in zip(p, a, ab)) / L))
        best = min(best, dist(p, [x + t * c for x, c in zip(a, ab)]))
    return best


def test_reach_trivial_cases():
    P = PolyCurve(((0, 0), (4, 0)))
    out = reach_through_strip(P, Segment((0, 0), (4, 0)), 0.0, [(ParamInterval(1, 1), 3)])
    assert [(iv.lo, iv.hi, lab) for iv, lab in out] == [(2, 2, 3)]
    Q = PolyCurve(((0, 0), (1, 0), (2, 0)))
    out = reach_through_strip(Q, Segment((0, 0), (2, 0)), 10.0,
                              [(ParamInterval(1, 3), 5), (ParamInterval(2, 3), 1)])
    pieces = [(iv.lo, iv.hi, lab) for iv, lab in out]
    assert pieces[0][:2] == (1, 2) and pieces[0][2] == 5
    assert value_at(out, 2.5) == 1


def _free_intervals(P, c, delta):
    out = []
    for k in range(1, P.n):
        iv = ball_edge_free_interval(c, delta, P.vertices[k - 1], P.vertices[k]).shift(k)
        if iv:
            if out and iv.lo <= out[-1][1] + 1e-12:
                out[-1] = (out[-1][0], iv.hi)
            else:
                out.append((iv.lo, iv.hi))
    return out


def _random_strip(rng):
    n = rng.randint(3, 6)
    P = PolyCurve(tuple((rng.uniform(0, 5), rng.uniform(0, 5)) for _ in range(n)))
    u, v = rng.sample(range(n), 2)
    delta = rng.uniform(0.5, 3)
    seg = Segment(P.vertices[u], P.vertices[v])
    entries = []
    for lo, hi in _free_intervals(P, seg.a, delta):
        for _ in range(2):
            a, b = sorted(rng.uniform(lo, hi) for _ in range(2))
            entries.append((ParamInterval(a, b), rng.randint(0, 5)))
    return P, seg, delta, entries


def test_reach_batch_equals_naive():
    rng = random.Random(11)
    for _ in range(150):
        P, seg, delta, entries = _random_strip(rng)
        fast = reach_through_strip(P, seg, delta, entries)
        slow = reach_through_strip_naive(P, seg, delta, entries)
        for k in range(400):
            t = 1 + (P.n - 1) * k / 399
            assert value_at(fast, t) == value_at(slow, t)


def test_reach_matches_frechet_oracle():
    # from an entry interval the lowest point dominates, so t is reachable
    # iff the subcurve from there to t is within delta of the shortcut
    rng = random.Random(5)
    for _ in range(80):
        P, seg, delta, entries = _random_strip(rng)
        out = reach_through_strip(P, seg, delta, entries)
        cuts = sorted({x for iv, _ in out for x in (iv.lo, iv.hi)} |
                      {x for iv, _ in entries for x in (iv.lo, iv.hi)})
        for k in range(120):
            t = 1 + (P.n - 1) * (k + 0.5) / 120
            if any(abs(t - c) < 1e-6 for c in cuts):
                continue
            labels = [lab for iv, lab in entries
                      if iv.lo <= t and decide_frechet(subcurve(P, iv.lo, t), seg.as_curve(), delta)]
            expect = min(labels) if labels else None
            assert value_at(out, t) == expect


def test_lower_envelope_against_sampling():
    rng = random.Random(2)
    for _ in range(20):
        pieces = []
        for _ in range(50):
            a, b = sorted(rng.uniform(0, 10) for _ in range(2))
            pieces.append((ParamInterval(a, b, rng.random() < 0.5, rng.random() < 0.5), rng.randint(0, 9)))
        env = lower_envelope(pieces)
        for k in range(1001):
            t = 10 * k / 1000
            labs = [lab for iv, lab in pieces if iv.contains(t)]
            assert value_at(env, t) == (min(labs) if labs else None)
