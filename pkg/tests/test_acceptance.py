"""Acceptance criteria 1-8; each test records one PASS/FAIL line (see conftest)."""

import random
import time
from fractions import Fraction

import pytest

from minlink.corpus import curve1d_corpus, pairwise_quantile, random_curve, vr_corpus
from minlink.curve1d import greedy_simplify_1d
from minlink.frechet import decide_frechet, frechet_distance, segment_in_tube
from minlink.gadget import (GadgetParams, SubsetSumInstance, generate_gadget, random_instances,
                            reachable_x_set, skip_vertex_x, solve_gadget, verify_simplification)
from minlink.geom import PolyCurve, Segment, subcurve
from minlink.hausdorff import simplify_vr_hausdorff
from minlink.nonrestricted import simplify_nonrestricted
from minlink.oracles import brute_vr_frechet, brute_vr_hausdorff, subset_sum_brute
from minlink.vertex_frechet import min_link_simplify_vr
from conftest import ACCEPTANCE


def record(num, ok, detail, bad=()):
    if bad:
        detail += "; first failures: " + "; ".join(bad[:3])
    ACCEPTANCE.append((num, ok, detail))
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def corpus():
    return vr_corpus(200, seed=0)


@pytest.fixture(scope="module")
def vr_runs(corpus):
    t0 = time.perf_counter()
    runs = []
    for inst in corpus:
        res = min_link_simplify_vr(inst.curve, inst.delta)
        runs.append((res, brute_vr_frechet(inst.curve, inst.delta)))
    return runs, time.perf_counter() - t0


def test_criterion_1_vertex_frechet_optimal(corpus, vr_runs):
    runs, elapsed = vr_runs
    bad = []
    for k, (inst, (res, oracle)) in enumerate(zip(corpus, runs)):
        if res.link_count != oracle:
            bad.append(f"#{k}: {res.link_count} links vs oracle {oracle}")
        elif not decide_frechet(inst.curve, PolyCurve(tuple(res.points)), inst.delta):
            bad.append(f"#{k}: output not within delta")
    ok = not bad and elapsed < 120
    record(1, ok, f"{len(corpus) - len(bad)}/{len(corpus)} optimal and feasible, {elapsed:.1f}s "
                  f"(limit 120s)", bad)


def test_criterion_2_elementary_bound(corpus, vr_runs):
    runs, _ = vr_runs
    worst = 0.0
    bad = 0
    for inst, (res, _) in zip(corpus, runs):
        n = inst.curve.n
        counts = res.stats["elementary_counts"]
        bad += sum(1 for c in counts if c > 2 * n * n + n)
        worst = max(worst, max(counts) / (2 * n * n + n))
    record(2, bad == 0, f"{bad} spines over 2n^2+n, max ratio {worst:.3f}")


def test_criterion_3_nonrestricted(corpus, vr_runs):
    runs, _ = vr_runs
    t0 = time.perf_counter()
    bad = []
    for eps in (0.25, 0.5, 1.0):
        for k, (inst, (res_vr, _)) in enumerate(zip(corpus, runs)):
            P, delta = inst.curve, inst.delta
            res = simplify_nonrestricted(P, delta, eps)
            if not res.achieved:
                bad.append(f"eps={eps} #{k}: no path")
                continue
            links = len(res.points) - 1
            if links > 2 * res_vr.link_count + 1:
                bad.append(f"eps={eps} #{k}: {links} links > 2*{res_vr.link_count}+1")
            for (a, b), (s, t) in zip(zip(res.points[:-1], res.points[1:]), res.spans):
                fd = frechet_distance(PolyCurve((tuple(a), tuple(b))), subcurve(P, s, t), 1e-9)
                if fd > (1 + eps) * delta + 1e-6:
                    bad.append(f"eps={eps} #{k}: link distance {fd:.6g} > {(1 + eps) * delta:.6g}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    record(3, ok, f"{3 * len(corpus)} runs, {len(bad)} violations, {elapsed:.1f}s (limit 300s)", bad)


def test_criterion_4_hausdorff(corpus):
    bad = []
    for k, inst in enumerate(corpus):
        P, delta = inst.curve, inst.delta
        res = simplify_vr_hausdorff(P, delta)
        if res.link_count != brute_vr_hausdorff(P, delta):
            bad.append(f"#{k}: count differs from oracle")
        for a, b in zip(res.points[:-1], res.points[1:]):
            if not segment_in_tube(Segment(a, b), P, delta):
                bad.append(f"#{k}: link leaves the tube")
    record(4, not bad, f"{len(corpus) - len(bad)}/{len(corpus)} agree with oracle", bad)


def test_criterion_5_gadget_equivalence():
    t0 = time.perf_counter()
    insts = random_instances(64, seed=0, max_n=6, max_a=20)
    bad = []
    solvable = 0
    for inst in insts:
        gamma = GadgetParams.default(inst).gamma
        truth = subset_sum_brute(inst)
        solvable += truth
        for zeta in (Fraction(0), gamma / 2 ** 40):
            curve = generate_gadget(inst, GadgetParams(gamma, zeta))
            path = solve_gadget(curve)
            if (path is not None) != truth:
                bad.append(f"{inst.A},{inst.B} zeta={zeta}: solver says {path is not None}")
            elif path is not None:
                ver = verify_simplification(curve, path)
                if not ver or path.link_count != 2 * inst.n - 1:
                    bad.append(f"{inst.A},{inst.B}: {ver.violations}")
    elapsed = time.perf_counter() - t0
    ok = len(insts) == 64 and not bad and elapsed < 60
    record(5, ok, f"64 instances ({solvable} solvable) x 2 zeta values, {len(bad)} failures, "
                  f"{elapsed:.1f}s (limit 60s)", bad)


def test_criterion_6_fixed_points():
    inst = SubsetSumInstance((1, 2, 4), 6)
    curve = generate_gadget(inst)
    g = curve.params.gamma
    checks = {
        "delta=4": curve.delta == 4,
        "k=5": curve.k == 5,
        "start (0,0)": curve.vertices[0] == (0, 0),
        "t9 x=6+3g": curve.vertices[-1][0] == 6 + 3 * g,
        "reachable set i=3": reachable_x_set(inst, None, 3) == {3 * g + s for s in range(8)},
        "skip l: 0.75g": skip_vertex_x(inst, None, "l1", "left") == Fraction(3, 4) * g,
        "skip r: -0.25g": skip_vertex_x(inst, None, "r1", "left") == Fraction(-1, 4) * g,
    }
    failed = [k for k, v in checks.items() if not v]
    record(6, not failed, f"{len(checks) - len(failed)}/{len(checks)} fixed points", failed)


def test_criterion_7_curve1d():
    bad = []
    ratio = 0.0
    corpus = curve1d_corpus(500, seed=0, max_n=12)
    for k, inst in enumerate(corpus):
        P, delta = inst.curve, inst.delta
        res = greedy_simplify_1d(P, delta)
        params = [s for s, _ in res.vertices]
        if params[0] != 1 or params[-1] != P.n or any(a >= b for a, b in zip(params, params[1:])):
            bad.append(f"#{k}: parameters not strictly increasing from 1 to n")
        if res.vertices[0][1] != P.vertices[0][0] or res.vertices[-1][1] != P.vertices[-1][0]:
            bad.append(f"#{k}: end points differ")
        if not decide_frechet(P, res.curve(), delta):
            bad.append(f"#{k}: infeasible")
        if res.link_count > min_link_simplify_vr(P, delta).link_count:
            bad.append(f"#{k}: more links than the vertex-restricted optimum")
        ratio = max(ratio, res.visits / P.n)
    ok = not bad and ratio <= 4
    record(7, ok, f"{len(corpus)} curves, {len(bad)} failures, max visits/n {ratio:.2f} (limit 4)", bad)


def test_criterion_8_scaling():
    rng = random.Random(0)
    times = {}
    for n in (20, 40, 80):
        P = random_curve(rng, n, 2)
        delta = pairwise_quantile(P, 0.25)
        reps = 3 if n == 20 else 1
        best = float("inf")
        for _ in range(reps):
            t0 = time.perf_counter()
            min_link_simplify_vr(P, delta)
            best = min(best, time.perf_counter() - t0)
        times[n] = best
    limits = {n: 8 * times[20] * (n / 20) ** 3 for n in (40, 80)}
    ok = all(times[n] <= limits[n] for n in limits)
    record(8, ok, ", ".join(f"n={n}: {t:.2f}s" for n, t in times.items()) +
           "; limits " + ", ".join(f"n={n}: {v:.2f}s" for n, v in limits.items()))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
