"""Command-line front-end: ``minlink simplify|gadget|frechet|plot|selftest``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import __version__
from .curve1d import greedy_simplify_1d
from .frechet import decide_frechet, directed_hausdorff_segment, frechet_distance, segment_in_tube
from .gadget import (GadgetError, GadgetParams, SubsetSumInstance, gadget_from_json, gadget_to_json,
                     generate_gadget, parse_fraction, reorder_for_gadget, solve_gadget,
                     verify_simplification, fmt_fraction)
from .geom import PolyCurve, Segment, subcurve
from .hausdorff import simplify_vr_hausdorff
from .io import InputError, RunReport, digest, read_curve, write_curve
from .nonrestricted import simplify_nonrestricted
from .oracles import OracleBudgetExceeded, brute_vr_frechet, brute_vr_hausdorff
from .vertex_frechet import min_link_simplify_vr

log = logging.getLogger("minlink")

VARIANTS = ("vertex-frechet", "nonrestricted-frechet", "vertex-hausdorff", "curve1d")


def _setup_logging():
    level = os.environ.get("MINLINK_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _report(variant: str, P: PolyCurve, args, res_points, indices, spans, achieved, t0) -> RunReport:
    delta = args.delta
    eps = args.eps if variant == "nonrestricted-frechet" else None
    rep = RunReport(variant, digest(P), P.n, P.dim, delta, eps, max(len(res_points) - 1, 0),
                    achieved, [list(map(float, p)) for p in res_points], indices, spans)
    if not achieved:
        rep.wall_time = time.perf_counter() - t0
        return rep
    Q = PolyCurve(tuple(tuple(p) for p in res_points))
    if variant == "vertex-hausdorff":
        rep.bound = delta
        rep.link_distances = [directed_hausdorff_segment(Segment(a, b), P)
                              for a, b in zip(res_points[:-1], res_points[1:])]
        rep.global_distance = max(rep.link_distances)
    else:
        rep.global_distance = frechet_distance(P, Q)
        rep.bound = delta if eps is None else (1 + eps) * delta
        if spans:
            rep.link_distances = [frechet_distance(PolyCurve((a, b)), subcurve(P, s, t))
                                  for (a, b), (s, t) in zip(zip(res_points[:-1], res_points[1:]), spans)]
    rep.wall_time = time.perf_counter() - t0
    return rep


def cmd_simplify(args) -> int:
    P = read_curve(args.input)
    if args.delta < 0:
        raise InputError("--delta must be non-negative")
    t0 = time.perf_counter()
    indices = spans = None
    achieved = True
    if args.variant == "vertex-frechet":
        res = min_link_simplify_vr(P, args.delta)
        indices, points, achieved = res.indices, res.points, res.achieved
    elif args.variant == "vertex-hausdorff":
        res = simplify_vr_hausdorff(P, args.delta)
        indices, points = res.indices, res.points
    elif args.variant == "curve1d":
        if P.dim != 1:
            raise InputError("curve1d needs a 1-dimensional curve")
        r1 = greedy_simplify_1d(P, args.delta)
        points = [(x,) for _, x in r1.vertices]
        spans = None
        indices = None
        log.info("curve1d parameters: %s", [s for s, _ in r1.vertices])
    else:
        if args.eps is None or not 0 < args.eps <= 1:
            raise InputError("nonrestricted-frechet needs --eps in (0, 1]")
        if args.delta <= 0:
            raise InputError("nonrestricted-frechet needs --delta > 0")
        res = simplify_nonrestricted(P, args.delta, args.eps)
        indices, points, achieved = res.indices, res.points or [], res.achieved
        spans = [list(s) for s in res.spans] if res.spans else None
    rep = _report(args.variant, P, args, points, indices, spans, achieved, t0)
    if args.oracle:
        try:
            if args.variant in ("vertex-frechet", "curve1d"):
                rep.oracle_link_count = brute_vr_frechet(P, args.delta)
            elif args.variant == "vertex-hausdorff":
                rep.oracle_link_count = brute_vr_hausdorff(P, args.delta)
            else:
                rep.oracle_link_count = brute_vr_frechet(P, args.delta)
        except OracleBudgetExceeded as exc:
            log.warning("oracle skipped: %s", exc)
    text = rep.to_json()
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    if args.plot and achieved:
        if P.dim != 2:
            log.warning("--plot ignored: curve is not planar")
        else:
            from .plotting import plot_simplification
            plot_simplification(P.vertices, args.plot, points, args.delta, args.variant)
    if not achieved:
        print("infeasible: no path in the corner graph", file=sys.stderr)
        return 1
    return 0


def _int_list(s: str) -> List[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"--set must be comma-separated integers, got {s!r}") from exc


def cmd_gadget_gen(args) -> int:
    A = _int_list(args.set)
    if args.reorder:
        A = list(reorder_for_gadget(A, args.target))
    inst = SubsetSumInstance(tuple(A), args.target)
    params = GadgetParams.default(inst)
    if args.gamma is not None or args.zeta is not None:
        params = GadgetParams(parse_fraction(args.gamma) if args.gamma else params.gamma,
                              parse_fraction(args.zeta) if args.zeta else params.zeta)
    doc = gadget_to_json(generate_gadget(inst, params))
    text = json.dumps(doc, indent=1)
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"wrote {len(doc['vertices'])} vertices, delta={doc['delta']}, k={doc['k']} to {args.out}")
    else:
        print(text)
    return 0


def cmd_gadget_solve(args) -> int:
    try:
        doc = json.loads(Path(args.input).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    curve = gadget_from_json(doc)
    path = solve_gadget(curve)
    out = {"A": list(curve.instance.A), "B": curve.instance.B, "k": curve.k,
           "solvable": path is not None}
    if path is not None:
        ver = verify_simplification(curve, path)
        out.update(subset=path.subset(curve.instance), choices=list(path.choices),
                   path=[{"x": fmt_fraction(p[0]), "y": fmt_fraction(p[1]), "level": lv}
                         for p, lv in path.vertices],
                   verified=ver.ok, violations=ver.violations)
    print(json.dumps(out, indent=2))
    return 0


def cmd_frechet(args) -> int:
    P, Q = read_curve(args.a), read_curve(args.b)
    if P.dim != Q.dim:
        raise InputError("curves have different dimensions")
    if args.tol is not None and args.tol <= 0:
        raise InputError("--tol must be positive")
    print(repr(frechet_distance(P, Q, args.tol)))
    return 0


def cmd_plot(args) -> int:
    from .plotting import plot_simplification

    P = read_curve(args.input)
    S = read_curve(args.simplified) if args.simplified else None
    if P.dim != 2 or (S is not None and S.dim != 2):
        raise InputError("plot only handles planar curves")
    plot_simplification(P.vertices, args.out, S.vertices if S else None, args.delta)
    return 0


def cmd_selftest(args) -> int:
    """Quick randomized agreement check of the solvers against the oracles."""
    from .corpus import curve1d_corpus, vr_corpus

    bad = 0
    insts = vr_corpus(args.count, seed=args.seed)
    for inst in insts:
        P, d = inst.curve, inst.delta
        r = min_link_simplify_vr(P, d)
        if r.link_count != brute_vr_frechet(P, d) or not decide_frechet(P, PolyCurve(tuple(r.points)), d):
            bad += 1
        h = simplify_vr_hausdorff(P, d)
        if h.link_count != brute_vr_hausdorff(P, d):
            bad += 1
    for inst in curve1d_corpus(args.count, seed=args.seed):
        g = greedy_simplify_1d(inst.curve, inst.delta)
        if not decide_frechet(inst.curve, g.curve(), inst.delta):
            bad += 1
    print(f"selftest seed={args.seed}: {3 * args.count - bad}/{3 * args.count} checks passed")
    return 0 if bad == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minlink", description="Min-# polygonal curve simplification.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simplify", help="simplify a curve")
    s.add_argument("--variant", choices=VARIANTS, required=True)
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--eps", type=float, default=None)
    s.add_argument("--input", required=True, help="curve file (.json or .csv)")
    s.add_argument("--output", help="write the report here instead of stdout")
    s.add_argument("--oracle", action="store_true", help="also run the brute-force oracle (small n)")
    s.add_argument("--plot", help="write an SVG of curve and result (planar curves)")
    s.set_defaults(func=cmd_simplify)

    g = sub.add_parser("gadget", help="Subset Sum gadget curves")
    gs = g.add_subparsers(dest="gadget_command", required=True)
    gg = gs.add_parser("gen", help="generate a gadget curve")
    gg.add_argument("--set", required=True, help="comma-separated positive integers")
    gg.add_argument("--target", type=int, required=True)
    gg.add_argument("--gamma", help="rational N/D (default delta/2^20)")
    gg.add_argument("--zeta", help="rational N/D (default 0)")
    gg.add_argument("--reorder", action="store_true", help="reorder the set to meet 0.5*a_n <= B")
    gg.add_argument("--out")
    gg.set_defaults(func=cmd_gadget_gen)
    gv = gs.add_parser("solve", help="search the hole paths of a gadget curve")
    gv.add_argument("--in", dest="input", required=True)
    gv.set_defaults(func=cmd_gadget_solve)

    f = sub.add_parser("frechet", help="Frechet distance of two curves")
    f.add_argument("--a", required=True)
    f.add_argument("--b", required=True)
    f.add_argument("--tol", type=float, default=None)
    f.set_defaults(func=cmd_frechet)

    p = sub.add_parser("plot", help="SVG of a planar curve and its simplification")
    p.add_argument("--input", required=True)
    p.add_argument("--simplified")
    p.add_argument("--delta", type=float)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    t = sub.add_parser("selftest", help="seeded agreement check against the oracles")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--count", type=int, default=30)
    t.set_defaults(func=cmd_selftest)
    return ap


def run(argv: Optional[List[str]] = None) -> int:
    _setup_logging()
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, GadgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
