"""Command-line front end: gen / graph / build / verify / bench / report.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
All outputs are deterministic for fixed flags and seed; pass --timings to
include wall-clock columns (which are inherently not reproducible).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import generators as gens
from .bench import CSV_HEADER, FAMILIES, parse_csv, report, rows_to_csv, run_bench
from .graphcore import GraphError, build_graph, verify_spanner
from .io import (
    edges_to_text,
    load_edges,
    load_instance,
    save_instance,
    save_spanner,
)
from .spanners import BUILDERS, BuildConfig, BuilderNotApplicable, build_spanner


def _add_cfg_flags(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r", type=int, default=4, help="partition branching")
    p.add_argument("--t-net", type=int, default=10, dest="t_net")
    p.add_argument("--oracle", choices=("kd", "grid"), default="kd")
    p.add_argument("--group-size", type=int, default=None, dest="group_size")


def _cfg_from(args, builder="greedy", t=3):
    return BuildConfig(
        t=t,
        builder=builder,
        r=args.r,
        t_net=args.t_net,
        seed=args.seed,
        oracle=args.oracle,
        group_size=args.group_size,
    )


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "erdos":
        inst = gens.gen_erdos_incidence(args.k)
    elif fam == "thin_tetra":
        inst = gens.gen_thin_tetrahedra(args.k)
    elif fam == "touching_tetra":
        inst = gens.gen_touching_tetrahedra(args.k, args.M)
    elif fam == "halfspace_lift":
        inst = gens.gen_halfspace_lift_r5(args.k)
    elif fam == "balls_r5":
        inst = gens.gen_congruent_balls_r5(args.k, args.M)
    elif fam == "chazelle":
        inst = gens.gen_chazelle_points_boxes(args.n, args.d or 2, args.b)
    elif fam == "bipartite_boxes":
        inst = gens.gen_bipartite_boxes(args.n, args.d or 3)
    elif fam == "hypercubes":
        inst = gens.gen_redblue_hypercubes(args.n, args.d or 4)
    elif fam == "projective":
        inst = gens.gen_projective_plane_c4free(args.q)
    elif fam == "random_balls":
        inst = gens.gen_random_balls(args.n, args.d or 2, args.density, args.seed)
    elif fam == "random_boxes":
        inst = gens.gen_random_boxes(args.n, args.d or 3, args.aspect,
                                     args.density, args.seed)
    elif fam == "random_bipartite":
        inst = gens.gen_random_bipartite(args.n, args.seed)
    else:
        print(f"unknown family {fam!r}", file=sys.stderr)
        return 1
    save_instance(inst, args.out)
    print(f"wrote {args.out}: {inst.name}, {inst.n} objects")
    return 0


def cmd_graph(args) -> int:
    inst = load_instance(args.instance)
    G = build_graph(inst, mode=args.mode)
    text = edges_to_text(G.edges())
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}: {G.m} edges")
    else:
        sys.stdout.write(text)
    return 0


def cmd_build(args) -> int:
    inst = load_instance(args.instance)
    G = build_graph(inst, mode=args.mode)
    cfg = _cfg_from(args, builder=args.builder, t=args.t)
    try:
        sp = build_spanner(inst, G, cfg)
    except BuilderNotApplicable as exc:
        print(f"builder {args.builder} not applicable: {exc}", file=sys.stderr)
        return 1
    rep = verify_spanner(G, sp, args.t)
    save_spanner(sp, args.out, timings=args.timings)
    print(f"wrote {args.out}: {sp.size} edges, verified={rep.ok}")
    if not rep.ok:
        print(f"verification FAILED at edge {rep.worst_edge}", file=sys.stderr)
        return 2
    return 0


def cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    G = build_graph(inst, mode=args.mode)
    edges = load_edges(args.spanner)
    from .graphcore import IntersectionGraph, Spanner

    try:
        sp = Spanner(G, edges)
    except GraphError as exc:
        print(f"invalid spanner: {exc}", file=sys.stderr)
        return 2
    rep = verify_spanner(G, sp, args.t)
    if rep.ok:
        print(f"ok: {len(edges)} edges span {rep.checked} graph edges "
              f"within {args.t} hops")
        return 0
    print(f"FAIL: edge {rep.worst_edge} not within {args.t} hops", file=sys.stderr)
    return 2


def cmd_bench(args) -> int:
    families = args.families.split(",")
    for f in families:
        if f not in FAMILIES:
            print(f"unknown family {f!r} (have: {','.join(sorted(FAMILIES))})",
                  file=sys.stderr)
            return 1
    builders = args.builders.split(",")
    for b in builders:
        if b not in BUILDERS:
            print(f"unknown builder {b!r}", file=sys.stderr)
            return 1
    ns = [int(x) for x in args.ns.split(",")]
    seeds = [int(x) for x in args.seeds.split(",")]
    cfg = _cfg_from(args)
    rows, all_ok = run_bench(families, builders, ns, seeds, cfg,
                             timeout_ms=args.timeout_ms, workers=args.workers)
    csv = rows_to_csv(rows, timings=args.timings)
    if args.out:
        Path(args.out).write_text(csv)
        print(f"wrote {args.out}: {len(rows)} rows, all verified={all_ok}")
    else:
        sys.stdout.write(csv)
    return 0 if all_ok else 2


def cmd_report(args) -> int:
    rows = parse_csv(Path(args.csv).read_text())
    sys.stdout.write(report(rows))
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopspan",
                                 description="hop spanners for geometric "
                                             "intersection graphs")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("--family", required=True)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--n", type=int, default=64)
    g.add_argument("--q", type=int, default=3)
    g.add_argument("--d", type=int, default=None)
    g.add_argument("--b", type=int, default=None)
    g.add_argument("--M", type=float, default=None)
    g.add_argument("--density", type=float, default=1.0)
    g.add_argument("--aspect", type=float, default=1.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(fn=cmd_gen)

    gr = sub.add_parser("graph", help="instance -> edge list")
    gr.add_argument("--instance", required=True)
    gr.add_argument("--mode", choices=("full", "bipartite_only"), default=None)
    gr.add_argument("--out", default=None)
    gr.set_defaults(fn=cmd_graph)

    b = sub.add_parser("build", help="build and verify a spanner")
    b.add_argument("--instance", required=True)
    b.add_argument("--builder", required=True, choices=sorted(BUILDERS))
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--mode", choices=("full", "bipartite_only"), default=None)
    b.add_argument("--out", required=True)
    b.add_argument("--timings", action="store_true")
    _add_cfg_flags(b)
    b.set_defaults(fn=cmd_build)

    v = sub.add_parser("verify", help="check a spanner file")
    v.add_argument("--instance", required=True)
    v.add_argument("--spanner", required=True)
    v.add_argument("--t", type=int, required=True)
    v.add_argument("--mode", choices=("full", "bipartite_only"), default=None)
    v.set_defaults(fn=cmd_verify)

    be = sub.add_parser("bench", help="sweep families x builders x sizes")
    be.add_argument("--families", required=True)
    be.add_argument("--builders", required=True)
    be.add_argument("--ns", required=True)
    be.add_argument("--seeds", default="0")
    be.add_argument("--workers", type=int, default=1)
    be.add_argument("--timeout-ms", type=int, default=60000, dest="timeout_ms")
    be.add_argument("--timings", action="store_true")
    be.add_argument("--out", default=None)
    _add_cfg_flags(be)
    be.set_defaults(fn=cmd_bench)

    r = sub.add_parser("report", help="summarize a bench CSV")
    r.add_argument("--csv", required=True)
    r.set_defaults(fn=cmd_report)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
