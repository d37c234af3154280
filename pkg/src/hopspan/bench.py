"""Benchmark sweeps over (family, builder, n, seed) cells with CSV output.

Every cell re-verifies its spanner; a row never reports an unverified size.
Runtimes are measured but written only under --timings so that default CSV
output is byte-identical across reruns with the same flags and seeds.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import generators as gens
from .graphcore import build_graph, estimate_exponent, verify_spanner
from .spanners import (
    BUILDERS,
    BuildConfig,
    BuilderNotApplicable,
    build_spanner,
    builder_stretch,
)

CSV_HEADER = (
    "family,n,dimension,builder,t,edges,bound_ratio,verify_ok,"
    "fitted_exponent,seed,runtime_ms,status"
)

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _k_for(n):
    return max(1, round((n / 3.0) ** (1.0 / 3.0)))


def _family_erdos(n, seed):
    return gens.gen_erdos_incidence(_k_for(n))


def _family_thin(n, seed):
    return gens.gen_thin_tetrahedra(_k_for(n))


def _family_touching(n, seed):
    return gens.gen_touching_tetrahedra(min(_k_for(n), 6))


def _family_lift(n, seed):
    return gens.gen_halfspace_lift_r5(min(_k_for(n), 9))


def _family_balls_r5(n, seed):
    return gens.gen_congruent_balls_r5(min(_k_for(n), 7))


def _family_chazelle(n, seed):
    b = max(2, math.ceil(math.log2(max(n, 4))))
    levels = max(1, int(math.log(max(n, b), b)))
    return gens.gen_chazelle_points_boxes(b**levels, 2, b)


def _family_bipartite_boxes(n, seed):
    return gens.gen_bipartite_boxes(n, 3)


def _family_hypercubes(n, seed):
    return gens.gen_redblue_hypercubes(max(4, n // 8), 4)


def _family_projective(n, seed):
    best = _PRIMES[0]
    for q in _PRIMES:
        if 2 * (q * q + q + 1) <= max(n, 14):
            best = q
    return gens.gen_projective_plane_c4free(best)


FAMILIES = {
    "erdos": _family_erdos,
    "thin_tetra": _family_thin,
    "touching_tetra": _family_touching,
    "halfspace_lift": _family_lift,
    "balls_r5": _family_balls_r5,
    "chazelle": _family_chazelle,
    "bipartite_boxes": _family_bipartite_boxes,
    "hypercubes": _family_hypercubes,
    "projective": _family_projective,
    "random_balls": lambda n, s: gens.gen_random_balls(n, 2, 1.0, s),
    "random_balls3": lambda n, s: gens.gen_random_balls(n, 3, 1.0, s),
    "random_squares": lambda n, s: gens.gen_random_boxes(n, 2, 1.0, 1.0, s),
    "random_boxes3": lambda n, s: gens.gen_random_boxes(n, 3, 2.0, 8.0, s, spread=0.3),
    "random_bipartite": lambda n, s: gens.gen_random_bipartite(n, s),
}

SEEDED_FAMILIES = {
    "random_balls",
    "random_balls3",
    "random_squares",
    "random_boxes3",
    "random_bipartite",
}


def reference_bound(builder: str, n: int, d: int, t: int) -> float:
    """Coarse size yardstick per builder, used for the CSV bound_ratio."""
    n = max(n, 2)
    lg = math.log2(n)
    if builder == "box3":
        return n * lg ** max(d - 1, 1)
    if builder == "fatbox2":
        return n * lg ** (d + 1)
    if builder == "greedy" and t >= 2:
        return n ** (1.0 + 1.0 / ((t + 1) // 2))
    return n**1.5


@dataclass
class BenchRow:
    family: str
    n: int
    dimension: int
    builder: str
    t: int
    edges: int
    bound_ratio: float
    verify_ok: bool
    fitted_exponent: float | None
    seed: int
    runtime_ms: int | None
    status: str = "ok"

    def csv(self, timings: bool) -> str:
        fe = f"{self.fitted_exponent:.4f}" if self.fitted_exponent is not None else ""
        rt = str(self.runtime_ms) if (timings and self.runtime_ms is not None) else ""
        return (
            f"{self.family},{self.n},{self.dimension},{self.builder},{self.t},"
            f"{self.edges},{self.bound_ratio:.6g},{self.verify_ok},"
            f"{fe},{self.seed},{rt},{self.status}"
        )


def run_cell(family: str, builder: str, n: int, seed: int,
             cfg: BuildConfig, timeout_ms: int | None = None):
    """One bench cell; returns a BenchRow or None when not applicable."""
    t0 = time.perf_counter()
    inst = FAMILIES[family](n, seed)
    G = build_graph(inst)
    t = builder_stretch(builder, cfg)
    try:
        sp = build_spanner(inst, G, cfg.with_(builder=builder, t=t, seed=seed))
    except BuilderNotApplicable:
        return None
    rep = verify_spanner(G, sp, t)
    ms = int((time.perf_counter() - t0) * 1000)
    status = "ok"
    if timeout_ms is not None and ms > timeout_ms:
        status = "timeout"
    return BenchRow(
        family=family,
        n=inst.n,
        dimension=inst.dim,
        builder=builder,
        t=t,
        edges=sp.size,
        bound_ratio=sp.size / reference_bound(builder, inst.n, inst.dim, t),
        verify_ok=rep.ok,
        fitted_exponent=None,
        seed=seed,
        runtime_ms=ms,
        status=status,
    )


def _cell_args(families, builders, ns, seeds):
    cells = []
    for family in families:
        fseeds = seeds if family in SEEDED_FAMILIES else [seeds[0]]
        for builder in builders:
            for n in ns:
                for seed in fseeds:
                    cells.append((family, builder, n, seed))
    return cells


def _run_cell_tuple(args):
    family, builder, n, seed, cfg, timeout_ms = args
    try:
        return run_cell(family, builder, n, seed, cfg, timeout_ms)
    except BuilderNotApplicable:
        return None


def run_bench(families, builders, ns, seeds, cfg: BuildConfig | None = None,
              timeout_ms: int | None = 60000, workers: int = 1):
    """Sweep the grid; returns (rows, all_verified)."""
    if sorted(ns) != list(ns) or len(set(ns)) != len(ns):
        raise ValueError("n ladder must be strictly increasing")
    cfg = cfg or BuildConfig()
    cells = _cell_args(families, builders, ns, seeds)
    args = [(f, b, n, s, cfg, timeout_ms) for f, b, n, s in cells]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell_tuple, args))
    else:
        results = [_run_cell_tuple(a) for a in args]
    rows = [r for r in results if r is not None]

    # fitted exponent per (family, builder) over mean sizes by n
    groups = {}
    for row in rows:
        groups.setdefault((row.family, row.builder), {}).setdefault(
            row.n, []
        ).append(row.edges)
    fits = {}
    for key, sizes in groups.items():
        pts = sorted((n, sum(v) / len(v)) for n, v in sizes.items())
        pts = [(n, s) for n, s in pts if s > 0]
        if len(pts) >= 3:
            fits[key] = estimate_exponent(pts)
    for row in rows:
        row.fitted_exponent = fits.get((row.family, row.builder))
    all_ok = all(r.verify_ok for r in rows)
    return rows, all_ok


def rows_to_csv(rows, timings: bool = False) -> str:
    lines = [CSV_HEADER]
    lines += [r.csv(timings) for r in rows]
    return "\n".join(lines) + "\n"


def parse_csv(text: str):
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("unexpected CSV header")
    rows = []
    for line in lines[1:]:
        (family, n, dim, builder, t, edges, ratio, ok, fit, seed, rt,
         status) = line.split(",")
        rows.append(
            BenchRow(
                family=family,
                n=int(n),
                dimension=int(dim),
                builder=builder,
                t=int(t),
                edges=int(edges),
                bound_ratio=float(ratio),
                verify_ok=ok == "True",
                fitted_exponent=float(fit) if fit else None,
                seed=int(seed),
                runtime_ms=int(rt) if rt else None,
                status=status,
            )
        )
    return rows


def report(rows) -> str:
    """Summary table with per-(family, builder) fitted exponents."""
    groups = {}
    for row in rows:
        groups.setdefault((row.family, row.builder), []).append(row)
    out = []
    out.append(f"{'family':18s} {'builder':13s} {'cells':>5s} {'max n':>7s} "
               f"{'max edges':>9s} {'exponent':>8s} {'verified':>8s}")
    for (family, builder), rws in sorted(groups.items()):
        sizes = {}
        for r in rws:
            sizes.setdefault(r.n, []).append(r.edges)
        pts = sorted((n, sum(v) / len(v)) for n, v in sizes.items())
        pts = [(n, s) for n, s in pts if s > 0]
        fit = f"{estimate_exponent(pts):.3f}" if len(pts) >= 3 else "-"
        allok = all(r.verify_ok for r in rws)
        out.append(
            f"{family:18s} {builder:13s} {len(rws):5d} {max(r.n for r in rws):7d} "
            f"{max(r.edges for r in rws):9d} {fit:>8s} {str(allok):>8s}"
        )
    return "\n".join(out) + "\n"
