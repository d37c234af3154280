"""Divide-and-conquer 3-hop builders for bipartite point/region incidences:
the partition-oracle recursion with the lop-sided switch, and the epsilon-net
shortcut construction for point/halfspace graphs.
"""

from __future__ import annotations

import math
import random

from ..graphcore import EdgeAccumulator, GraphError, IntersectionGraph, Spanner, reach_masks
from .basic import _bitmask, _lopsided_core, _lowest_bit
from .partition import partition_and_classify


def ensure_covered(acc, G, t, tag="fallback.direct"):
    """Correctness net: add any G-edge not already spanned within t hops.

    Builders call this last.  A nonzero count signals a violated structural
    assumption (it is asserted zero on the exact-arithmetic families).
    """
    H = IntersectionGraph(G.n, tuple(acc.edges))
    fwd = -(-t // 2)
    mf = reach_masks(H, fwd)
    mb = reach_masks(H, t - fwd) if t - fwd != fwd else mf
    added = 0
    for u, v in G.edges():
        if not (mf[u] & mb[v]):
            acc.add(u, v, tag)
            added += 1
    return added


def _point_coords(inst, ids):
    out = []
    for i in ids:
        o = inst.objects[i]
        if o.kind != "point":
            raise GraphError("recursion U-side must be points")
        out.append((i, o.coords))
    return out


def recursive_bipartite_3hop(G: IntersectionGraph, inst, cfg, U=None, V=None,
                             acc=None) -> Spanner | None:
    """Partition recursion with biclique base cases and a lop-sided switch.

    U are point vertices, V region vertices.  Each level splits the points
    with the configured oracle; containing regions are spanned by two stars,
    crossing regions are chunked and recursed, and subproblems with
    m^2 <= n fall back to the lop-sided O(m^2+n) construction.
    """
    if U is None or V is None:
        if inst.labels is None:
            raise GraphError("recursive builder needs a bipartite instance")
        sides = (inst.side(0), inst.side(1))
        if all(inst.objects[i].kind == "point" for i in sides[0]):
            U, V = sides
        elif all(inst.objects[i].kind == "point" for i in sides[1]):
            V, U = sides
        else:
            raise GraphError("no point side found")
    own = acc is None
    if own:
        acc = EdgeAccumulator(G)
    depth_seen = [0]

    # expand for k levels with r^k ~ (m^2/n)^(1/(2D-1)), then switch lop-sided
    m0, n0 = len(U), len(V)
    dim = inst.dim
    ratio = max(4.0, (m0 * m0) / max(n0, 1))
    budget = max(1, math.ceil(math.log(ratio) / ((2 * dim - 1) * math.log(cfg.r))))
    budget = min(budget, cfg.max_depth)

    def recurse(u_ids, v_ids, depth):
        m, nv = len(u_ids), len(v_ids)
        depth_seen[0] = max(depth_seen[0], depth)
        if m == 0 or nv == 0:
            return
        if m * m <= nv or m <= 2 or depth >= budget:
            vm = _bitmask(v_ids)
            # middles for the U-pair paths may be any common region neighbor
            _lopsided_core(acc, G, sorted(u_ids), sorted(v_ids),
                           middle_mask=(1 << G.n) - 1, add_intra_u=False,
                           tag="rec.lop")
            return
        points = _point_coords(inst, u_ids)
        regions = [(i, inst.objects[i]) for i in v_ids]
        part = partition_and_classify(points, regions, cfg.oracle, cfg.r)
        chunk = max(1, nv // cfg.r)
        for cell in part.cells:
            u_cell = sorted(cell.point_ids)
            if cell.containing:
                u0 = u_cell[0]
                v0 = min(cell.containing)
                for v in cell.containing:
                    acc.add(u0, v, "rec.biclique")
                for u in u_cell:
                    acc.add(u, v0, "rec.biclique")
            if cell.crossing:
                cross = sorted(cell.crossing)
                if len(u_cell) == m and len(cross) == nv:
                    recurse(u_cell, cross, cfg.max_depth)  # no progress
                    continue
                for s in range(0, len(cross), chunk):
                    recurse(u_cell, cross[s : s + chunk], depth + 1)

    recurse(sorted(U), sorted(V), 0)
    if own:
        fallback = ensure_covered(acc, G, 3)
        return acc.spanner(stretch=3, fallback_edges=fallback,
                           recursion_depth=depth_seen[0])
    return None


def epsilon_net(G: IntersectionGraph, P, S, t_net: int, rng: random.Random):
    """Las Vegas (1/t)-net: sample, verify against every deep region by brute
    force, resample on failure.  Returns (net_ids, resamples)."""
    if t_net < 2:
        raise GraphError("t_net must be >= 2")
    P = sorted(P)
    S = sorted(S)
    masks = G.neighbor_masks()
    pm = _bitmask(P)
    m = len(P)
    deep = [s for s in S if (masks[s] & pm).bit_count() * t_net >= m]
    z = min(m, max(1, math.ceil(4 * t_net * math.log(t_net))))
    resamples = 0
    while True:
        net = sorted(rng.sample(P, z))
        nm = _bitmask(net)
        if all(masks[s] & nm for s in deep):
            return net, resamples
        resamples += 1


def net_shortcut_3hop(G: IntersectionGraph, inst, cfg) -> Spanner:
    """Point/halfspace 3-hop spanner: net points shortcut the deep halfspaces,
    shallow halfspaces go to the partition recursion."""
    if inst.labels is None:
        raise GraphError("net builder needs a bipartite instance")
    sides = (inst.side(0), inst.side(1))
    if all(inst.objects[i].kind == "point" for i in sides[0]):
        P, S = sides
    else:
        S, P = sides
    P, S = sorted(P), sorted(S)
    masks = G.neighbor_masks()
    pm = _bitmask(P)
    m = len(P)
    rng = random.Random(cfg.seed)
    acc = EdgeAccumulator(G)

    deep = [s for s in S if (masks[s] & pm).bit_count() * cfg.t_net >= m]
    shallow = sorted(set(S) - set(deep))
    net, resamples = epsilon_net(G, P, S, cfg.t_net, rng)
    nm = _bitmask(net)
    for s in deep:
        cand = masks[s] & nm
        if cand:
            acc.add(_lowest_bit(cand), s, "net.link")
    for p in P:
        for q in net:
            if q == p:
                continue
            common = masks[p] & masks[q]
            if common:
                mid = _lowest_bit(common)
                acc.add(p, mid, "net.path")
                acc.add(mid, q, "net.path")
    if shallow:
        recursive_bipartite_3hop(G, inst, cfg, U=P, V=shallow, acc=acc)
    fallback = ensure_covered(acc, G, 3)
    return acc.spanner(stretch=3, net_size=len(net), resamples=resamples,
                       deep=len(deep), fallback_edges=fallback)
