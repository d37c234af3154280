"""2-hop spanners for fat objects via shifted-quadtree divide and conquer.

Per shift, the aligned objects are split at a centroid cell: objects whose
aligned cell contains the centroid cell (and that touch its closure) are
charged to a constant-size hitting set, everything strictly below recurses
inside, everything clear of the cell recurses outside.  Each hitting point q
induces a clique U_q, and the bipartite problem (U_q, node objects) is
spanned either by the grouping trick or, for boxes, by a biclique cover with
one star per biclique.  Any violated assumption falls back to direct edges;
correctness is never traded for size.
"""

from __future__ import annotations

from fractions import Fraction

from ..geometry import FLOAT, point_in_object
from ..geometry.quadtree import (
    QuadtreeCell,
    boundary_hitting_points,
    centroid_cell,
    quadtree_cell_of,
    shift_vectors,
)
from ..graphcore import (
    EdgeAccumulator,
    GraphError,
    IntersectionGraph,
    Spanner,
    _float_bbox,
)
from .basic import _bitmask, grouped_2hop
from .boxes import box_biclique_cover
from .recursive import ensure_covered


def _translated(obj, tau, offsets):
    vec = tuple(t + o for t, o in zip(tau, offsets))
    if obj.mode == FLOAT:
        vec = tuple(float(v) for v in vec)
    return obj.translate(vec)


def fat_2hop(G: IntersectionGraph, inst, cfg, use_bicliques: bool = False) -> Spanner:
    objs = inst.objects
    n = inst.n
    d = inst.dim
    acc = EdgeAccumulator(G)
    if n == 0:
        return acc.spanner(stretch=2)
    diam = max((o.diam_upper() for o in objs), default=Fraction(1))
    if diam <= 0:
        diam = Fraction(1)
    shifts = shift_vectors(d, diam, c=getattr(cfg, "alignment_c", None))
    C = shifts.alignment_c
    masks = G.neighbor_masks()
    stats = {"shifts": len(shifts.shifts), "kernel_fallbacks": 0,
             "pair_fallbacks": 0, "depth": 0, "hitting_points": 0}

    bboxes = [o.bbox() for o in objs]
    aligned_sets = []
    for tau in shifts.shifts:
        moved = {}
        cells = {}
        # translate into the nonnegative orthant by a multiple of the shift
        # scale so that dyadic alignment at every used level is preserved
        offsets = []
        for k in range(d):
            lo_k = min(Fraction(bb[0][k]) for bb in bboxes) + tau[k]
            if lo_k < 0:
                offsets.append(shifts.scale * ((-lo_k / shifts.scale).__ceil__()))
            else:
                offsets.append(Fraction(0))
        for i, o in enumerate(objs):
            t = _translated(o, tau, offsets)
            cell = quadtree_cell_of(t, C)
            if cell is not None:
                moved[i] = t
                cells[i] = cell
        aligned_sets.append((moved, cells))

    def span_clique_block(u_ids, node_ids, moved):
        u_ids = sorted(u_ids)
        if len(u_ids) == 0:
            return
        uset = set(u_ids)
        far = [i for i in node_ids if i not in uset]
        farm = _bitmask(far)
        if not any(masks[u] & farm for u in u_ids):
            # pure clique: a single star spans it at two hops
            c0 = u_ids[0]
            for u in u_ids[1:]:
                acc.add(c0, u, "fat.clique_star")
            return
        if use_bicliques:
            boxes_u = [(i, moved[i].lo, moved[i].hi) for i in u_ids]
            boxes_v = [(i, moved[i].lo, moved[i].hi) for i in node_ids]
            u0 = u_ids[0]
            for u in u_ids[1:]:
                acc.add(u0, u, "fatbox.clique_star")
            for us, vs in box_biclique_cover(boxes_u, boxes_v):
                c0 = min(us)
                for x in sorted(set(us) | set(vs)):
                    if x != c0:
                        acc.add(c0, x, "fatbox.star")
        else:
            grouped_2hop(G, u_ids, [i for i in node_ids if i not in set(u_ids)],
                         cfg, acc=acc)

    def recurse(ids, moved, cells, depth):
        stats["depth"] = max(stats["depth"], depth)
        if len(ids) <= 4:
            idset = set(ids)
            for u in ids:
                for v in G.adj[u]:
                    if v > u and v in idset:
                        acc.add(u, v, "fat.base")
            return
        gamma = centroid_cell([moved[i] for i in ids], C,
                              cells=[cells[i] for i in ids])
        s_in, s_out, s_hit = [], [], []
        for i in ids:
            cell = cells[i]
            if gamma.contains_cell(cell) and cell != gamma:
                s_in.append(i)
            elif cell.contains_cell(gamma):
                if gamma.meets_closure(moved[i]):
                    s_hit.append(i)
                else:
                    s_out.append(i)
            else:
                s_out.append(i)
        if not s_hit and (len(s_in) == len(ids) or len(s_out) == len(ids)):
            # centroid failed to split; keep correctness with direct edges
            idset = set(ids)
            for u in ids:
                for v in G.adj[u]:
                    if v > u and v in idset:
                        acc.add(u, v, "fat.fallback")
            stats["kernel_fallbacks"] += len(ids)
            return
        if s_hit:
            points, missed = boundary_hitting_points(
                gamma, [(i, moved[i]) for i in s_hit], C
            )
            stats["hitting_points"] += len(points)
            idset = set(ids)
            for i in missed:
                stats["kernel_fallbacks"] += 1
                for v in G.adj[i]:
                    if v in idset:
                        acc.add(i, v, "fat.fallback")
            fboxes = {i: _float_bbox(moved[i]) for i in ids}
            for q in points:
                qf = tuple(float(x) for x in q)
                uq = [
                    i
                    for i in ids
                    if all(
                        lo <= x <= hi
                        for x, lo, hi in zip(qf, fboxes[i][0], fboxes[i][1])
                    )
                    and point_in_object(q, moved[i])
                ]
                # float tolerance can admit members whose pairwise edge is
                # absent; keep a true clique, fall back for the rest
                keep = []
                for i in uq:
                    if all(G.has_edge(i, j) for j in keep):
                        keep.append(i)
                    else:
                        stats["kernel_fallbacks"] += 1
                        for v in G.adj[i]:
                            if v in idset:
                                acc.add(i, v, "fat.fallback")
                if keep:
                    span_clique_block(keep, ids, moved)
        recurse(s_in, moved, cells, depth + 1)
        recurse(s_out, moved, cells, depth + 1)

    for moved, cells in aligned_sets:
        recurse(sorted(moved), moved, cells, 0)

    # pairs aligned under no shift keep their edges directly
    for u, v in G.edges():
        if not any(u in moved and v in moved for moved, _ in aligned_sets):
            if acc.add(u, v, "fat.shift_fallback"):
                stats["pair_fallbacks"] += 1

    stats["fallback_edges"] = ensure_covered(acc, G, 2)
    return acc.spanner(stretch=2, **stats)


def fatbox_2hop(G: IntersectionGraph, inst, cfg) -> Spanner:
    for o in inst.objects:
        if o.kind != "axis_box":
            raise GraphError("fatbox builder needs axis-aligned boxes")
    return fat_2hop(G, inst, cfg, use_bicliques=True)
