"""Axis-aligned box machinery: exact biclique covers by range-tree style
divide and conquer, and the slab-recursion 3-hop builder.
"""

from __future__ import annotations

from ..graphcore import EdgeAccumulator, GraphError, IntersectionGraph, Spanner
from .recursive import ensure_covered


def _median(values):
    vals = sorted(values)
    return vals[len(vals) // 2]


def box_biclique_cover(U, V):
    """Bicliques covering exactly the intersecting (U, V) box pairs.

    U, V: lists of (id, lo_tuple, hi_tuple) with a common dimension.  Every
    emitted (u_ids, v_ids) product consists solely of intersecting pairs and
    every intersecting pair appears in at least one biclique.
    """
    if not U or not V:
        return []
    d = len(U[0][1])
    out = []

    def resolve(us, vs, axis):
        # all axes < axis already overlap for every cross pair
        if not us or not vs:
            return
        if axis == d:
            out.append(([u[0] for u in us], [v[0] for v in vs]))
            return
        lo = lambda b: b[1][axis]  # noqa: E731
        hi = lambda b: b[2][axis]  # noqa: E731
        if len(us) * len(vs) <= 16:
            for u in us:
                ok = [v for v in vs if lo(u) <= hi(v) and lo(v) <= hi(u)]
                if ok:
                    resolve([u], ok, axis + 1)
            return
        m = _median([lo(b) for b in us + vs] + [hi(b) for b in us + vs])
        um = [b for b in us if lo(b) <= m <= hi(b)]
        ul = [b for b in us if hi(b) < m]
        ur = [b for b in us if lo(b) > m]
        vm = [b for b in vs if lo(b) <= m <= hi(b)]
        vl = [b for b in vs if hi(b) < m]
        vr = [b for b in vs if lo(b) > m]
        resolve(um, vm, axis + 1)  # both contain m: this axis is settled
        dominance(um, vl, axis, lo, hi, False)  # need lo(u) <= hi(v)
        dominance(um, vr, axis, hi, lo, True)  # need lo(v) <= hi(u)
        dominance(ul, vm, axis, hi, lo, True)  # need lo(v) <= hi(u)
        dominance(ur, vm, axis, lo, hi, False)  # need lo(u) <= hi(v)
        resolve(ul, vl, axis)
        resolve(ur, vr, axis)

    def dominance(us, vs, axis, key_u, key_v, geq):
        """Pairs already known to overlap one way; settle key_u(u) <= key_v(v)
        (or >= when geq) and hand the survivors to the next axis."""
        holds = (lambda a, b: key_u(a) >= key_v(b)) if geq else (
            lambda a, b: key_u(a) <= key_v(b)
        )

        def rec(ms, fs):
            if not ms or not fs:
                return
            if min(len(ms), len(fs)) <= 4:
                for a in ms:
                    ok = [b for b in fs if holds(a, b)]
                    resolve([a], ok, axis + 1)
                return
            t = _median([key_u(b) for b in ms] + [key_v(b) for b in fs])
            if geq:
                m1 = [b for b in ms if key_u(b) >= t]
                m2 = [b for b in ms if key_u(b) < t]
                f1 = [b for b in fs if key_v(b) <= t]
                f2 = [b for b in fs if key_v(b) > t]
            else:
                m1 = [b for b in ms if key_u(b) <= t]
                m2 = [b for b in ms if key_u(b) > t]
                f1 = [b for b in fs if key_v(b) >= t]
                f2 = [b for b in fs if key_v(b) < t]
            resolve(m1, f1, axis + 1)  # condition certain across m1 x f1
            for ms2, fs2 in ((m1, f2), (m2, f1)):
                if not ms2 or not fs2:
                    continue
                if len(ms2) < len(ms) or len(fs2) < len(fs):
                    rec(ms2, fs2)
                else:  # degenerate median; settle by direct filtering
                    for a in ms2:
                        ok = [b for b in fs2 if holds(a, b)]
                        resolve([a], ok, axis + 1)

        rec(us, vs)

    resolve(list(U), list(V), 0)
    return out


def _overlaps(a, b, axes):
    return all(a[1][i] <= b[2][i] and b[1][i] <= a[2][i] for i in range(axes))


def _strictly_inside(x, slo, shi):
    return (slo is None or x > slo) and (shi is None or x < shi)


def box_3hop(G: IntersectionGraph, inst, cfg) -> Spanner:
    """Slab recursion on the highest axis.

    Pairs meeting exactly at a cut go to a hyperplane branch one dimension
    down; boxes spanning a subslab are projected down likewise; short/short
    pairs recurse within the subslab.  Dimension <= 2 is finished with a
    biclique cover and a two-star 3-hop spanner per biclique.
    """
    for o in inst.objects:
        if o.kind != "axis_box":
            raise GraphError("box builder needs axis-aligned boxes")
    acc = EdgeAccumulator(G)
    if inst.labels is not None and G.bipartite_strict:
        uids, vids = inst.side(0), inst.side(1)
    else:
        uids = vids = list(range(inst.n))
    mk = lambda i: (i, tuple(inst.objects[i].lo), tuple(inst.objects[i].hi))  # noqa: E731
    stats = {"depth": 0, "bicliques": 0}

    def two_star(u_ids, v_ids):
        us, vs = sorted(u_ids), sorted(v_ids)
        u0, v0 = us[0], vs[0]
        stats["bicliques"] += 1
        for v in vs:
            if v != u0:
                acc.add(u0, v, "box3.star")
        for u in us:
            if u != v0:
                acc.add(u, v0, "box3.star")

    def base(us, vs, axes):
        flat_u = [(b[0], b[1][:axes], b[2][:axes]) for b in us]
        flat_v = [(b[0], b[1][:axes], b[2][:axes]) for b in vs]
        for u_ids, v_ids in box_biclique_cover(flat_u, flat_v):
            if len(u_ids) == 1 and len(v_ids) == 1 and u_ids == v_ids:
                continue
            two_star(u_ids, v_ids)

    def task(us, vs, axis, slo, shi, depth):
        # invariant: every cross pair overlaps on all axes above `axis`, every
        # box meets the open slab (slo, shi) on `axis` and is short for it
        if not us or not vs:
            return
        stats["depth"] = max(stats["depth"], depth)
        if axis <= 1:
            base(us, vs, axis + 1)
            return
        if len(us) * len(vs) <= 64:
            for u in us:
                for v in vs:
                    if u[0] != v[0] and _overlaps(u, v, axis + 1):
                        acc.add(u[0], v[0], "box3.base")
            return
        pts = [
            x
            for b in us + vs
            for x in (b[1][axis], b[2][axis])
            if _strictly_inside(x, slo, shi)
        ]
        if not pts:
            for u in us:  # cannot happen while the invariant holds
                for v in vs:
                    if u[0] != v[0] and _overlaps(u, v, axis + 1):
                        acc.add(u[0], v[0], "box3.base")
            return
        m = _median(pts)
        um = [b for b in us if b[1][axis] <= m <= b[2][axis]]
        vm = [b for b in vs if b[1][axis] <= m <= b[2][axis]]
        task(um, vm, axis - 1, None, None, depth + 1)  # meet at the cut plane
        for lo_b, hi_b in ((slo, m), (m, shi)):
            uj = [b for b in us if _meets_open(b, axis, lo_b, hi_b)]
            vj = [b for b in vs if _meets_open(b, axis, lo_b, hi_b)]
            if not uj or not vj:
                continue
            ush, ulg = _split_short(uj, axis, lo_b, hi_b)
            vsh, vlg = _split_short(vj, axis, lo_b, hi_b)
            task(ush, vsh, axis, lo_b, hi_b, depth + 1)
            task(uj, vlg, axis - 1, None, None, depth + 1)
            task(ulg, vsh, axis - 1, None, None, depth + 1)

    def _meets_open(b, axis, lo_b, hi_b):
        lo, hi = b[1][axis], b[2][axis]
        return (hi_b is None or lo < hi_b) and (lo_b is None or hi > lo_b)

    def _split_short(bs, axis, lo_b, hi_b):
        short, long_ = [], []
        for b in bs:
            if _strictly_inside(b[1][axis], lo_b, hi_b) or _strictly_inside(
                b[2][axis], lo_b, hi_b
            ):
                short.append(b)
            else:
                long_.append(b)
        return short, long_

    task([mk(i) for i in uids], [mk(i) for i in vids], inst.dim - 1, None, None, 0)
    fallback = ensure_covered(acc, G, 3)
    return acc.spanner(stretch=3, fallback_edges=fallback, depth=stats["depth"],
                       bicliques=stats["bicliques"])
