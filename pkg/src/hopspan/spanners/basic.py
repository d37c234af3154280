"""Greedy baseline, the lop-sided 3-hop lemma, the one-sided-clique 2-hop
lemma, and their square-root grouping corollaries.

Tie-breaking is lexicographic everywhere: e_v picks the lowest-index
neighbor, 2-hop paths route through the lowest-index middle vertex.  That
makes every builder reproducible bit for bit.
"""

from __future__ import annotations

import math

from ..graphcore import EdgeAccumulator, GraphError, IntersectionGraph, Spanner


def _lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _bitmask(ids) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def greedy_spanner(G: IntersectionGraph, t: int) -> Spanner:
    """Scan edges lexicographically; keep an edge iff its endpoints are not
    already within t hops.  The result has girth > t+1 and verifies at t."""
    if t < 1:
        raise GraphError("t must be >= 1")
    n = G.n
    acc = EdgeAccumulator(G)
    adj = [[] for _ in range(n)]
    mask = [0] * n

    def reach(u, v):
        if (mask[u] >> v) & 1:
            return True
        if t == 1:
            return False
        if mask[u] & mask[v]:
            return True
        if t == 2:
            return False
        a, b = (u, v) if len(adj[u]) <= len(adj[v]) else (v, u)
        for w in adj[a]:
            if mask[w] & mask[b]:
                return True
        if t == 3:
            return False
        return _bfs_leq(adj, u, v, t)

    for u, v in G.edges():
        if not reach(u, v):
            acc.add(u, v, "greedy")
            adj[u].append(v)
            adj[v].append(u)
            mask[u] |= 1 << v
            mask[v] |= 1 << u
    return acc.spanner(stretch=t)


def _bfs_leq(adj, u, v, t):
    frontier = {u}
    seen = {u}
    for _ in range(t):
        nxt = set()
        for x in frontier:
            for y in adj[x]:
                if y == v:
                    return True
                if y not in seen:
                    seen.add(y)
                    nxt.add(y)
        frontier = nxt
        if not frontier:
            return False
    return False


def _lopsided_core(acc, G, U, V, middle_mask, add_intra_u, tag):
    """Shared engine for the O(m^2+n) constructions.

    Adds e_v (lowest U-neighbor) for every v in V with one, all of G[U] when
    add_intra_u, and a lowest-middle 2-hop path for every U-pair that has a
    common neighbor under middle_mask.
    """
    masks = G.neighbor_masks()
    um = _bitmask(U)
    for v in V:
        m = masks[v] & um
        if m:
            acc.add(v, _lowest_bit(m), tag + ".ev")
    if add_intra_u:
        uset = set(U)
        for u in U:
            for w in G.adj[u]:
                if w > u and w in uset:
                    acc.add(u, w, tag + ".clique")
    for i in range(len(U)):
        for j in range(i + 1, len(U)):
            u, w = U[i], U[j]
            m = masks[u] & masks[w] & middle_mask
            if m:
                mid = _lowest_bit(m)
                acc.add(u, mid, tag + ".path")
                acc.add(mid, w, tag + ".path")


def lopsided_3hop(G: IntersectionGraph, U, V, _check=True) -> Spanner:
    """3-hop spanner of size <= n + 1.5 m^2 when V is an independent set."""
    U = sorted(U)
    V = sorted(V)
    if _check:
        vset = set(V)
        for v in V:
            for w in G.adj[v]:
                if w in vset:
                    raise GraphError(f"V is not independent: edge {(v, w)}")
    acc = EdgeAccumulator(G)
    middle = _bitmask(U) | _bitmask(V)
    _lopsided_core(acc, G, U, V, middle, add_intra_u=True, tag="lop")
    return acc.spanner(stretch=3, m=len(U), n=len(V))


def grouped_3hop(G: IntersectionGraph, cfg=None) -> Spanner:
    """O(n^{3/2}) 3-hop spanner: sqrt(n) groups, lop-sided lemma per group."""
    n = G.n
    acc = EdgeAccumulator(G)
    if n == 0:
        return acc.spanner(stretch=3)
    gcount = math.isqrt(n - 1) + 1  # ceil(sqrt(n))
    size = (cfg.group_size if cfg and cfg.group_size else None) or -(-n // gcount)
    allm = (1 << n) - 1
    for start in range(0, n, size):
        group = list(range(start, min(start + size, n)))
        rest = list(range(0, start)) + list(range(min(start + size, n), n))
        _lopsided_core(acc, G, group, rest, allm, add_intra_u=True, tag="grp3")
    return acc.spanner(stretch=3, groups=-(-n // size))


def clique_side_2hop(G: IntersectionGraph, U, V) -> Spanner:
    """2-hop spanner when U induces a clique: the clique plus one e_v per v."""
    U = sorted(U)
    V = sorted(V)
    masks = G.neighbor_masks()
    um = _bitmask(U)
    for u in U:
        if (masks[u] | (1 << u)) & um != um:
            raise GraphError(f"clique edges missing at vertex {u}")
    acc = EdgeAccumulator(G)
    for i in range(len(U)):
        for j in range(i + 1, len(U)):
            acc.add(U[i], U[j], "cs2.clique")
    for v in V:
        m = masks[v] & um
        if m:
            acc.add(v, _lowest_bit(m), "cs2.ev")
    return acc.spanner(stretch=2, m=len(U), n=len(V))


def grouped_2hop(G: IntersectionGraph, U, V, cfg=None, acc=None) -> Spanner | None:
    """Grouping trick over the clique side U: O(n^{3/2}) at 2 hops.

    Per group U_i the far side is everything else; each far vertex keeps one
    edge into U_i and the group keeps its clique.  When an accumulator is
    passed, edges are merged into it and no Spanner is returned (the fat
    recursion batches many of these).
    """
    U = sorted(U)
    V = sorted(V)
    masks = G.neighbor_masks()
    um = _bitmask(U)
    for u in U:
        if (masks[u] | (1 << u)) & um != um:
            raise GraphError(f"clique edges missing at vertex {u}")
    own = acc is None
    if own:
        acc = EdgeAccumulator(G)
    total = len(U) + len(V)
    size = (cfg.group_size if cfg and cfg.group_size else None) or max(
        1, math.isqrt(max(total, 1))
    )
    vm = _bitmask(V)
    for start in range(0, len(U), size):
        group = U[start : start + size]
        gm = _bitmask(group)
        farm = (um & ~gm) | vm
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                acc.add(group[i], group[j], "g2.clique")
        w = farm
        while w:
            x = _lowest_bit(w)
            w &= w - 1
            m = masks[x] & gm
            if m:
                acc.add(x, _lowest_bit(m), "g2.ev")
    if own:
        return acc.spanner(stretch=2, m=len(U), n=len(V))
    return None
