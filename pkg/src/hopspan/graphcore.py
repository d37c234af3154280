"""Intersection graphs, hop-distance verification, and K_{2,2} detection."""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import FLOAT, GeometryError, intersects
from .geometry.objects import HALFSPACE

FULL = "full"
BIPARTITE_ONLY = "bipartite_only"


class GraphError(ValueError):
    pass


class GroundTruthMismatch(GraphError):
    """The geometric predicate disagrees with an instance's known edge set."""


@dataclass(frozen=True)
class Instance:
    """A named object collection, optionally bipartitioned, optionally with
    an analytically known ground-truth edge list (float-mode constructions)."""

    name: str
    dim: int
    mode: str
    objects: tuple
    eps: float = 0.0
    labels: tuple | None = None  # 0/1 side labels
    ground_truth_edges: tuple | None = None  # cross edges, (u, v) with u < v
    gen_spec: dict | None = None
    abstract: bool = False  # edges come from ground truth, not geometry
    congruent: bool = False  # hint: uniform-grid bucketing is worthwhile
    fat: bool = False  # hint: objects carry witness kernels
    graph_mode: str = FULL  # canonical mode for builders and the CLI

    @property
    def n(self) -> int:
        return len(self.objects)

    def side(self, label) -> list[int]:
        if self.labels is None:
            raise GraphError("instance has no side labels")
        return [i for i, s in enumerate(self.labels) if s == label]

    def __post_init__(self):
        if self.ground_truth_edges is not None:
            n = len(self.objects) if not self.abstract else self._gt_max() + 1
            for u, v in self.ground_truth_edges:
                if not (0 <= u < v < max(n, 1)):
                    raise GraphError("ground-truth edge references invalid index")

    def _gt_max(self):
        return max((max(e) for e in self.ground_truth_edges), default=0)


class IntersectionGraph:
    """Immutable adjacency structure over object indices."""

    def __init__(self, n, edges, labels=None, instance=None):
        self.n = n
        adj = [[] for _ in range(n)]
        m = 0
        last = None
        for u, v in sorted(
            (e if e[0] < e[1] else (e[1], e[0])) for e in edges
        ):
            if u == v:
                raise GraphError("self-loop")
            if (u, v) == last:
                continue
            last = (u, v)
            adj[u].append(v)
            adj[v].append(u)
            m += 1
        self.adj = [sorted(a) for a in adj]
        self.m = m
        self.labels = tuple(labels) if labels is not None else None
        self.instance = instance
        self._masks = None
        if self.labels is not None:
            self.bipartite_strict = all(
                self.labels[u] != self.labels[v] for u, v in self.edges()
            )
        else:
            self.bipartite_strict = False

    def edges(self):
        for u in range(self.n):
            for v in self.adj[u]:
                if v > u:
                    yield (u, v)

    def has_edge(self, u, v) -> bool:
        a = self.adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def degree(self, u) -> int:
        return len(self.adj[u])

    def neighbor_masks(self):
        """Adjacency bitsets (python ints); cached."""
        if self._masks is None:
            masks = [0] * self.n
            for u in range(self.n):
                acc = 0
                for v in self.adj[u]:
                    acc |= 1 << v
                masks[u] = acc
            self._masks = masks
        return self._masks


@dataclass
class Spanner:
    parent: IntersectionGraph
    edges: tuple  # sorted (u, v) pairs, u < v
    provenance: dict = field(default_factory=dict)  # (u, v) -> rule tag
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        self.edges = tuple(sorted(set(self.edges)))
        for u, v in self.edges:
            if not self.parent.has_edge(u, v):
                raise GraphError(f"spanner edge {(u, v)} is not a graph edge")
        self.stats.setdefault("edges", len(self.edges))
        hist = {}
        for e in self.edges:
            tag = self.provenance.get(e, "untagged")
            hist[tag] = hist.get(tag, 0) + 1
        self.stats["provenance"] = dict(sorted(hist.items()))

    @property
    def size(self) -> int:
        return len(self.edges)

    def as_graph(self) -> IntersectionGraph:
        return IntersectionGraph(self.parent.n, self.edges)


class EdgeAccumulator:
    """Dedup + provenance bookkeeping shared by all builders."""

    def __init__(self, graph: IntersectionGraph):
        self.graph = graph
        self.edges = set()
        self.prov = {}

    def add(self, u, v, tag):
        if u == v:
            return False
        e = (u, v) if u < v else (v, u)
        if e in self.edges:
            return False
        if not self.graph.has_edge(*e):
            raise GraphError(f"builder proposed non-edge {e} ({tag})")
        self.edges.add(e)
        self.prov[e] = tag
        return True

    def spanner(self, **stats) -> Spanner:
        return Spanner(self.graph, tuple(sorted(self.edges)), self.prov, dict(stats))


# ---------------------------------------------------------------- building


def _float_bbox(o):
    bb = o.bbox()
    if bb is None:
        return None
    lo = tuple(math.nextafter(float(x), -math.inf) for x in bb[0])
    hi = tuple(math.nextafter(float(x), math.inf) for x in bb[1])
    return lo, hi


def _bbox_disjoint(a, b, pad):
    return any(ah + pad < bl or bh + pad < al for al, ah, bl, bh in zip(a[0], a[1], b[0], b[1]))


def _bucketing_helps(inst, boxes):
    """Bucketing pays off only when object extents are comparable."""
    if inst.congruent:
        return True
    if any(bb is None for bb in boxes):
        return False
    extents = sorted(
        max(h - l for l, h in zip(bb[0], bb[1])) for bb in boxes
    )
    med = extents[len(extents) // 2]
    return med > 0 and extents[-1] <= 4 * med


def _candidate_pairs(objects, boxes, pad):
    """Uniform-grid bucketing on float bounding boxes; sound, never misses."""
    n = len(objects)
    d = objects[0].dim
    widths = [max(h - l for l, h in zip(bb[0], bb[1])) for bb in boxes if bb]
    pos = sorted(w for w in widths if w > 0)
    if pos:
        cell = pos[len(pos) // 2]
    else:
        span = max(
            (max(bb[1][i] for bb in boxes) - min(bb[0][i] for bb in boxes))
            for i in range(d)
        )
        cell = max(span / max(1.0, round(n ** (1.0 / d))), 1e-9)
    buckets = {}
    large = []
    cap = 4096
    for i, bb in enumerate(boxes):
        if bb is None:
            large.append(i)
            continue
        ranges = [
            (math.floor(bb[0][k] / cell), math.floor(bb[1][k] / cell))
            for k in range(d)
        ]
        count = 1
        for a, b in ranges:
            count *= b - a + 1
            if count > cap:
                break
        if count > cap:
            large.append(i)
            continue
        idx = [a for a, _ in ranges]
        while True:
            buckets.setdefault(tuple(idx), []).append(i)
            k = 0
            while k < d:
                idx[k] += 1
                if idx[k] <= ranges[k][1]:
                    break
                idx[k] = ranges[k][0]
                k += 1
            if k == d:
                break
    seen = set()
    for members in buckets.values():
        for ai in range(len(members)):
            for bi in range(ai + 1, len(members)):
                u, v = members[ai], members[bi]
                key = u * n + v if u < v else v * n + u
                if key not in seen:
                    seen.add(key)
                    yield (u, v) if u < v else (v, u)
    for u in large:
        for v in range(n):
            if v == u:
                continue
            key = u * n + v if u < v else v * n + u
            if key not in seen:
                seen.add(key)
                yield (u, v) if u < v else (v, u)


def build_graph(inst: Instance, mode: str = None, force_brute: bool = False) -> IntersectionGraph:
    """Evaluate the intersection predicate pairwise (bucketed when congruent).

    bipartite_only keeps only cross-side edges.  When the instance carries a
    ground-truth edge list, the computed cross edges must reproduce it
    exactly; any difference raises GroundTruthMismatch.
    """
    if mode is None:
        mode = inst.graph_mode
    if mode not in (FULL, BIPARTITE_ONLY):
        raise GraphError(f"unknown mode {mode!r}")
    if mode == BIPARTITE_ONLY and inst.labels is None:
        raise GraphError("bipartite_only requires side labels")
    n = inst.n

    if inst.abstract:
        edges = list(inst.ground_truth_edges or ())
        return IntersectionGraph(n, edges, labels=inst.labels, instance=inst)

    for o in inst.objects:
        if o.mode != inst.mode:
            raise GraphError("mixed arithmetic modes in one instance")

    boxes = [_float_bbox(o) for o in inst.objects]
    pad = 4.0 * inst.eps if inst.mode == FLOAT else 0.0
    labels = inst.labels
    objs = inst.objects
    d = inst.dim
    los = [None if bb is None else bb[0] for bb in boxes]
    his = [
        None if bb is None else tuple(h + pad for h in bb[1]) for bb in boxes
    ]
    edges = []
    use_buckets = not force_brute and n > 64 and _bucketing_helps(inst, boxes)
    if use_buckets:
        pair_iter = _candidate_pairs(inst.objects, boxes, pad)
    else:
        pair_iter = ((u, v) for u in range(n) for v in range(u + 1, n))
    cross_only = mode == BIPARTITE_ONLY
    axes = range(d)
    for u, v in pair_iter:
        if cross_only and labels[u] == labels[v]:
            continue
        lu, hu, lv, hv = los[u], his[u], los[v], his[v]
        if lu is not None and lv is not None:
            hit = True
            for i in axes:
                if hu[i] < lv[i] or hv[i] < lu[i]:
                    hit = False
                    break
            if not hit:
                continue
        if intersects(objs[u], objs[v]):
            edges.append((u, v))

    g = IntersectionGraph(n, edges, labels=labels, instance=inst)
    if inst.ground_truth_edges is not None:
        want = set(inst.ground_truth_edges)
        got = {
            (u, v)
            for u, v in g.edges()
            if labels is None or labels[u] != labels[v]
        }
        if got != want:
            extra = sorted(got - want)[:5]
            missing = sorted(want - got)[:5]
            raise GroundTruthMismatch(
                f"{inst.name}: predicate disagrees with ground truth "
                f"(extra={extra}, missing={missing})"
            )
    return g


# ------------------------------------------------------------ hop queries


def hop_distance_leq(G, u, v, t: int) -> bool:
    """Is there a path of at most t edges from u to v?

    Depth-truncated BFS, run from both ends for t >= 3.
    """
    if t < 1:
        raise GraphError("t must be >= 1")
    n = G.n
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError("invalid vertex")
    if u == v:
        return True
    adj = G.adj
    if t < 3:
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
        return False
    fwd = math.ceil(t / 2)
    bwd = t - fwd
    du = _bfs_levels(adj, u, fwd)
    if v in du:
        return True
    dv = _bfs_levels(adj, v, bwd)
    small, big = (du, dv) if len(du) < len(dv) else (dv, du)
    return any(w in big and small[w] + big[w] <= t for w in small)


def _bfs_levels(adj, s, depth):
    dist = {s: 0}
    frontier = [s]
    for lvl in range(1, depth + 1):
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in dist:
                    dist[y] = lvl
                    nxt.append(y)
        frontier = nxt
    return dist


def reach_masks(G, radius: int):
    """Bitset of vertices within the given hop radius of each vertex."""
    base = G.neighbor_masks()
    cur = [base[u] | (1 << u) for u in range(G.n)]
    for _ in range(radius - 1):
        nxt = list(cur)
        for u in range(G.n):
            acc = cur[u]
            for v in G.adj[u]:
                acc |= cur[v]
            nxt[u] = acc
        cur = nxt
    if radius == 0:
        cur = [1 << u for u in range(G.n)]
    return cur


@dataclass
class VerifyReport:
    ok: bool
    worst_edge: tuple | None
    checked: int
    stretch: int


def verify_spanner(G: IntersectionGraph, H, t: int) -> VerifyReport:
    """Edge-wise stretch check: every G-edge must span <= t hops in H.

    For unit weights this implies stretch t for all vertex pairs.  H may be
    a Spanner (validated against G on construction) or a bare graph, in
    which case the subgraph property is checked here.
    """
    if isinstance(H, Spanner):
        if H.parent is not G:
            for u, v in H.edges:
                if not G.has_edge(u, v):
                    raise GraphError("spanner is not a subgraph of G")
        Hg = H.as_graph()
    else:
        Hg = H
        for u, v in Hg.edges():
            if not G.has_edge(u, v):
                raise GraphError("H is not a subgraph of G")
    if Hg.n != G.n:
        raise GraphError("vertex count mismatch")
    fwd = math.ceil(t / 2)
    bwd = t - fwd
    mf = reach_masks(Hg, fwd)
    mb = reach_masks(Hg, bwd) if bwd != fwd else mf
    checked = 0
    for u, v in G.edges():
        checked += 1
        if not (mf[u] & mb[v]):
            return VerifyReport(False, (u, v), checked, t)
    return VerifyReport(True, None, checked, t)


# ------------------------------------------------------------- K22 search


def find_k22(G: IntersectionGraph, restrict: str = "all"):
    """A K_{2,2} witness (a, b, v1, v2) with a,b adjacent to both v1,v2.

    restrict="bipartite_edges" searches only cross-side edges.  Hashes
    common-neighbor pairs, O(sum of squared degrees) with early exit.
    """
    if restrict not in ("all", "bipartite_edges"):
        raise GraphError(f"unknown restrict {restrict!r}")
    if restrict == "bipartite_edges":
        if G.labels is None:
            raise GraphError("bipartite_edges needs side labels")
        sides = (
            [u for u in range(G.n) if G.labels[u] == 0],
            [u for u in range(G.n) if G.labels[u] == 1],
        )
        adj = [
            [v for v in G.adj[u] if G.labels[v] != G.labels[u]]
            for u in range(G.n)
        ]
        cost = [sum(len(adj[u]) ** 2 for u in s) for s in sides]
        scan = sides[0] if cost[0] <= cost[1] else sides[1]
    else:
        adj = G.adj
        scan = range(G.n)
    seen = {}
    for v in scan:
        nbrs = adj[v]
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                key = (nbrs[i], nbrs[j])
                if key in seen:
                    return (nbrs[i], nbrs[j], seen[key], v)
                seen[key] = v
    return None


def assert_lb_2hop(G: IntersectionGraph, H: Spanner) -> bool:
    """|H| >= |E'| for the K22-free cross-edge set E' (the charging bound)."""
    if G.labels is None:
        raise GraphError("instance must be bipartite-labeled")
    witness = find_k22(G, restrict="bipartite_edges")
    if witness is not None:
        raise GraphError(f"cross edges contain K22: {witness}")
    cross = sum(1 for u, v in G.edges() if G.labels[u] != G.labels[v])
    return len(H.edges) >= cross


# ----------------------------------------------------------- measurements


def estimate_exponent(series) -> float:
    """Least-squares slope of log(size) against log(n)."""
    pts = list(series)
    if len(pts) < 3:
        raise GraphError("need at least 3 points")
    ns = [p[0] for p in pts]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise GraphError("n must be strictly increasing")
    if any(p[1] <= 0 for p in pts):
        raise GraphError("sizes must be positive")
    xs = [math.log(p[0]) for p in pts]
    ys = [math.log(p[1]) for p in pts]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    den = sum((x - xbar) ** 2 for x in xs)
    if den == 0:
        raise GraphError("degenerate series")
    return sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / den
