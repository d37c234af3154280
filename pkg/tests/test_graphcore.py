"""Graph construction, hop queries, verification, and K22 detection."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopspan.generators import gen_erdos_incidence, gen_random_balls
from hopspan.geometry import ball
from hopspan.graphcore import (
    GraphError,
    GroundTruthMismatch,
    Instance,
    IntersectionGraph,
    Spanner,
    assert_lb_2hop,
    build_graph,
    estimate_exponent,
    find_k22,
    hop_distance_leq,
    verify_spanner,
)


def graph_of(n, edges, labels=None):
    return IntersectionGraph(n, edges, labels=labels)


def test_three_tangent_balls_triangle():
    inst = Instance(
        name="tri",
        dim=2,
        mode="rational",
        objects=(ball((0, 0), 1), ball((2, 0), 1), ball((1, 2), 2)),
    )
    G = build_graph(inst)
    assert sorted(G.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_disjoint_objects_empty_graph():
    inst = Instance(
        name="empty",
        dim=2,
        mode="rational",
        objects=(ball((0, 0), 1), ball((10, 0), 1)),
    )
    assert build_graph(inst).m == 0


def test_erdos_16_edges_via_predicate():
    G = build_graph(gen_erdos_incidence(2))
    assert G.m == 16


def test_ground_truth_mismatch_detected():
    inst = gen_erdos_incidence(2)
    bad = Instance(
        name=inst.name,
        dim=inst.dim,
        mode=inst.mode,
        objects=inst.objects,
        labels=inst.labels,
        ground_truth_edges=inst.ground_truth_edges[:-1],
        graph_mode=inst.graph_mode,
    )
    with pytest.raises(GroundTruthMismatch):
        build_graph(bad)


def test_hop_distance_trivial_cases():
    G = graph_of(3, [(0, 1), (1, 2)])
    assert hop_distance_leq(G, 0, 0, 1)
    assert not hop_distance_leq(G, 0, 2, 1)
    assert hop_distance_leq(G, 0, 2, 2)
    with pytest.raises(GraphError):
        hop_distance_leq(G, 0, 5, 1)


def _bfs_dist(adj, s):
    dist = {s: 0}
    q = [s]
    while q:
        nxt = []
        for x in q:
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        q = nxt
    return dist


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_hop_distance_matches_full_bfs(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 14)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < 0.25
    ]
    G = graph_of(n, edges)
    for _ in range(10):
        u, v = rng.randrange(n), rng.randrange(n)
        t = rng.randint(1, 5)
        d = _bfs_dist(G.adj, u).get(v)
        assert hop_distance_leq(G, u, v, t) == (d is not None and d <= t)


def test_verify_spanner_identity():
    G = graph_of(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    for t in (1, 2, 3):
        assert verify_spanner(G, G, t).ok


def test_verify_detects_missing_bridge():
    G = graph_of(4, [(0, 1), (1, 2), (2, 3)])
    H = graph_of(4, [(0, 1), (2, 3)])
    rep = verify_spanner(G, H, 3)
    assert not rep.ok and rep.worst_edge == (1, 2)


def test_verify_rejects_non_subgraph():
    G = graph_of(3, [(0, 1)])
    H = graph_of(3, [(0, 1), (1, 2)])
    with pytest.raises(GraphError):
        verify_spanner(G, H, 2)


def test_verify_agrees_with_per_edge_bfs_oracle():
    rng = random.Random(42)
    for _ in range(25):
        n = rng.randint(4, 16)
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < 0.3
        ]
        if not edges:
            continue
        G = graph_of(n, edges)
        keep = [e for e in edges if rng.random() < 0.7]
        H = graph_of(n, keep)
        for t in (1, 2, 3, 4):
            want = all(hop_distance_leq(H, u, v, t) for u, v in G.edges())
            assert verify_spanner(G, H, t).ok == want


def _brute_k22(G, cross_only=False):
    n = G.n
    for a, b in itertools.combinations(range(n), 2):
        common = [
            w
            for w in range(n)
            if G.has_edge(a, w)
            and G.has_edge(b, w)
            and (not cross_only or (G.labels[a] != G.labels[w]))
        ]
        if cross_only:
            common = [w for w in common if G.labels[b] != G.labels[w]]
        if len(common) >= 2:
            return True
    return False


@given(st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_find_k22_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 14)
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.2
    ]
    G = graph_of(n, edges)
    assert (find_k22(G, "all") is not None) == _brute_k22(G)


def test_find_k22_on_c4_and_tree():
    c4 = graph_of(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    w = find_k22(c4, "all")
    assert w is not None
    tree = graph_of(5, [(0, 1), (0, 2), (1, 3), (1, 4)])
    assert find_k22(tree, "all") is None


def test_k22_witness_edges_exist():
    rng = random.Random(1)
    n = 12
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4
    ]
    G = graph_of(n, edges)
    w = find_k22(G, "all")
    if w is not None:
        a, b, v1, v2 = w
        for x in (v1, v2):
            assert G.has_edge(a, x) and G.has_edge(b, x)


def test_assert_lb_2hop_trivial_and_violation():
    labels = (0, 0, 1, 1)
    G = graph_of(4, [(0, 2), (1, 3), (0, 1)], labels=labels)
    H = Spanner(G, tuple(G.edges()))
    assert assert_lb_2hop(G, H)
    # a K22 across the sides violates the precondition
    Gbad = graph_of(4, [(0, 2), (0, 3), (1, 2), (1, 3)], labels=labels)
    with pytest.raises(GraphError):
        assert_lb_2hop(Gbad, Spanner(Gbad, tuple(Gbad.edges())))


def test_estimate_exponent():
    assert estimate_exponent([(2, 4), (4, 16), (8, 64)]) == pytest.approx(2.0)
    assert estimate_exponent([(2, 2), (4, 4), (8, 8)]) == pytest.approx(1.0)
    with pytest.raises(GraphError):
        estimate_exponent([(2, 4), (4, 16)])
    with pytest.raises(GraphError):
        estimate_exponent([(2, 4), (2, 5), (8, 64)])


def test_bucketing_agrees_with_brute_force():
    for seed in (0, 1):
        inst = gen_random_balls(300, 2, 2.0, seed)
        fast = build_graph(inst)
        slow = build_graph(inst, force_brute=True)
        assert list(fast.edges()) == list(slow.edges())


def test_spanner_rejects_foreign_edges():
    G = graph_of(3, [(0, 1)])
    with pytest.raises(GraphError):
        Spanner(G, ((0, 2),))
