"""Partition-oracle recursion, epsilon nets, and the net-shortcut builder."""

import random
from fractions import Fraction

import pytest

from hopspan.generators import gen_erdos_incidence, gen_halfspace_lift_r5
from hopspan.geometry import halfspace, point
from hopspan.graphcore import Instance, IntersectionGraph, build_graph, verify_spanner
from hopspan.spanners import BuildConfig, build_spanner, epsilon_net
from hopspan.spanners.partition import (
    classify_region_vs_box,
    kd_partition,
    partition_and_classify,
)
from hopspan.spanners.recursive import net_shortcut_3hop, recursive_bipartite_3hop


def _point_region_instance(pts, regions):
    objs = tuple(point(p) for p in pts) + tuple(regions)
    labels = (0,) * len(pts) + (1,) * len(regions)
    return Instance(
        name="adhoc",
        dim=len(pts[0]),
        mode="rational",
        objects=objs,
        labels=labels,
        graph_mode="bipartite_only",
    )


def test_all_regions_disjoint_gives_empty_spanner():
    pts = [(i, 0) for i in range(8)]
    regions = [halfspace((0, 1), -5) for _ in range(4)]  # y <= -5: empty of points
    inst = _point_region_instance(pts, regions)
    G = build_graph(inst)
    assert G.m == 0
    sp = recursive_bipartite_3hop(G, inst, BuildConfig(builder="recursive3"))
    assert sp.size == 0


def test_one_region_containing_all_is_two_stars():
    pts = [(i, i % 3) for i in range(10)]
    regions = [halfspace((0, 1), 100)]
    inst = _point_region_instance(pts, regions)
    G = build_graph(inst)
    sp = recursive_bipartite_3hop(G, inst, BuildConfig(builder="recursive3"))
    assert verify_spanner(G, sp, 3).ok
    assert sp.size == len(pts) + 1 - 1  # m + n - 1 edges for the biclique


@pytest.mark.parametrize("oracle", ("kd", "grid"))
def test_erdos_points_vs_segments(oracle):
    inst = gen_erdos_incidence(4)
    G = build_graph(inst)
    cfg = BuildConfig(builder="recursive3", oracle=oracle)
    sp = build_spanner(inst, G, cfg.with_(t=3))
    assert verify_spanner(G, sp, 3).ok
    assert sp.stats["fallback_edges"] == 0
    assert sp.size >= G.m  # C4-free: every edge is forced


def test_partition_covers_points_and_classification_is_sound():
    rng = random.Random(0)
    pts = [(i, (rng.randrange(100), rng.randrange(100))) for i in range(60)]
    regions = [
        (100 + j, halfspace((rng.randrange(-3, 4) or 1, rng.randrange(-3, 4)),
                            rng.randrange(-50, 150)))
        for j in range(20)
    ]
    part = partition_and_classify(pts, regions, "kd", 2)
    covered = sorted(pid for cell in part.cells for pid in cell.point_ids)
    assert covered == [i for i, _ in pts]
    coords = dict(pts)
    robj = dict(regions)
    for cell in part.cells:
        tagged = set(cell.crossing) | set(cell.containing)
        for rid, region in regions:
            member = [
                sum(c * x for c, x in zip(region.coeffs, coords[pid]))
                <= region.offset
                for pid in cell.point_ids
            ]
            if rid in set(cell.containing):
                assert all(member)
            if rid not in tagged:  # classified disjoint
                assert not any(member)


def test_epsilon_net_trivial_cases():
    pts = [(0, 0)] * 6
    inst = _point_region_instance(pts, [halfspace((1, 0), 5)])
    G = build_graph(inst)
    P = list(range(6))
    net, resamples = epsilon_net(G, P, [6], 2, random.Random(0))
    assert resamples == 0 and set(net) <= set(P)
    # t_net = |P| is degenerate, but the definitional check still validates it
    net, _ = epsilon_net(G, P, [6], 6, random.Random(0))
    deep = [s for s in [6] if len(G.adj[s]) * 6 >= len(P)]
    for s in deep:
        assert any(G.has_edge(p, s) for p in net)


def test_epsilon_net_seeded_batch():
    rng = random.Random(123)
    total = 0
    for trial in range(10):
        pts = [(rng.randrange(1000), rng.randrange(1000)) for _ in range(200)]
        regions = [
            halfspace((rng.randrange(-5, 6) or 1, rng.randrange(-5, 6)),
                      rng.randrange(-500, 3000))
            for _ in range(40)
        ]
        inst = _point_region_instance(pts, regions)
        G = build_graph(inst)
        net, resamples = epsilon_net(
            G, list(range(200)), list(range(200, 240)), 10,
            random.Random(trial),
        )
        total += resamples
        pm = 0
        for p in net:
            pm |= 1 << p
        masks = G.neighbor_masks()
        for s in range(200, 240):
            if len(G.adj[s]) * 10 >= 200:
                assert masks[s] & pm
    assert total <= 3 * 10


def test_net_shortcut_all_deep():
    pts = [(i, 0) for i in range(30)]
    regions = [halfspace((0, 1), j + 1) for j in range(8)]  # contain everything
    inst = _point_region_instance(pts, regions)
    G = build_graph(inst)
    sp = net_shortcut_3hop(G, inst, BuildConfig(builder="netshortcut3"))
    assert verify_spanner(G, sp, 3).ok
    assert sp.stats["deep"] == 8


def test_net_shortcut_all_empty():
    pts = [(i, 0) for i in range(10)]
    regions = [halfspace((0, 1), -10) for _ in range(4)]
    inst = _point_region_instance(pts, regions)
    G = build_graph(inst)
    sp = net_shortcut_3hop(G, inst, BuildConfig(builder="netshortcut3"))
    assert sp.size == 0


def test_net_shortcut_on_lifted_instance():
    inst = gen_halfspace_lift_r5(4)
    G = build_graph(inst)
    sp = build_spanner(inst, G, BuildConfig(t=3, builder="netshortcut3"))
    assert verify_spanner(G, sp, 3).ok
    assert sp.stats["fallback_edges"] == 0


def test_kd_partition_balance():
    rng = random.Random(5)
    pts = [(i, (rng.randrange(1 << 16), rng.randrange(1 << 16))) for i in range(256)]
    cells = kd_partition(pts, 16)
    sizes = [len(c.point_ids) for c in cells]
    assert sum(sizes) == 256
    assert max(sizes) <= 32  # balanced within a factor of two of 256/16
