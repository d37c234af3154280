"""Every extremal family: counts, ground truth, K22-freeness, determinism."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from hopspan.generators import (
    GenSpec,
    gen_bipartite_boxes,
    gen_chazelle_points_boxes,
    gen_congruent_balls_r5,
    gen_erdos_incidence,
    gen_halfspace_lift_r5,
    gen_projective_plane_c4free,
    gen_random_balls,
    gen_random_bipartite,
    gen_random_boxes,
    gen_redblue_hypercubes,
    gen_thin_tetrahedra,
    gen_touching_tetrahedra,
)
from hopspan.geometry import axis_box, intersects, point_in_object
from hopspan.graphcore import GraphError, Instance, build_graph, find_k22
from hopspan.io import instance_to_json


def cross_edges(G):
    return [(u, v) for u, v in G.edges() if G.labels[u] != G.labels[v]]


def test_erdos_counts_tiny():
    i1 = gen_erdos_incidence(1)
    assert i1.n == 3 and len(i1.ground_truth_edges) == 1
    i2 = gen_erdos_incidence(2)
    assert len(i2.side(0)) == 16 and len(i2.side(1)) == 8
    assert len(i2.ground_truth_edges) == 16


@pytest.mark.parametrize("k", (2, 3, 4, 5))
def test_erdos_incidences_exactly_k4(k):
    inst = gen_erdos_incidence(k)
    # independent oracle: direct incidence counting on the grid
    brute = 0
    per_line = {}
    for a in range(k):
        for b in range(k * k):
            cnt = 0
            for x in range(k):
                y = a * x + b
                if 0 <= y < 2 * k * k:
                    cnt += 1
            per_line[(a, b)] = cnt
            brute += cnt
    assert brute == k**4
    assert all(c == k for c in per_line.values())
    assert len(inst.ground_truth_edges) == k**4
    G = build_graph(inst)
    assert G.m == k**4
    assert find_k22(G, "bipartite_edges") is None


def test_thin_tetrahedra_matches_source_exactly():
    inst = gen_thin_tetrahedra(4)
    G = build_graph(inst)  # raises GroundTruthMismatch on any disagreement
    assert G.bipartite_strict
    assert G.m == 4**4
    assert find_k22(G, "bipartite_edges") is None


def test_touching_tetrahedra_ground_truth_and_m_bound():
    inst = gen_touching_tetrahedra(3)
    G = build_graph(inst)
    assert len(cross_edges(G)) == 3**4
    assert find_k22(G, "bipartite_edges") is None
    with pytest.raises(GraphError):
        gen_touching_tetrahedra(5, big_m=1.0)  # below the clipping bound


def test_touching_tetrahedra_k1():
    inst = gen_touching_tetrahedra(1)
    G = build_graph(inst)
    assert len(cross_edges(G)) == 1


def test_halfspace_lift_preserves_incidences():
    inst = gen_halfspace_lift_r5(3)
    G = build_graph(inst)
    assert G.m == 3**4
    assert find_k22(G, "bipartite_edges") is None
    # pairwise: lifted membership iff source incidence
    incid = set(inst.ground_truth_edges)
    pts = inst.side(0)
    hss = inst.side(1)
    for p in pts:
        for h in hss:
            want = (p, h) in incid
            got = point_in_object(inst.objects[p].coords, inst.objects[h])
            assert got == want


def test_congruent_balls_r5():
    inst = gen_congruent_balls_r5(2)
    G = build_graph(inst)
    assert len(cross_edges(G)) == 2**4
    assert find_k22(G, "bipartite_edges") is None
    assert inst.gen_spec["big_m"] > 0
    with pytest.raises(GraphError):
        gen_congruent_balls_r5(2, big_m=10.0)


def test_chazelle_canonical_boxes_one_point_each():
    inst = gen_chazelle_points_boxes(4, 2, 2)
    pts = [inst.objects[i] for i in inst.side(0)]
    boxes = [inst.objects[i] for i in inst.side(1)]
    assert len(pts) == 4 and len(boxes) == 12
    for box in boxes:
        inside = [p for p in pts if point_in_object(p.coords, box)]
        assert len(inside) == 1
    G = build_graph(inst)
    assert find_k22(G, "bipartite_edges") is None
    assert G.m == len(inst.ground_truth_edges)


def test_chazelle_larger_is_k22_free():
    inst = gen_chazelle_points_boxes(256, 2)
    G = build_graph(inst)
    assert find_k22(G, "bipartite_edges") is None


def test_chazelle_incidence_growth_is_superlinear():
    ratios = []
    for levels in (3, 5, 7, 9):
        n = 2**levels
        inst = gen_chazelle_points_boxes(n, 2, 2)
        npts = len(inst.side(0))
        ratios.append(len(inst.ground_truth_edges) / npts)
    assert all(b > a for a, b in zip(ratios, ratios[1:]))


def test_chazelle_rejects_bad_parameters():
    with pytest.raises(GraphError):
        gen_chazelle_points_boxes(10, 2, 2)  # not a power of b
    with pytest.raises(GraphError):
        gen_chazelle_points_boxes(8, 1, 2)


def test_bipartite_boxes_family():
    inst = gen_bipartite_boxes(16, 3)
    G = build_graph(inst)
    assert G.bipartite_strict
    assert G.m == len(inst.ground_truth_edges)
    assert find_k22(G, "bipartite_edges") is None


def test_hypercube_interval_examples():
    # red cube for x=3 against blue cube for s=[2,5] with M=100
    red = axis_box((-3, 3), (-3 + 100, 3 + 100))
    blue = axis_box((-2 - 100, 5 - 100), (-2, 5))
    assert intersects(red, blue)
    red6 = axis_box((-6, 6), (94, 106))
    assert not intersects(red6, blue)


def test_hypercubes_family_cross_matches_source():
    inst = gen_redblue_hypercubes(16, 4)
    G = build_graph(inst)
    assert len(cross_edges(G)) == len(inst.ground_truth_edges)
    assert find_k22(G, "bipartite_edges") is None
    with pytest.raises(GraphError):
        gen_redblue_hypercubes(16, 4, big_m=3)


def test_hypercubes_odd_dimension_padding():
    inst = gen_redblue_hypercubes(16, 5)
    assert inst.dim == 5
    G = build_graph(inst)
    assert len(cross_edges(G)) == len(inst.ground_truth_edges)


def test_projective_plane_fano():
    inst = gen_projective_plane_c4free(2)
    G = build_graph(inst)
    assert inst.n == 14 and G.m == 21
    assert find_k22(G, "bipartite_edges") is None
    inst3 = gen_projective_plane_c4free(3)
    G3 = build_graph(inst3)
    assert inst3.n == 26 and G3.m == 52
    assert find_k22(G3, "bipartite_edges") is None
    with pytest.raises(GraphError):
        gen_projective_plane_c4free(4)


@pytest.mark.parametrize("q", (2, 3))
def test_projective_vc_dimension_at_most_two(q):
    inst = gen_projective_plane_c4free(q)
    G = build_graph(inst)
    nbrs = [frozenset(G.adj[v]) for v in range(G.n)]
    for trio in itertools.combinations(range(G.n), 3):
        traces = {frozenset(t & set(trio)) for t in nbrs}
        if len(traces) == 8:
            pytest.fail(f"neighborhoods shatter {trio}")


def test_random_families_deterministic_and_scale_free():
    a = gen_random_balls(50, 2, 1.0, 7)
    b = gen_random_balls(50, 2, 1.0, 7)
    assert instance_to_json(a) == instance_to_json(b)
    assert gen_random_balls(0, 2, 1.0, 0).n == 0

    # scale-freeness: doubling all integer coordinates preserves the graph
    inst = gen_redblue_hypercubes(16, 4)
    G1 = build_graph(inst)
    scaled = Instance(
        name="scaled",
        dim=inst.dim,
        mode=inst.mode,
        objects=tuple(
            axis_box([3 * x for x in o.lo], [3 * x for x in o.hi])
            for o in inst.objects
        ),
        labels=inst.labels,
        graph_mode=inst.graph_mode,
    )
    G2 = build_graph(scaled)
    assert list(G1.edges()) == list(G2.edges())


def test_random_ball_density_matches_analytic_estimate():
    # mean degree ~ (n-1) * pi * (2r)^2 for small congruent balls in the
    # unit square (boundary effects within the tolerance)
    n = 2500
    degs = []
    r = None
    for seed in range(3):
        inst = gen_random_balls(n, 2, 1.0, seed)
        r = float(inst.objects[0].radius)
        G = build_graph(inst)
        degs.append(2 * G.m / n)
    got = sum(degs) / len(degs)
    want = (n - 1) * math.pi * (2 * r) ** 2
    assert abs(got - want) / want < 0.10


def test_random_bipartite_shape():
    inst = gen_random_bipartite(64, 1)
    G = build_graph(inst)
    assert G.bipartite_strict
    assert G.m == len(inst.ground_truth_edges)
