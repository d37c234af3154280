"""The shifted-quadtree 2-hop builder for fat families."""

import random
from fractions import Fraction

import pytest

from hopspan.generators import (
    gen_random_balls,
    gen_random_boxes,
    gen_redblue_hypercubes,
)
from hopspan.geometry import ball
from hopspan.graphcore import Instance, build_graph, verify_spanner
from hopspan.spanners import BuildConfig, build_spanner


def test_disjoint_balls_give_empty_spanner():
    objs = tuple(ball((10 * i, 0), 1) for i in range(12))
    inst = Instance(name="disjoint", dim=2, mode="rational", objects=objs, fat=True)
    G = build_graph(inst)
    sp = build_spanner(inst, G, BuildConfig(t=2, builder="fat2"))
    assert sp.size == 0


def _pencil(n, seed):
    # congruent balls all containing the origin
    rng = random.Random(seed)
    objs = []
    for _ in range(n):
        cx = Fraction(rng.randint(-28, 28), 8)
        cy = Fraction(rng.randint(-28, 28), 8)
        objs.append(ball((cx, cy), 5))
    return Instance(name=f"pencil{n}", dim=2, mode="rational",
                    objects=tuple(objs), fat=True, congruent=True)


def test_balls_through_common_point_stay_linear():
    sizes = {}
    for n in (60, 120):
        inst = _pencil(n, 4)
        G = build_graph(inst)
        assert G.m == n * (n - 1) // 2
        sp = build_spanner(inst, G, BuildConfig(t=2, builder="fat2"))
        assert verify_spanner(G, sp, 2).ok
        sizes[n] = sp.size
    # the trace collapses the clique to one star
    assert sizes[60] <= 3 * 60
    assert sizes[120] <= 3 * 120
    assert sizes[120] <= 2.6 * sizes[60]


@pytest.mark.parametrize("seed", (0, 1, 2))
def test_fat2_random_squares(seed):
    inst = gen_random_boxes(512, 2, 1.0, 1.0, seed)
    G = build_graph(inst)
    sp = build_spanner(inst, G, BuildConfig(t=2, builder="fat2"))
    assert verify_spanner(G, sp, 2).ok
    assert sp.stats["fallback_edges"] == 0
    assert sp.stats["pair_fallbacks"] == 0
    assert sp.size <= 4 * 512**1.5


@pytest.mark.parametrize("seed", (0, 1))
def test_fat2_random_balls_d2_d3(seed):
    for d in (2, 3):
        inst = gen_random_balls(256, d, 2.0, seed)
        G = build_graph(inst)
        sp = build_spanner(inst, G, BuildConfig(t=2, builder="fat2"))
        assert verify_spanner(G, sp, 2).ok
        assert sp.stats["fallback_edges"] == 0


def test_fatbox2_random_squares():
    inst = gen_random_boxes(400, 2, 1.0, 2.0, 3)
    G = build_graph(inst)
    sp = build_spanner(inst, G, BuildConfig(t=2, builder="fatbox2"))
    assert verify_spanner(G, sp, 2).ok
    assert sp.stats["fallback_edges"] == 0


def test_fat2_on_hypercube_family():
    inst = gen_redblue_hypercubes(32, 4)
    G = build_graph(inst)
    for builder in ("fat2", "fatbox2"):
        sp = build_spanner(inst, G, BuildConfig(t=2, builder=builder))
        assert verify_spanner(G, sp, 2).ok


def test_fat2_deterministic():
    inst = gen_random_balls(200, 2, 1.5, 9)
    G = build_graph(inst)
    a = build_spanner(inst, G, BuildConfig(t=2, builder="fat2"))
    b = build_spanner(inst, G, BuildConfig(t=2, builder="fat2"))
    assert a.edges == b.edges
