"""Alignment, shifting, centroid cells, and hitting-point construction."""

import math
import random
from fractions import Fraction

import pytest

from hopspan.geometry import (
    axis_box,
    ball,
    centroid_cell,
    is_c_aligned,
    point_in_object,
    quadtree_cell_of,
    shift_vectors,
    boundary_hitting_points,
    witness_ball,
)
from hopspan.geometry.quadtree import QuadtreeCell


@pytest.mark.parametrize("d", (1, 2, 3))
def test_unit_box_is_aligned_with_side_at_least_sqrt_d(d):
    cell = quadtree_cell_of(axis_box((0,) * d, (1,) * d), 1)
    assert cell is not None
    assert float(cell.side) ** 2 >= d


def test_straddling_box_is_not_aligned():
    box = axis_box((Fraction(3, 5),), (Fraction(7, 5),))
    assert quadtree_cell_of(box, 1) is None
    assert not is_c_aligned(box, 1)
    # candidate sides are the powers of two in [C*diam, 2*C*diam] = [0.8, 1.6],
    # so only side 1 qualifies, and its cells straddle the dyadic line at 1
    diam = Fraction(4, 5)
    candidates = [s for s in (Fraction(1, 2), 1, 2) if diam <= s <= 2 * diam]
    assert candidates == [1]
    lo = math.floor(Fraction(3, 5) / 1)
    assert not (lo <= Fraction(3, 5) and Fraction(7, 5) < lo + 1)


def test_every_square_pair_is_aligned_under_some_shift():
    d = 2
    rng = random.Random(11)
    cfg = shift_vectors(d, math.isqrt(2) + 1)  # unit squares, diameter sqrt(2)
    grid = 1 << 10
    for _ in range(400):
        boxes = []
        for _ in range(2):
            x = Fraction(rng.randrange(0, 64 * grid), grid)
            y = Fraction(rng.randrange(0, 64 * grid), grid)
            boxes.append(axis_box((x, y), (x + 1, y + 1)))
        ok = any(
            all(
                is_c_aligned(b.translate(tau), cfg.alignment_c) for b in boxes
            )
            for tau in cfg.shifts
        )
        assert ok


def test_centroid_of_single_object_is_its_cell():
    b = ball((4, 4), 1)
    cell = quadtree_cell_of(b, 6)
    assert centroid_cell([b], 6) == cell


def test_centroid_separates_two_clusters():
    objs = [ball((1 + Fraction(i, 8), 1), Fraction(1, 4)) for i in range(8)]
    objs += [ball((1001 + Fraction(i, 8), 1), Fraction(1, 4)) for i in range(8)]
    gamma = centroid_cell(objs, 6)  # postcondition asserted inside
    cells = [quadtree_cell_of(o, 6) for o in objs]
    inside = sum(1 for c in cells if gamma.contains_cell(c) and c != gamma)
    outside = sum(1 for c in cells if gamma.disjoint_cell(c))
    assert inside <= Fraction(4, 5) * len(objs)
    assert outside <= Fraction(4, 5) * len(objs)
    # one cluster sits entirely inside gamma, the other entirely clear of it
    assert {inside, outside} == {8}


def test_hitting_single_crossing_ball():
    gamma = QuadtreeCell((0, 0), 0)
    b = ball((Fraction(1, 2), Fraction(1, 2)), 2)
    pts, missed = boundary_hitting_points(gamma, [(0, b)], 6)
    assert not missed
    assert len(pts) == 1
    assert point_in_object(pts[0], b)


def test_hitting_balls_through_one_corner():
    gamma = QuadtreeCell((0, 0), 0)
    rng = random.Random(3)
    balls = []
    for i in range(24):
        cx = 1 + Fraction(rng.randint(0, 8), 8)
        cy = 1 + Fraction(rng.randint(0, 8), 8)
        r = Fraction(2) + Fraction(rng.randint(0, 4), 4)
        balls.append((i, ball((cx, cy), r)))
    pts, missed = boundary_hitting_points(gamma, balls, 6)
    assert not missed
    for i, b in balls:
        assert any(point_in_object(p, b) for p in pts)
    assert len(pts) <= 12


def test_hitting_grazing_huge_balls():
    gamma = QuadtreeCell((0, 0), 0)
    crossing = []
    for i in range(10):
        # huge balls whose boundaries pass close to the cell
        center = (Fraction(1000), Fraction(i - 5))
        crossing.append((i, ball(center, Fraction(999) + Fraction(i, 7))))
    pts, missed = boundary_hitting_points(gamma, crossing, 6)
    assert not missed
    for i, b in crossing:
        assert any(point_in_object(p, b) for p in pts)


def test_witness_ball_stays_inside_object():
    gamma = QuadtreeCell((0, 0), 0)
    rng = random.Random(9)
    for _ in range(60):
        cx = Fraction(rng.randint(-40, 40), 8)
        cy = Fraction(rng.randint(-40, 40), 8)
        r = Fraction(rng.randint(1, 40), 8)
        b = ball((cx, cy), r)
        out = witness_ball(b, gamma, 6)
        assert out is not None
        center, rad = out
        assert rad > 0
        d2 = sum((a - b_) ** 2 for a, b_ in zip(center, (cx, cy)))
        assert d2 <= (r - rad) ** 2 or r == rad
