"""Pluggable point-partition oracles standing in for polynomial partitioning.

Both oracles split a point set into cells and classify every region against
every cell as disjoint / containing / crossing.  Classification is sound
(disjoint really means no cell point can touch the region, containing really
means every cell point is inside) but claims no crossing-number bound; the
recursion using it stays correct and the resulting sizes are measured, not
guaranteed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..geometry import GeomObject, axis_box, intersects
from ..geometry.numbers import ratio
from ..geometry.objects import AXIS_BOX, BALL, HALFSPACE, POINT, SEGMENT, SIMPLEX

DISJOINT = "disjoint"
CONTAINS = "contains"
CROSSING = "crossing"


@dataclass
class Cell:
    point_ids: list
    lo: tuple  # entries may be None (unbounded side)
    hi: tuple
    crossing: list = field(default_factory=list)
    containing: list = field(default_factory=list)


@dataclass
class PartitionResult:
    cells: list


def _clip(lo, hi, blo, bhi):
    clo = tuple(b if a is None else max(a, b) for a, b in zip(lo, blo))
    chi = tuple(b if a is None else min(a, b) for a, b in zip(hi, bhi))
    return clo, chi


def classify_region_vs_box(region: GeomObject, lo, hi) -> str:
    """Relation of a region to a closed box with finite bounds."""
    k = region.kind
    if k == HALFSPACE:
        lo_val = 0
        hi_val = 0
        for c, a, b in zip(region.coeffs, lo, hi):
            lo_val += c * a if c >= 0 else c * b
            hi_val += c * b if c >= 0 else c * a
        if lo_val > region.offset:
            return DISJOINT
        if hi_val <= region.offset:
            return CONTAINS
        return CROSSING
    if k == BALL:
        near2 = 0
        far2 = 0
        for c, a, b in zip(region.center, lo, hi):
            if c < a:
                near2 += (a - c) ** 2
            elif c > b:
                near2 += (c - b) ** 2
            far2 += max((c - a) ** 2, (b - c) ** 2)
        r2 = region.radius**2
        if near2 > r2:
            return DISJOINT
        if far2 <= r2:
            return CONTAINS
        return CROSSING
    if k == AXIS_BOX:
        if any(rb < a or ra > b for ra, rb, a, b in zip(region.lo, region.hi, lo, hi)):
            return DISJOINT
        if all(ra <= a and b <= rb for ra, rb, a, b in zip(region.lo, region.hi, lo, hi)):
            return CONTAINS
        return CROSSING
    if k in (SEGMENT, SIMPLEX, POINT):
        box = axis_box(lo, hi, mode=region.mode, eps=region.eps)
        if not intersects(region, box):
            return DISJOINT
        return CROSSING  # lower-dimensional regions never contain a box
    raise ValueError(f"cannot classify region kind {k}")


def kd_partition(points, target_cells: int, bounds=None) -> list[Cell]:
    """Median kd-split into roughly target_cells balanced cells."""
    if not points:
        return []
    d = len(points[0][1])
    depth = 0
    want = max(1, target_cells)
    while (1 << depth) < want:
        depth += 1
    if bounds is None:
        lo = tuple(None for _ in range(d))
        hi = tuple(None for _ in range(d))
    else:
        lo, hi = bounds
    out = []

    def rec(pts, lo, hi, lvl):
        if lvl == depth or len(pts) <= 1:
            out.append(Cell([pid for pid, _ in pts], lo, hi))
            return
        axis = lvl % d
        pts = sorted(pts, key=lambda t: (t[1][axis], t[0]))
        mid = len(pts) // 2
        cut = pts[mid][1][axis]
        left = [p for p in pts if p[1][axis] < cut]
        right = [p for p in pts if p[1][axis] >= cut]
        if not left or not right:
            out.append(Cell([pid for pid, _ in pts], lo, hi))
            return
        llo, lhi = lo, tuple(cut if i == axis else v for i, v in enumerate(hi))
        rlo, rhi = tuple(cut if i == axis else v for i, v in enumerate(lo)), hi
        rec(left, llo, lhi, lvl + 1)
        rec(right, rlo, rhi, lvl + 1)

    rec(list(points), lo, hi, 0)
    return out


def grid_partition(points, r: int, bounds=None) -> list[Cell]:
    """Uniform r-per-axis grid over the point bounding box."""
    if not points:
        return []
    d = len(points[0][1])
    los = [min(p[1][i] for p in points) for i in range(d)]
    his = [max(p[1][i] for p in points) for i in range(d)]
    steps = [ratio(b - a, r) if b > a else 1 for a, b in zip(los, his)]
    buckets = {}
    for pid, coords in points:
        key = tuple(
            min(int((c - a) // s), r - 1) for c, a, s in zip(coords, los, steps)
        )
        buckets.setdefault(key, []).append(pid)
    cells = []
    for key in sorted(buckets):
        lo = tuple(a + k * s for a, k, s in zip(los, key, steps))
        hi = tuple(a + (k + 1) * s for a, k, s in zip(los, key, steps))
        cells.append(Cell(sorted(buckets[key]), lo, hi))
    return cells


ORACLES = {"kd": kd_partition, "grid": grid_partition}


def partition_and_classify(points, regions, oracle: str, r: int) -> PartitionResult:
    """Split points, then tag every region per cell.

    points: (id, coords) pairs.  regions: (id, GeomObject) pairs.  Cells are
    clipped to the bounding box of their own points before classification, so
    the disjoint/contains verdicts are sound even on unbounded kd cells.
    """
    if not points:
        return PartitionResult([])
    d = len(points[0][1])
    if oracle == "kd":
        target = min(r**d, max(2, len(points) // 4))
        cells = kd_partition(points, target)
    else:
        cells = grid_partition(points, r)
    coords = dict(points)
    for cell in cells:
        if not cell.point_ids:
            continue
        pts = [coords[pid] for pid in cell.point_ids]
        blo = tuple(min(p[i] for p in pts) for i in range(d))
        bhi = tuple(max(p[i] for p in pts) for i in range(d))
        clo, chi = _clip(cell.lo, cell.hi, blo, bhi)
        for rid, region in regions:
            rel = classify_region_vs_box(region, clo, chi)
            if rel == CROSSING:
                cell.crossing.append(rid)
            elif rel == CONTAINS:
                cell.containing.append(rid)
    return PartitionResult([c for c in cells if c.point_ids])
