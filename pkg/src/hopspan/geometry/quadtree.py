"""Dyadic cells, shifted-grid alignment, centroid cells, and hitting points.

Cells are half-open products [i/2^k, (i+1)/2^k); two cells are disjoint or
nested.  An object is aligned for constant C when the cell at the unique
level whose side falls in [C*diam, 2*C*diam] contains it (two levels qualify
when C*diam is itself a power of two).  The shift family is sized so that for
every pair of objects at least one shift aligns both; see shift_vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .numbers import FLOAT, RATIONAL, floor_div, half, pow2, ratio, smallest_pow2_geq, sqrt_lower
from .objects import (
    AXIS_BOX,
    BALL,
    GeometryError,
    POINT,
    SEGMENT,
    SIMPLEX,
    GeomObject,
    axis_box,
)
from .predicates import intersects, point_in_object


@dataclass(frozen=True)
class QuadtreeCell:
    indices: tuple
    level: int  # side length is exactly 2**(-level)

    @property
    def dim(self) -> int:
        return len(self.indices)

    @property
    def side(self) -> Fraction:
        return pow2(-self.level)

    def lo(self):
        s = self.side
        return tuple(i * s for i in self.indices)

    def hi(self):
        s = self.side
        return tuple((i + 1) * s for i in self.indices)

    def contains_cell(self, other: "QuadtreeCell") -> bool:
        shift = other.level - self.level
        if shift < 0:
            return False
        return all((o >> shift) == s for o, s in zip(other.indices, self.indices))

    def disjoint_cell(self, other: "QuadtreeCell") -> bool:
        return not (self.contains_cell(other) or other.contains_cell(self))

    def children(self):
        out = []
        for bits in range(1 << self.dim):
            idx = tuple(
                2 * v + ((bits >> axis) & 1) for axis, v in enumerate(self.indices)
            )
            out.append(QuadtreeCell(idx, self.level + 1))
        return out

    def contains_object(self, o: GeomObject) -> bool:
        """Half-open containment of the (closed, bounded) object."""
        bb = o.bbox()
        if bb is None:
            raise GeometryError("unbounded object")
        s = self.side
        sf = float(s) if o.mode == FLOAT else s
        for i, (a, b) in enumerate(zip(*bb)):
            lo_i = self.indices[i] * sf
            if a < lo_i or b >= lo_i + sf:
                return False
        return True

    def closed_box(self, mode=RATIONAL, eps=0.0) -> GeomObject:
        lo, hi = self.lo(), self.hi()
        if mode == FLOAT:
            lo = tuple(float(x) for x in lo)
            hi = tuple(float(x) for x in hi)
        return axis_box(lo, hi, mode=mode, eps=eps)

    def meets_closure(self, o: GeomObject) -> bool:
        """Does the object meet the closed cell (boundary included)?"""
        return intersects(o, self.closed_box(mode=o.mode, eps=o.eps))


@dataclass(frozen=True)
class ShiftConfig:
    dim: int
    alignment_c: Fraction  # C
    scale: Fraction  # power of two, >= every alignment-cell side
    shifts: tuple  # s = 2d+1 diagonal shift vectors


def shift_vectors(d: int, diameter_bound, c=None) -> ShiftConfig:
    """Shift family under which every object pair is somewhere aligned.

    C = 2(d+1) and s = 2d+1 shifts tau_j = (j/s) * scale * (1,...,1) with
    scale a power of two at least 2*C*diameter_bound.  At any single level
    the shifts reduce mod the cell side to s evenly spaced offsets (the side
    divides scale and s is odd), each axis can ruin at most one shift per
    object, so a pair ruins at most 2d of the 2d+1 shifts.
    """
    if d < 1:
        raise GeometryError("dimension must be positive")
    c = Fraction(c) if c is not None else Fraction(2 * (d + 1))
    s = 2 * d + 1
    db = Fraction(diameter_bound) if diameter_bound > 0 else Fraction(1)
    scale = pow2(smallest_pow2_geq(2 * c * db))
    shifts = tuple(
        tuple(Fraction(j, s) * scale for _ in range(d)) for j in range(s)
    )
    return ShiftConfig(d, c, scale, shifts)


def _candidate_levels(o: GeomObject, c) -> list[int]:
    """Levels whose side is a power of two in [C*diam, 2*C*diam]."""
    d2 = o.diam2()
    if d2 == 0:
        return [0]
    if o.mode == FLOAT:
        target2 = float(c) * float(c) * float(d2)
        e = math.ceil(math.log2(target2) / 2.0)
        while (2.0**e) ** 2 < target2:
            e += 1
        while (2.0 ** (e - 1)) ** 2 >= target2:
            e -= 1
        levels = [-e]
        if (2.0 ** (e + 1)) ** 2 <= 4.0 * target2:
            levels.append(-(e + 1))
        return levels
    cc = Fraction(c)
    target2 = cc * cc * Fraction(d2)
    e = smallest_pow2_geq(sqrt_lower(target2) if target2 > 0 else Fraction(1))
    while pow2(2 * e) < target2:
        e += 1
    while pow2(2 * (e - 1)) >= target2:
        e -= 1
    levels = [-e]
    if pow2(2 * (e + 1)) <= 4 * target2:  # side 2^(e+1) <= 2*C*diam
        levels.append(-(e + 1))
    return levels


def quadtree_cell_of(o: GeomObject, c) -> QuadtreeCell | None:
    """Smallest admissible cell containing o, or None when o is not aligned."""
    if not o.is_bounded:
        raise GeometryError("unbounded object cannot be aligned")
    bb = o.bbox()
    for level in _candidate_levels(o, c):
        side = pow2(-level)
        sidev = float(side) if o.mode == FLOAT else side
        idx = tuple(floor_div(a, sidev) for a in bb[0])
        cell = QuadtreeCell(idx, level)
        if cell.contains_object(o):
            return cell
    return None


def is_c_aligned(o: GeomObject, c) -> bool:
    return quadtree_cell_of(o, c) is not None


ALPHA_NUM = lambda d: Fraction(1 << d, (1 << d) + 1)  # noqa: E731


def centroid_cell(objects, c, cells=None) -> QuadtreeCell:
    """Cell splitting the set so neither side of the recursion stays heavy.

    Returns a cell gamma with at most alpha*n aligned cells strictly inside
    and at most alpha*n aligned cells disjoint from it, alpha = 2^d/(2^d+1).
    Descends from a root cell toward the child with the heaviest subtree
    until the strict-subtree count drops to alpha*n.  Requires nonnegative
    coordinates so that a single root cell exists.
    """
    if not objects:
        raise GeometryError("empty input")
    d = objects[0].dim
    if cells is None:
        cells = []
        for o in objects:
            cell = quadtree_cell_of(o, c)
            if cell is None:
                raise GeometryError("objects must be aligned")
            cells.append(cell)
    n = len(cells)
    if any(i < 0 for cell in cells for i in cell.indices):
        raise GeometryError("centroid descent needs nonnegative coordinates")

    top = max((i + 1) * cell.side for cell in cells for i in cell.indices)
    k = smallest_pow2_geq(top)
    gamma = QuadtreeCell((0,) * d, -k)
    alpha_n = ALPHA_NUM(d) * n

    def strict_inside(g):
        return sum(1 for cell in cells if g.contains_cell(cell) and cell != g)

    while strict_inside(gamma) > alpha_n:
        best = None
        best_w = -1
        for child in gamma.children():
            w = sum(1 for cell in cells if child.contains_cell(cell))
            if w > best_w:
                best_w = w
                best = child
        gamma = best

    inside = strict_inside(gamma)
    outside = sum(1 for cell in cells if gamma.disjoint_cell(cell) and cell != gamma)
    assert inside <= alpha_n and outside <= alpha_n, "centroid balance violated"
    return gamma


def _ceil_sqrt_int(d: int) -> int:
    s = math.isqrt(d)
    return s if s * s == d else s + 1


def witness_ball(o: GeomObject, gamma: QuadtreeCell, c):
    """(center, radius) of a ball inside o, pulled toward the cell, or None.

    The radius is at least rho * min(diam(o), side(gamma)) for the shape
    family constant rho = 1/(4*ceil(sqrt(d))); shapes without a computable
    inscribed ball (degenerate simplices, segments) return None.
    """
    d = o.dim
    ell = gamma.side
    is_float = o.mode == FLOAT
    ellv = float(ell) if is_float else ell
    rho = 1.0 / (4 * _ceil_sqrt_int(d)) if is_float else Fraction(1, 4 * _ceil_sqrt_int(d))
    cap = rho * ellv
    glo, ghi = gamma.lo(), gamma.hi()
    if is_float:
        glo = tuple(float(x) for x in glo)
        ghi = tuple(float(x) for x in ghi)

    if o.kind == BALL:
        r = o.radius
        rw = min(r, cap)
        target = tuple(min(max(x, a), b) for x, a, b in zip(o.center, glo, ghi))
        d2 = sum((x - y) ** 2 for x, y in zip(o.center, target))
        slack = r - rw
        if d2 <= slack * slack:
            return target, rw
        dist_ub = d2**0.5 if is_float else (
            Fraction(math.isqrt(d2.numerator * d2.denominator) + 1, d2.denominator)
            if isinstance(d2, Fraction)
            else Fraction(math.isqrt(int(d2)) + 1)
        )
        t = slack / dist_ub
        center = tuple(x + t * (y - x) for x, y in zip(o.center, target))
        return center, rw
    if o.kind == AXIS_BOX:
        short = min(b - a for a, b in zip(o.lo, o.hi))
        rw = min(half(short), cap)
        if rw <= 0:
            return None
        mid = tuple((a + b) / 2 for a, b in zip(glo, ghi))
        center = tuple(
            min(max(m, a + rw), b - rw) for m, a, b in zip(mid, o.lo, o.hi)
        )
        return center, rw
    if o.kind in (SIMPLEX, SEGMENT):
        vs = o.vertices
        if len(vs) < d + 1:
            return None
        centroid = tuple(ratio(sum(col), len(vs)) for col in zip(*vs))
        best2 = None
        import itertools

        from .numbers import cross3, dot, sub

        if d == 3:
            for tri in itertools.combinations(range(len(vs)), 3):
                i, j, k = tri
                nvec = cross3(sub(vs[j], vs[i]), sub(vs[k], vs[i]))
                n2 = dot(nvec, nvec)
                if n2 == 0:
                    return None
                val = dot(nvec, centroid) - dot(nvec, vs[i])
                dist2 = ratio(val * val, n2)
                if best2 is None or dist2 < best2:
                    best2 = dist2
        elif d == 2:
            for i in range(len(vs)):
                for j in range(i + 1, len(vs)):
                    e = sub(vs[j], vs[i])
                    nvec = (-e[1], e[0])
                    n2 = dot(nvec, nvec)
                    if n2 == 0:
                        return None
                    val = dot(nvec, centroid) - dot(nvec, vs[i])
                    dist2 = ratio(val * val, n2)
                    if best2 is None or dist2 < best2:
                        best2 = dist2
        else:
            return None
        if best2 is None or best2 == 0:
            return None
        rad = best2**0.5 if is_float else sqrt_lower(Fraction(best2))
        if rad <= 0:
            return None
        return centroid, min(rad, cap)
    if o.kind == POINT:
        return None
    raise GeometryError(f"no witness kernel for {o.kind}")


def boundary_hitting_points(gamma: QuadtreeCell, crossing, c):
    """Points hitting the objects charged to the cell gamma.

    crossing: list of (id, GeomObject).  Returns (points, missed_ids) where
    every object outside missed_ids contains at least one returned point.
    Witness centers are snapped to a grid fine enough that the snapped point
    stays inside the witness ball; a greedy pass then drops redundant points.
    """
    if not crossing:
        return [], []
    d = gamma.dim
    cs = _ceil_sqrt_int(d)
    mode_float = crossing[0][1].mode == FLOAT
    ell = float(gamma.side) if mode_float else gamma.side
    cc = float(c) if mode_float else Fraction(c)
    g = ell / (8 * cc * cs * cs)
    max_err2 = (g * cs / 2) ** 2

    candidates = {}  # grid key -> snapped point
    holders = {}  # id -> snapped point for its own witness
    missed = []
    for oid, obj in sorted(crossing, key=lambda t: t[0]):
        wit = witness_ball(obj, gamma, cc)
        snapped = None
        if wit is not None:
            center, rad = wit
            if rad * rad >= max_err2:
                key = tuple(floor_div(x, g) for x in center)
                pt = tuple((k * g) + g / 2 for k in key)
                if point_in_object(pt, obj):
                    snapped = pt
                    if key not in candidates:
                        candidates[key] = pt
        if snapped is None:
            missed.append(oid)
        else:
            holders[oid] = snapped

    live = [(oid, obj) for oid, obj in crossing if oid in holders]
    order = {oid: i for i, (oid, _) in enumerate(live)}
    fbox = {}
    for oid, obj in live:
        bb = obj.bbox()
        fbox[oid] = (
            tuple(math.nextafter(float(x), -math.inf) for x in bb[0]),
            tuple(math.nextafter(float(x), math.inf) for x in bb[1]),
        )
    hit_sets = {}
    for key in sorted(candidates):
        pt = candidates[key]
        ptf = tuple(float(x) for x in pt)
        mask = 0
        for oid, obj in live:
            lo, hi = fbox[oid]
            if all(a <= x <= b for x, a, b in zip(ptf, lo, hi)) and point_in_object(
                pt, obj
            ):
                mask |= 1 << order[oid]
        if mask:
            hit_sets[key] = mask
    # greedy max-coverage keeps the point set near-minimal
    chosen = []
    covered = 0
    goal = (1 << len(live)) - 1 if live else 0
    while covered != goal and hit_sets:
        best_key = None
        best_gain = 0
        for key in sorted(hit_sets):
            gain = (hit_sets[key] & ~covered).bit_count()
            if gain > best_gain:
                best_gain = gain
                best_key = key
        if best_key is None:
            break
        chosen.append(candidates[best_key])
        covered |= hit_sets.pop(best_key)
    # safety net: anything somehow left gets its own witness point
    for oid, _ in live:
        if not (covered >> order[oid]) & 1:
            chosen.append(holders[oid])
    return chosen, missed
