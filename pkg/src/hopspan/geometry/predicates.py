"""Exact intersection predicates for every supported kind pair.

Closed-set semantics throughout: tangency counts as intersection.  In float
mode every comparison carries the shared tolerance of the two objects.

Simplex-style pairs (simplex, segment, point, and boxes tested against them)
go through a separating-axis test.  For full-dimensional inputs in d <= 3 the
classic axis set (face normals plus pairwise edge cross products) is complete.
For lower-dimensional inputs that set provably misses separations (two
coplanar segments, for instance), so degenerate pairs get an extended axis
set and, in rational mode, a final word from the exact LP feasibility test.
Pairs in d > 3 use the LP test directly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import lp
from .numbers import FLOAT, RATIONAL, cross3, dot, is_zero_vec, ratio, sub
from .objects import (
    AXIS_BOX,
    BALL,
    GeometryError,
    HALFSPACE,
    POINT,
    SEGMENT,
    SIMPLEX,
    GeomObject,
)

_POLY_KINDS = (SIMPLEX, SEGMENT, POINT, AXIS_BOX)


def _check_pair(a: GeomObject, b: GeomObject) -> float:
    if a.dim != b.dim:
        raise GeometryError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.mode != b.mode:
        raise GeometryError("mixed arithmetic modes")
    if a.mode == FLOAT and a.eps != b.eps:
        raise GeometryError("float objects must share one tolerance")
    return a.eps if a.mode == FLOAT else 0.0


def intersects(a: GeomObject, b: GeomObject) -> bool:
    """True iff the closed sets a and b meet.  Symmetric."""
    eps = _check_pair(a, b)
    ka, kb = a.kind, b.kind
    if (ka, kb) in _DISPATCH:
        return _DISPATCH[(ka, kb)](a, b, eps)
    if (kb, ka) in _DISPATCH:
        return _DISPATCH[(kb, ka)](b, a, eps)
    raise GeometryError(f"unsupported kind pair: {ka} vs {kb}")


def point_in_object(q, o: GeomObject, eps: float = None) -> bool:
    """Membership of a bare coordinate tuple in an object."""
    if eps is None:
        eps = o.eps if o.mode == FLOAT else 0.0
    k = o.kind
    if k == BALL:
        d2 = sum((x - c) ** 2 for x, c in zip(q, o.center))
        r = o.radius + eps if eps else o.radius
        return d2 <= r * r
    if k == AXIS_BOX:
        if eps:
            return all(
                a - eps <= x <= b + eps for x, a, b in zip(q, o.lo, o.hi)
            )
        return all(a <= x <= b for x, a, b in zip(q, o.lo, o.hi))
    if k == HALFSPACE:
        slack = eps * _norm_float(o.coeffs) if eps else 0
        return dot(o.coeffs, q) <= o.offset + slack
    if k == POINT:
        if eps:
            return sum((x - y) ** 2 for x, y in zip(q, o.coords)) <= eps * eps
        return tuple(q) == tuple(o.coords)
    if k == SEGMENT:
        return _point_on_segment(tuple(q), o, eps)
    if k == SIMPLEX:
        return _polytopes_meet((tuple(q),), o.corner_points(), o.dim, o.mode, eps)
    raise GeometryError(f"membership undefined for {k}")


def _point_on_segment(q, seg, eps):
    a, b = seg.vertices
    v = sub(b, a)
    w = sub(q, a)
    vv = dot(v, v)
    if eps:
        if vv == 0:
            return sum(x * x for x in w) <= eps * eps
        t = dot(w, v) / vv
        t = 0.0 if t < 0 else (1.0 if t > 1 else t)
        d2 = sum((wx - t * vx) ** 2 for wx, vx in zip(w, v))
        return d2 <= eps * eps
    if vv == 0:
        return all(x == 0 for x in w)
    # collinearity: every 2x2 minor of (v, w) vanishes
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if v[i] * w[j] != v[j] * w[i]:
                return False
    s = dot(w, v)
    return 0 <= s <= vv


# ----------------------------------------------------------- simple pairs


def _ball_ball(a, b, eps):
    d2 = sum((x - y) ** 2 for x, y in zip(a.center, b.center))
    r = a.radius + b.radius
    if eps:
        r = r + eps
    return d2 <= r * r


def _box_box(a, b, eps):
    if eps:
        return all(
            al <= bh + eps and bl <= ah + eps
            for al, ah, bl, bh in zip(a.lo, a.hi, b.lo, b.hi)
        )
    return all(
        al <= bh and bl <= ah
        for al, ah, bl, bh in zip(a.lo, a.hi, b.lo, b.hi)
    )


def _ball_box(a, b, eps):
    d2 = 0
    for c, lo, hi in zip(a.center, b.lo, b.hi):
        if c < lo:
            d2 += (lo - c) ** 2
        elif c > hi:
            d2 += (c - hi) ** 2
    r = a.radius + eps if eps else a.radius
    return d2 <= r * r


def _point_any(a, b, eps):
    return point_in_object(a.coords, b, eps)


def _point_seg(a, b, eps):
    return _point_on_segment(a.coords, b, eps)


def _point_point(a, b, eps):
    return point_in_object(a.coords, b, eps)


def _norm_float(v) -> float:
    return sum(float(x) * float(x) for x in v) ** 0.5


def _ball_halfspace(a, b, eps):
    # signed distance from center to the boundary hyperplane
    val = dot(b.coeffs, a.center) - b.offset
    if val <= 0:
        return True
    n2 = dot(b.coeffs, b.coeffs)
    r = a.radius + eps
    return val * val <= r * r * n2


def _box_halfspace(a, b, eps):
    lo = 0
    for c, x0, x1 in zip(b.coeffs, a.lo, a.hi):
        lo += c * x0 if c >= 0 else c * x1
    slack = eps * _norm_float(b.coeffs) if eps else 0
    return lo <= b.offset + slack


def _verts_halfspace(a, b, eps):
    slack = eps * _norm_float(b.coeffs) if eps else 0
    return any(dot(b.coeffs, v) <= b.offset + slack for v in a.vertices)


def _poly_poly(a, b, eps):
    va, vb = a.corner_points(), b.corner_points()
    if len(va) <= 2 and len(vb) <= 2 and not eps:
        return _segments_meet_exact(va, vb)
    if eps and a.dim == 3:
        # cheap sufficient test first: one centroid inside the other body
        if _centroid_inside(va, vb) or _centroid_inside(vb, va):
            return True
    return _polytopes_meet(va, vb, a.dim, a.mode, eps)


def _centroid_inside(va, vb) -> bool:
    if len(vb) != 4:
        return False
    c = tuple(sum(col) / len(va) for col in zip(*va))
    import itertools

    for tri in itertools.combinations(range(4), 3):
        i, j, k = tri
        opp = ({0, 1, 2, 3} - set(tri)).pop()
        n = cross3(sub(vb[j], vb[i]), sub(vb[k], vb[i]))
        side_o = dot(n, vb[opp]) - dot(n, vb[i])
        side_c = dot(n, c) - dot(n, vb[i])
        if side_o == 0:
            return False
        if side_o > 0 and side_c < 0:
            return False
        if side_o < 0 and side_c > 0:
            return False
    return True


def _segments_meet_exact(va, vb):
    """Exact rational segment/segment (or point) intersection in any dim."""
    p = va[0]
    u = sub(va[1], p) if len(va) == 2 else tuple(0 for _ in p)
    r = vb[0]
    v = sub(vb[1], r) if len(vb) == 2 else tuple(0 for _ in r)
    w = sub(r, p)
    uu, vv, uv = dot(u, u), dot(v, v), dot(u, v)
    det = uu * vv - uv * uv
    if det != 0:
        # independent directions: solve s*u - t*v = w via normal equations,
        # kept division-free so integer inputs stay in integer arithmetic
        wu, wv = dot(w, u), dot(w, v)
        num_s = wu * vv - wv * uv
        num_t = wu * uv - wv * uu
        if det > 0:
            if not (0 <= num_s <= det and 0 <= num_t <= det):
                return False
        else:
            if not (det <= num_s <= 0 and det <= num_t <= 0):
                return False
        return all(
            det * (p[i] - r[i]) + num_s * u[i] - num_t * v[i] == 0
            for i in range(len(p))
        )
    # parallel, degenerate, or point cases
    if uu == 0 and vv == 0:
        return all(x == 0 for x in w)
    if uu == 0:
        return _point_on_span(p, r, v, vv)
    if vv == 0:
        return _point_on_span(r, p, u, uu)
    # parallel lines: collinear iff w is a multiple of u
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if u[i] * w[j] != u[j] * w[i]:
                return False
    t0 = dot(w, u)
    t1 = t0 + uv  # projection of the far endpoint of b
    lo, hi = min(t0, t1), max(t0, t1)
    return lo <= uu and hi >= 0


def _point_on_span(q, base, direction, dd):
    w = sub(q, base)
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if direction[i] * w[j] != direction[j] * w[i]:
                return False
    s = dot(w, direction)
    return 0 <= s <= dd


def _segment_box(a, b, eps):
    """Exact parametric clip of a segment against an axis box."""
    p, q = a.vertices
    t0, t1 = 0, 1
    for i in range(a.dim):
        d = q[i] - p[i]
        blo = b.lo[i] - eps if eps else b.lo[i]
        bhi = b.hi[i] + eps if eps else b.hi[i]
        if d == 0:
            if p[i] < blo or p[i] > bhi:
                return False
            continue
        ta = ratio(blo - p[i], d)
        tb = ratio(bhi - p[i], d)
        if ta > tb:
            ta, tb = tb, ta
        if ta > t0:
            t0 = ta
        if tb < t1:
            t1 = tb
    return t0 <= t1


_DISPATCH = {
    (BALL, BALL): _ball_ball,
    (BALL, AXIS_BOX): _ball_box,
    (BALL, HALFSPACE): _ball_halfspace,
    (BALL, POINT): lambda a, b, e: point_in_object(b.coords, a, e),
    (AXIS_BOX, AXIS_BOX): _box_box,
    (AXIS_BOX, HALFSPACE): _box_halfspace,
    (POINT, POINT): _point_point,
    (POINT, HALFSPACE): _point_any,
    (POINT, AXIS_BOX): _point_any,
    (POINT, SIMPLEX): _point_any,
    (POINT, SEGMENT): _point_seg,
    (SIMPLEX, HALFSPACE): _verts_halfspace,
    (SEGMENT, HALFSPACE): _verts_halfspace,
    (SIMPLEX, SIMPLEX): _poly_poly,
    (SIMPLEX, SEGMENT): _poly_poly,
    (SEGMENT, SEGMENT): _poly_poly,
    (SIMPLEX, AXIS_BOX): _poly_poly,
    (SEGMENT, AXIS_BOX): _segment_box,
}


# ------------------------------------------------- separating-axis engine


@lru_cache(maxsize=65536)
def _poly_data(verts, mode):
    """Per-polytope axis ingredients: edge vectors, plane normals, affine rank."""
    vs = list(verts)
    edges = []
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            e = sub(vs[j], vs[i])
            if not is_zero_vec(e):
                edges.append(e)
    d = len(vs[0])
    normals = []
    if d == 3:
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                for k in range(j + 1, len(vs)):
                    n = cross3(sub(vs[j], vs[i]), sub(vs[k], vs[i]))
                    if not is_zero_vec(n):
                        normals.append(n)
    elif d == 2:
        normals = [(-e[1], e[0]) for e in edges]
    rank = _affine_rank(vs, mode)
    return tuple(edges), tuple(normals), rank


def _affine_rank(vs, mode):
    rows = [list(sub(v, vs[0])) for v in vs[1:]]
    if not rows:
        return 0
    if mode == RATIONAL:
        rows = [[Fraction(x) for x in r] for r in rows]
        tol = 0.0
    else:
        tol = 1e-12 * max(1.0, max(abs(float(x)) for r in rows for x in r))
    rank = 0
    cols = len(rows[0])
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, len(rows)):
            if abs(rows[i][c]) > tol:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        rank += 1
        r += 1
        if r == len(rows):
            break
    return rank


def _separated_on(axis, va, vb, eps):
    pa = [dot(axis, v) for v in va]
    pb = [dot(axis, v) for v in vb]
    if eps:
        nrm = _norm_float(axis)
        if nrm == 0:
            return False
        gap = eps * nrm
        return max(pa) < min(pb) - gap or max(pb) < min(pa) - gap
    return max(pa) < min(pb) or max(pb) < min(pa)


def _polytopes_meet(va, vb, d, mode, eps):
    if d == 1:
        alo, ahi = min(v[0] for v in va), max(v[0] for v in va)
        blo, bhi = min(v[0] for v in vb), max(v[0] for v in vb)
        if eps:
            return alo <= bhi + eps and blo <= ahi + eps
        return alo <= bhi and blo <= ahi
    if d > 3:
        if mode != RATIONAL:
            raise GeometryError("float polytope pairs supported only for d <= 3")
        return lp.polytopes_intersect(va, vb)

    ea, na, ra = _poly_data(tuple(va), mode)
    eb, nb, rb = _poly_data(tuple(vb), mode)
    full_dim = ra == d and rb == d

    axes = list(na) + list(nb)
    if d == 3:
        crosses = []
        for u in ea:
            for v in eb:
                w = cross3(u, v)
                if not is_zero_vec(w):
                    crosses.append(w)
        axes += crosses
    for w in axes:
        if _separated_on(w, va, vb, eps):
            return False
    if full_dim:
        return True

    # degenerate pair: the classic axis set can miss a separation
    extra = []
    if d == 3:
        for m in axes:
            for e in ea + eb:
                w = cross3(m, e)
                if not is_zero_vec(w):
                    extra.append(w)
    extra += [e for e in ea + eb]
    for p in va:
        for q in vb:
            w = sub(p, q)
            if not is_zero_vec(w):
                extra.append(w)
    for w in extra:
        if _separated_on(w, va, vb, eps):
            return False
    if mode == RATIONAL:
        return lp.polytopes_intersect(va, vb)
    return True
