"""Deterministic instance generators: the extremal lower-bound families,
a projective-plane C4-free graph, and seeded random families for benchmarks.

Every family with a planar incidence source attaches that source's edge set
as ground truth; build_graph must reproduce it exactly (rational mode) or
within the declared tolerance (float mode), so predicate bugs surface as
GroundTruthMismatch instead of corrupting experiments.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from .geometry import axis_box, ball, halfspace, point, segment, simplex
from .geometry.numbers import DEFAULT_EPS
from .graphcore import BIPARTITE_ONLY, FULL, GraphError, Instance


@dataclass(frozen=True)
class GenSpec:
    family: str
    k: int | None = None
    n: int | None = None
    q: int | None = None
    d: int | None = None
    b: int | None = None
    big_m: float | None = None
    seed: int | None = None
    density: float | None = None
    aspect: float | None = None
    note: str | None = None

    def to_dict(self):
        return {k: v for k, v in asdict(self).items() if v is not None}


# ------------------------------------------------------------ Erdos source


def _erdos_data(k: int):
    """Integer grid points, slope/intercept lines, and their incidences.

    Points [0,k) x [0,2k^2), lines y = a x + b with a in [0,k), b in [0,k^2).
    Every line meets exactly k points, giving k^4 incidences on 2k^3 points
    and k^3 lines, with no K_{2,2}.
    """
    if k < 1:
        raise GraphError("k must be >= 1")
    points = [(x, y) for x in range(k) for y in range(2 * k * k)]
    lines = [(a, b) for a in range(k) for b in range(k * k)]
    pindex = {p: i for i, p in enumerate(points)}
    incidences = []
    for li, (a, b) in enumerate(lines):
        for x in range(k):
            incidences.append((pindex[(x, a * x + b)], li))
    return points, lines, incidences


def gen_erdos_incidence(k: int) -> Instance:
    points, lines, inc = _erdos_data(k)
    objs = [point((x, y)) for x, y in points]
    np = len(objs)
    for a, b in lines:
        objs.append(segment((0, b), (k - 1, a * (k - 1) + b)))
    labels = [0] * np + [1] * len(lines)
    gt = tuple(sorted((p, np + li) for p, li in inc))
    return Instance(
        name=f"erdos_k{k}",
        dim=2,
        mode="rational",
        objects=tuple(objs),
        labels=tuple(labels),
        ground_truth_edges=gt,
        gen_spec=GenSpec("erdos", k=k).to_dict(),
        graph_mode=BIPARTITE_ONLY,
    )


def gen_thin_tetrahedra(k: int) -> Instance:
    """Planar incidences realized by thin vertical/horizontal 3D slivers."""
    points, lines, inc = _erdos_data(k)
    z_span = k**3 + 1
    objs = []
    for x, y in points:
        objs.append(simplex(((x, y, -z_span), (x, y, z_span))))
    np = len(objs)
    for i, (a, b) in enumerate(lines):
        h = i + 1
        objs.append(simplex(((0, b, h), (k - 1, a * (k - 1) + b, h))))
    labels = [0] * np + [1] * len(lines)
    gt = tuple(sorted((p, np + li) for p, li in inc))
    return Instance(
        name=f"thin_tetra_k{k}",
        dim=3,
        mode="rational",
        objects=tuple(objs),
        labels=tuple(labels),
        ground_truth_edges=gt,
        gen_spec=GenSpec("thin_tetra", k=k).to_dict(),
        graph_mode=FULL,
    )


def gen_touching_tetrahedra(k: int, big_m: float | None = None) -> Instance:
    """Congruent regular tetrahedra touching z=0 at the source points and
    clipped source segments; bodies live in opposite halfspaces."""
    points, lines, inc = _erdos_data(k)
    m_min = (k - 1) * math.sqrt(1.0 + (k - 1) ** 2) if k > 1 else 1.0
    if big_m is None:
        big_m = 2.0 ** math.ceil(math.log2(2.0 * max(m_min, 1.0)))
    if big_m < m_min:
        raise GraphError(f"M={big_m} below clipped-segment bound {m_min}")
    eps = DEFAULT_EPS
    h = big_m * math.sqrt(2.0 / 3.0)
    circ = big_m / math.sqrt(3.0)
    objs = []
    for x, y in points:
        vs = [(float(x), float(y), 0.0)]
        for j in range(3):
            th = 2.0 * math.pi * j / 3.0
            vs.append((x + circ * math.cos(th), y + circ * math.sin(th), h))
        objs.append(simplex(vs, mode="float", eps=eps))
    np_ = len(objs)
    for a, b in lines:
        norm = math.sqrt(1.0 + a * a)
        ux, uy = 1.0 / norm, a / norm
        cx = (k - 1) / 2.0
        cy = a * (k - 1) / 2.0 + b
        wx, wy = uy, -ux  # horizontal unit vector orthogonal to the edge
        zlow = -big_m / math.sqrt(2.0)
        vs = [
            (cx - big_m / 2 * ux, cy - big_m / 2 * uy, 0.0),
            (cx + big_m / 2 * ux, cy + big_m / 2 * uy, 0.0),
            (cx - big_m / 2 * wx, cy - big_m / 2 * wy, zlow),
            (cx + big_m / 2 * wx, cy + big_m / 2 * wy, zlow),
        ]
        objs.append(simplex(vs, mode="float", eps=eps))
    labels = [0] * np_ + [1] * len(lines)
    gt = tuple(sorted((p, np_ + li) for p, li in inc))
    return Instance(
        name=f"touching_tetra_k{k}",
        dim=3,
        mode="float",
        eps=eps,
        objects=tuple(objs),
        labels=tuple(labels),
        ground_truth_edges=gt,
        gen_spec=GenSpec("touching_tetra", k=k, big_m=big_m,
                         note=f"m_min={m_min:.3f}").to_dict(),
        graph_mode=FULL,
        fat=True,
    )


def _lifted_data(k: int):
    points, lines, inc = _erdos_data(k)
    lifted_pts = [
        (
            Fraction(x * x),
            Fraction(x * y),
            Fraction(y * y),
            Fraction(x),
            Fraction(y),
        )
        for x, y in points
    ]
    planes = []
    for a, b in lines:
        coeffs = (
            Fraction(a * a),
            Fraction(-2 * a),
            Fraction(1),
            Fraction(2 * a * b),
            Fraction(-2 * b),
        )
        offset = Fraction(1, 2) - Fraction(b * b)
        planes.append((coeffs, offset))
    return lifted_pts, planes, inc


def gen_halfspace_lift_r5(k: int) -> Instance:
    lifted_pts, planes, inc = _lifted_data(k)
    objs = [point(p) for p in lifted_pts]
    np_ = len(objs)
    objs += [halfspace(c, o) for c, o in planes]
    labels = [0] * np_ + [1] * len(planes)
    gt = tuple(sorted((p, np_ + li) for p, li in inc))
    return Instance(
        name=f"halfspace_lift_k{k}",
        dim=5,
        mode="rational",
        objects=tuple(objs),
        labels=tuple(labels),
        ground_truth_edges=gt,
        gen_spec=GenSpec("halfspace_lift", k=k).to_dict(),
        graph_mode=BIPARTITE_ONLY,
    )


def gen_congruent_balls_r5(k: int, big_m: float | None = None) -> Instance:
    """Red/blue congruent balls in R^5 realizing the lifted incidences.

    Each halfspace becomes a giant tangent ball of radius M; red balls of
    radius M/2 sit at the lifted points and blue balls of radius M/2 at the
    giant-ball centers.  Every pair's giant-ball membership is checked
    against the exact halfspace relation at generation time.
    """
    lifted_pts, planes, inc = _lifted_data(k)
    pts_f = [tuple(float(x) for x in p) for p in lifted_pts]
    inc_set = {(p, li) for p, li in inc}

    # lower bound on M so the giant ball and the halfspace agree on every pair
    need = 1.0
    feet = []
    for coeffs, offset in planes:
        cf = tuple(float(x) for x in coeffs)
        off = float(offset)
        n2 = sum(x * x for x in cf)
        nrm = math.sqrt(n2)
        foot = tuple(off / n2 * x for x in cf)
        feet.append((cf, off, nrm, foot))
    for p in pts_f:
        for cf, off, nrm, foot in feet:
            lat2 = sum((a - b) ** 2 for a, b in zip(p, foot))
            need = max(need, 2.0 * lat2 * nrm)
    if big_m is None:
        big_m = 2.0 ** math.ceil(math.log2(4.0 * need))
    eps = DEFAULT_EPS

    centers = []
    for cf, off, nrm, foot in feet:
        centers.append(tuple(f - big_m * c / nrm for f, c in zip(foot, cf)))
    for pi, p in enumerate(pts_f):
        for li, center in enumerate(centers):
            inside_ball = sum((a - b) ** 2 for a, b in zip(p, center)) <= big_m**2
            if inside_ball != ((pi, li) in inc_set):
                raise GraphError(
                    f"M={big_m} below bound: pair ({pi},{li}) disagrees"
                )
    objs = [ball(p, big_m / 2, mode="float", eps=eps) for p in pts_f]
    np_ = len(objs)
    objs += [ball(c, big_m / 2, mode="float", eps=eps) for c in centers]
    labels = [0] * np_ + [1] * len(centers)
    gt = tuple(sorted((p, np_ + li) for p, li in inc))
    return Instance(
        name=f"balls_r5_k{k}",
        dim=5,
        mode="float",
        eps=eps,
        objects=tuple(objs),
        labels=tuple(labels),
        ground_truth_edges=gt,
        gen_spec=GenSpec("balls_r5", k=k, big_m=big_m).to_dict(),
        graph_mode=FULL,
        congruent=True,
        fat=True,
    )


# -------------------------------------------------- digit-reversal family


def _digit_reverse(u: int, base: int, width: int) -> int:
    out = 0
    for _ in range(width):
        out = out * base + u % base
        u //= base
    return out


def _chazelle_source(levels: int, b: int, dims: int):
    """Point set (u, rev_b(u)) plus one aligned b-adic box per point and
    shape; every box contains exactly one point, so no two boxes share two.

    For dims == 1 the family degenerates to singleton boxes (used only as
    the seed of the hypercube construction in low dimension).
    """
    n = b**levels
    if dims == 1:
        pts = [(u,) for u in range(n)]
        boxes = [((u,), (u,)) for u in range(n)]
        inc = [(u, u) for u in range(n)]
        return pts, boxes, inc
    pts2 = [(u, _digit_reverse(u, b, levels)) for u in range(n)]
    pad = dims - 2
    span = b**levels
    pts = [p + (0,) * pad for p in pts2]
    boxes = []
    inc = []
    seen = {}
    for shape in range(levels + 1):
        sx = b**shape
        sy = b ** (levels - shape)
        for pi, (x, y) in enumerate(pts2):
            lo = (x // sx * sx, y // sy * sy) + (0,) * pad
            hi = (x // sx * sx + sx - 1, y // sy * sy + sy - 1) + (span,) * pad
            key = (lo, hi)
            bi = seen.get(key)
            if bi is None:
                bi = len(boxes)
                seen[key] = bi
                boxes.append((lo, hi))
            inc.append((pi, bi))
    return pts, boxes, sorted(set(inc))


def _pick_base(n: int) -> tuple[int, int]:
    """Largest base b <= ceil(log2 n) with n an exact power of b."""
    cap = max(2, math.ceil(math.log2(max(n, 2))))
    for b in range(cap, 1, -1):
        levels = max(1, round(math.log(n, b)))
        for lv in (levels - 1, levels, levels + 1):
            if lv >= 1 and b**lv == n:
                return b, lv
    raise GraphError(f"n={n} is not a power of any base up to {cap}")


def gen_chazelle_points_boxes(n: int, d: int = 2, b: int | None = None) -> Instance:
    if d < 2:
        raise GraphError("d must be >= 2")
    if b is None:
        b, levels = _pick_base(n)
    else:
        levels = max(1, round(math.log(n, b)))
    if b**levels != n:
        raise GraphError(f"n must be a power of b (got n={n}, b={b})")
    pts, boxes, inc = _chazelle_source(levels, b, d)
    objs = [point(p) for p in pts]
    np_ = len(objs)
    objs += [axis_box(lo, hi) for lo, hi in boxes]
    labels = [0] * np_ + [1] * len(boxes)
    gt = tuple(sorted((p, np_ + bi) for p, bi in inc))
    return Instance(
        name=f"chazelle_n{n}_d{d}_b{b}",
        dim=d,
        mode="rational",
        objects=tuple(objs),
        labels=tuple(labels),
        ground_truth_edges=gt,
        gen_spec=GenSpec("chazelle", n=n, d=d, b=b,
                         note=f"levels={levels}, incidences={len(inc)}").to_dict(),
        graph_mode=BIPARTITE_ONLY,
    )


def _source_for(n: int, dims: int):
    """Pick base and levels for a digit-reversal source of about n points."""
    b = max(2, math.ceil(math.log2(max(n, 2))))
    levels = max(1, int(math.log(max(n, b), b)))
    if dims >= 2:
        try:
            b, levels = _pick_base(n)
        except GraphError:
            pass
    return _chazelle_source(levels, b, dims), b, levels


def gen_bipartite_boxes(n: int, d: int = 3) -> Instance:
    """Thin vertical red boxes over source points, flat blue boxes per source
    box at distinct heights; strictly bipartite and C4-free."""
    if d < 3:
        raise GraphError("d must be >= 3")
    (pts, boxes, inc), b, levels = _source_for(n, d - 1)
    reach = 2 * (len(boxes) + b**levels + 2)
    objs = []
    for p in pts:
        objs.append(axis_box(p + (-reach,), p + (reach,)))
    np_ = len(objs)
    for i, (lo, hi) in enumerate(boxes):
        h = i + 1
        objs.append(axis_box(lo + (h,), hi + (h,)))
    labels = [0] * np_ + [1] * len(boxes)
    gt = tuple(sorted((p, np_ + bi) for p, bi in inc))
    return Instance(
        name=f"bipartite_boxes_n{n}_d{d}",
        dim=d,
        mode="rational",
        objects=tuple(objs),
        labels=tuple(labels),
        ground_truth_edges=gt,
        gen_spec=GenSpec("bipartite_boxes", n=n, d=d, b=b).to_dict(),
        graph_mode=FULL,
    )


def gen_redblue_hypercubes(n: int, d: int = 4, big_m: int | None = None) -> Instance:
    """Congruent axis-aligned hypercubes; red/blue intersection encodes the
    source point-in-box relation, same-side intersections are permitted."""
    if d < 2:
        raise GraphError("d must be >= 2")
    half = d // 2
    padded = d % 2 == 1
    (pts, boxes, inc), b, levels = _source_for(n, half)
    coord_range = b**levels + len(boxes) + 2
    if big_m is None:
        big_m = 4 * coord_range + 8
    if big_m <= 2 * coord_range:
        raise GraphError(f"M={big_m} too small for coordinate range {coord_range}")
    objs = []
    for p in pts:
        lo, hi = [], []
        for x in p:
            lo += [-x, x]
            hi += [-x + big_m, x + big_m]
        if padded:
            lo.append(0)
            hi.append(big_m)
        objs.append(axis_box(lo, hi))
    np_ = len(objs)
    for blo, bhi in boxes:
        lo, hi = [], []
        for a, bb in zip(blo, bhi):
            lo += [-a - big_m, bb - big_m]
            hi += [-a, bb]
        if padded:
            lo.append(0)
            hi.append(big_m)
        objs.append(axis_box(lo, hi))
    labels = [0] * np_ + [1] * len(boxes)
    gt = tuple(sorted((p, np_ + bi) for p, bi in inc))
    return Instance(
        name=f"hypercubes_n{n}_d{d}",
        dim=d,
        mode="rational",
        objects=tuple(objs),
        labels=tuple(labels),
        ground_truth_edges=gt,
        gen_spec=GenSpec("hypercubes", n=n, d=d, b=b, big_m=big_m).to_dict(),
        graph_mode=FULL,
        fat=True,
    )


# --------------------------------------------------------- abstract graphs


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def gen_projective_plane_c4free(q: int) -> Instance:
    """Point-line incidence graph of PG(2, q): C4-free with (q+1)(q^2+q+1)
    edges; its neighborhood set system has VC dimension at most 2."""
    if not _is_prime(q):
        raise GraphError("q must be prime")
    reps = [(1, a, b) for a in range(q) for b in range(q)]
    reps += [(0, 1, a) for a in range(q)]
    reps.append((0, 0, 1))
    m = len(reps)  # q^2 + q + 1
    edges = []
    for pi, p in enumerate(reps):
        for li, l in enumerate(reps):
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0:
                edges.append((pi, m + li))
    objs = [point((i,)) for i in range(2 * m)]
    labels = [0] * m + [1] * m
    return Instance(
        name=f"projective_q{q}",
        dim=1,
        mode="rational",
        objects=tuple(objs),
        labels=tuple(labels),
        ground_truth_edges=tuple(sorted(edges)),
        gen_spec=GenSpec("projective", q=q).to_dict(),
        abstract=True,
        graph_mode=BIPARTITE_ONLY,
    )


def gen_random_bipartite(n: int, seed: int = 0, coeff: float = 0.35) -> Instance:
    """Random bipartite graph with about coeff * n^{4/3} edges."""
    rng = random.Random(seed)
    half = n // 2
    target = min(int(coeff * n ** (4.0 / 3.0)), half * (n - half) // 2)
    edges = set()
    while len(edges) < target:
        u = rng.randrange(half)
        v = half + rng.randrange(n - half)
        edges.add((u, v))
    objs = [point((i,)) for i in range(n)]
    labels = [0] * half + [1] * (n - half)
    return Instance(
        name=f"random_bipartite_n{n}_s{seed}",
        dim=1,
        mode="rational",
        objects=tuple(objs),
        labels=tuple(labels),
        ground_truth_edges=tuple(sorted(edges)),
        gen_spec=GenSpec("random_bipartite", n=n, seed=seed).to_dict(),
        abstract=True,
        graph_mode=BIPARTITE_ONLY,
    )


# ----------------------------------------------------------- random fields


_GRID = 1 << 20


def _rand_frac(rng, lo=0.0, hi=1.0):
    return Fraction(rng.randrange(int(lo * _GRID), int(hi * _GRID) + 1), _GRID)


def gen_random_balls(n: int, d: int = 2, density: float = 1.0, seed: int = 0,
                     radius_law: str = "congruent") -> Instance:
    """Seeded congruent balls in the unit cube at the requested density
    (density = n * (2r)^d)."""
    rng = random.Random(seed)
    r = Fraction(max(1, round((density / max(n, 1)) ** (1.0 / d) / 2 * _GRID)), _GRID)
    objs = []
    for _ in range(n):
        c = tuple(_rand_frac(rng) for _ in range(d))
        ri = r
        if radius_law == "uniform":
            ri = r * Fraction(rng.randrange(_GRID // 2, _GRID), _GRID) * 2
        objs.append(ball(c, ri))
    return Instance(
        name=f"random_balls_n{n}_d{d}_s{seed}",
        dim=d,
        mode="rational",
        objects=tuple(objs),
        gen_spec=GenSpec("random_balls", n=n, d=d, seed=seed,
                         density=density).to_dict(),
        congruent=radius_law == "congruent",
        fat=True,
    )


def gen_random_boxes(n: int, d: int = 3, aspect: float = 1.0,
                     density: float = 1.0, seed: int = 0,
                     spread: float = 0.0) -> Instance:
    """Seeded axis-aligned boxes; aspect bounds the side ratio, spread > 0
    mixes in larger boxes (heavier intersection structure for benchmarks)."""
    rng = random.Random(seed)
    base = (density / max(n, 1)) ** (1.0 / d)
    objs = []
    for _ in range(n):
        c = [_rand_frac(rng) for _ in range(d)]
        mult = 1.0 + spread * rng.random() * 10.0
        sides = [
            Fraction(
                max(1, round(base * mult * rng.uniform(1.0 / aspect, 1.0) * _GRID)),
                2 * _GRID,
            )
            for _ in range(d)
        ]
        lo = tuple(x - s for x, s in zip(c, sides))
        hi = tuple(x + s for x, s in zip(c, sides))
        objs.append(axis_box(lo, hi))
    return Instance(
        name=f"random_boxes_n{n}_d{d}_s{seed}",
        dim=d,
        mode="rational",
        objects=tuple(objs),
        gen_spec=GenSpec("random_boxes", n=n, d=d, seed=seed, aspect=aspect,
                         density=density).to_dict(),
        congruent=aspect <= 4.0 and spread == 0.0,
        fat=aspect <= 4.0,
    )
