"""Geometric objects: the vertex payload of every intersection graph.

A ``GeomObject`` is immutable.  Coordinates are Fractions in rational mode
and floats in float mode; the mode and (for floats) the comparison tolerance
travel with the object.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .numbers import DEFAULT_EPS, FLOAT, RATIONAL, dist2, sqrt_upper

BALL = "ball"
AXIS_BOX = "axis_box"
SIMPLEX = "simplex"
HALFSPACE = "halfspace"
POINT = "point"
SEGMENT = "segment"

KINDS = (BALL, AXIS_BOX, SIMPLEX, HALFSPACE, POINT, SEGMENT)


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class GeomObject:
    kind: str
    dim: int
    mode: str = RATIONAL
    eps: float = 0.0
    center: tuple = None
    radius: object = None
    lo: tuple = None
    hi: tuple = None
    vertices: tuple = None  # simplex / segment
    coeffs: tuple = None  # halfspace: coeffs . x <= offset
    offset: object = None
    coords: tuple = None  # point

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GeometryError(f"unknown kind {self.kind!r}")
        if self.dim < 1:
            raise GeometryError("dimension must be positive")
        if self.mode not in (RATIONAL, FLOAT):
            raise GeometryError(f"unknown mode {self.mode!r}")
        if self.mode == FLOAT and self.eps <= 0:
            object.__setattr__(self, "eps", DEFAULT_EPS)
        d = self.dim
        if self.kind == BALL:
            if len(self.center) != d or self.radius < 0:
                raise GeometryError("ball needs center of length d and radius >= 0")
        elif self.kind == AXIS_BOX:
            if len(self.lo) != d or len(self.hi) != d:
                raise GeometryError("box corners must have length d")
            if any(a > b for a, b in zip(self.lo, self.hi)):
                raise GeometryError("box needs lo <= hi componentwise")
        elif self.kind in (SIMPLEX, SEGMENT):
            vs = self.vertices
            if not vs or any(len(v) != d for v in vs):
                raise GeometryError("vertices must all have length d")
            if self.kind == SIMPLEX and len(vs) > d + 1:
                raise GeometryError("a simplex has at most d+1 vertices")
            if self.kind == SEGMENT and len(vs) != 2:
                raise GeometryError("a segment has exactly 2 endpoints")
        elif self.kind == HALFSPACE:
            if len(self.coeffs) != d:
                raise GeometryError("halfspace coefficients must have length d")
            if all(c == 0 for c in self.coeffs):
                raise GeometryError("halfspace coefficient vector is zero")
        elif self.kind == POINT:
            if len(self.coords) != d:
                raise GeometryError("point coordinates must have length d")

    # -------------------------------------------------- structural helpers

    @property
    def is_bounded(self) -> bool:
        return self.kind != HALFSPACE

    def corner_points(self) -> tuple:
        """Vertex set for polytope-style tests (not defined for balls/halfspaces)."""
        if self.kind == POINT:
            return (self.coords,)
        if self.kind in (SIMPLEX, SEGMENT):
            return tuple(self.vertices)
        if self.kind == AXIS_BOX:
            pts = [()]
            for a, b in zip(self.lo, self.hi):
                nxt = []
                for p in pts:
                    nxt.append(p + (a,))
                    if b != a:
                        nxt.append(p + (b,))
                pts = nxt
            return tuple(pts)
        raise GeometryError(f"no corner points for {self.kind}")

    def bbox(self):
        """(lo, hi) tuples of the bounding box; None for unbounded objects."""
        if self.kind == HALFSPACE:
            return None
        if self.kind == BALL:
            r = self.radius
            return (
                tuple(c - r for c in self.center),
                tuple(c + r for c in self.center),
            )
        if self.kind == AXIS_BOX:
            return (self.lo, self.hi)
        if self.kind == POINT:
            return (self.coords, self.coords)
        vs = self.vertices
        lo = tuple(min(v[i] for v in vs) for i in range(self.dim))
        hi = tuple(max(v[i] for v in vs) for i in range(self.dim))
        return (lo, hi)

    def diam2(self):
        """Squared Euclidean diameter (exact in rational mode)."""
        if self.kind == HALFSPACE:
            raise GeometryError("unbounded object has no diameter")
        if self.kind == BALL:
            return (2 * self.radius) ** 2
        if self.kind == POINT:
            return 0
        if self.kind == AXIS_BOX:
            return sum((b - a) ** 2 for a, b in zip(self.lo, self.hi))
        vs = self.vertices
        best = 0
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                d2 = dist2(vs[i], vs[j])
                if d2 > best:
                    best = d2
        return best

    def diam_upper(self):
        """Rational (or float) upper bound on the diameter."""
        d2 = self.diam2()
        if self.mode == RATIONAL:
            return sqrt_upper(Fraction(d2))
        return d2**0.5

    def translate(self, vec) -> "GeomObject":
        if len(vec) != self.dim:
            raise GeometryError("translation vector has wrong length")
        k = self.kind
        if k == BALL:
            return ball(tuple(c + t for c, t in zip(self.center, vec)), self.radius,
                        mode=self.mode, eps=self.eps)
        if k == AXIS_BOX:
            return axis_box(tuple(a + t for a, t in zip(self.lo, vec)),
                            tuple(b + t for b, t in zip(self.hi, vec)),
                            mode=self.mode, eps=self.eps)
        if k == POINT:
            return point(tuple(c + t for c, t in zip(self.coords, vec)),
                         mode=self.mode, eps=self.eps)
        if k in (SIMPLEX, SEGMENT):
            vs = tuple(tuple(c + t for c, t in zip(v, vec)) for v in self.vertices)
            if k == SEGMENT:
                return segment(vs[0], vs[1], mode=self.mode, eps=self.eps)
            return simplex(vs, mode=self.mode, eps=self.eps)
        raise GeometryError("cannot translate an unbounded object")


def _norm1(v, mode):
    """Rational mode keeps exact values, preferring plain ints (they are
    exact and far faster than Fractions in the hot predicates)."""
    if mode != RATIONAL:
        return float(v)
    if isinstance(v, int):
        return v
    f = Fraction(v)
    return f.numerator if f.denominator == 1 else f


def _norm(vals, mode):
    return tuple(_norm1(v, mode) for v in vals)


def ball(center, radius, mode=RATIONAL, eps=0.0) -> GeomObject:
    return GeomObject(BALL, len(center), mode, eps,
                      center=_norm(center, mode), radius=_norm1(radius, mode))


def axis_box(lo, hi, mode=RATIONAL, eps=0.0) -> GeomObject:
    return GeomObject(AXIS_BOX, len(lo), mode, eps,
                      lo=_norm(lo, mode), hi=_norm(hi, mode))


def simplex(vertices, mode=RATIONAL, eps=0.0) -> GeomObject:
    vs = tuple(_norm(v, mode) for v in vertices)
    return GeomObject(SIMPLEX, len(vs[0]), mode, eps, vertices=vs)


def segment(a, b, mode=RATIONAL, eps=0.0) -> GeomObject:
    return GeomObject(SEGMENT, len(a), mode, eps,
                      vertices=(_norm(a, mode), _norm(b, mode)))


def halfspace(coeffs, offset, mode=RATIONAL, eps=0.0) -> GeomObject:
    return GeomObject(HALFSPACE, len(coeffs), mode, eps,
                      coeffs=_norm(coeffs, mode), offset=_norm1(offset, mode))


def point(coords, mode=RATIONAL, eps=0.0) -> GeomObject:
    return GeomObject(POINT, len(coords), mode, eps, coords=_norm(coords, mode))
