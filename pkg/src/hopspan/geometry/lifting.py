"""Lifting maps that turn ball intersection and point-line incidence into
point-in-halfspace membership, preserving the relation exactly on exact input.
"""

from __future__ import annotations

from fractions import Fraction

from .numbers import RATIONAL, dot
from .objects import BALL, GeometryError, GeomObject, halfspace, point

RED = "red"
BLUE = "blue"


def lift_ball_to_halfspace(b: GeomObject, side: str) -> GeomObject:
    """Lift a d-ball to R^(d+2): red balls become points, blue become halfspaces.

    A red ball with center x and radius y maps to the point
    (x_1, ..., x_d, y, |x|^2 - y^2).  A blue ball with center a and radius r
    maps to the halfspace  z - 2 a.x - 2 r y + |a|^2 - r^2 <= 0.  The lifted
    point lies in the lifted halfspace iff the two balls intersect
    (|x - a|^2 <= (y + r)^2), tangency included.
    """
    if b.kind != BALL:
        raise GeometryError("lift_ball_to_halfspace needs a ball")
    if b.mode != RATIONAL:
        raise GeometryError("lifting is defined in rational mode")
    c, r = b.center, b.radius
    if side == RED:
        z = dot(c, c) - r * r
        return point(tuple(c) + (r, z))
    if side == BLUE:
        coeffs = tuple(-2 * a for a in c) + (-2 * r, Fraction(1))
        offset = r * r - dot(c, c)
        return halfspace(coeffs, offset)
    raise GeometryError(f"side must be red or blue, got {side!r}")


def veronese_lift(p: GeomObject, line) -> tuple[GeomObject, GeomObject]:
    """Lift a planar point and a line y = a x + b to R^5.

    The point (x, y) maps to (x^2, xy, y^2, x, y); the line maps to the
    halfspace  a^2 k1 - 2a k2 + k3 + 2ab k4 - 2b k5 + b^2 <= 1/2.  Evaluating
    the lifted point gives (y - a x - b)^2, a nonnegative integer on integer
    input, so membership holds iff the point lies on the line.
    """
    if p.kind != "point" or p.dim != 2:
        raise GeometryError("veronese_lift needs a 2D point")
    if p.mode != RATIONAL:
        raise GeometryError("lifting is defined in rational mode")
    a, b = Fraction(line[0]), Fraction(line[1])
    x, y = p.coords
    lifted_pt = point((x * x, x * y, y * y, x, y))
    coeffs = (a * a, -2 * a, Fraction(1), 2 * a * b, -2 * b)
    offset = Fraction(1, 2) - b * b
    return lifted_pt, halfspace(coeffs, offset)
