from .numbers import DEFAULT_EPS, FLOAT, RATIONAL
from .objects import (
    AXIS_BOX,
    BALL,
    HALFSPACE,
    POINT,
    SEGMENT,
    SIMPLEX,
    GeometryError,
    GeomObject,
    axis_box,
    ball,
    halfspace,
    point,
    segment,
    simplex,
)
from .predicates import intersects, point_in_object
from .lifting import BLUE, RED, lift_ball_to_halfspace, veronese_lift
from .quadtree import (
    QuadtreeCell,
    ShiftConfig,
    boundary_hitting_points,
    centroid_cell,
    is_c_aligned,
    quadtree_cell_of,
    shift_vectors,
    witness_ball,
)

__all__ = [
    "DEFAULT_EPS",
    "FLOAT",
    "RATIONAL",
    "AXIS_BOX",
    "BALL",
    "HALFSPACE",
    "POINT",
    "SEGMENT",
    "SIMPLEX",
    "GeometryError",
    "GeomObject",
    "axis_box",
    "ball",
    "halfspace",
    "point",
    "segment",
    "simplex",
    "intersects",
    "point_in_object",
    "RED",
    "BLUE",
    "lift_ball_to_halfspace",
    "veronese_lift",
    "QuadtreeCell",
    "ShiftConfig",
    "boundary_hitting_points",
    "centroid_cell",
    "is_c_aligned",
    "quadtree_cell_of",
    "shift_vectors",
    "witness_ball",
]
