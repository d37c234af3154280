"""hopspan: 2- and 3-hop spanners for geometric intersection graphs,
extremal lower-bound instances, and brute-force verification oracles."""

from .graphcore import (
    Instance,
    IntersectionGraph,
    Spanner,
    assert_lb_2hop,
    build_graph,
    estimate_exponent,
    find_k22,
    hop_distance_leq,
    verify_spanner,
)
from .spanners import BUILDERS, BuildConfig, build_spanner

__version__ = "0.1.0"

__all__ = [
    "Instance",
    "IntersectionGraph",
    "Spanner",
    "assert_lb_2hop",
    "build_graph",
    "estimate_exponent",
    "find_k22",
    "hop_distance_leq",
    "verify_spanner",
    "BUILDERS",
    "BuildConfig",
    "build_spanner",
    "__version__",
]
