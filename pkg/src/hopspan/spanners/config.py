"""Build configuration shared by every spanner builder."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class BuildConfig:
    t: int = 3  # stretch; 2-hop builders require 2, greedy accepts any >= 1
    builder: str = "greedy"
    alignment_c=None  # defaults to 2(d+1) at build time
    r: int = 4  # partition branching
    t_net: int = 10  # epsilon-net parameter
    group_size: int | None = None  # override for the grouping trick
    max_depth: int = 64
    seed: int = 0
    oracle: str = "kd"  # kd | grid
    fallback: str = "direct"  # add direct edges on any constant violation

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("stretch must be >= 1")
        if self.r < 2:
            raise ValueError("r must be >= 2")
        if self.t_net < 2:
            raise ValueError("t_net must be >= 2")
        if self.oracle not in ("kd", "grid"):
            raise ValueError("oracle must be kd or grid")

    def with_(self, **kw) -> "BuildConfig":
        return replace(self, **kw)
