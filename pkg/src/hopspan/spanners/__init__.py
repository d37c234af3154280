"""Builder registry: every construction behind one (instance, config) API."""

from __future__ import annotations

from dataclasses import dataclass

from ..graphcore import GraphError, IntersectionGraph, Spanner
from .basic import (
    clique_side_2hop,
    greedy_spanner,
    grouped_2hop,
    grouped_3hop,
    lopsided_3hop,
)
from .boxes import box_3hop, box_biclique_cover
from .config import BuildConfig
from .fat import fat_2hop, fatbox_2hop
from .recursive import epsilon_net, net_shortcut_3hop, recursive_bipartite_3hop


class BuilderNotApplicable(GraphError):
    pass


def _side_independent(G, ids):
    idset = set(ids)
    return all(all(w not in idset for w in G.adj[u]) for u in ids)


def _side_clique(G, ids):
    idset = set(ids)
    return all(
        sum(1 for w in G.adj[u] if w in idset) == len(ids) - 1 for u in ids
    )


def _pick_lopsided_sides(inst, G):
    if inst.labels is None:
        return None
    s0, s1 = inst.side(0), inst.side(1)
    ind0, ind1 = _side_independent(G, s0), _side_independent(G, s1)
    if ind0 and ind1:
        return (s0, s1) if len(s0) <= len(s1) else (s1, s0)
    if ind1:
        return s0, s1
    if ind0:
        return s1, s0
    return None


def _build_greedy(inst, G, cfg):
    return greedy_spanner(G, cfg.t)


def _build_lopsided3(inst, G, cfg):
    sides = _pick_lopsided_sides(inst, G)
    if sides is None:
        raise BuilderNotApplicable("needs a bipartite instance with an "
                                   "independent side")
    return lopsided_3hop(G, sides[0], sides[1], _check=False)


def _build_grouped3(inst, G, cfg):
    return grouped_3hop(G, cfg)


def _build_grouped2(inst, G, cfg):
    if inst.labels is None:
        raise BuilderNotApplicable("needs side labels")
    s0, s1 = inst.side(0), inst.side(1)
    for u_side, v_side in ((s0, s1), (s1, s0)):
        if _side_clique(G, u_side) and _side_independent(G, v_side):
            return grouped_2hop(G, u_side, v_side, cfg)
    raise BuilderNotApplicable("needs one clique side and one independent side")


def _build_cliqueside2(inst, G, cfg):
    if inst.labels is None:
        raise BuilderNotApplicable("needs side labels")
    s0, s1 = inst.side(0), inst.side(1)
    for u_side, v_side in ((s0, s1), (s1, s0)):
        if _side_clique(G, u_side) and _side_independent(G, v_side):
            return clique_side_2hop(G, u_side, v_side)
    raise BuilderNotApplicable("needs one clique side and one independent side")


def _build_recursive3(inst, G, cfg):
    if inst.abstract or inst.labels is None:
        raise BuilderNotApplicable("needs a geometric bipartite instance")
    kinds0 = {inst.objects[i].kind for i in inst.side(0)}
    kinds1 = {inst.objects[i].kind for i in inst.side(1)}
    if kinds0 != {"point"} and kinds1 != {"point"}:
        raise BuilderNotApplicable("needs a point side")
    return recursive_bipartite_3hop(G, inst, cfg)


def _build_netshortcut3(inst, G, cfg):
    if inst.abstract or inst.labels is None:
        raise BuilderNotApplicable("needs a geometric bipartite instance")
    kinds0 = {inst.objects[i].kind for i in inst.side(0)}
    kinds1 = {inst.objects[i].kind for i in inst.side(1)}
    if not (
        (kinds0 == {"point"} and kinds1 == {"halfspace"})
        or (kinds1 == {"point"} and kinds0 == {"halfspace"})
    ):
        raise BuilderNotApplicable("needs points vs halfspaces")
    return net_shortcut_3hop(G, inst, cfg)


def _build_fat2(inst, G, cfg):
    if inst.abstract or not inst.fat:
        raise BuilderNotApplicable("needs a fat geometric family")
    return fat_2hop(G, inst, cfg)


def _build_fatbox2(inst, G, cfg):
    if inst.abstract or not inst.fat:
        raise BuilderNotApplicable("needs fat boxes")
    return fatbox_2hop(G, inst, cfg)


def _build_box3(inst, G, cfg):
    if inst.abstract:
        raise BuilderNotApplicable("needs geometric boxes")
    return box_3hop(G, inst, cfg)


@dataclass(frozen=True)
class BuilderEntry:
    build: callable
    stretch: int | None  # None: takes the configured t (greedy)


BUILDERS = {
    "greedy": BuilderEntry(_build_greedy, None),
    "lopsided3": BuilderEntry(_build_lopsided3, 3),
    "grouped3": BuilderEntry(_build_grouped3, 3),
    "grouped2": BuilderEntry(_build_grouped2, 2),
    "cliqueside2": BuilderEntry(_build_cliqueside2, 2),
    "recursive3": BuilderEntry(_build_recursive3, 3),
    "netshortcut3": BuilderEntry(_build_netshortcut3, 3),
    "fat2": BuilderEntry(_build_fat2, 2),
    "fatbox2": BuilderEntry(_build_fatbox2, 2),
    "box3": BuilderEntry(_build_box3, 3),
}


def build_spanner(inst, G: IntersectionGraph, cfg: BuildConfig) -> Spanner:
    if cfg.builder not in BUILDERS:
        raise GraphError(f"unknown builder {cfg.builder!r}")
    entry = BUILDERS[cfg.builder]
    want = entry.stretch if entry.stretch is not None else cfg.t
    if entry.stretch is not None and cfg.t != entry.stretch:
        raise GraphError(
            f"builder {cfg.builder} produces stretch {entry.stretch}, not {cfg.t}"
        )
    sp = entry.build(inst, G, cfg)
    sp.stats.setdefault("stretch", want)
    sp.stats["builder"] = cfg.builder
    sp.stats["seed"] = cfg.seed
    return sp


def builder_stretch(name: str, cfg: BuildConfig) -> int:
    entry = BUILDERS[name]
    return entry.stretch if entry.stretch is not None else cfg.t


__all__ = [
    "BUILDERS",
    "BuildConfig",
    "BuilderNotApplicable",
    "build_spanner",
    "builder_stretch",
    "box_biclique_cover",
    "box_3hop",
    "clique_side_2hop",
    "epsilon_net",
    "fat_2hop",
    "fatbox_2hop",
    "greedy_spanner",
    "grouped_2hop",
    "grouped_3hop",
    "lopsided_3hop",
    "net_shortcut_3hop",
    "recursive_bipartite_3hop",
]
