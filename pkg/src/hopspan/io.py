"""File formats: instance JSON (bit-exact rational round trip), edge-list
text files, and spanner files with a JSON stats sidecar."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .geometry import GeomObject, axis_box, ball, halfspace, point, segment, simplex
from .graphcore import GraphError, Instance, Spanner


def _enc(v):
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return float(v)


def _enc_vec(vec):
    return [_enc(v) for v in vec]


def _dec(v, mode):
    if mode == "float":
        return float(v)
    if isinstance(v, str):
        num, den = v.split("/")
        return Fraction(int(num), int(den))
    if isinstance(v, float):
        raise GraphError("rational instance contains a bare float")
    return int(v)


def _dec_vec(vec, mode):
    return tuple(_dec(v, mode) for v in vec)


def object_to_dict(o: GeomObject) -> dict:
    out = {"kind": o.kind}
    if o.kind == "ball":
        out["center"] = _enc_vec(o.center)
        out["radius"] = _enc(o.radius)
    elif o.kind == "axis_box":
        out["lo"] = _enc_vec(o.lo)
        out["hi"] = _enc_vec(o.hi)
    elif o.kind in ("simplex", "segment"):
        out["vertices"] = [_enc_vec(v) for v in o.vertices]
    elif o.kind == "halfspace":
        out["coeffs"] = _enc_vec(o.coeffs)
        out["offset"] = _enc(o.offset)
    elif o.kind == "point":
        out["coords"] = _enc_vec(o.coords)
    return out


def object_from_dict(data: dict, mode: str, eps: float) -> GeomObject:
    kind = data["kind"]
    if kind == "ball":
        return ball(_dec_vec(data["center"], mode), _dec(data["radius"], mode),
                    mode=mode, eps=eps)
    if kind == "axis_box":
        return axis_box(_dec_vec(data["lo"], mode), _dec_vec(data["hi"], mode),
                        mode=mode, eps=eps)
    if kind == "simplex":
        return simplex([_dec_vec(v, mode) for v in data["vertices"]],
                       mode=mode, eps=eps)
    if kind == "segment":
        a, b = data["vertices"]
        return segment(_dec_vec(a, mode), _dec_vec(b, mode), mode=mode, eps=eps)
    if kind == "halfspace":
        return halfspace(_dec_vec(data["coeffs"], mode),
                         _dec(data["offset"], mode), mode=mode, eps=eps)
    if kind == "point":
        return point(_dec_vec(data["coords"], mode), mode=mode, eps=eps)
    raise GraphError(f"unknown object kind {kind!r}")


def instance_to_json(inst: Instance) -> str:
    doc = {
        "name": inst.name,
        "dimension": inst.dim,
        "mode": inst.mode,
        "eps": inst.eps,
        "objects": [object_to_dict(o) for o in inst.objects],
        "labels": list(inst.labels) if inst.labels is not None else None,
        "ground_truth_edges": [list(e) for e in inst.ground_truth_edges]
        if inst.ground_truth_edges is not None
        else None,
        "gen_spec": inst.gen_spec,
        "abstract": inst.abstract,
        "congruent": inst.congruent,
        "fat": inst.fat,
        "graph_mode": inst.graph_mode,
    }
    return json.dumps(doc, indent=None, separators=(",", ":"), sort_keys=True)


def instance_from_json(text: str) -> Instance:
    doc = json.loads(text)
    mode = doc["mode"]
    eps = doc.get("eps", 0.0)
    objects = tuple(object_from_dict(o, mode, eps) for o in doc["objects"])
    gt = doc.get("ground_truth_edges")
    return Instance(
        name=doc["name"],
        dim=doc["dimension"],
        mode=mode,
        eps=eps,
        objects=objects,
        labels=tuple(doc["labels"]) if doc.get("labels") is not None else None,
        ground_truth_edges=tuple(tuple(e) for e in gt) if gt is not None else None,
        gen_spec=doc.get("gen_spec"),
        abstract=doc.get("abstract", False),
        congruent=doc.get("congruent", False),
        fat=doc.get("fat", False),
        graph_mode=doc.get("graph_mode", "full"),
    )


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(instance_to_json(inst) + "\n")


def load_instance(path) -> Instance:
    return instance_from_json(Path(path).read_text())


def edges_to_text(edges) -> str:
    return "".join(f"{u} {v}\n" for u, v in sorted(edges))


def edges_from_text(text):
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        u, v = line.split()
        u, v = int(u), int(v)
        if not u < v:
            raise GraphError(f"edge list must satisfy u < v, got {u} {v}")
        out.append((u, v))
    return tuple(out)


def save_edges(edges, path) -> None:
    Path(path).write_text(edges_to_text(edges))


def load_edges(path):
    return edges_from_text(Path(path).read_text())


def save_spanner(sp: Spanner, path, timings: bool = False) -> None:
    save_edges(sp.edges, path)
    stats = dict(sp.stats)
    if not timings:
        stats.pop("runtime_ms", None)
    Path(str(path) + ".stats.json").write_text(
        json.dumps(stats, indent=None, separators=(",", ":"), sort_keys=True) + "\n"
    )
