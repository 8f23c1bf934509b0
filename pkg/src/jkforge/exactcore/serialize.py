"""Canonical JSON serialization (sorted keys, fixed separators, exact scalars)."""

from __future__ import annotations

import json

from .algebra import FilteredAlgebra, label_key, make_algebra
from .constructions import Extension
from .maps import AlgebraMap, LinearMap, Status
from .rings import parse_ring


def label_to_json(x):
    if isinstance(x, tuple):
        return [label_to_json(y) for y in x]
    return x


def label_from_json(x):
    if isinstance(x, list):
        return tuple(label_from_json(y) for y in x)
    return x


def _vec(ring, v):
    return [[label_to_json(a), ring.format(c)] for a, c in sorted(v.items(), key=lambda kv: label_key(kv[0]))]


def _unvec(ring, items):
    return {label_from_json(a): ring.parse(c) for a, c in items}


def algebra_to_dict(A: FilteredAlgebra) -> dict:
    mult = []
    for a in A.basis:
        for b in A.basis:
            p = A.mul_basis(a, b)
            if p:
                mult.append([label_to_json(a), label_to_json(b), _vec(A.ring, p)])
    return {
        "kind": "algebra",
        "name": A.name,
        "ring": A.ring.name,
        "cap": A.cap,
        "commutative": A.commutative,
        "lossy": A.lossy,
        "basis": [[label_to_json(a), A.weights[a]] for a in A.basis],
        "mult": mult,
    }


def algebra_from_dict(d: dict) -> FilteredAlgebra:
    ring = parse_ring(d["ring"])
    basis = {label_from_json(a): w for a, w in d["basis"]}
    mult = {(label_from_json(a), label_from_json(b)): _unvec(ring, v) for a, b, v in d["mult"]}
    A = make_algebra({"name": d["name"], "basis": basis, "mult": mult, "commutative": d["commutative"]},
                     d["cap"], ring)
    A.lossy = d.get("lossy", A.lossy)
    return A


def map_to_dict(f: LinearMap) -> dict:
    out = {
        "kind": "algebra_map" if isinstance(f, AlgebraMap) else "linear_map",
        "name": f.name,
        "source": algebra_to_dict(f.source),
        "target": algebra_to_dict(f.target),
        "growth": f.growth,
        "images": [[label_to_json(a), _vec(f.target.ring, f.images[a])] for a in f.source.basis],
        "exact": sorted((label_to_json(a) for a in f.exact), key=lambda x: label_key(label_from_json(x))),
    }
    if isinstance(f, AlgebraMap):
        out["status"] = f.status.value
    return out


def map_from_dict(d: dict, source=None, target=None) -> LinearMap:
    S = source or algebra_from_dict(d["source"])
    T = target or algebra_from_dict(d["target"])
    images = {label_from_json(a): _unvec(T.ring, v) for a, v in d["images"]}
    exact = [label_from_json(a) for a in d["exact"]]
    if d["kind"] == "algebra_map":
        return AlgebraMap(S, T, images, growth=d["growth"], exact=exact, name=d["name"],
                          status=Status(d.get("status", "unchecked")))
    return LinearMap(S, T, images, growth=d["growth"], exact=exact, name=d["name"])


def extension_to_dict(E: Extension) -> dict:
    return {
        "kind": "extension",
        "name": E.name,
        "inject": map_to_dict(E.inject),
        "surject": map_to_dict(E.surject),
        "splitting": map_to_dict(E.splitting),
    }


def extension_from_dict(d: dict) -> Extension:
    inj = map_from_dict(d["inject"])
    mid = inj.target
    sur = map_from_dict(d["surject"], source=mid)
    spl = map_from_dict(d["splitting"], source=sur.target, target=mid)
    return Extension(inj.source, mid, sur.target, inj, sur, spl, name=d["name"])


def to_dict(obj) -> dict:
    if isinstance(obj, FilteredAlgebra):
        return algebra_to_dict(obj)
    if isinstance(obj, LinearMap):
        return map_to_dict(obj)
    if isinstance(obj, Extension):
        return extension_to_dict(obj)
    raise TypeError("cannot serialize %r" % type(obj).__name__)


def from_dict(d: dict):
    kind = d.get("kind")
    if kind == "algebra":
        return algebra_from_dict(d)
    if kind in ("algebra_map", "linear_map"):
        return map_from_dict(d)
    if kind == "extension":
        return extension_from_dict(d)
    raise ValueError("unknown kind %r" % kind)


def dumps(obj) -> str:
    data = obj if isinstance(obj, (dict, list)) else to_dict(obj)
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def loads(text: str):
    return from_dict(json.loads(text))
