"""JSON documents: torus graphs, abstract graphs, certificates and verdicts.

Every document carries an integer ``schema_version`` and a ``kind``.  Exact
rationals are written as ``"num/den"`` in lowest terms; plain integers (JSON
numbers or ``"n"``) are accepted on input.  ``parse(emit(x))`` reproduces
``x`` and ``emit(parse(doc))`` is the canonical form of ``doc``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import jsonschema

from .chirality import (
    AchiralCatalogued,
    Case,
    Chiral,
    H3Witness,
    K5viaLemma1,
    K33viaLemma2,
    K33viaLemma3,
    SideOrientation,
    TrivialEmbedding,
    Unknown,
    Witness,
)
from .circulant import CirculantSpec, InvertRelabel, MinorStep, ReductionCertificate, SkipMinor
from .graph import MinorModel, MultiGraph
from .torus import CornerPath, Curve, HomologyClass, TorusGraph, torus_graph

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Malformed, invalid or version-incompatible document."""


# ---------------------------------------------------------------------------
# schema

_ID = {"type": ["integer", "string"]}
_RAT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/[1-9]\d*)?$"}]}
_PAIR_INT = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}
_POINT = {"type": "array", "items": _RAT, "minItems": 2, "maxItems": 2}
_MAP = {"type": "array", "items": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2}}
_WALK = {"type": "array", "items": {"type": "array", "prefixItems": [_ID, {"enum": [1, -1]}], "minItems": 2, "maxItems": 2}}
_OP = {
    "type": "object",
    "required": ["op"],
    "properties": {
        "op": {"enum": ["delete", "contract", "delete_isolated", "relabel"]},
        "edge": _ID,
        "vertices": _MAP,
        "edges": _MAP,
    },
}
_MODEL = {
    "type": "object",
    "required": ["branch_sets", "edge_assignment"],
    "properties": {
        "branch_sets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["vertex", "set"],
                "properties": {"vertex": _ID, "set": {"type": "array", "items": _ID, "minItems": 1}},
            },
        },
        "edge_assignment": _MAP,
    },
}
_ABSTRACT = {
    "type": "object",
    "required": ["vertices", "edges"],
    "properties": {
        "vertices": {"type": "array", "items": _ID},
        "edges": {
            "type": "array",
            "items": {"type": "object", "required": ["id", "u", "v"], "properties": {"id": _ID, "u": _ID, "v": _ID}},
        },
    },
}
_STEP = {
    "type": "object",
    "required": ["type", "source"],
    "properties": {
        "type": {"enum": ["minor", "invert", "skip"]},
        "source": _PAIR_INT,
        "result": _PAIR_INT,
        "kept_chords": {"type": "array", "items": _ID},
        "deleted_chords": {"type": "array", "items": _ID},
        "contracted_edges": {"type": "array", "items": _ID},
        "p_inverse": {"type": "integer"},
        "q_prime": {"type": "integer"},
        "vertex_map": _MAP,
        "edge_map": _MAP,
        "reason": {"type": "string"},
    },
}
_REDUCTION = {
    "type": "object",
    "required": ["initial", "steps", "final_isomorphism"],
    "properties": {"initial": _PAIR_INT, "steps": {"type": "array", "items": _STEP}, "final_isomorphism": _MAP},
}
_K33_LINK = {
    "type": "object",
    "required": ["type", "k", "p", "q", "method", "branch", "paths", "model"],
    "properties": {
        "type": {"const": "K33viaLemma2"},
        "k": {"type": "integer"},
        "p": {"type": "integer"},
        "q": {"type": "integer"},
        "method": {"enum": ["recipe", "search"]},
        "branch": {"type": "array", "items": _ID},
        "paths": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["pair", "vertices", "edges"],
                "properties": {
                    "pair": _PAIR_INT,
                    "vertices": {"type": "array", "items": _ID},
                    "edges": {"type": "array", "items": _ID},
                },
            },
        },
        "model": _MODEL,
    },
}
_OBSTRUCTION = {
    "oneOf": [
        {
            "type": "object",
            "required": ["type", "p", "q", "r", "s", "path", "arrangement_ops", "reduction", "model"],
            "properties": {
                "type": {"const": "K5viaLemma1"},
                "path": {
                    "type": "object",
                    "required": ["anchor", "edges", "vertices", "signs"],
                    "properties": {
                        "anchor": _ID,
                        "edges": {"type": "array", "items": _ID},
                        "vertices": {"type": "array", "items": _ID},
                        "signs": {"type": "array", "items": {"enum": [1, -1]}},
                    },
                },
                "arrangement_ops": {"type": "array", "items": _OP},
                "reduction": _REDUCTION,
                "model": _MODEL,
            },
        },
        _K33_LINK,
        {
            "type": "object",
            "required": ["type", "extension", "ops", "vertex_map", "model", "mirror_branch"],
            "properties": {
                "type": {"const": "K33viaLemma3"},
                "extension": _ABSTRACT,
                "ops": {"type": "array", "items": _OP},
                "vertex_map": _MAP,
                "model": _MODEL,
                "mirror_branch": _K33_LINK,
            },
        },
    ]
}
_CLASS_LIST = {"type": "array", "items": _PAIR_INT}

SCHEMAS: dict[str, dict] = {
    "torus_graph": {
        "type": "object",
        "required": ["vertices", "edges"],
        "properties": {
            "vertices": {
                "type": "array",
                "items": {"type": "object", "required": ["id", "x", "y"], "properties": {"id": _ID, "x": _RAT, "y": _RAT}},
            },
            "edges": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "u", "v"],
                    "properties": {
                        "id": _ID,
                        "u": _ID,
                        "v": _ID,
                        "winding": _PAIR_INT,
                        "polyline": {"type": "array", "items": _POINT, "minItems": 2},
                        "curve": {"type": ["integer", "null"]},
                    },
                },
            },
            "curves": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["class", "base"],
                    "properties": {
                        "class": _PAIR_INT,
                        "base": _POINT,
                        "family": {"type": "integer"},
                        "copy": {"type": "integer"},
                        "anchored": {"type": "boolean"},
                    },
                },
            },
        },
    },
    "graph": _ABSTRACT,
    "reduction_certificate": _REDUCTION,
    "minor_model": {
        "type": "object",
        "required": ["target", "model"],
        "properties": {"target": {"enum": ["k5", "k33"]}, "model": _MODEL},
    },
    "obstruction": {"type": "object", "required": ["obstruction"], "properties": {"obstruction": _OBSTRUCTION}},
    "verdict": {
        "type": "object",
        "required": ["verdict"],
        "properties": {
            "verdict": {"enum": ["chiral", "trivial_embedding", "achiral_catalogued", "unknown"]},
            "case": {"enum": [c.value for c in Case]},
            "witness": {
                "type": "object",
                "required": ["cycles", "classes"],
                "properties": {"cycles": {"type": "array", "items": _WALK}, "classes": _CLASS_LIST},
            },
            "obstruction": _OBSTRUCTION,
            "reason": {"type": "string"},
            "diagnostics": {"type": "array", "items": {"type": "string"}},
        },
    },
}

_ENVELOPE = {
    "type": "object",
    "required": ["schema_version", "kind"],
    "properties": {"schema_version": {"type": "integer"}, "kind": {"enum": sorted(SCHEMAS)}},
}


def validate(doc: Any) -> str:
    """Check envelope, version and body schema; return the document kind."""
    try:
        jsonschema.validate(doc, _ENVELOPE)
    except jsonschema.ValidationError as exc:
        raise DocumentError(f"invalid document: {exc.message}") from None
    if doc["schema_version"] != SCHEMA_VERSION:
        raise DocumentError(f"schema version {doc['schema_version']} is not supported (expected {SCHEMA_VERSION})")
    try:
        jsonschema.validate(doc, SCHEMAS[doc["kind"]])
    except jsonschema.ValidationError as exc:
        raise DocumentError(f"invalid {doc['kind']} document: {exc.message}") from None
    return doc["kind"]


def envelope(kind: str, body: dict) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, **body}
    validate(doc)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from None


# ---------------------------------------------------------------------------
# rationals


def rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def unrat(s) -> Fraction:
    if isinstance(s, bool):
        raise DocumentError("booleans are not rationals")
    if isinstance(s, int):
        return Fraction(s)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError):
        raise DocumentError(f"bad rational {s!r}") from None


def _point(p) -> list:
    return [rat(p[0]), rat(p[1])]


def _unpoint(p) -> tuple:
    return (unrat(p[0]), unrat(p[1]))


def _pairs(m) -> list:
    items = m.items() if isinstance(m, dict) else m
    return [[a, b] for a, b in items]


# ---------------------------------------------------------------------------
# graphs


def graph_body(g: MultiGraph) -> dict:
    return {"vertices": list(g.vertices), "edges": [{"id": e, "u": u, "v": v} for e, (u, v) in g.edges.items()]}


def graph_from_body(body: dict) -> MultiGraph:
    return MultiGraph(body["vertices"], [(e["id"], e["u"], e["v"]) for e in body["edges"]])


def torus_graph_body(tg: TorusGraph) -> dict:
    edges = []
    for e, (u, v) in tg.edges.items():
        item = {"id": e, "u": u, "v": v, "winding": list(tg.winding[e]), "curve": tg.curve.get(e)}
        poly = tg.lifts[e]
        if len(poly) > 2:
            item["polyline"] = [_point(p) for p in poly]
        edges.append(item)
    return {
        "vertices": [{"id": v, "x": rat(p[0]), "y": rat(p[1])} for v, p in tg.position.items()],
        "edges": edges,
        "curves": [
            {"class": [c.homology.a, c.homology.b], "base": _point(c.base), "family": c.spec_index, "copy": c.copy, "anchored": c.anchored}
            for c in tg.curves
        ],
    }


def torus_graph_from_body(body: dict) -> TorusGraph:
    pos = {v["id"]: (unrat(v["x"]), unrat(v["y"])) for v in body["vertices"]}
    edges = []
    for e in body["edges"]:
        if "polyline" in e:
            geom = [_unpoint(p) for p in e["polyline"]]
        else:
            w = e.get("winding", [0, 0])
            geom = (int(w[0]), int(w[1]))
        edges.append((e["id"], e["u"], e["v"], geom, e.get("curve")))
    curves = tuple(
        Curve(HomologyClass(*c["class"]), _unpoint(c["base"]), c.get("family", i), c.get("copy", 0), c.get("anchored", False))
        for i, c in enumerate(body.get("curves", []))
    )
    try:
        tg = torus_graph(pos, edges, curves)
    except (KeyError, ValueError) as exc:
        raise DocumentError(f"invalid torus graph: {exc}") from None
    for e in body["edges"]:
        if "winding" in e and "polyline" in e and tuple(e["winding"]) != tg.winding[e["id"]]:
            raise DocumentError(f"edge {e['id']!r}: winding disagrees with polyline")
    return tg


# ---------------------------------------------------------------------------
# certificates


def model_body(m: MinorModel) -> dict:
    return {
        "branch_sets": [{"vertex": x, "set": sorted(s, key=_key)} for x, s in m.branch_sets.items()],
        "edge_assignment": _pairs(m.edge_assignment),
    }


def _key(v):
    return (isinstance(v, str), v)


def model_from_body(body: dict) -> MinorModel:
    return MinorModel(
        {b["vertex"]: frozenset(b["set"]) for b in body["branch_sets"]},
        {a: b for a, b in body["edge_assignment"]},
    )


def _spec(pair) -> CirculantSpec:
    return CirculantSpec(*pair)


def reduction_body(cert: ReductionCertificate) -> dict:
    steps = []
    for s in cert.steps:
        item = {"type": s.kind, "source": list(s.source)}
        if s.kind == "skip":
            item["reason"] = s.reason
        else:
            item["result"] = list(s.result)
            item["vertex_map"] = _pairs(s.vertex_map)
            item["edge_map"] = _pairs(s.edge_map)
        if s.kind == "minor":
            item["kept_chords"] = list(s.kept_chords)
            item["deleted_chords"] = list(s.deleted_chords)
            item["contracted_edges"] = list(s.contracted_edges)
        if s.kind == "invert":
            item["p_inverse"] = s.p_inverse
            item["q_prime"] = s.q_prime
        steps.append(item)
    return {"initial": list(cert.initial), "steps": steps, "final_isomorphism": _pairs(cert.final_isomorphism)}


def reduction_from_body(body: dict) -> ReductionCertificate:
    steps = []
    try:
        for s in body["steps"]:
            src = _spec(s["source"])
            if s["type"] == "skip":
                steps.append(SkipMinor(src, s.get("reason", "p=2")))
                continue
            vm = tuple(tuple(x) for x in s["vertex_map"])
            em = tuple(tuple(x) for x in s["edge_map"])
            if s["type"] == "minor":
                steps.append(
                    MinorStep(src, _spec(s["result"]), tuple(s["kept_chords"]), tuple(s["deleted_chords"]), tuple(s["contracted_edges"]), vm, em)
                )
            else:
                steps.append(InvertRelabel(src, _spec(s["result"]), s["p_inverse"], s["q_prime"], vm, em))
        return ReductionCertificate(_spec(body["initial"]), tuple(steps), tuple(tuple(x) for x in body["final_isomorphism"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise DocumentError(f"invalid reduction certificate: {exc}") from None


def _k33_link_body(c: K33viaLemma2) -> dict:
    return {
        "type": c.kind,
        "k": c.k,
        "p": c.p,
        "q": c.q,
        "method": c.method,
        "branch": list(c.branch),
        "paths": [{"pair": list(ij), "vertices": list(v), "edges": list(e)} for ij, v, e in c.paths],
        "model": model_body(c.model),
    }


def _k33_link_from(b: dict) -> K33viaLemma2:
    paths = tuple((tuple(p["pair"]), tuple(p["vertices"]), tuple(p["edges"])) for p in b["paths"])
    return K33viaLemma2(b["k"], b["p"], b["q"], b["method"], tuple(b["branch"]), paths, model_from_body(b["model"]))


def obstruction_body(c) -> dict:
    if isinstance(c, K5viaLemma1):
        return {
            "type": c.kind,
            "p": c.p,
            "q": c.q,
            "r": c.r,
            "s": c.s,
            "path": {
                "anchor": c.path.anchor,
                "edges": list(c.path.edges),
                "vertices": list(c.path.vertices),
                "signs": list(c.path.signs or [1] * len(c.path.edges)),
            },
            "arrangement_ops": [dict(op) for op in c.arrangement_ops],
            "reduction": reduction_body(c.reduction),
            "model": model_body(c.model),
        }
    if isinstance(c, K33viaLemma2):
        return _k33_link_body(c)
    if isinstance(c, K33viaLemma3):
        return {
            "type": c.kind,
            "extension": graph_body(c.extension),
            "ops": [dict(op) for op in c.ops],
            "vertex_map": _pairs(c.vertex_map),
            "model": model_body(c.model),
            "mirror_branch": _k33_link_body(c.mirror_branch),
        }
    raise TypeError(f"not an obstruction: {c!r}")


def obstruction_from_body(b: dict):
    try:
        if b["type"] == "K5viaLemma1":
            pa = b["path"]
            path = CornerPath(pa["anchor"], list(pa["edges"]), list(pa["vertices"]), list(pa["signs"]))
            return K5viaLemma1(
                b["p"], b["q"], b["r"], b["s"], path, tuple(b["arrangement_ops"]), reduction_from_body(b["reduction"]), model_from_body(b["model"])
            )
        if b["type"] == "K33viaLemma2":
            return _k33_link_from(b)
        return K33viaLemma3(
            graph_from_body(b["extension"]),
            tuple(b["ops"]),
            {x: v for x, v in b["vertex_map"]},
            model_from_body(b["model"]),
            _k33_link_from(b["mirror_branch"]),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise DocumentError(f"invalid obstruction: {exc}") from None


# ---------------------------------------------------------------------------
# verdicts


def _walk(w) -> list:
    return [[e, s] for e, s in w]


def _classes(cs) -> list:
    return [[c.a, c.b] for c in cs]


def verdict_body(v) -> dict:
    body: dict = {"verdict": v.tag}
    if isinstance(v, Chiral):
        body["case"] = v.case.value
        wit = {"cycles": [_walk(w) for w in v.witness.cycles], "classes": _classes(v.witness.classes)}
        lad = v.witness.ladder
        if lad is not None:
            wit["ladder"] = {
                "cycles": [_walk(w) for w in lad.cycles],
                "classes": _classes(lad.classes),
                "paths": [list(p) for p in lad.paths],
                "ends": [list(x) for x in lad.ends],
            }
            if lad.orientation is not None:
                o = lad.orientation
                wit["ladder"]["orientation"] = {
                    "walks": [_walk(w) for w in o.walks],
                    "classes": _classes(o.classes),
                    "linking": o.linking,
                }
        body["witness"] = wit
        body["obstruction"] = obstruction_body(v.obstruction)
    elif isinstance(v, (TrivialEmbedding, AchiralCatalogued)):
        body["reason"] = v.reason
    elif isinstance(v, Unknown):
        body["diagnostics"] = list(v.diagnostics)
    return body


def _unwalk(w) -> list:
    return [(e, s) for e, s in w]


def _unclasses(cs) -> tuple:
    return tuple(HomologyClass(a, b) for a, b in cs)


def verdict_from_body(b: dict):
    tag = b["verdict"]
    if tag == "trivial_embedding":
        return TrivialEmbedding(b.get("reason", TrivialEmbedding().reason))
    if tag == "achiral_catalogued":
        return AchiralCatalogued(b.get("reason", ""))
    if tag == "unknown":
        return Unknown(tuple(b.get("diagnostics", ())))
    try:
        w = b["witness"]
        lad = None
        if "ladder" in w:
            lw = w["ladder"]
            orient = None
            if "orientation" in lw:
                o = lw["orientation"]
                orient = SideOrientation(tuple(_unwalk(x) for x in o["walks"]), _unclasses(o["classes"]), o["linking"])
            lad = H3Witness(
                tuple(_unwalk(x) for x in lw["cycles"]),
                _unclasses(lw["classes"]),
                tuple(tuple(p) for p in lw["paths"]),
                tuple(tuple(x) for x in lw["ends"]),
                orient,
            )
        witness = Witness(tuple(_unwalk(x) for x in w["cycles"]), _unclasses(w["classes"]), lad)
        return Chiral(Case(b["case"]), witness, obstruction_from_body(b["obstruction"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise DocumentError(f"invalid verdict: {exc}") from None


# ---------------------------------------------------------------------------
# dispatch

_EMIT = {
    TorusGraph: ("torus_graph", torus_graph_body),
    MultiGraph: ("graph", graph_body),
    ReductionCertificate: ("reduction_certificate", reduction_body),
}


def emit(obj) -> dict:
    """Wrap a library value in a validated document."""
    for cls, (kind, fn) in _EMIT.items():
        if isinstance(obj, cls):
            return envelope(kind, fn(obj))
    if isinstance(obj, (K5viaLemma1, K33viaLemma2, K33viaLemma3)):
        return envelope("obstruction", {"obstruction": obstruction_body(obj)})
    if isinstance(obj, (Chiral, TrivialEmbedding, AchiralCatalogued, Unknown)):
        return envelope("verdict", verdict_body(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit_model(target: str, model: MinorModel) -> dict:
    return envelope("minor_model", {"target": target, "model": model_body(model)})


def parse(doc: dict):
    """Validate a document and rebuild the library value it describes."""
    kind = validate(doc)
    if kind == "torus_graph":
        return torus_graph_from_body(doc)
    if kind == "graph":
        try:
            return graph_from_body(doc)
        except ValueError as exc:
            raise DocumentError(f"invalid graph: {exc}") from None
    if kind == "reduction_certificate":
        return reduction_from_body(doc)
    if kind == "obstruction":
        return obstruction_from_body(doc["obstruction"])
    if kind == "verdict":
        return verdict_from_body(doc)
    return doc["target"], model_from_body(doc["model"])
