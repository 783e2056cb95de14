"""Hopf ladders, Kuratowski obstructions from torus links, and the chirality classifier.

The classifier never proves achirality.  It looks for a chiral piece of the
embedding (a nontrivial torus knot, a nonsplit non-Hopf torus link, or a Hopf
ladder with three rungs) and attaches a certificate that an achiral graph
containing that piece would have a K5 or K3,3 minor.  For a planar input the
certificate therefore rules out achirality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import networkx as nx

from .circulant import ReductionCertificate, build_S, reduce_to_K5, verify_certificate
from .graph import (
    K5,
    K33,
    GraphError,
    MinorModel,
    MinorTrace,
    MultiGraph,
    has_minor,
    is_isomorphic,
    is_planar,
    verify_minor_model,
)
from .torus import (
    CENSUS_EDGE_CAP,
    CornerPath,
    Curve,
    CurveSpec,
    HomologyClass,
    KnotType,
    LinkType,
    TorusGraph,
    Walk,
    arrangement,
    as_class,
    check_corner_path,
    classify_knot,
    classify_link,
    cycle_class,
    find_corner_path,
    frac_point,
    knot_link_census,
    corner_arrangement,
    linking_number,
    mirror_graph,
    orient_walk,
    reduce_arrangement_to_S,
    torus_graph,
    walk_vertices,
)


class NonplanarInput(ValueError):
    """The abstract graph is not planar, so the classifier does not apply."""


# ---------------------------------------------------------------------------
# ladders and other small torus graphs


def _reverse(walk: Walk) -> Walk:
    return [(e, -s) for e, s in reversed(walk)]


def ladder(cls=(1, 1), rungs: int = 0, side_vertices: int | None = None, offset=Fraction(1, 8)) -> tuple:
    """Two parallel curves of class ``cls`` joined by crossing-free rungs.

    Returns ``(torus graph, side vertex lists, side walks, rung edge ids)``.
    Side vertices are numbered 1..m on the first curve and m+1..2m on the
    second; rung ``e{i}`` joins the i-th attachment point on each side.
    """
    cls = as_class(cls)
    if cls.a < 1 or not cls.is_primitive():
        raise ValueError("ladder sides need a primitive class with a >= 1")
    m = side_vertices if side_vertices is not None else max(rungs, 1)
    if m < max(rungs, 1):
        raise ValueError("not enough side vertices for the rungs")
    offset = Fraction(offset)
    gap = Fraction(1, 2 * cls.a)
    ts = [Fraction(4 * i + 1, 4 * m) for i in range(m)]

    def lift(side, t):
        return (cls.a * t, offset + side * gap + cls.b * t)

    positions, edges, sides, walks = {}, [], [], []
    for side in (0, 1):
        ids = [side * m + i + 1 for i in range(m)]
        for v, t in zip(ids, ts):
            positions[v] = frac_point(lift(side, t))
        walk = []
        for i, v in enumerate(ids):
            t0, t1 = ts[i], ts[i + 1] if i + 1 < m else ts[0] + 1
            p0, p1 = lift(side, t0), lift(side, t1)
            start = positions[v]
            shift = (start[0] - p0[0], start[1] - p0[1])
            eid = f"s{side + 1}_{i + 1}"
            edges.append((eid, v, ids[(i + 1) % m], [start, (p1[0] + shift[0], p1[1] + shift[1])], side))
            walk.append((eid, 1))
        sides.append(ids)
        walks.append(walk)
    at = [i * m // rungs for i in range(rungs)] if rungs else []
    rung_ids = []
    for k, i in enumerate(at):
        u, v = sides[0][i], sides[1][i]
        start = positions[u]
        edges.append((f"e{k + 1}", u, v, [start, (start[0], start[1] + gap)], None))
        rung_ids.append(f"e{k + 1}")
    curves = tuple(Curve(cls, frac_point(lift(side, Fraction(0))), 0, side) for side in (0, 1))
    tg = torus_graph(positions, edges, curves)
    attach = ([sides[0][i] for i in at], [sides[1][i] for i in at])
    return tg, attach, walks, rung_ids


@dataclass
class HopfLadder:
    """H_n realized on the torus by two (1,1) curves and ``n`` vertical rungs."""

    n: int
    torus: TorusGraph
    attachments: tuple  # (v_1..v_n, v'_1..v'_n)
    side_walks: tuple
    rungs: tuple
    mirrored: bool = False

    @property
    def graph(self) -> MultiGraph:
        return self.torus.graph


def build_hopf_ladder(n: int, mirrored: bool = False) -> HopfLadder:
    if n < 0:
        raise ValueError("rung count must be >= 0")
    tg, attach, walks, rungs = ladder((1, 1), n)
    if mirrored:
        tg = mirror_graph(tg)
    return HopfLadder(n, tg, attach, tuple(walks), tuple(rungs), mirrored)


class LadderChirality(str, Enum):
    ACHIRAL = "achiral"
    CHIRAL = "chiral"


def classify_hopf_ladder(n: int) -> LadderChirality:
    if n < 0:
        raise ValueError("rung count must be >= 0")
    return LadderChirality.ACHIRAL if n <= 2 else LadderChirality.CHIRAL


@dataclass(frozen=True)
class SideOrientation:
    walks: tuple
    classes: tuple
    linking: int


def _cyclic_direction(positions: list[int]) -> int:
    """+1 / -1 if the positions increase / decrease cyclically, else 0."""
    k = positions.index(min(positions))
    rot = positions[k:] + positions[:k]
    if all(x < y for x, y in zip(rot, rot[1:])):
        return 1
    rest = rot[1:]
    if all(x > y for x, y in zip(rest, rest[1:])):
        return -1
    return 0


def orient_by_attachments(tg: TorusGraph, walks, attachments) -> SideOrientation | None:
    """Orient two side cycles by the order in which rung endpoints appear.

    Each side is directed so that its rung endpoints come in label order
    1, 2, ..., n.  Fewer than three rungs leave the direction undetermined.
    """
    if len(attachments[0]) < 3:
        return None
    oriented = []
    for walk, ends in zip(walks, attachments):
        seq = walk_vertices(tg.graph, walk)
        sign = _cyclic_direction([seq.index(v) for v in ends])
        if sign == 0:
            return None
        oriented.append(list(walk) if sign == 1 else _reverse(walk))
    classes = tuple(cycle_class(tg, w) for w in oriented)
    return SideOrientation(tuple(oriented), classes, linking_number(*classes))


def orientation_from_rungs(h: HopfLadder) -> SideOrientation | None:
    return orient_by_attachments(h.torus, h.side_walks, h.attachments)


def grid_patch(rows: int = 3, cols: int = 3) -> TorusGraph:
    """A rectangular grid drawn inside a small disk of the torus."""
    if rows < 1 or cols < 1:
        raise ValueError("grid needs at least one row and column")
    pos = {}
    for i in range(rows):
        for j in range(cols):
            pos[i * cols + j] = (Fraction(1, 4) + Fraction(j, 2 * cols), Fraction(1, 4) + Fraction(i, 2 * rows))
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((len(edges), v, v + 1, None, None))
            if i + 1 < rows:
                edges.append((len(edges), v, v + cols, None, None))
    return torus_graph(pos, edges)


def cycles_with_bridge(cls=(1, 2), side_vertices: int = 3) -> TorusGraph:
    """Two disjoint parallel cycles of class ``cls`` joined by one edge."""
    return ladder(cls, 1, side_vertices)[0]


def torus_knot_cycle(cls=(2, 3), pieces: int = 5) -> TorusGraph:
    """A single cycle drawn as the geodesic of class ``cls``."""
    return arrangement([CurveSpec(as_class(cls))], subdivide=pieces)


# ---------------------------------------------------------------------------
# H_3 plus a cross edge


EXTENSION_EDGES = (
    ("0-1", "0", "1"),
    ("0-2", "0", "2"),
    ("2-3", "2", "3"),
    ("3-1", "3", "1"),
    ("A-B", "A", "B"),
    ("B-Z", "B", "Z"),
    ("Z-C", "Z", "C"),
    ("C-A", "C", "A"),
    ("1-A", "1", "A"),
    ("2-B", "2", "B"),
    ("3-C", "3", "C"),
    ("0-Z", "0", "Z"),
)

#: 1 deletion and 2 contractions taking the extension to K3,3
EXTENSION_OPS = (
    {"op": "delete", "edge": "3-1"},
    {"op": "contract", "edge": "0-1"},
    {"op": "contract", "edge": "2-3"},
)

#: K3,3 vertex -> surviving extension vertex ("0" holds 0,1 and "2" holds 2,3)
EXTENSION_BIPARTITION = {0: "0", 1: "B", 2: "C", 3: "2", 4: "A", 5: "Z"}


def h3_extension(symmetric: bool = False) -> MultiGraph:
    """Abstract H_3 (sides 1,2,3 and A,B,C, rungs 1A, 2B, 3C) plus a cross edge.

    Vertex 0 subdivides side edge 12, Z subdivides side edge BC, and the new
    edge joins 0 and Z.  With ``symmetric=True`` the cross edge starts at 1
    instead and edge 12 is not subdivided.
    """
    if not symmetric:
        return MultiGraph("0123ABCZ", EXTENSION_EDGES)
    edges = [e for e in EXTENSION_EDGES if "0" not in e[1:]] + [("1-2", "1", "2"), ("1-Z", "1", "Z")]
    return MultiGraph("123ABCZ", edges)


def h3_extension_torus(symmetric: bool = False) -> TorusGraph:
    """Embed the H_3 extension on the torus.

    H_3 is the (1,1) ladder; its rungs fill the strip between the sides, so
    the cross edge runs through the other, empty strip.
    """
    tg, (left, right), _, _ = ladder((1, 1), 3)
    names = dict(zip(left, "123")) | dict(zip(right, "ABC"))
    pos = {names[v]: p for v, p in tg.position.items()}
    mid = {}
    edges = []
    split = {("1", "2"): ("0", "0-1", "0-2"), ("B", "C"): ("Z", "B-Z", "Z-C")}
    if symmetric:
        del split[("1", "2")]
    for e, (u, v) in tg.edges.items():
        a, b = names[u], names[v]
        p0, p1 = tg.lifts[e]
        if (a, b) not in split:
            edges.append((f"{a}-{b}", a, b, [p0, p1], tg.curve[e]))
            continue
        w, first, second = split[(a, b)]
        m = ((p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2)
        pos[w] = frac_point(m)
        mid[w] = m
        shift = (pos[w][0] - m[0], pos[w][1] - m[1])
        edges.append((first, a, w, [p0, m], tg.curve[e]))
        edges.append((second, w, b, [pos[w], (p1[0] + shift[0], p1[1] + shift[1])], tg.curve[e]))
    start = "1" if symmetric else "0"
    zx, zy = pos["Z"]
    sx, sy = pos[start]
    # the lift of ``start`` on the first side's line just above Z
    k = (zy - zx + Fraction(1, 2)) - (sy - sx)
    edges.append((f"{start}-Z", "Z", start, [pos["Z"], (sx, sy + k)], None))
    return torus_graph(pos, edges, tg.curves)


@dataclass(frozen=True)
class ExtensionMinor:
    ops: tuple
    minor: MultiGraph
    vertex_map: dict  # K3,3 vertex -> vertex of the minor
    model: MinorModel


def lemma3_minor(extension: MultiGraph | None = None) -> ExtensionMinor:
    g = extension if extension is not None else h3_extension()
    try:
        trace = MinorTrace(g).run(EXTENSION_OPS)
    except (GraphError, KeyError) as exc:
        raise GraphError(f"malformed H_3 extension: {exc}") from exc
    model = trace.model(K33, EXTENSION_BIPARTITION)
    if model is None or trace.graph.num_edges() != K33.num_edges() or not verify_minor_model(g, K33, model):
        raise GraphError("malformed H_3 extension: ops do not give K3,3")
    return ExtensionMinor(EXTENSION_OPS, trace.graph, dict(EXTENSION_BIPARTITION), model)


# ---------------------------------------------------------------------------
# obstruction certificates


@dataclass(frozen=True)
class K5viaLemma1:
    p: int
    q: int
    r: int
    s: int
    path: CornerPath
    arrangement_ops: tuple
    reduction: ReductionCertificate
    model: MinorModel
    kind: str = field(default="K5viaLemma1", init=False)


@dataclass(frozen=True)
class K33viaLemma2:
    k: int
    p: int
    q: int
    method: str  # "recipe" or "search"
    branch: tuple  # p1..p6 (recipe only)
    paths: tuple  # ((i, j), vertices, edges) for each of the nine edges
    model: MinorModel
    kind: str = field(default="K33viaLemma2", init=False)


@dataclass(frozen=True)
class K33viaLemma3:
    extension: MultiGraph
    ops: tuple
    vertex_map: dict
    model: MinorModel
    mirror_branch: K33viaLemma2
    kind: str = field(default="K33viaLemma3", init=False)


def lemma1_k5(p: int, q: int, r: int, s: int) -> K5viaLemma1:
    """K5 minor of T(p,q) overlaid with T(r,-s), with every step recorded."""
    if p < 2 or q < 3 or r < 1 or s < 1:
        raise ValueError("need p >= 2, q >= 3, r >= 1, s >= 1")
    tg = corner_arrangement(p, q, r, s)
    path = find_corner_path(tg)
    red = reduce_arrangement_to_S(tg, path)
    cert = reduce_to_K5(red.spec)
    trace = MinorTrace(tg.graph).run(list(red.ops) + cert.ops())
    inverse = {k: v for v, k in cert.final_isomorphism}
    model = trace.model(K5, inverse)
    if model is None:
        raise GraphError("corner pipeline did not end in K5")
    return K5viaLemma1(p, q, r, s, path, red.ops, cert, model)


def mirror_link_arrangement(k: int, p: int, q: int) -> TorusGraph:
    return arrangement([CurveSpec(HomologyClass(p, q), copies=k), CurveSpec(HomologyClass(p, -q), copies=k)])


def _k33_edge(x: int, y: int) -> int:
    return x * 3 + (y - 3)


# p1, p2, p6 on one side and p3, p4, p5 on the other; K3,3 vertex = index here
_K33_SIDES = (0, 1, 5, 2, 3, 4)
_K33_PAIRS = ((0, 2), (2, 1), (1, 3), (3, 0), (0, 4), (4, 1), (2, 5), (5, 3), (4, 5))


def _subdivision_model(branch: tuple, paths: list) -> MinorModel:
    """Minor model of K3,3 from six branch vertices and nine internally disjoint paths."""
    where = {v: _K33_SIDES.index(i) for i, v in enumerate(branch)}
    sets = {x: {branch[_K33_SIDES[x]]} for x in range(6)}
    assign = {}
    for (i, j), verts, edges in paths:
        x, y = where[branch[i]], where[branch[j]]
        sets[x].update(verts[1:-1])
        left, right = (x, y) if x < 3 else (y, x)
        assign[_k33_edge(left, right)] = edges[-1]
    return MinorModel({x: frozenset(s) for x, s in sets.items()}, assign)


class _Curves:
    """Vertex / edge order of every curve of an arrangement."""

    def __init__(self, tg: TorusGraph):
        self.tg = tg
        self.verts = {}
        self.edges = {}
        self.through: dict = {v: set() for v in tg.vertices}
        for i in range(len(tg.curves)):
            es = tg.curve_edges(i)
            self.edges[i] = es
            self.verts[i] = [tg.edges[e][0] for e in es]
            for v in self.verts[i]:
                self.through[v].add(i)

    def other(self, i: int, v) -> int:
        (j,) = self.through[v] - {i}
        return j

    def arc(self, i: int, a, b, d: int) -> tuple[list, list]:
        vs, es = self.verts[i], self.edges[i]
        n = len(vs)
        k = vs.index(a)
        verts, edges = [a], []
        while True:
            if d == 1:
                edges.append(es[k])
                k = (k + 1) % n
            else:
                k = (k - 1) % n
                edges.append(es[k])
            verts.append(vs[k])
            if vs[k] == b or len(verts) > n + 1:
                break
        if verts[-1] != b:
            raise GraphError("arc endpoint not on curve")
        return verts, edges

    def walk_from(self, i: int, a, d: int) -> list:
        vs = self.verts[i]
        k = vs.index(a)
        n = len(vs)
        return [vs[(k + d * t) % n] for t in range(1, n + 1)]


def _k33_recipe(tg: TorusGraph):
    cv = _Curves(tg)
    fam_a = [i for i, c in enumerate(tg.curves) if c.spec_index == 0]
    fam_b = [i for i, c in enumerate(tg.curves) if c.spec_index == 1]
    for c1, c1p, da, dc in itertools.product(fam_b, fam_a, (1, -1), (1, -1)):
        on = [v for v in cv.walk_from(c1p, cv.verts[c1p][0], da) if c1 in cv.through[v]]
        for p1, p2 in zip(on, on[1:] + on[:1]):
            if p1 == p2:
                continue
            p3 = cv.walk_from(c1, p1, dc)[0]
            c2p = cv.other(c1, p3)
            if c2p == c1p:
                continue
            p4 = next(v for v in cv.walk_from(c2p, p3, da) if c1 in cv.through[v])
            ring = cv.walk_from(c1, p1, dc)
            if not ring.index(p3) < ring.index(p2) < ring.index(p4):
                continue
            seg12 = cv.arc(c1p, p1, p2, da)[0][1:-1]
            seg34 = cv.arc(c2p, p3, p4, da)[0][1:-1]
            for c2 in fam_b:
                if c2 == c1:
                    continue
                h5 = [v for v in seg12 if c2 in cv.through[v]]
                h6 = [v for v in seg34 if c2 in cv.through[v]]
                if len(h5) != 1 or len(h6) != 1:
                    continue
                p5, p6 = h5[0], h6[0]
                pts = (p1, p2, p3, p4, p5, p6)
                paths = [
                    ((0, 2), *cv.arc(c1, p1, p3, dc)),
                    ((2, 1), *cv.arc(c1, p3, p2, dc)),
                    ((1, 3), *cv.arc(c1, p2, p4, dc)),
                    ((3, 0), *cv.arc(c1, p4, p1, dc)),
                    ((0, 4), *cv.arc(c1p, p1, p5, da)),
                    ((4, 1), *cv.arc(c1p, p5, p2, da)),
                    ((2, 5), *cv.arc(c2p, p3, p6, da)),
                    ((5, 3), *cv.arc(c2p, p6, p4, da)),
                ]
                for d2 in (1, -1):
                    last = ((4, 5), *cv.arc(c2, p5, p6, d2))
                    if _paths_ok(pts, paths + [last]):
                        return pts, paths + [last]
    return None


def _paths_ok(branch: tuple, paths: list) -> bool:
    seen = set(branch)
    if len(seen) != 6:
        return False
    for (i, j), verts, edges in paths:
        if verts[0] != branch[i] or verts[-1] != branch[j] or len(edges) != len(verts) - 1:
            return False
        inner = set(verts[1:-1])
        if len(inner) != len(verts) - 2 or inner & seen:
            return False
        seen |= inner
    return True


def lemma2_k33(k: int, p: int, q: int) -> K33viaLemma2:
    """K3,3 subdivision in T(kp,kq) overlaid with T(kp,-kq)."""
    if k < 2:
        raise ValueError("the mirror-link construction needs k >= 2")
    if p == 0 or q == 0:
        raise ValueError("p and q must be nonzero")
    tg = mirror_link_arrangement(k, p, q)
    found = _k33_recipe(tg)
    if found is not None:
        branch, paths = found
        model = _subdivision_model(branch, paths)
        if verify_minor_model(tg.graph, K33, model):
            frozen = tuple(((i, j), tuple(v), tuple(e)) for (i, j), v, e in paths)
            return K33viaLemma2(k, p, q, "recipe", branch, frozen, model)
    model = has_minor(tg.graph, K33)
    if model is None:
        raise GraphError(f"no K3,3 found in the mirror-link arrangement for k={k}, ({p},{q})")
    return K33viaLemma2(k, p, q, "search", (), (), model)


def h3_certificate() -> K33viaLemma3:
    res = lemma3_minor()
    return K33viaLemma3(h3_extension(), res.ops, res.vertex_map, res.model, lemma2_k33(2, 1, 1))


# verifiers ---------------------------------------------------------------


def obstruction_problems(cert) -> list[str]:
    """Independent re-check of an obstruction certificate; empty means valid."""
    try:
        if isinstance(cert, K5viaLemma1):
            return _check_k5(cert)
        if isinstance(cert, K33viaLemma2):
            return _check_k33_link(cert)
        if isinstance(cert, K33viaLemma3):
            return _check_k33_ladder(cert)
    except (GraphError, KeyError, ValueError, TypeError) as exc:
        return [f"replay failed: {exc}"]
    return [f"unknown certificate type {type(cert).__name__}"]


def verify_obstruction(cert) -> bool:
    return not obstruction_problems(cert)


def _check_k5(cert: K5viaLemma1) -> list[str]:
    out = []
    tg = corner_arrangement(cert.p, cert.q, cert.r, cert.s)
    if not check_corner_path(tg, cert.path):
        out.append("corner path is invalid")
    trace = MinorTrace(tg.graph).run(cert.arrangement_ops)
    if trace.graph != build_S(cert.reduction.initial):
        out.append("arrangement ops do not give S(p,q)")
    if sorted((cert.reduction.initial.p, cert.reduction.initial.q)) != sorted((cert.p, cert.q)):
        out.append("reduction starts from the wrong circulant")
    if not verify_certificate(cert.reduction):
        out.append("circulant reduction does not verify")
    if not verify_minor_model(tg.graph, K5, cert.model):
        out.append("K5 model on the arrangement is invalid")
    return out


def _check_k33_link(cert: K33viaLemma2) -> list[str]:
    out = []
    tg = mirror_link_arrangement(cert.k, cert.p, cert.q)
    g = tg.graph
    if cert.method == "recipe":
        paths = [(ij, list(v), list(e)) for ij, v, e in cert.paths]
        if len(paths) != 9 or sorted(ij for ij, _, _ in paths) != sorted(_K33_PAIRS):
            out.append("recipe must list the nine K3,3 edges")
        if not _paths_ok(tuple(cert.branch), paths):
            out.append("paths are not internally disjoint between branch vertices")
        for _, verts, edges in paths:
            for e, (x, y) in zip(edges, zip(verts, verts[1:])):
                if e not in g.edges or set(g.endpoints(e)) != {x, y}:
                    out.append(f"edge {e!r} does not join {x!r} and {y!r}")
                    break
        if not out and _subdivision_model(tuple(cert.branch), paths) != cert.model:
            out.append("model does not match the listed paths")
    if not verify_minor_model(g, K33, cert.model):
        out.append("K3,3 model on the arrangement is invalid")
    return out


def _check_k33_ladder(cert: K33viaLemma3) -> list[str]:
    out = []
    kinds = sorted(op["op"] for op in cert.ops)
    if kinds != ["contract", "contract", "delete"]:
        out.append("expected exactly one deletion and two contractions")
    trace = MinorTrace(cert.extension).run(cert.ops)
    vmap = {x: cert.vertex_map[x] for x in K33.vertices}
    if is_isomorphic(trace.graph, K33) is None or trace.model(K33, vmap) is None:
        out.append("replayed ops do not give K3,3")
    if not verify_minor_model(cert.extension, K33, cert.model):
        out.append("K3,3 model on the extension is invalid")
    out += [f"mirror branch: {m}" for m in _check_k33_link(cert.mirror_branch)]
    if (cert.mirror_branch.k, abs(cert.mirror_branch.p), abs(cert.mirror_branch.q)) != (2, 1, 1):
        out.append("mirror branch must be the Hopf pair T(2,2) with T(2,-2)")
    return out


# ---------------------------------------------------------------------------
# Hopf ladder search


@dataclass(frozen=True)
class H3Witness:
    cycles: tuple  # two walks
    classes: tuple
    paths: tuple  # three edge lists, each from cycles[0] to cycles[1]
    ends: tuple  # ((start on cycle 0, end on cycle 1), ...)
    orientation: SideOrientation | None


def _hopf_class(c: HomologyClass) -> bool:
    return abs(c.a) == 1 and abs(c.b) == 1


def find_hopf_ladder_subgraph(tg: TorusGraph, cap: int | None = CENSUS_EDGE_CAP, census=None) -> H3Witness | None:
    """Two disjoint Hopf-linked cycles joined by three vertex-disjoint paths."""
    census = census or knot_link_census(tg, cap)
    g = tg.graph
    hopf = [(w, c) for w, c in census.cycles if _hopf_class(c)]
    for (w1, c1), (w2, c2) in itertools.combinations(hopf, 2):
        if c1.unsigned() != c2.unsigned():
            continue
        v1, v2 = set(walk_vertices(g, w1)), set(walk_vertices(g, w2))
        if v1 & v2:
            continue
        found = _three_paths(g, w1, w2, v1, v2)
        if found is None:
            continue
        paths, ends = found
        orientation = orient_by_attachments(tg, (w1, w2), ([a for a, _ in ends], [b for _, b in ends]))
        return H3Witness((w1, w2), (c1, c2), paths, ends, orientation)
    return None


def _three_paths(g: MultiGraph, w1, w2, v1: set, v2: set):
    used = {e for e, _ in w1} | {e for e, _ in w2}
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    pick = {}
    for e, (u, v) in g.edges.items():
        if u == v or e in used:
            continue
        h.add_edge(u, v)
        pick.setdefault(frozenset((u, v)), e)
    src, dst = object(), object()
    h.add_edges_from((src, v) for v in v1)
    h.add_edges_from((v, dst) for v in v2)
    try:
        raw = list(nx.node_disjoint_paths(h, src, dst))
    except nx.NetworkXNoPath:
        return None
    if len(raw) < 3:
        return None
    paths, ends = [], []
    for p in sorted(raw, key=lambda p: (len(p), str(p)))[:3]:
        inner = p[1:-1]
        i = max(k for k, v in enumerate(inner) if v in v1)
        j = next(k for k in range(i, len(inner)) if inner[k] in v2)
        seg = inner[i : j + 1]
        paths.append(tuple(pick[frozenset(ab)] for ab in zip(seg, seg[1:])))
        ends.append((seg[0], seg[-1]))
    return tuple(paths), tuple(ends)


def witness_problems(tg: TorusGraph, w: H3Witness) -> list[str]:
    g = tg.graph
    out = []
    try:
        walks = [orient_walk(g, list(c)) for c in w.cycles]
    except GraphError as exc:
        return [f"cycle is not a closed walk: {exc}"]
    vs = [walk_vertices(g, c) for c in walks]
    if any(len(set(x)) != len(x) for x in vs) or set(vs[0]) & set(vs[1]):
        out.append("cycles are not simple and disjoint")
    classes = [cycle_class(tg, c) for c in walks]
    if not all(_hopf_class(c) for c in classes) or classes[0].unsigned() != classes[1].unsigned():
        out.append("cycles do not form a Hopf link")
    inner_all: set = set()
    starts, stops = set(), set()
    for path, (a, b) in zip(w.paths, w.ends):
        x, verts = a, [a]
        for e in path:
            u, v = g.endpoints(e)
            x = v if u == x else u if v == x else None
            if x is None:
                out.append("path is not a walk")
                break
            verts.append(x)
        if verts[-1] != b or a not in vs[0] or b not in vs[1]:
            out.append("path does not join the two cycles")
        inner = set(verts[1:-1])
        if inner & (set(vs[0]) | set(vs[1]) | inner_all) or len(inner) != len(verts) - 2:
            out.append("paths are not internally disjoint")
        inner_all |= inner
        starts.add(a)
        stops.add(b)
    if len(w.paths) != 3 or len(starts) != 3 or len(stops) != 3:
        out.append("need three paths with distinct endpoints")
    return out


# ---------------------------------------------------------------------------
# the classifier


class Case(str, Enum):
    KNOT = "knot"
    NON_HOPF_LINK = "non_hopf_link"
    HOPF_LADDER = "hopf_ladder"


@dataclass(frozen=True)
class Witness:
    cycles: tuple  # walks
    classes: tuple
    ladder: H3Witness | None = None


@dataclass(frozen=True)
class Chiral:
    case: Case
    witness: Witness
    obstruction: object
    tag: str = field(default="chiral", init=False)


@dataclass(frozen=True)
class TrivialEmbedding:
    reason: str = "every simple cycle is null-homologous"
    tag: str = field(default="trivial_embedding", init=False)


@dataclass(frozen=True)
class AchiralCatalogued:
    reason: str
    tag: str = field(default="achiral_catalogued", init=False)


@dataclass(frozen=True)
class Unknown:
    diagnostics: tuple
    tag: str = field(default="unknown", init=False)


def _witness_class(c: HomologyClass) -> HomologyClass:
    return c.unsigned()


def _knot_obstruction(c: HomologyClass) -> K5viaLemma1:
    """Obstruction for a torus knot T(a,b) together with its mirror image."""
    p, q = sorted((abs(c.a), abs(c.b)))
    return lemma1_k5(p, q, p, q)


def classify_embedding(tg: TorusGraph, cap: int | None = CENSUS_EDGE_CAP, oracle_cap: int | None = None):
    if not is_planar(tg.graph, oracle_cap):
        raise NonplanarInput("abstract graph is not planar")
    census = knot_link_census(tg, cap)

    knots = [(w, c) for w, c in census.cycles if not c.is_zero() and classify_knot(c) is KnotType.TORUS]
    if knots:
        w, c = min(knots, key=lambda x: (sorted((abs(x[1].a), abs(x[1].b))), len(x[0])))
        return Chiral(Case.KNOT, Witness((w,), (_witness_class(c),)), _knot_obstruction(c))

    links = [(cls, fam) for cls, fam in census.families.items() if len(fam) >= 2]
    for cls, fam in sorted(links, key=lambda x: (abs(x[0].a) + abs(x[0].b), -len(x[1]))):
        if classify_link(cls, len(fam)) is LinkType.TORUS:
            k = len(fam)
            walks = tuple(fam)
            classes = tuple(_witness_class(cycle_class(tg, w)) for w in walks)
            return Chiral(Case.NON_HOPF_LINK, Witness(walks, classes), lemma2_k33(k, abs(cls.a), abs(cls.b)))

    hopf = [cls for cls, fam in links if classify_link(cls, 2) is LinkType.HOPF]
    if hopf:
        h3 = find_hopf_ladder_subgraph(tg, cap, census)
        if h3 is not None:
            classes = tuple(_witness_class(c) for c in h3.classes)
            return Chiral(Case.HOPF_LADDER, Witness(h3.cycles, classes, h3), h3_certificate())
        for n in (0, 1, 2):
            if is_isomorphic(tg.graph, build_hopf_ladder(n).graph) is not None:
                return AchiralCatalogued(f"Hopf ladder H_{n}: at most two rungs fix no orientation of the sides")
        return Unknown(("Hopf link found but no three-rung Hopf ladder within search caps",))

    if all(c.is_zero() for c in census.knots):
        return TrivialEmbedding()
    seen = ", ".join(str(c) for c in census.knots if not c.is_zero())
    return Unknown((f"essential cycles of classes {seen} but no chiral knot or link",))


def verdict_problems(tg: TorusGraph, verdict) -> list[str]:
    """Re-check a Chiral verdict's witness cycles and obstruction."""
    if not isinstance(verdict, Chiral):
        return []
    out = []
    for w, c in zip(verdict.witness.cycles, verdict.witness.classes):
        try:
            walk = orient_walk(tg.graph, list(w))
        except GraphError as exc:
            out.append(f"witness is not a closed walk: {exc}")
            continue
        if cycle_class(tg, walk).unsigned() != as_class(c).unsigned():
            out.append(f"witness cycle class differs from {c}")
    if verdict.case is Case.KNOT and classify_knot(verdict.witness.classes[0]) is not KnotType.TORUS:
        out.append("knot witness is trivial")
    if verdict.case is Case.HOPF_LADDER:
        if verdict.witness.ladder is None:
            out.append("Hopf ladder witness missing")
        else:
            out += witness_problems(tg, verdict.witness.ladder)
    out += obstruction_problems(verdict.obstruction)
    return out
