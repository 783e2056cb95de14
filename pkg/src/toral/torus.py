"""Graphs on the flat torus [0,1)^2 with exact rational geometry.

Conventions: the longitude is the +x direction and the meridian the +y
direction, so a closed curve of class (a, b) lifts to a path with total
displacement (a, b) in the universal cover.  Every edge stores a straight or
piecewise-straight lift starting at its tail's position; its winding is the
integer vector ``lift_end - position[head]``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .graph import EdgeId, GraphError, MinorTrace, MultiGraph, OracleCapExceeded, Vertex

Point = tuple[Fraction, Fraction]

#: Graphs with more edges than this are refused by the cycle census.
CENSUS_EDGE_CAP = 20


class ArrangementError(ValueError):
    """Curves could not be placed in general position."""


@dataclass(frozen=True, order=True)
class HomologyClass:
    a: int
    b: int

    def __iter__(self):
        return iter((self.a, self.b))

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(-self.a, -self.b)

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        return HomologyClass(self.a + other.a, self.b + other.b)

    def __mul__(self, k: int) -> "HomologyClass":
        return HomologyClass(k * self.a, k * self.b)

    __rmul__ = __mul__

    @property
    def divisor(self) -> int:
        return gcd(abs(self.a), abs(self.b))

    def is_primitive(self) -> bool:
        return self.divisor == 1

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def unsigned(self) -> "HomologyClass":
        """Representative of {c, -c} with a > 0, or a == 0 and b >= 0."""
        if self.a < 0 or (self.a == 0 and self.b < 0):
            return -self
        return self

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def as_class(c) -> HomologyClass:
    return c if isinstance(c, HomologyClass) else HomologyClass(*c)


def mirror(c) -> HomologyClass:
    """Mirror image through the plane z = 0 acts on classes by (a, b) -> (a, -b)."""
    c = as_class(c)
    return HomologyClass(c.a, -c.b)


def intersection_count(c1, c2) -> int:
    """Minimal number of intersection points of two curves in these classes."""
    c1, c2 = as_class(c1), as_class(c2)
    return abs(c1.a * c2.b - c1.b * c2.a)


# ---------------------------------------------------------------------------
# knot and link classification


class KnotType(str, Enum):
    TRIVIAL = "trivial_knot"
    TORUS = "chiral_torus_knot"


class LinkType(str, Enum):
    SPLIT = "split_unlink"
    HOPF = "hopf_link"
    TORUS = "chiral_torus_link"


def classify_knot(c) -> KnotType:
    c = as_class(c)
    if not c.is_zero() and not c.is_primitive():
        raise ValueError(f"class {c} is not realized by a simple closed curve")
    if abs(c.a) >= 2 and abs(c.b) >= 2:
        return KnotType.TORUS
    return KnotType.TRIVIAL


def classify_link(c, k: int) -> LinkType:
    """Type of the link formed by ``k`` parallel curves of primitive class ``c``."""
    c = as_class(c)
    if k < 2:
        raise ValueError("a link needs at least two components")
    if not c.is_primitive():
        raise ValueError(f"component class {c} is not primitive")
    if c.a * c.b == 0:
        return LinkType.SPLIT
    if k == 2 and abs(c.a) == 1 and abs(c.b) == 1:
        return LinkType.HOPF
    return LinkType.TORUS


def _torus_solutions(m: Sequence[Sequence[int]], rhs: Sequence[Fraction]) -> list[tuple[Fraction, Fraction]]:
    """All (t, u) in [0,1)^2 with m @ (t, u) = rhs mod Z^2."""
    (p, q), (r, s) = m
    det = p * s - q * r
    if det == 0:
        raise ArrangementError("parallel system")
    lo_x = min(0, p) + min(0, q)
    hi_x = max(0, p) + max(0, q)
    lo_y = min(0, r) + min(0, s)
    hi_y = max(0, r) + max(0, s)
    out = []
    for n1 in range(math.floor(lo_x - rhs[0]) - 1, math.ceil(hi_x - rhs[0]) + 2):
        for n2 in range(math.floor(lo_y - rhs[1]) - 1, math.ceil(hi_y - rhs[1]) + 2):
            x, y = rhs[0] + n1, rhs[1] + n2
            t = Fraction(s * x - q * y, det)
            u = Fraction(-r * x + p * y, det)
            if 0 <= t < 1 and 0 <= u < 1:
                out.append((t, u))
    return sorted(out)


def linking_number(c1, c2=None) -> int:
    """Linking number of two disjoint parallel curves on the standard torus.

    ``c2`` defaults to a parallel copy of ``c1`` with the same orientation and
    must otherwise be +c1 or -c1.  The curves are placed on the torus of
    revolution with radii 2 and 1 and projected to the xy-plane; crossings
    occur where equal angles around the core meet opposite tube angles, and
    the linking number is half the sum of the crossing signs.
    """
    c1 = as_class(c1)
    c2 = c1 if c2 is None else as_class(c2)
    if not c1.is_primitive() or c1.unsigned() != c2.unsigned():
        raise ValueError("linking number is defined here for parallel primitive classes")
    # (theta, phi) in turns; the second curve is shifted half a spacing sideways
    base1 = (Fraction(0), Fraction(1, 7))
    if c1.a != 0:
        base2 = (base1[0], base1[1] + Fraction(1, 2 * abs(c1.a)))
    else:
        base2 = (base1[0] + Fraction(1, 2 * abs(c1.b)), base1[1])
    m = ((c1.a, -c2.a), (c1.b, c2.b))
    if c1.a * c2.b + c2.a * c1.b == 0:
        return 0
    rhs = (base2[0] - base1[0], -base1[1] - base2[1])
    total = 0
    for t, u in _torus_solutions(m, rhs):
        s1 = _tube_sample(c1, base1, t)
        s2 = _tube_sample(c2, base2, u)
        over, under = (s1, s2) if s1[0] > s2[0] else (s2, s1)
        cross = over[1][0] * under[1][1] - over[1][1] * under[1][0]
        total += 1 if cross > 0 else -1
    return total // 2


def _tube_sample(c: HomologyClass, base: Point, t: Fraction):
    """Height and projected tangent of a torus curve at parameter t."""
    big, small = 2.0, 1.0
    # meridian runs so that T(2,2) is the positive Hopf link
    theta = 2 * math.pi * float(base[0] + c.a * t)
    phi = -2 * math.pi * float(base[1] + c.b * t)
    rad = big + small * math.cos(phi)
    drad = small * math.sin(phi) * 2 * math.pi * c.b
    dtheta = 2 * math.pi * c.a
    tangent = (
        drad * math.cos(theta) - rad * math.sin(theta) * dtheta,
        drad * math.sin(theta) + rad * math.cos(theta) * dtheta,
    )
    return small * math.sin(phi), tangent


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class CurveSpec:
    """``copies`` parallel geodesics of a primitive class.

    ``offset`` shifts the family sideways; ``None`` lets the arrangement pick
    one.  An anchored curve is pinned through the corner of the square.
    """

    homology: HomologyClass
    copies: int = 1
    offset: Fraction | None = None
    anchored: bool = False

    def __post_init__(self):
        object.__setattr__(self, "homology", as_class(self.homology))
        if self.copies < 1:
            raise ValueError("copies must be >= 1")
        if self.homology.is_zero() or not self.homology.is_primitive():
            raise ValueError(f"curve class {self.homology} must be primitive and nonzero")
        if self.anchored and self.copies != 1:
            raise ValueError("only a single curve can be anchored at the corner")

    @classmethod
    def from_pair(cls, a: int, b: int, copies: int = 1, **kw) -> "CurveSpec":
        """Split a possibly non-primitive class (a, b) into gcd(a, b) copies."""
        d = gcd(abs(a), abs(b))
        if d == 0:
            raise ValueError("class (0,0) is not a curve")
        return cls(HomologyClass(a // d, b // d), copies * d, **kw)


@dataclass(frozen=True)
class Curve:
    homology: HomologyClass
    base: Point
    spec_index: int
    copy: int
    anchored: bool = False

    def point(self, t: Fraction) -> Point:
        return (self.base[0] + self.homology.a * t, self.base[1] + self.homology.b * t)


def frac_point(p: Point) -> Point:
    return (p[0] - math.floor(p[0]), p[1] - math.floor(p[1]))


def _family_bases(spec: CurveSpec, offset: Fraction) -> list[Point]:
    a, b = spec.homology
    k = spec.copies
    if a != 0:
        return [(Fraction(0), (offset + Fraction(j, k * abs(a))) % 1) for j in range(k)]
    return [((offset + Fraction(j, k * abs(b))) % 1, Fraction(0)) for j in range(k)]


def geodesic(spec: CurveSpec, offset: Fraction | None = None) -> list[list[Point]]:
    """Closed polylines (square pieces, in order) of the curves in ``spec``."""
    if offset is None:
        offset = Fraction(0) if spec.anchored else (spec.offset if spec.offset is not None else Fraction(1, 3))
    out = []
    for base in _family_bases(spec, offset):
        curve = Curve(spec.homology, base, 0, 0)
        cuts = _boundary_params(curve)
        pieces = []
        for t0, t1 in zip(cuts, cuts[1:] + [Fraction(1)]):
            p0, p1 = curve.point(t0), curve.point(t1)
            mid = curve.point((t0 + t1) / 2)
            shift = (math.floor(mid[0]), math.floor(mid[1]))
            pieces.append([(p0[0] - shift[0], p0[1] - shift[1]), (p1[0] - shift[0], p1[1] - shift[1])])
        out.append(pieces)
    return out


def _boundary_params(curve: Curve) -> list[Fraction]:
    """Parameters in [0,1) where the curve meets the square boundary (plus 0)."""
    a, b = curve.homology
    ts = {Fraction(0)}
    for coord, speed in ((curve.base[0], a), (curve.base[1], b)):
        if speed == 0:
            continue
        for n in range(-abs(speed) - 2, abs(speed) + 3):
            t = Fraction(n - coord, speed)
            if 0 <= t < 1:
                ts.add(t)
    return sorted(ts)


# ---------------------------------------------------------------------------
# torus graphs


@dataclass
class TorusGraph:
    """A multigraph embedded in the flat torus.

    ``lifts`` maps each edge to a polyline in the universal cover starting at
    the tail's position; ``curve`` tags edges with the index of the input
    curve they came from (or None).
    """

    graph: MultiGraph
    position: dict
    lifts: dict
    curve: dict = field(default_factory=dict)
    curves: tuple = ()

    def __post_init__(self):
        self.winding = {}
        for e, (u, v) in self.graph.edges.items():
            poly = self.lifts[e]
            if poly[0] != self.position[u]:
                raise GraphError(f"lift of edge {e!r} does not start at its tail")
            end, head = poly[-1], self.position[v]
            w = (end[0] - head[0], end[1] - head[1])
            if w[0].denominator != 1 or w[1].denominator != 1:
                raise GraphError(f"lift of edge {e!r} does not end at a lift of its head")
            self.winding[e] = (int(w[0]), int(w[1]))
        for v, (x, y) in self.position.items():
            if not (0 <= x < 1 and 0 <= y < 1):
                raise GraphError(f"vertex {v!r} lies outside [0,1)^2")

    @property
    def vertices(self):
        return self.graph.vertices

    @property
    def edges(self):
        return self.graph.edges

    def curve_edges(self, index: int) -> list[EdgeId]:
        """Edges of one input curve in the order the curve visits them."""
        es = [e for e, c in self.curve.items() if c == index]
        if not es:
            return []
        nxt = {self.edges[e][0]: e for e in es}
        order = [es[0]]
        while True:
            e = nxt[self.edges[order[-1]][1]]
            if e == order[0]:
                return order
            order.append(e)

    def curve_vertices(self, index: int) -> list[Vertex]:
        return [self.edges[e][0] for e in self.curve_edges(index)]


def torus_graph(
    positions: dict,
    edges: Iterable[tuple],
    curves: tuple = (),
) -> TorusGraph:
    """Build from ``(eid, u, v, lift, curve)`` tuples; ``lift`` may be None for a
    straight edge with winding given as ``(eid, u, v, (dx, dy), curve)``."""
    es, lifts, tags = [], {}, {}
    for eid, u, v, geom, tag in edges:
        if geom is None or (len(geom) == 2 and all(isinstance(c, int) for c in geom)):
            w = geom or (0, 0)
            pu, pv = positions[u], positions[v]
            geom = [pu, (pv[0] + w[0], pv[1] + w[1])]
        lifts[eid] = [(Fraction(x), Fraction(y)) for x, y in geom]
        es.append((eid, u, v))
        tags[eid] = tag
    pos = {v: (Fraction(x), Fraction(y)) for v, (x, y) in positions.items()}
    return TorusGraph(MultiGraph(list(pos), es), pos, lifts, tags, tuple(curves))


def _place(specs: Sequence[CurveSpec], offsets: Sequence[Fraction]) -> list[Curve]:
    curves = []
    for i, (spec, off) in enumerate(zip(specs, offsets)):
        for j, base in enumerate(_family_bases(spec, off)):
            curves.append(Curve(spec.homology, base, i, j, spec.anchored))
    return curves


def _intersections(curves: Sequence[Curve]):
    """(i, t, j, u, point) for every crossing; raises on coincident curves."""
    out = []
    for i, j in itertools.combinations(range(len(curves)), 2):
        ci, cj = curves[i], curves[j]
        (a1, b1), (a2, b2) = ci.homology, cj.homology
        w = (cj.base[0] - ci.base[0], cj.base[1] - ci.base[1])
        if a1 * b2 - a2 * b1 == 0:
            # parallel: coincide iff the offset is along the direction mod Z^2
            cross = a1 * w[1] - b1 * w[0]
            if cross.denominator == 1:
                raise ArrangementError(f"curves {i} and {j} coincide")
            continue
        for t, u in _torus_solutions(((a1, -a2), (b1, -b2)), w):
            out.append((i, t, j, u, frac_point(ci.point(t))))
    return out


def _degeneracy(curves, crossings) -> str | None:
    seen = {}
    for i, t, j, u, p in crossings:
        if p[0] == 0 or p[1] == 0:
            return f"crossing of curves {i} and {j} on the square boundary"
        if p in seen:
            return "three curves meet in one point"
        seen[p] = (i, j)
    return None


def arrangement(
    specs: Sequence[CurveSpec],
    perturb: bool = True,
    subdivide: int = 1,
) -> TorusGraph:
    """Overlay geodesics and put a vertex at every crossing.

    Offsets not fixed by the caller are chosen automatically; if a crossing
    lands on the square boundary or three curves meet, free offsets are moved
    by multiples of 1/(2L) with L the lcm of all offset denominators, and the
    step is halved until the arrangement is in general position.
    """
    specs = [s if isinstance(s, CurveSpec) else CurveSpec(*s) for s in specs]
    if not specs:
        raise ArrangementError("need at least one curve")
    n = len(specs)
    offsets = []
    for i, s in enumerate(specs):
        if s.anchored:
            offsets.append(Fraction(0))
        elif s.offset is not None:
            offsets.append(Fraction(s.offset))
        else:
            offsets.append(Fraction(2 * i + 1, 2 * (n + 1) * max(1, abs(s.homology.a)) + 1))
    free = [i for i, s in enumerate(specs) if not s.anchored and s.offset is None]
    if not perturb:
        free = []
    problem = None
    for attempt in range(40):
        curves = _place(specs, offsets)
        crossings = _intersections(curves)
        problem = _degeneracy(curves, crossings)
        if problem is None:
            break
        if not free:
            raise ArrangementError(problem)
        lcm = 1
        for o in offsets:
            lcm = lcm * o.denominator // gcd(lcm, o.denominator)
        step = Fraction(1, 2 * lcm * 2 ** (attempt // 4))
        for rank, i in enumerate(free):
            offsets[i] = offsets[i] + (rank + 1) * step
    else:
        raise ArrangementError(problem)
    tg = _build(curves, crossings)
    return subdivide_edges(tg, subdivide) if subdivide > 1 else tg


def _build(curves: Sequence[Curve], crossings) -> TorusGraph:
    stops: dict[int, list[tuple[Fraction, Point]]] = {i: [] for i in range(len(curves))}
    for i, t, j, u, p in crossings:
        stops[i].append((t, p))
        stops[j].append((u, p))
    for i, curve in enumerate(curves):
        if not stops[i]:
            stops[i].append(_lonely_stop(curve))
    points = sorted({p for lst in stops.values() for _, p in lst})
    vid = {p: k for k, p in enumerate(points)}
    edges = []
    for i, curve in enumerate(curves):
        lst = sorted(stops[i])
        for k, (t0, p0) in enumerate(lst):
            t1, p1 = lst[(k + 1) % len(lst)]
            if k + 1 == len(lst):
                t1 += 1
            a, b = curve.homology
            end = (p0[0] + a * (t1 - t0), p0[1] + b * (t1 - t0))
            edges.append((len(edges), vid[p0], vid[p1], [p0, end], i))
    return torus_graph({k: p for p, k in vid.items()}, edges, tuple(curves))


def _lonely_stop(curve: Curve) -> tuple[Fraction, Point]:
    cuts = _boundary_params(curve) + [Fraction(1)]
    t = (cuts[0] + cuts[1]) / 2
    return t, frac_point(curve.point(t))


def subdivide_edges(tg: TorusGraph, pieces: int) -> TorusGraph:
    """Split every edge into ``pieces`` equal straight parts (straight lifts only)."""
    positions = dict(tg.position)
    fresh = itertools.count(max((v for v in tg.vertices if isinstance(v, int)), default=-1) + 1)
    edges = []
    for e, (u, v) in tg.edges.items():
        p0, p1 = tg.lifts[e][0], tg.lifts[e][-1]
        if len(tg.lifts[e]) != 2:
            raise GraphError("subdivision needs straight edge lifts")
        chain = [u]
        lifted = [p0]
        for k in range(1, pieces):
            q = (p0[0] + (p1[0] - p0[0]) * Fraction(k, pieces), p0[1] + (p1[1] - p0[1]) * Fraction(k, pieces))
            w = next(fresh)
            positions[w] = frac_point(q)
            chain.append(w)
            lifted.append(q)
        chain.append(v)
        lifted.append(p1)
        for k in range(pieces):
            a, b = lifted[k], lifted[k + 1]
            start = positions[chain[k]]
            shift = (start[0] - a[0], start[1] - a[1])
            edges.append((len(edges), chain[k], chain[k + 1], [start, (b[0] + shift[0], b[1] + shift[1])], tg.curve.get(e)))
    return torus_graph(positions, edges, tg.curves)


def mirror_graph(tg: TorusGraph) -> TorusGraph:
    """Image under (x, y) -> (x, -y), i.e. the mirror image of the spatial graph."""

    def flip(p):
        return (p[0], -p[1])

    positions = {v: frac_point(flip(p)) for v, p in tg.position.items()}
    edges = []
    for e, (u, v) in tg.edges.items():
        poly = [flip(p) for p in tg.lifts[e]]
        start = positions[u]
        shift = (start[0] - poly[0][0], start[1] - poly[0][1])
        edges.append((e, u, v, [(x + shift[0], y + shift[1]) for x, y in poly], tg.curve.get(e)))
    curves = tuple(
        Curve(mirror(c.homology), frac_point(flip(c.base)), c.spec_index, c.copy, c.anchored) for c in tg.curves
    )
    return torus_graph(positions, edges, curves)


# ---------------------------------------------------------------------------
# walks and homology


Walk = list  # list of (edge id, +1 | -1)


def orient_walk(g: MultiGraph, edges: Sequence) -> Walk:
    """Orient a closed walk given as edge ids (or (edge, sign) pairs)."""
    if edges and isinstance(edges[0], (tuple, list)) and len(edges[0]) == 2 and edges[0][1] in (1, -1):
        walk = [(e, int(s)) for e, s in edges]
        _check_closed(g, walk)
        return walk
    if not edges:
        raise GraphError("empty walk")
    first = edges[0]
    u, v = g.endpoints(first)
    for start, sign in ((u, 1), (v, -1)):
        walk = [(first, sign)]
        at = v if sign == 1 else u
        ok = True
        for e in edges[1:]:
            a, b = g.endpoints(e)
            if a == at:
                walk.append((e, 1))
                at = b
            elif b == at:
                walk.append((e, -1))
                at = a
            else:
                ok = False
                break
        if ok and at == start:
            return walk
    raise GraphError("edges do not form a closed walk")


def _check_closed(g: MultiGraph, walk: Walk) -> None:
    def ends(e, s):
        a, b = g.endpoints(e)
        return (a, b) if s == 1 else (b, a)

    for (e, s), (f, r) in zip(walk, walk[1:] + walk[:1]):
        if ends(e, s)[1] != ends(f, r)[0]:
            raise GraphError("walk is not closed")


def cycle_class(tg: TorusGraph, walk: Sequence) -> HomologyClass:
    walk = orient_walk(tg.graph, list(walk))
    a = sum(s * tg.winding[e][0] for e, s in walk)
    b = sum(s * tg.winding[e][1] for e, s in walk)
    return HomologyClass(a, b)


def walk_vertices(g: MultiGraph, walk: Walk) -> list[Vertex]:
    out = []
    for e, s in walk:
        a, b = g.endpoints(e)
        out.append(a if s == 1 else b)
    return out


def simple_cycles(g: MultiGraph, cap: int | None = CENSUS_EDGE_CAP) -> list[Walk]:
    """Every simple cycle (loops and 2-cycles included) once, as an oriented walk."""
    if cap is not None and g.num_edges() > cap:
        raise OracleCapExceeded(f"cycle census limited to {cap} edges (got {g.num_edges()})")
    order = {v: i for i, v in enumerate(g.vertices)}
    inc = {v: g.incident(v) for v in g.vertices}
    found: dict[frozenset, Walk] = {}
    for s in g.vertices:
        for e in inc[s]:
            a, b = g.endpoints(e)
            if a == b:
                found.setdefault(frozenset([e]), [(e, 1)])

        path: list[tuple[EdgeId, int]] = []
        on_path = {s}

        def dfs(x):
            for e in inc[x]:
                a, b = g.endpoints(e)
                if a == b or (path and path[-1][0] == e):
                    continue
                y, sign = (b, 1) if a == x else (a, -1)
                if y == s and path:
                    cyc = path + [(e, sign)]
                    found.setdefault(frozenset(f for f, _ in cyc), list(cyc))
                elif order[y] > order[s] and y not in on_path:
                    on_path.add(y)
                    path.append((e, sign))
                    dfs(y)
                    path.pop()
                    on_path.discard(y)

        dfs(s)
    return list(found.values())


@dataclass
class Census:
    """Homology classes realized by simple cycles and disjoint parallel families."""

    cycles: list  # (walk, HomologyClass)
    knots: list  # distinct unsigned classes of simple cycles
    families: dict  # unsigned nonzero class -> largest vertex-disjoint list of walks

    @property
    def links(self) -> list[tuple[HomologyClass, int]]:
        return [(c, len(f)) for c, f in self.families.items() if len(f) >= 2]


def knot_link_census(tg: TorusGraph, cap: int | None = CENSUS_EDGE_CAP) -> Census:
    cycles = [(w, cycle_class(tg, w)) for w in simple_cycles(tg.graph, cap)]
    knots = sorted({c.unsigned() for _, c in cycles})
    families = {}
    for cls in knots:
        if cls.is_zero():
            continue
        members = [w for w, c in cycles if c.unsigned() == cls]
        families[cls] = _max_disjoint(tg.graph, members)
    return Census(cycles, knots, families)


def _max_disjoint(g: MultiGraph, walks: list[Walk]) -> list[Walk]:
    vsets = [frozenset(walk_vertices(g, w)) for w in walks]
    order = sorted(range(len(walks)), key=lambda i: (len(vsets[i]), i))
    best: list[int] = []

    def grow(chosen, used, start):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for pos in range(start, len(order)):
            if len(chosen) + (len(order) - pos) <= len(best):
                return
            i = order[pos]
            if vsets[i] & used:
                continue
            chosen.append(i)
            grow(chosen, used | vsets[i], pos + 1)
            chosen.pop()

    grow([], frozenset(), 0)
    return [walks[i] for i in sorted(best)]


# ---------------------------------------------------------------------------
# exact embedding check


def _orient(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _on_segment(p, q, r) -> bool:
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def segment_intersection(p1, p2, q1, q2):
    """None, a single point, or 'overlap' for two closed segments."""
    d1, d2 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    d3, d4 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    if d1 == d2 == d3 == d4 == 0:
        hits = [r for r in (p1, p2) if _on_segment(q1, q2, r)] + [r for r in (q1, q2) if _on_segment(p1, p2, r)]
        hits = sorted(set(hits))
        if not hits:
            return None
        return hits[0] if len(hits) == 1 else "overlap"
    if d1 * d2 > 0 or d3 * d4 > 0:
        return None
    # lines are not parallel here
    a1 = (p2[0] - p1[0], p2[1] - p1[1])
    a2 = (q2[0] - q1[0], q2[1] - q1[1])
    den = a1[0] * a2[1] - a1[1] * a2[0]
    t = ((q1[0] - p1[0]) * a2[1] - (q1[1] - p1[1]) * a2[0]) / den
    return (p1[0] + t * a1[0], p1[1] + t * a1[1])


def crossing_violations(tg: TorusGraph) -> list[tuple]:
    """Pairs of edge pieces that meet somewhere other than a shared vertex."""
    pieces = []  # (edge, piece index, last index, p, q)
    for e, poly in tg.lifts.items():
        for k in range(len(poly) - 1):
            pieces.append((e, k, len(poly) - 2, poly[k], poly[k + 1]))
    vertex_at = {p: v for v, p in tg.position.items()}
    bad = []
    for (e, k, ke, p1, p2), (f, m, kf, q1, q2) in itertools.combinations_with_replacement(pieces, 2):
        lo = (min(p1[0], p2[0]) - max(q1[0], q2[0]), min(p1[1], p2[1]) - max(q1[1], q2[1]))
        hi = (max(p1[0], p2[0]) - min(q1[0], q2[0]), max(p1[1], p2[1]) - min(q1[1], q2[1]))
        for nx in range(math.floor(lo[0]), math.ceil(hi[0]) + 1):
            for ny in range(math.floor(lo[1]), math.ceil(hi[1]) + 1):
                if (e, k) == (f, m) and (nx, ny) == (0, 0):
                    continue
                r1, r2 = (q1[0] + nx, q1[1] + ny), (q2[0] + nx, q2[1] + ny)
                hit = segment_intersection(p1, p2, r1, r2)
                if hit is None:
                    continue
                if hit == "overlap":
                    bad.append((e, f, "overlap"))
                    continue
                ends_p = {p1: k == 0, p2: k == ke}
                ends_q = {r1: m == 0, r2: m == kf}
                if hit in ends_p and hit in ends_q:
                    joint = e == f and (nx, ny) == (0, 0) and abs(k - m) == 1
                    # includes a loop meeting its own translate at its vertex
                    vert = ends_p[hit] and ends_q[hit] and frac_point(hit) in vertex_at
                    if joint or vert:
                        continue
                bad.append((e, f, hit))
    return bad


def is_embedded(tg: TorusGraph) -> bool:
    return not crossing_violations(tg)


# ---------------------------------------------------------------------------
# the corner path


@dataclass
class CornerPath:
    """A path from corner (0,1) to corner (1,0) through the open square.

    ``anchor`` is the edge of the anchored curve through the corner; the path
    leaves the corner along it, follows ``edges`` from ``vertices[0]`` to
    ``vertices[-1]`` and returns to the corner along the other half of
    ``anchor``.  Edges of the anchored curve are always used forwards; edges
    of the (p,q) curve are used backwards when r > s.
    """

    anchor: EdgeId
    edges: list
    vertices: list
    signs: list | None = None

    def walk(self) -> Walk:
        signs = self.signs or [1] * len(self.edges)
        return list(zip(self.edges, signs)) + [(self.anchor, 1)]


def _open_square(p: Point) -> bool:
    return 0 < p[0] < 1 and 0 < p[1] < 1


def _split_curves(tg: TorusGraph) -> tuple[int, int]:
    if len(tg.curves) != 2:
        raise ArrangementError("corner path needs an arrangement of exactly two curves")
    anchored = [i for i, c in enumerate(tg.curves) if c.anchored]
    if len(anchored) != 1:
        raise ArrangementError("exactly one curve must be anchored at the corner")
    b = anchored[0]
    return 1 - b, b


def find_corner_path(tg: TorusGraph) -> CornerPath:
    ia, ib = _split_curves(tg)
    ca, cb = tg.curves[ia].homology, tg.curves[ib].homology
    if not (ca.a >= 1 and ca.b >= 1 and cb.a >= 1 and cb.b <= -1):
        raise ArrangementError("expected T(p,q) with p,q >= 1 and an anchored T(r,-s) with r,s >= 1")
    order = tg.curve_edges(ib)
    # the anchored curve starts at the corner, so its wrapping edge holds the corner
    anchor = next(e for e in order if tg.winding[e] != (0, 0) and _passes_corner(tg, e))
    tail, head = tg.edges[anchor]
    if not (_open_square(tg.position[head]) and _open_square(tg.position[tail])):
        raise ArrangementError("corner edge ends on the boundary")
    if cb.a == 1 and cb.b == -1:
        k = order.index(anchor)
        rest = order[k + 1 :] + order[:k]
        if any(tg.winding[e] != (0, 0) for e in rest):
            raise ArrangementError("diagonal curve leaves the square")
        return CornerPath(anchor, rest, [tg.edges[e][0] for e in rest] + [tail])
    # directed search over edges that stay inside the square.  Along the
    # anchored curve s*x + r*y is constant and along the other curve it grows,
    # so the corner value r can only fall to s if the other curve is reversed.
    back = _reverse_sign(tg)
    out: dict = {v: [] for v in tg.vertices}
    for e, (u, v) in tg.edges.items():
        if tg.winding[e] == (0, 0) and u != v and e != anchor:
            sign = back if tg.curve.get(e) == ia else 1
            if sign == 1:
                out[u].append((e, v, 1))
            else:
                out[v].append((e, u, -1))
    prev = {head: None}
    frontier = [head]
    while frontier and tail not in prev:
        nxt = []
        for x in frontier:
            for e, y, sign in out[x]:
                if y not in prev:
                    prev[y] = (e, x, sign)
                    nxt.append(y)
        frontier = nxt
    if tail not in prev:
        raise ArrangementError("no oriented corner path found")
    edges, verts, signs = [], [tail], []
    x = tail
    while prev[x] is not None:
        e, x, sign = prev[x]
        edges.append(e)
        signs.append(sign)
        verts.append(x)
    return CornerPath(anchor, edges[::-1], verts[::-1], signs[::-1])


def _reverse_sign(tg: TorusGraph) -> int:
    """+1 if the (p,q) curve is followed forwards on the corner path, else -1."""
    ia, ib = _split_curves(tg)
    cb = tg.curves[ib].homology
    return -1 if cb.a > -cb.b else 1


def _passes_corner(tg: TorusGraph, e: EdgeId) -> bool:
    p, q = tg.lifts[e][0], tg.lifts[e][-1]
    for nx in range(math.floor(min(p[0], q[0])), math.ceil(max(p[0], q[0])) + 1):
        for ny in range(math.floor(min(p[1], q[1])), math.ceil(max(p[1], q[1])) + 1):
            c = (Fraction(nx), Fraction(ny))
            if _orient(p, q, c) == 0 and _on_segment(p, q, c):
                return True
    return False


def check_corner_path(tg: TorusGraph, path: CornerPath) -> bool:
    """Orientation, interior and endpoint conditions for a corner path."""
    ia, ib = _split_curves(tg)
    if tg.curve.get(path.anchor) != ib or not _passes_corner(tg, path.anchor):
        return False
    tail, head = tg.edges[path.anchor]
    if not path.vertices or path.vertices[0] != head or path.vertices[-1] != tail:
        return False
    if len(set(path.vertices)) != len(path.vertices):
        return False
    signs = path.signs or [1] * len(path.edges)
    back = _reverse_sign(tg)
    if len(signs) != len(path.edges):
        return False
    for e, sign, (x, y) in zip(path.edges, signs, zip(path.vertices, path.vertices[1:])):
        if tg.curve.get(e) not in (ia, ib) or tg.winding[e] != (0, 0):
            return False
        if sign != (back if tg.curve[e] == ia else 1):
            return False
        if tg.edges[e] != ((x, y) if sign == 1 else (y, x)):
            return False
    if not all(_open_square(tg.position[v]) for v in path.vertices):
        return False
    # the anchored edge must cross the boundary exactly once, at the corner
    p, q = tg.lifts[path.anchor][0], tg.lifts[path.anchor][-1]
    cut = _boundary_hits(p, q)
    if len(cut) != 1 or cut[0][0].denominator != 1 or cut[0][1].denominator != 1:
        return False
    return cycle_class(tg, path.walk()) == HomologyClass(1, -1)


def _boundary_hits(p: Point, q: Point) -> list[Point]:
    hits = set()
    for axis in (0, 1):
        lo, hi = sorted((p[axis], q[axis]))
        for n in range(math.ceil(lo), math.floor(hi) + 1):
            if p[axis] == q[axis]:
                continue
            t = (n - p[axis]) / (q[axis] - p[axis])
            if 0 < t < 1:
                hits.add((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return sorted(hits)


def corner_arrangement(p: int, q: int, r: int, s: int) -> TorusGraph:
    """T(p,q) overlaid with T(r,-s), the latter through the corner."""
    if gcd(p, q) != 1 or gcd(r, s) != 1:
        raise ValueError("both pairs must be coprime")
    return arrangement([CurveSpec(HomologyClass(p, q)), CurveSpec(HomologyClass(r, -s), anchored=True)])


@dataclass(frozen=True)
class ArrangementReduction:
    """Ops taking a corner arrangement to a labelled copy of build_S(spec)."""

    spec: object
    ops: tuple
    graph: MultiGraph

    def replay(self, tg: TorusGraph) -> MultiGraph:
        return MinorTrace(tg.graph).run(self.ops).graph


def reduce_arrangement_to_S(tg: TorusGraph, path: CornerPath) -> ArrangementReduction:
    """Delete the anchored curve off ``path``, contract the other curve on it.

    What is left is the (p,q) curve as a cycle plus the anchored edges of the
    path as chords.  Cycle vertices met by no chord are suppressed by one
    more contraction each, then everything is relabelled as build_S(p,q).
    """
    from .circulant import CirculantSpec, build_S

    ia, ib = _split_curves(tg)
    ca = tg.curves[ia].homology
    spec = CirculantSpec(abs(ca.a), abs(ca.b)).normalized()
    on_path = set(path.edges) | {path.anchor}
    trace = MinorTrace(tg.graph)
    ops: list[dict] = []

    def do(op):
        trace.apply(op)
        ops.append(op)

    for e in tg.curve_edges(ib):
        if e not in on_path:
            do({"op": "delete", "edge": e})
    for e in tg.curve_edges(ia):
        if e in on_path:
            do({"op": "contract", "edge": e})
    for e in tg.curve_edges(ia):
        if e not in trace.graph.edges:
            continue
        u, v = trace.graph.endpoints(e)
        if u != v and all(tg.curve[f] == ia for f in trace.graph.incident(v)):
            do({"op": "contract", "edge": e})

    g = trace.graph
    cycle = [e for e in tg.curve_edges(ia) if e in g.edges]
    chords = [e for e in g.edges if tg.curve[e] == ib]
    n = spec.n
    if len(cycle) != n or len(chords) != n or g.num_vertices() != n:
        raise GraphError(f"reduction left {g.num_vertices()} vertices, expected {n}")
    start = g.endpoints(path.anchor)[0]
    k = next(i for i, e in enumerate(cycle) if g.endpoints(e)[0] == start)
    cycle = cycle[k:] + cycle[:k]
    rank = {g.endpoints(e)[0]: j for j, e in enumerate(cycle)}
    steps = {(rank[g.endpoints(e)[1]] - rank[g.endpoints(e)[0]]) % n for e in chords}
    labels = _unit_labels(g, cycle, chords, rank, steps, spec) if len(steps) == 1 else None
    if labels is not None:
        vmap, emap = labels
    else:
        # chords of uneven length: fall back to a generic isomorphism
        from .graph import edge_bijection, is_isomorphic

        target = build_S(spec)
        vmap = is_isomorphic(g, target)
        if vmap is None:
            raise GraphError("reduced arrangement is not isomorphic to S(p,q)")
        emap = edge_bijection(g, target, vmap)
    relabel = {
        "op": "relabel",
        "vertices": [[v, vmap[v]] for v in g.vertices],
        "edges": [[e, emap[e]] for e in g.edges],
    }
    do(relabel)
    if trace.graph != build_S(spec):
        raise GraphError("relabelled reduction differs from build_S")
    return ArrangementReduction(spec, tuple(ops), trace.graph)


def _unit_labels(g, cycle, chords, rank, steps, spec):
    """Label a cycle-plus-chords graph with constant chord step d as build_S.

    Multiplying by a unit u of Z/n maps steps {1, d} onto {+-1, +-p}; the
    relabelled vertex of cycle position j is u*j.
    """
    n, p = spec.n, spec.p
    (d,) = steps
    names = {1: "C", n - 1: "C", p % n: "c", (n - p) % n: "c"}
    for u in range(1, n):
        if gcd(u, n) != 1 or (u % n) not in names or (u * d) % n not in names:
            continue
        if names[u % n] == names[(u * d) % n]:
            continue
        vmap = {v: (u * j) % n for v, j in rank.items()}
        emap = {}
        for e in cycle + chords:
            x, y = vmap[g.endpoints(e)[0]], vmap[g.endpoints(e)[1]]
            t = (y - x) % n
            kind = names[t]
            step = 1 if kind == "C" else p
            emap[e] = f"{kind}{x if t == step % n else y}"
        return vmap, emap
    return None
