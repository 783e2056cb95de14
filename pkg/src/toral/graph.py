"""Abstract multigraphs, minor operations and a brute-force Kuratowski oracle.

Vertex and edge ids are opaque hashables (the serializers only accept ints and
strings).  Every operation returns a new graph; nothing mutates in place.
"""

from __future__ import annotations

import itertools
import os
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

Vertex = Hashable
EdgeId = Hashable

#: Host size above which the exhaustive minor search refuses to run.
DEFAULT_ORACLE_CAP = 18
#: Largest graph handed to the backtracking isomorphism checker.
ISOMORPHISM_CAP = 32


class GraphError(ValueError):
    """Malformed graph or an operation applied outside its domain."""


class OracleCapExceeded(RuntimeError):
    """An exhaustive search was asked to run on a graph above its size cap."""


def oracle_cap() -> int:
    value = os.environ.get("TORAL_ORACLE_CAP")
    return int(value) if value else DEFAULT_ORACLE_CAP


class MultiGraph:
    """Undirected multigraph with explicit edge identities.

    Parallel edges and loops are allowed.  ``edges`` maps edge id to the
    ordered endpoint pair ``(u, v)``; the order carries no meaning for the
    abstract graph but is kept so that callers can store an orientation.
    """

    __slots__ = ("_vertices", "_vset", "_edges", "vertex_labels", "edge_labels", "_inc")

    def __init__(
        self,
        vertices: Iterable[Vertex] = (),
        edges: Iterable[tuple[EdgeId, Vertex, Vertex]] = (),
        vertex_labels: Mapping[Vertex, str] | None = None,
        edge_labels: Mapping[EdgeId, str] | None = None,
    ):
        verts = tuple(dict.fromkeys(vertices))
        self._vertices = verts
        self._vset = frozenset(verts)
        if len(self._vset) != len(verts):
            raise GraphError("duplicate vertex id")
        emap: dict[EdgeId, tuple[Vertex, Vertex]] = {}
        for eid, u, v in edges:
            if eid in emap:
                raise GraphError(f"duplicate edge id {eid!r}")
            if u not in self._vset or v not in self._vset:
                raise GraphError(f"edge {eid!r} has an endpoint outside the vertex set")
            emap[eid] = (u, v)
        self._edges = emap
        self.vertex_labels = dict(vertex_labels or {})
        self.edge_labels = dict(edge_labels or {})
        self._inc = None

    # -- basic queries -----------------------------------------------------

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> Mapping[EdgeId, tuple[Vertex, Vertex]]:
        return self._edges

    def __contains__(self, v: Vertex) -> bool:
        return v in self._vset

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def endpoints(self, e: EdgeId) -> tuple[Vertex, Vertex]:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphError(f"unknown edge id {e!r}") from None

    def _incidence(self) -> dict[Vertex, list[EdgeId]]:
        if self._inc is None:
            inc: dict[Vertex, list[EdgeId]] = {v: [] for v in self._vertices}
            for eid, (u, v) in self._edges.items():
                inc[u].append(eid)
                if v != u:
                    inc[v].append(eid)
            self._inc = inc
        return self._inc

    def incident(self, v: Vertex) -> list[EdgeId]:
        return list(self._incidence()[v])

    def degree(self, v: Vertex) -> int:
        """Degree with loops counted twice."""
        return sum(2 if self._edges[e][0] == self._edges[e][1] else 1 for e in self._incidence()[v])

    def neighbors(self, v: Vertex) -> set[Vertex]:
        out = set()
        for e in self._incidence()[v]:
            a, b = self._edges[e]
            out.add(b if a == v else a)
        out.discard(v)
        return out

    def simple_adjacency(self) -> dict[Vertex, set[Vertex]]:
        """Adjacency with loops dropped and parallel edges merged."""
        return {v: self.neighbors(v) for v in self._vertices}

    def multiplicity(self, u: Vertex, v: Vertex) -> int:
        return sum(1 for e in self._incidence()[u] if set(self._edges[e]) == {u, v})

    def edges_between(self, u: Vertex, v: Vertex) -> list[EdgeId]:
        return [e for e in self._incidence()[u] if set(self._edges[e]) == {u, v}]

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1

    # -- construction helpers ----------------------------------------------

    def subgraph(self, vertices: Iterable[Vertex]) -> "MultiGraph":
        keep = set(vertices)
        return MultiGraph(
            [v for v in self._vertices if v in keep],
            [(e, u, v) for e, (u, v) in self._edges.items() if u in keep and v in keep],
            {v: s for v, s in self.vertex_labels.items() if v in keep},
            {e: s for e, s in self.edge_labels.items() if e in self._edges},
        )

    def edge_subgraph(self, edge_ids: Iterable[EdgeId]) -> "MultiGraph":
        keep = list(dict.fromkeys(edge_ids))
        verts = dict.fromkeys(v for e in keep for v in self.endpoints(e))
        return MultiGraph(
            [v for v in self._vertices if v in verts],
            [(e, *self._edges[e]) for e in keep],
        )

    def relabeled(self, vertex_map: Mapping[Vertex, Vertex], edge_map: Mapping[EdgeId, EdgeId] | None = None) -> "MultiGraph":
        edge_map = edge_map or {e: e for e in self._edges}
        return MultiGraph(
            [vertex_map[v] for v in self._vertices],
            [(edge_map[e], vertex_map[u], vertex_map[v]) for e, (u, v) in self._edges.items()],
            {vertex_map[v]: s for v, s in self.vertex_labels.items()},
            {edge_map[e]: s for e, s in self.edge_labels.items()},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        if self._vset != other._vset or self._edges.keys() != other._edges.keys():
            return False
        return all(set(self._edges[e]) == set(other._edges[e]) for e in self._edges)

    def __repr__(self) -> str:
        return f"MultiGraph(|V|={self.num_vertices()}, |E|={self.num_edges()})"


# ---------------------------------------------------------------------------
# standard graphs


def complete_graph(n: int) -> MultiGraph:
    verts = list(range(n))
    pairs = list(itertools.combinations(verts, 2))
    return MultiGraph(verts, [(i, u, v) for i, (u, v) in enumerate(pairs)])


def complete_bipartite(a: int, b: int) -> MultiGraph:
    left = list(range(a))
    right = list(range(a, a + b))
    pairs = [(u, v) for u in left for v in right]
    return MultiGraph(left + right, [(i, u, v) for i, (u, v) in enumerate(pairs)])


def cycle_graph(n: int) -> MultiGraph:
    verts = list(range(n))
    return MultiGraph(verts, [(i, i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> MultiGraph:
    verts = list(range(n))
    return MultiGraph(verts, [(i, i, i + 1) for i in range(n - 1)])


K5 = complete_graph(5)
K33 = complete_bipartite(3, 3)


# ---------------------------------------------------------------------------
# minor operations


def delete_edge(g: MultiGraph, e: EdgeId) -> MultiGraph:
    g.endpoints(e)
    return MultiGraph(
        g.vertices,
        [(x, u, v) for x, (u, v) in g.edges.items() if x != e],
        g.vertex_labels,
        {x: s for x, s in g.edge_labels.items() if x != e},
    )


def contract_edge(g: MultiGraph, e: EdgeId) -> MultiGraph:
    """Merge the second endpoint of ``e`` into the first.

    Edges attached to the absorbed vertex are re-pointed; parallel edges and
    the loops this creates are kept.
    """
    u, v = g.endpoints(e)
    if u == v:
        raise GraphError(f"cannot contract loop {e!r}")
    edges = []
    for x, (a, b) in g.edges.items():
        if x == e:
            continue
        edges.append((x, u if a == v else a, u if b == v else b))
    return MultiGraph(
        [w for w in g.vertices if w != v],
        edges,
        {w: s for w, s in g.vertex_labels.items() if w != v},
        {x: s for x, s in g.edge_labels.items() if x != e},
    )


def delete_vertex(g: MultiGraph, v: Vertex) -> MultiGraph:
    if v not in g:
        raise GraphError(f"unknown vertex {v!r}")
    return g.subgraph(w for w in g.vertices if w != v)


def delete_isolated_vertices(g: MultiGraph) -> MultiGraph:
    inc = g._incidence()
    return g.subgraph(v for v in g.vertices if inc[v])


def simplify(g: MultiGraph) -> MultiGraph:
    """Drop loops and keep the first edge of every parallel class."""
    seen = set()
    keep = []
    for e, (u, v) in g.edges.items():
        key = frozenset((u, v))
        if u == v or key in seen:
            continue
        seen.add(key)
        keep.append((e, u, v))
    return MultiGraph(g.vertices, keep, g.vertex_labels)


def disjoint_union(g: MultiGraph, h: MultiGraph) -> MultiGraph:
    """Union after tagging ids with 0/1 to keep them apart."""
    return MultiGraph(
        [(0, v) for v in g.vertices] + [(1, v) for v in h.vertices],
        [((0, e), (0, u), (0, v)) for e, (u, v) in g.edges.items()]
        + [((1, e), (1, u), (1, v)) for e, (u, v) in h.edges.items()],
    )


# ---------------------------------------------------------------------------
# structural predicates


def connected_components(g: MultiGraph, removed: Iterable[Vertex] = ()) -> list[set[Vertex]]:
    gone = set(removed)
    adj = g.simple_adjacency()
    seen: set[Vertex] = set()
    comps = []
    for s in g.vertices:
        if s in seen or s in gone:
            continue
        comp = {s}
        queue = deque([s])
        seen.add(s)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen and y not in gone:
                    seen.add(y)
                    comp.add(y)
                    queue.append(y)
        comps.append(comp)
    return comps


def is_simple(g: MultiGraph) -> bool:
    seen = set()
    for u, v in g.edges.values():
        key = frozenset((u, v))
        if u == v or key in seen:
            return False
        seen.add(key)
    return True


def connectivity(g: MultiGraph) -> int:
    """Vertex connectivity by trying every separator in order of size.

    A complete graph on n vertices gives n - 1 (removing n - 1 vertices leaves
    a single vertex).  Disconnected and empty graphs give 0.
    """
    n = g.num_vertices()
    if n == 0 or not g.is_connected():
        return 0
    for k in range(n - 1):
        for sep in itertools.combinations(g.vertices, k):
            if len(connected_components(g, sep)) > 1:
                return k
    return n - 1


# ---------------------------------------------------------------------------
# isomorphism


def _multiplicity_table(g: MultiGraph) -> dict[Vertex, Counter]:
    table: dict[Vertex, Counter] = {v: Counter() for v in g.vertices}
    for u, v in g.edges.values():
        table[u][v] += 1
        if u != v:
            table[v][u] += 1
    return table


def is_isomorphic(g: MultiGraph, h: MultiGraph, cap: int = ISOMORPHISM_CAP) -> dict[Vertex, Vertex] | None:
    """Return a vertex bijection g -> h preserving edge multiplicities, or None."""
    n = g.num_vertices()
    if max(n, h.num_vertices()) > cap:
        raise OracleCapExceeded(f"isomorphism check limited to {cap} vertices")
    if n != h.num_vertices() or g.num_edges() != h.num_edges():
        return None
    mg, mh = _multiplicity_table(g), _multiplicity_table(h)

    def invariant(table, v):
        row = table[v]
        return (row[v], tuple(sorted(c for w, c in row.items() if w != v)))

    inv_g = {v: invariant(mg, v) for v in g.vertices}
    inv_h = {v: invariant(mh, v) for v in h.vertices}
    if Counter(inv_g.values()) != Counter(inv_h.values()):
        return None
    by_inv: dict[tuple, list[Vertex]] = {}
    for v in h.vertices:
        by_inv.setdefault(inv_h[v], []).append(v)

    # rarest invariant first, then grow along edges so candidates are constrained
    freq = Counter(inv_g.values())
    order: list[Vertex] = []
    placed: set[Vertex] = set()
    remaining = sorted(g.vertices, key=lambda v: freq[inv_g[v]])
    while len(order) < n:
        start = next(v for v in remaining if v not in placed)
        queue = deque([start])
        placed.add(start)
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(mg[x], key=lambda w: freq[inv_g[w]]):
                if y not in placed:
                    placed.add(y)
                    queue.append(y)

    mapping: dict[Vertex, Vertex] = {}
    used: set[Vertex] = set()

    def extend(i: int) -> bool:
        if i == n:
            return True
        x = order[i]
        mapped_nbr = next((y for y in mg[x] if y in mapping and y != x), None)
        pool = mh[mapping[mapped_nbr]] if mapped_nbr is not None else by_inv[inv_g[x]]
        for cand in pool:
            if cand in used or inv_h[cand] != inv_g[x]:
                continue
            if any(mg[x][y] != mh[cand][mapping[y]] for y in mapping):
                continue
            mapping[x] = cand
            used.add(cand)
            if extend(i + 1):
                return True
            del mapping[x]
            used.discard(cand)
        return False

    return dict(mapping) if extend(0) else None


def edge_bijection(g: MultiGraph, h: MultiGraph, vertex_map: Mapping[Vertex, Vertex]) -> dict[EdgeId, EdgeId] | None:
    """Pair up edges of g and h consistently with ``vertex_map``."""
    pools: dict[frozenset, list[EdgeId]] = {}
    for e, (u, v) in h.edges.items():
        pools.setdefault(frozenset((u, v)), []).append(e)
    out = {}
    for e, (u, v) in g.edges.items():
        pool = pools.get(frozenset((vertex_map[u], vertex_map[v])))
        if not pool:
            return None
        out[e] = pool.pop(0)
    return out


# ---------------------------------------------------------------------------
# minor models


@dataclass(frozen=True)
class MinorModel:
    """Witness that a pattern H is a minor of a host G."""

    branch_sets: dict = field(default_factory=dict)
    edge_assignment: dict = field(default_factory=dict)


def verify_minor_model(g: MultiGraph, h: MultiGraph, m: MinorModel) -> bool:
    try:
        sets = {x: frozenset(s) for x, s in m.branch_sets.items()}
    except TypeError:
        return False
    if set(sets) != set(h.vertices):
        return False
    owner: dict[Vertex, Vertex] = {}
    for x, s in sets.items():
        if not s or not s <= set(g.vertices):
            return False
        for v in s:
            if v in owner:
                return False
            owner[v] = x
        if not _induces_connected(g, s):
            return False
    if set(m.edge_assignment) != set(h.edges):
        return False
    used = set()
    for he, ge in m.edge_assignment.items():
        if ge not in g.edges or ge in used:
            return False
        used.add(ge)
        x, y = h.edges[he]
        a, b = g.edges[ge]
        if (owner.get(a), owner.get(b)) not in ((x, y), (y, x)):
            return False
        if x == y and not _induces_connected(g, sets[x], skip=ge):
            return False
    return True


def _induces_connected(g: MultiGraph, s: frozenset, skip: EdgeId | None = None) -> bool:
    start = next(iter(s))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for e in g._incidence()[x]:
            if e == skip:
                continue
            a, b = g.edges[e]
            y = b if a == x else a
            if y in s and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(s)


class MinorTrace:
    """Replay deletion / contraction / relabel ops while tracking branch sets.

    Contraction keeps edge ids, so after any replay the surviving edges still
    name edges of the original host.  ``model`` turns the final graph into a
    ``MinorModel`` of a pattern on the original host.
    """

    def __init__(self, host: MultiGraph):
        self.host = host
        self.graph = host
        self.branch: dict[Vertex, frozenset] = {v: frozenset([v]) for v in host.vertices}
        self.origin: dict[EdgeId, EdgeId] = {e: e for e in host.edges}

    def apply(self, op: Mapping) -> None:
        kind = op.get("op")
        if kind == "delete":
            self.delete(op["edge"])
        elif kind == "contract":
            self.contract(op["edge"])
        elif kind == "delete_isolated":
            self.delete_isolated()
        elif kind == "relabel":
            self.relabel(dict(map(tuple, op["vertices"])), dict(map(tuple, op["edges"])))
        else:
            raise GraphError(f"unknown op {kind!r}")

    def run(self, ops: Iterable[Mapping]) -> "MinorTrace":
        for op in ops:
            self.apply(op)
        return self

    def delete(self, e: EdgeId) -> None:
        self.graph = delete_edge(self.graph, e)
        del self.origin[e]

    def contract(self, e: EdgeId) -> None:
        u, v = self.graph.endpoints(e)
        self.graph = contract_edge(self.graph, e)
        self.branch[u] = self.branch[u] | self.branch.pop(v)
        del self.origin[e]

    def delete_isolated(self) -> None:
        g = delete_isolated_vertices(self.graph)
        for v in set(self.graph.vertices) - set(g.vertices):
            del self.branch[v]
        self.graph = g

    def relabel(self, vertex_map: Mapping[Vertex, Vertex], edge_map: Mapping[EdgeId, EdgeId]) -> None:
        if set(vertex_map) != set(self.graph.vertices) or len(set(vertex_map.values())) != len(vertex_map):
            raise GraphError("relabel map is not a bijection on the current vertices")
        if set(edge_map) != set(self.graph.edges) or len(set(edge_map.values())) != len(edge_map):
            raise GraphError("relabel map is not a bijection on the current edges")
        self.graph = self.graph.relabeled(vertex_map, edge_map)
        self.branch = {vertex_map[v]: s for v, s in self.branch.items()}
        self.origin = {edge_map[e]: o for e, o in self.origin.items()}

    def model(self, pattern: MultiGraph, vertex_map: Mapping[Vertex, Vertex] | None = None) -> MinorModel | None:
        """Model of ``pattern`` if it sits in the current graph under ``vertex_map``."""
        vertex_map = vertex_map or {v: v for v in pattern.vertices}
        pools: dict[frozenset, list[EdgeId]] = {}
        for e, (u, v) in self.graph.edges.items():
            pools.setdefault(frozenset((u, v)), []).append(e)
        assignment = {}
        for he, (x, y) in pattern.edges.items():
            pool = pools.get(frozenset((vertex_map[x], vertex_map[y])))
            if not pool:
                return None
            assignment[he] = self.origin[pool.pop(0)]
        return MinorModel({x: self.branch[vertex_map[x]] for x in pattern.vertices}, assignment)


# ---------------------------------------------------------------------------
# minor oracle
#
# For a connected host any model of a pattern extends to a partition of the
# whole vertex set into exactly k connected parts, so it suffices to search
# over such partitions of the simple quotient.  Quotient vertices are
# frozensets of host vertices.  Two reductions are safe when the pattern has
# minimum degree >= 3: drop vertices of degree <= 1 and merge a degree-2
# vertex into a neighbour.


class _Pattern:
    def __init__(self, h: MultiGraph):
        if not is_simple(h):
            raise GraphError("minor oracle patterns must be simple")
        if h.num_vertices() > 6:
            raise GraphError("minor oracle supports patterns with at most 6 vertices")
        if h.num_vertices() == 0 or not h.is_connected():
            raise GraphError("minor oracle patterns must be connected and nonempty")
        self.graph = h
        self.k = h.num_vertices()
        self.m = h.num_edges()
        self.adj = h.simple_adjacency()
        # BFS order so every vertex after the first has a placed neighbour
        first = max(h.vertices, key=lambda v: len(self.adj[v]))
        self.verts = [first]
        for x in self.verts:
            self.verts += [y for y in sorted(self.adj[x], key=str) if y not in self.verts]
        # twins have equal neighbourhoods up to each other; swapping two
        # unused twins is an automorphism fixing every placed vertex
        self.twin = {}
        for x in self.verts:
            self.twin[x] = next(
                (
                    c
                    for c in set(self.twin.values())
                    if all(self.adj[x] - {y} == self.adj[y] - {x} for y in self.twin if self.twin[y] == c)
                ),
                x,
            )
        self.min_degree = min(len(self.adj[v]) for v in self.verts)
        self.complete = self.m == self.k * (self.k - 1) // 2

    def match(self, q: dict) -> dict | None:
        """Bijection pattern vertex -> quotient vertex with every pattern edge present."""
        parts = list(q)
        if self.complete:
            if all(len(q[p]) == self.k - 1 for p in parts):
                return dict(zip(self.verts, parts))
            return None
        if len(parts) == self.k:
            return self._match_complement(q, parts)
        mapping: dict = {}
        used: set = set()

        def extend(i):
            if i == self.k:
                return True
            x = self.verts[i]
            for p in parts:
                if p in used or len(q[p]) < len(self.adj[x]):
                    continue
                if all(mapping[y] in q[p] for y in self.adj[x] if y in mapping):
                    mapping[x] = p
                    used.add(p)
                    if extend(i + 1):
                        return True
                    del mapping[x]
                    used.discard(p)
            return False

        return dict(mapping) if extend(0) else None


    def _match_complement(self, q: dict, parts: list) -> dict | None:
        # Same vertex count: H fits in Q iff every non-edge of Q lands on a
        # non-edge of H.  Parts without non-edges can go anywhere.
        miss = {p: set(parts) - q[p] - {p} for p in parts}
        hmiss = {x: set(self.verts) - self.adj[x] - {x} for x in self.verts}
        order = sorted((p for p in parts if miss[p]), key=lambda p: -len(miss[p]))
        image: dict = {}
        used: set = set()

        def extend(i):
            if i == len(order):
                return True
            p = order[i]
            tried = set()
            for x in self.verts:
                if x in used or len(hmiss[x]) < len(miss[p]) or self.twin[x] in tried:
                    continue
                tried.add(self.twin[x])
                if all(image[r] in hmiss[x] for r in miss[p] if r in image):
                    image[p] = x
                    used.add(x)
                    if extend(i + 1):
                        return True
                    del image[p]
                    used.discard(x)
            return False

        if not extend(0):
            return None
        rest = iter(x for x in self.verts if x not in used)
        for p in parts:
            if p not in image:
                image[p] = next(rest)
        return {x: p for p, x in image.items()}


def _merge(q: dict, u: frozenset, v: frozenset) -> dict:
    w = u | v
    out = {}
    for x, nbrs in q.items():
        if x == u or x == v:
            continue
        if u in nbrs or v in nbrs:
            nbrs = (nbrs - {u, v}) | {w}
        out[x] = nbrs
    out[w] = (q[u] | q[v]) - {u, v}
    return out


def _reduce(q: dict, pat: _Pattern) -> dict:
    q = {x: set(n) for x, n in q.items()}
    changed = True
    while changed:
        changed = False
        for x in sorted(q, key=min):
            if x not in q:
                continue
            d = len(q[x])
            if d == 0 or (d == 1 and pat.min_degree >= 2):
                for y in q[x]:
                    q[y].discard(x)
                del q[x]
                changed = True
            elif d == 2 and pat.min_degree >= 3:
                y = min(q[x], key=min)
                q = {a: set(b) for a, b in _merge(q, y, x).items()}
                changed = True
    return {x: frozenset(n) for x, n in q.items()}


def _components(q: dict) -> list[dict]:
    seen = set()
    out = []
    for s in q:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in q[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        out.append({x: q[x] for x in comp})
    return out


def _edge_count(q: dict) -> int:
    return sum(len(n) for n in q.values()) // 2


def _viable(q: dict, pat: _Pattern) -> bool:
    n = len(q)
    return n >= pat.k and _edge_count(q) - (n - pat.k) >= pat.m


def _ordered_edges(q: dict) -> list[tuple[frozenset, frozenset]]:
    edges = []
    for x, nbrs in q.items():
        for y in nbrs:
            if min(x) < min(y):
                edges.append((len(nbrs & q[y]), len(nbrs) + len(q[y]), min(x), min(y), x, y))
    edges.sort(key=lambda t: t[:4])
    return [(t[4], t[5]) for t in edges]


def _greedy(q: dict, pat: _Pattern, rng: random.Random) -> dict | None:
    while True:
        q = _reduce(q, pat)
        comps = [c for c in _components(q) if _viable(c, pat)]
        if not comps:
            return None
        q = max(comps, key=len)
        if len(q) == pat.k:
            m = pat.match(q)
            return (m and (q, m)) or None
        edges = _ordered_edges(q)
        lo = min(len(q[x] & q[y]) for x, y in edges)
        cands = [(x, y) for x, y in edges if len(q[x] & q[y]) == lo]
        x, y = rng.choice(cands)
        q = _merge(q, x, y)


def _bfs_order(q: dict) -> list:
    start = min(q, key=min)
    order, seen = [start], {start}
    for x in order:
        for y in sorted(q[x], key=min):
            if y not in seen:
                seen.add(y)
                order.append(y)
    return order


def _exhaustive(q: dict, pat: _Pattern) -> tuple | None:
    """Try every partition of a connected quotient into exactly ``pat.k``
    connected parts.

    Edges are decided in a fixed order: contracted (union of the two parts)
    or cut (the endpoints must stay apart).  Each partition arises from one
    decision sequence only, so nothing is visited twice.  A part whose edges
    are all decided can only lose neighbours later, which gives a degree
    prune.
    """
    parts = _bfs_order(q)
    idx = {x: i for i, x in enumerate(parts)}
    n, k = len(parts), pat.k
    edges = sorted(
        {tuple(sorted((idx[x], idx[y]))) for x in q for y in q[x]},
        key=lambda e: (e[1], e[0]),
    )
    m = len(edges)
    last = [0] * n
    for i, (u, v) in enumerate(edges):
        last[u] = last[v] = i
    closing: list[list[int]] = [[] for _ in range(m)]
    for v in range(n):
        closing[last[v]].append(v)

    parent = list(range(n))
    done = last[:]  # per root: index of the last edge touching the part
    cut = [[0] * n for _ in range(n)]  # cut edges between roots

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def degree(r):
        row = cut[r]
        return sum(1 for c in range(n) if row[c] and parent[c] == c)

    def closed_ok(i):
        for v in closing[i]:
            r = find(v)
            if done[r] == i and degree(r) < pat.min_degree:
                return False
        return True

    def leaf():
        groups: dict = {}
        for i, x in enumerate(parts):
            groups.setdefault(find(i), set()).update(x)
        names = {r: frozenset(g) for r, g in groups.items()}
        quotient = {names[r]: frozenset(names[c] for c in names if cut[r][c]) for r in names}
        if _edge_count(quotient) < pat.m:
            return None
        mapping = pat.match(quotient)
        return (quotient, mapping) if mapping else None

    def rec(i, comps):
        if comps < k or comps - (m - i) > k:
            return None
        if i == m:
            return leaf()
        u, v = edges[i]
        a, b = find(u), find(v)
        if a == b:
            return rec(i + 1, comps) if closed_ok(i) else None
        if not cut[a][b]:
            parent[b] = a
            old = done[a]
            done[a] = max(old, done[b])
            ra, rb = cut[a], cut[b]
            saved = ra[:]
            for c in range(n):
                if rb[c]:
                    ra[c] += rb[c]
                    cut[c][a] += rb[c]
            found = rec(i + 1, comps - 1) if closed_ok(i) else None
            for c in range(n):
                if rb[c]:
                    cut[c][a] -= rb[c]
            cut[a] = saved
            done[a] = old
            parent[b] = b
            if found:
                return found
        cut[a][b] += 1
        cut[b][a] += 1
        found = rec(i + 1, comps) if closed_ok(i) else None
        cut[a][b] -= 1
        cut[b][a] -= 1
        return found

    return rec(0, n)


def has_minor(
    g: MultiGraph,
    h: MultiGraph,
    cap: int | None = None,
    trials: int = 64,
    seed: int = 0,
) -> MinorModel | None:
    """Search for H as a minor of G.

    A randomized greedy contraction phase runs first and returns as soon as it
    finds a model, whatever the host size.  Proving absence needs the
    exhaustive phase, which is limited to reduced hosts with at most ``cap``
    vertices (default 18, or ``TORAL_ORACLE_CAP``).
    """
    pat = _Pattern(h)
    cap = oracle_cap() if cap is None else cap
    index = {v: i for i, v in enumerate(g.vertices)}
    verts = list(g.vertices)
    adj = g.simple_adjacency()
    q0 = {frozenset([index[v]]): frozenset(frozenset([index[w]]) for w in adj[v]) for v in verts}
    start = [c for c in _components(_reduce(q0, pat)) if _viable(c, pat)]

    found = None
    rng = random.Random(seed)
    for comp in start:
        for _ in range(trials):
            found = _greedy(comp, pat, rng)
            if found:
                break
        if found:
            break
    if not found:
        for comp in start:
            if len(comp) > cap:
                raise OracleCapExceeded(
                    f"exhaustive minor search limited to {cap} vertices after reduction (got {len(comp)})"
                )
        for comp in start:
            found = _exhaustive(comp, pat)
            if found:
                break
    if not found:
        return None
    q, mapping = found
    branch = {x: frozenset(verts[i] for i in mapping[x]) for x in pat.verts}
    owner = {v: x for x, s in branch.items() for v in s}
    assignment = {}
    for he, (x, y) in h.edges.items():
        assignment[he] = next(
            e for e, (a, b) in g.edges.items() if {owner.get(a), owner.get(b)} == {x, y} and a != b
        )
    model = MinorModel(branch, assignment)
    assert verify_minor_model(g, h, model)
    return model


def is_planar(g: MultiGraph, cap: int | None = None) -> bool:
    return has_minor(g, K5, cap) is None and has_minor(g, K33, cap) is None


def euler_nonplanar(g: MultiGraph) -> bool:
    """Edge-count test: a simple connected planar graph has |E| <= 3|V| - 6."""
    n = g.num_vertices()
    return is_simple(g) and g.is_connected() and n >= 3 and g.num_edges() > 3 * n - 6
