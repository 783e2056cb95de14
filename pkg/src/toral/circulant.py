"""Circulant graphs S(p,q) and the certified reduction S(p,q) -> K5.

S(p,q) has vertices 0..p+q-1 on a cycle (edges ``C{j}`` joining j and j+1)
plus chords ``c{j}`` joining j and j+p, all indices mod p+q.  The reduction
alternates two moves until it reaches S(2,3) = K5:

* minor: keep the first 2*floor((p+q)/p)+1 chords met when travelling along
  chords from vertex 0, delete the others, and contract cycle edges until
  every vertex is a chord endpoint; finally contract the cycle edge between
  vertex 0 and the end of the last kept chord.  The result is S(2, q_M) with
  q_M = 2*floor((p+q)/p) - 1.
* invert: relabel j -> j * p^-1 mod (p+q), which swaps the roles of cycle
  and chords and turns S(p,q) into S(p', q') with p*p' = 1 mod (p+q).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .graph import K5, GraphError, MinorModel, MinorTrace, MultiGraph, edge_bijection, is_isomorphic


@dataclass(frozen=True, order=True)
class CirculantSpec:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("p and q must be positive")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"S({self.p},{self.q}) needs coprime p and q")

    @property
    def n(self) -> int:
        return self.p + self.q

    def normalized(self) -> "CirculantSpec":
        return self if self.p < self.q else CirculantSpec(self.q, self.p)

    def __iter__(self):
        return iter((self.p, self.q))

    def __str__(self) -> str:
        return f"S({self.p},{self.q})"


def as_spec(spec) -> CirculantSpec:
    return spec if isinstance(spec, CirculantSpec) else CirculantSpec(*spec)


def build_S(spec) -> MultiGraph:
    p, q = as_spec(spec)
    n = p + q
    edges = [(f"C{j}", j, (j + 1) % n) for j in range(n)]
    edges += [(f"c{j}", j, (j + p) % n) for j in range(n)]
    return MultiGraph(range(n), edges)


def cayley_graph(n: int, generators) -> MultiGraph:
    """Cayley graph of Z/n: one edge x -- x+g per element x and generator g."""
    edges = [((g, x), x, (x + g) % n) for g in generators for x in range(n)]
    return MultiGraph(range(n), edges)


def cayley_check(spec) -> bool:
    spec = as_spec(spec)
    return is_isomorphic(build_S(spec), cayley_graph(spec.n, (1, spec.p))) is not None


# ---------------------------------------------------------------------------
# steps


@dataclass(frozen=True)
class MinorStep:
    source: CirculantSpec
    result: CirculantSpec
    kept_chords: tuple
    deleted_chords: tuple
    contracted_edges: tuple
    vertex_map: tuple  # (old, new) pairs onto build_S(result)
    edge_map: tuple
    kind: str = field(default="minor", init=False)

    def ops(self) -> list[dict]:
        return (
            [{"op": "delete", "edge": e} for e in self.deleted_chords]
            + [{"op": "contract", "edge": e} for e in self.contracted_edges]
            + [{"op": "relabel", "vertices": list(map(list, self.vertex_map)), "edges": list(map(list, self.edge_map))}]
        )


@dataclass(frozen=True)
class InvertRelabel:
    source: CirculantSpec
    result: CirculantSpec
    p_inverse: int
    q_prime: int
    vertex_map: tuple
    edge_map: tuple
    kind: str = field(default="invert", init=False)

    def ops(self) -> list[dict]:
        return [{"op": "relabel", "vertices": list(map(list, self.vertex_map)), "edges": list(map(list, self.edge_map))}]


@dataclass(frozen=True)
class SkipMinor:
    source: CirculantSpec
    reason: str = "p=2"
    kind: str = field(default="skip", init=False)

    @property
    def result(self) -> CirculantSpec:
        return self.source

    def ops(self) -> list[dict]:
        return []


def chord_tour(spec) -> list[int]:
    """Vertices 0, p, 2p, ... visited by the kept chords of a minor step."""
    p, q = as_spec(spec)
    n = p + q
    m = n // p
    return [(j * p) % n for j in range(2 * m + 2)]


def minor_step(spec, skip: bool = True):
    spec = as_spec(spec)
    p, q = spec
    if p == 2 and skip:
        return SkipMinor(spec)
    if p <= 2:
        raise ValueError(f"minor step needs p > 2, got {spec}")
    if p > q:
        raise ValueError(f"minor step expects a normalized spec, got {spec}")
    n = spec.n
    tour = chord_tour(spec)
    kept = tuple(f"c{v}" for v in tour[:-1])
    deleted = tuple(f"c{j}" for j in range(n) if f"c{j}" not in kept)
    ends = set(tour)

    trace = MinorTrace(build_S(spec))
    for e in deleted:
        trace.delete(e)
    contracted = []
    for w in range(n):
        if w not in ends:
            contracted.append(f"C{w - 1}")
            trace.contract(f"C{w - 1}")
    rep = {v: r for r, s in trace.branch.items() for v in s}
    last = tour[-1]
    closing = [e for e in trace.graph.edges if e.startswith("C") and set(trace.graph.endpoints(e)) == {rep[0], rep[last]}]
    if len(closing) != 1:
        raise GraphError(f"cycle edge joining v0 and v{last} not found")
    contracted.append(closing[0])
    trace.contract(closing[0])

    result = CirculantSpec(2, 2 * (n // p) - 1)
    vmap, emap = _cycle_labels(trace, result)
    return MinorStep(spec, result, kept, deleted, tuple(contracted), vmap, emap)


def _cycle_labels(trace: MinorTrace, result: CirculantSpec) -> tuple[tuple, tuple]:
    """Label the contracted graph as build_S(result), walking from vertex 0."""
    n = result.n
    reps = sorted(trace.graph.vertices, key=lambda r: -1 if 0 in trace.branch[r] else min(trace.branch[r]))
    rank = {r: i for i, r in enumerate(reps)}
    emap = []
    for e, (u, v) in trace.graph.edges.items():
        a, b = rank[u], rank[v]
        if e.startswith("C"):
            if (b - a) % n == 1:
                emap.append((e, f"C{a}"))
            elif (a - b) % n == 1:
                emap.append((e, f"C{b}"))
            else:
                raise GraphError(f"cycle edge {e} does not join consecutive vertices")
        else:
            if (b - a) % n == result.p:
                emap.append((e, f"c{a}"))
            elif (a - b) % n == result.p:
                emap.append((e, f"c{b}"))
            else:
                raise GraphError(f"chord {e} does not have length {result.p}")
    return tuple((r, rank[r]) for r in trace.graph.vertices), tuple(emap)


def invert_relabel(spec) -> InvertRelabel:
    spec = as_spec(spec)
    p, q = spec
    n = spec.n
    if n < 3:
        raise ValueError("inversion needs at least three vertices")
    p_inv = pow(p, -1, n)
    q_prime = n - p_inv
    vmap = tuple((j, (j * p_inv) % n) for j in range(n))
    new = dict(vmap)
    small = min(p_inv, q_prime)
    emap = []
    for j in range(n):
        emap.append((f"c{j}", f"C{new[j]}"))
    for j in range(n):
        k = new[j]
        # old cycle edge j -- j+1 becomes k -- k+p_inv; name it by the end
        # from which the shorter step reaches the other
        emap.append((f"C{j}", f"c{k}" if small == p_inv else f"c{(k + p_inv) % n}"))
    result = CirculantSpec(small, n - small)
    return InvertRelabel(spec, result, p_inv, q_prime, vmap, tuple(emap))


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class ReductionCertificate:
    initial: CirculantSpec
    steps: tuple
    final_isomorphism: tuple  # (S(2,3) vertex, K5 vertex) pairs

    def chain(self) -> list[CirculantSpec]:
        specs = [self.initial]
        for s in self.steps:
            if s.result != specs[-1]:
                specs.append(s.result)
        return specs

    def ops(self) -> list[dict]:
        return [op for s in self.steps for op in s.ops()]


def reduce_to_K5(spec) -> ReductionCertificate:
    start = as_spec(spec).normalized()
    if start.p < 2 or start.q < 3:
        raise ValueError(f"reduction needs p >= 2 and q >= 3, got {start}")
    steps: list = []
    cur = start
    limit = 4 * start.n
    while (cur.p, cur.q) != (2, 3):
        if len(steps) > limit:
            raise RuntimeError("reduction did not terminate")
        if cur.p == 2:
            if not steps or steps[-1].kind != "minor":
                steps.append(SkipMinor(cur))
            step = invert_relabel(cur)
        else:
            step = minor_step(cur)
        steps.append(step)
        cur = step.result
    final = tuple((v, v) for v in range(5))
    return ReductionCertificate(start, tuple(steps), final)


def certificate_problems(cert: ReductionCertificate) -> list[str]:
    """Replay a certificate; an empty list means it verifies."""
    problems = []
    try:
        cur = cert.initial
        if cur != cur.normalized() or cur.p < 2:
            problems.append(f"initial spec {cur} is not a normalized reduction input")
        prev_kind = None
        for i, step in enumerate(cert.steps):
            if step.source != cur:
                problems.append(f"step {i}: source {step.source} does not follow {cur}")
                break
            if step.kind == "skip":
                if cur.p != 2 or prev_kind == "minor":
                    problems.append(f"step {i}: skip recorded where a minor step applies")
            elif step.kind == "minor":
                if cur.p <= 2:
                    problems.append(f"step {i}: minor step on {cur} with p <= 2")
                if step.result.n >= cur.n:
                    problems.append(f"step {i}: minor step does not shrink the graph")
            elif step.kind == "invert":
                if step.result.n != cur.n:
                    problems.append(f"step {i}: inversion changed the vertex count")
                if (cur.p * step.p_inverse) % cur.n != 1 or step.q_prime != cur.n - step.p_inverse:
                    problems.append(f"step {i}: inverse pair ({step.p_inverse},{step.q_prime}) is wrong")
            trace = MinorTrace(build_S(cur)).run(step.ops())
            if trace.graph != build_S(step.result):
                problems.append(f"step {i}: replay does not give {step.result}")
            prev_kind = step.kind
            cur = step.result
        if (cur.p, cur.q) != (2, 3):
            problems.append(f"chain ends at {cur}, not S(2,3)")
        else:
            vmap = dict(cert.final_isomorphism)
            s23 = build_S(cur)
            if sorted(vmap) != list(s23.vertices) or sorted(vmap.values()) != list(K5.vertices):
                problems.append("final map is not a bijection onto K5")
            elif edge_bijection(s23, K5, vmap) is None:
                problems.append("final map is not an isomorphism onto K5")
    except (GraphError, KeyError, ValueError, TypeError, AttributeError) as exc:
        problems.append(f"replay failed: {exc}")
    return problems


def verify_certificate(cert: ReductionCertificate) -> bool:
    return not certificate_problems(cert)


def certificate_model(cert: ReductionCertificate) -> MinorModel:
    """K5 minor model in build_S(initial) obtained by composing every step."""
    trace = MinorTrace(build_S(cert.initial)).run(cert.ops())
    vmap = dict(cert.final_isomorphism)
    inverse = {k: v for v, k in vmap.items()}
    model = trace.model(K5, inverse)
    if model is None:
        raise GraphError("certificate does not end in K5")
    return model


def interleaving_counts(step: MinorStep) -> dict[str, int]:
    """For each kept chord, how many other kept chords cross it in cyclic order.

    Chords sharing an endpoint do not cross; v0 and the end of the last kept
    chord count as one vertex because the closing contraction merges them.
    """
    n = step.source.n
    p = step.source.p
    last = (int(step.kept_chords[-1][1:]) + p) % n
    ends = {c: (int(c[1:]), (int(c[1:]) + p) % n) for c in step.kept_chords}

    def glue(pair):
        return {0 if x == last else x for x in pair}

    def inside(x, u, v):
        return 0 < (x - u) % n < (v - u) % n

    counts = {}
    for c, (u, v) in ends.items():
        k = 0
        for d, (x, y) in ends.items():
            if d != c and not glue((x, y)) & glue((u, v)) and inside(x, u, v) != inside(y, u, v):
                k += 1
        counts[c] = k
    return counts
