"""Vertex sets of a dual graph and the disc/annulus classification of what lies outside them."""

from __future__ import annotations

from dataclasses import dataclass

from nalink.blowup import BOUNDARY, ResolutionModel, natural_key
from nalink.dualgraph import DualGraph, contract_all, replay
from nalink.errors import EmptyBoundary, InvalidVertexSet, NonSimpleComponent, UnknownVertex


def analytic_boundary(obj):
    """Ids of the analytic boundary for a resolution model or an annotated graph."""
    if isinstance(obj, ResolutionModel):
        if obj.pair.kind == "point":
            if not obj.blowups:
                raise EmptyBoundary("the origin has not been blown up yet")
            return ("E1",)
        return tuple(c.id for c in obj.components if c.kind == BOUNDARY)
    if isinstance(obj, DualGraph):
        ids = obj.boundary_ids()
        if not ids:
            raise EmptyBoundary("the graph declares no boundary")
        return tuple(ids)
    raise TypeError(f"cannot compute a boundary for {type(obj).__name__}")


@dataclass(frozen=True)
class VertexSet:
    graph: DualGraph
    S: tuple
    boundary: tuple

    @classmethod
    def make(cls, graph: DualGraph, S, boundary=None) -> "VertexSet":
        boundary = tuple(analytic_boundary(graph) if boundary is None else boundary)
        if not boundary:
            raise EmptyBoundary("a vertex set needs a nonempty boundary")
        chosen = set(S)
        for v in chosen | set(boundary):
            if not graph.has_vertex(v):
                raise InvalidVertexSet(f"unknown vertex {v!r}")
        missing = [b for b in boundary if b not in chosen]
        missing += [v.id for v in graph.vertices if v.kind == BOUNDARY and v.id not in chosen and v.id not in missing]
        if missing:
            raise InvalidVertexSet(f"vertex set omits boundary vertices {sorted(missing, key=graph.key)}")
        return cls(graph, tuple(sorted(chosen, key=graph.key)), tuple(sorted(set(boundary), key=graph.key)))

    @classmethod
    def full(cls, graph: DualGraph, boundary=None) -> "VertexSet":
        return cls.make(graph, graph.ids, boundary)

    def without(self, v: str) -> "VertexSet":
        return VertexSet.make(self.graph, [s for s in self.S if s != v], self.boundary)

    def describe(self) -> dict:
        return {"S": list(self.S), "boundary": list(self.boundary)}


@dataclass(frozen=True)
class FiberClass:
    tag: str
    modulus: int | None = None
    reason: str | None = None

    @classmethod
    def disc(cls):
        return cls("Disc")

    @classmethod
    def standard_annulus(cls):
        return cls("StandardAnnulus", 1)

    @classmethod
    def annulus(cls, n: int):
        if n < 1:
            raise ValueError("an annulus has modulus >= 1")
        return cls.standard_annulus() if n == 1 else cls("Annulus", n)

    @classmethod
    def non_simple(cls, reason: str):
        return cls("NonSimple", reason=reason)

    @property
    def is_simple(self) -> bool:
        return self.tag in ("Disc", "StandardAnnulus")

    def __str__(self):
        if self.tag == "Annulus":
            return f"Annulus({self.modulus})"
        if self.tag == "NonSimple":
            return f"NonSimple({self.reason})"
        return self.tag


@dataclass(frozen=True)
class ComplementComponent:
    kind: str  # PureEdge | Cluster
    vertices: tuple = ()
    edge: tuple | None = None
    attaching: tuple = ()

    def describe(self) -> dict:
        if self.kind == "PureEdge":
            return {"kind": "PureEdge", "edge": list(self.edge)}
        return {
            "kind": "Cluster",
            "vertices": list(self.vertices),
            "attaching": [list(e) for e in self.attaching],
        }

    def __str__(self):
        if self.kind == "PureEdge":
            return f"PureEdge({self.edge[0]}-{self.edge[1]})"
        return "Cluster{" + ",".join(self.vertices) + "}"


def complement_components(vs: VertexSet):
    g = vs.graph
    S = set(vs.S)
    rest = [v for v in g.ids if v not in S]
    clusters = []
    for comp in g.components(rest):
        members = set(comp)
        attach = tuple((a, b) if a in members else (b, a) for a, b in g.edges if (a in members) != (b in members))
        clusters.append(ComplementComponent("Cluster", comp, None, attach))
    pure = [ComplementComponent("PureEdge", (), e) for e in g.edges if e[0] in S and e[1] in S]
    return clusters + pure


def component_of(vs: VertexSet, vid: str) -> ComplementComponent:
    if not vs.graph.has_vertex(vid):
        raise UnknownVertex(f"unknown vertex {vid!r}")
    for c in complement_components(vs):
        if vid in c.vertices:
            return c
    raise UnknownVertex(f"{vid!r} lies in the vertex set")


def _cluster_report(vs: VertexSet, c: ComplementComponent):
    return contract_all(vs.graph, c.vertices)


def classify_component(vs: VertexSet, c: ComplementComponent) -> FiberClass:
    if c.kind == "PureEdge":
        return FiberClass.standard_annulus()
    outcome = _cluster_report(vs, c).outcomes[0]
    if outcome.kind == "SmoothPoint":
        return FiberClass.standard_annulus() if len(outcome.branches) == 2 else FiberClass.disc()
    if outcome.kind == "SingularPoint":
        return FiberClass.annulus(outcome.length + 1)
    return FiberClass.non_simple(outcome.reason)


def classify(vs: VertexSet):
    """``[(component, fiber class)]`` in the canonical component order."""
    return [(c, classify_component(vs, c)) for c in complement_components(vs)]


def is_regular(vs: VertexSet):
    report = classify(vs)
    return all(cls.is_simple for _, cls in report), report


def log_essential(graph: DualGraph, boundary=None, rng=None) -> VertexSet:
    """Greedy reduction of the full vertex set while it stays regular.

    With ``rng`` the removal candidates are scanned in shuffled order.
    """
    vs = VertexSet.full(graph, boundary)
    while True:
        candidates = [v for v in vs.S if v not in vs.boundary]
        if rng is not None:
            rng.shuffle(candidates)
        for v in candidates:
            smaller = vs.without(v)
            if is_regular(smaller)[0]:
                vs = smaller
                break
        else:
            return vs


@dataclass(frozen=True)
class PosetCheck:
    ok: bool
    subset: bool
    diagnostics: tuple = ()
    trace: tuple = ()

    def __bool__(self):
        return self.ok


def _shape(g: DualGraph):
    return (g.vertices, g.edges)


def model_poset_check(s1: VertexSet, s2: VertexSet) -> PosetCheck:
    """Is ``s1 <= s2``, with the model of ``s1`` obtained from that of ``s2`` by contraction?"""
    if s1.graph != s2.graph:
        return PosetCheck(False, False, ("vertex sets live on different reference graphs",))
    if not set(s1.S) <= set(s2.S):
        extra = sorted(set(s1.S) - set(s2.S), key=natural_key)
        return PosetCheck(False, False, (f"not a subset: {extra} missing from the larger set",))
    ref = s1.graph
    direct = contract_all(ref, [v for v in ref.ids if v not in s1.S])
    middle = contract_all(ref, [v for v in ref.ids if v not in s2.S])
    # whatever the first stage left uncontracted is still outside s1
    composed = contract_all(middle.graph, [v for v in middle.graph.ids if v not in s1.S])
    diagnostics = []
    if _shape(composed.graph) != _shape(direct.graph):
        diagnostics.append("contracting in two stages differs from contracting at once")
    trace = middle.trace + composed.trace
    if _shape(replay(ref, trace)) != _shape(composed.graph):
        diagnostics.append("the contraction trace does not replay to the same model")
    return PosetCheck(not diagnostics, True, tuple(diagnostics), trace)


@dataclass(frozen=True)
class Skeleton:
    vertices: tuple
    edges: tuple  # ((a, b, length), ...)
    cycle_rank: int

    def describe(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"ends": [a, b], "length": n} for a, b, n in self.edges],
            "cycle_rank": self.cycle_rank,
        }


def skeleton(vs: VertexSet) -> Skeleton:
    edges = []
    for c, cls in classify(vs):
        if cls.tag == "NonSimple":
            raise NonSimpleComponent(f"{c} is {cls}")
        if cls.tag == "Disc":
            continue
        if c.kind == "PureEdge":
            a, b = c.edge
        else:
            a, b = _cluster_report(vs, c).outcomes[0].branches
        edges.append((a, b, cls.modulus))
    rank = len(edges) - len(vs.S) + _count_components(vs.S, edges)
    return Skeleton(vs.S, tuple(edges), rank)


def _count_components(nodes, edges) -> int:
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b, _ in edges:
        parent[find(a)] = find(b)
    return len({find(v) for v in nodes})
