"""Weighted dual graphs and the Castelnuovo blow-down calculus."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from math import gcd
from typing import NamedTuple

from nalink.arith import linalg
from nalink.blowup import BOUNDARY, EXCEPTIONAL, natural_key
from nalink.errors import (
    BadParameters,
    BoundaryVertex,
    ContractionError,
    NodeOnImage,
    NotMinusOne,
    NotRational,
    TriplePoint,
    UnknownVertex,
)


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: str
    N: int
    self_int: int
    rational: bool

    def __post_init__(self):
        if self.kind not in (EXCEPTIONAL, BOUNDARY):
            raise ValueError(f"unknown vertex kind {self.kind!r}")
        if self.N < 1:
            raise ValueError(f"vertex {self.id} has multiplicity {self.N} < 1")

    @property
    def key(self):
        return vertex_key(self.id, self.kind)


def vertex_key(vid: str, kind: str):
    return (0 if kind == BOUNDARY else 1, natural_key(vid))


@dataclass(frozen=True)
class PointEvent:
    """One contraction: ``vertex`` became a smooth point on the listed branches."""

    vertex: str
    branches: tuple
    kind: str = "SmoothPoint"


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple
    edges: tuple  # multiset of vertex-id pairs, each pair ordered by vertex key
    boundary: tuple | None = None
    point_log: tuple = field(default=(), compare=False)

    @classmethod
    def build(cls, vertices, edges, boundary=None, point_log=()):
        verts = {}
        for v in vertices:
            if v.id in verts:
                raise ValueError(f"duplicate vertex id {v.id}")
            verts[v.id] = v
        norm = []
        for a, b in edges:
            for end in (a, b):
                if end not in verts:
                    raise UnknownVertex(f"edge endpoint {end} is not a vertex")
            if verts[a].key > verts[b].key:
                a, b = b, a
            norm.append((a, b))
        norm.sort(key=lambda e: (verts[e[0]].key, verts[e[1]].key))
        if boundary is not None:
            for b in boundary:
                if b not in verts:
                    raise UnknownVertex(f"boundary vertex {b} is not a vertex")
            boundary = tuple(sorted(set(boundary), key=lambda b: verts[b].key))
        ordered = tuple(sorted(verts.values(), key=lambda v: v.key))
        return cls(ordered, tuple(norm), boundary, tuple(point_log))

    # -- lookups --------------------------------------------------------
    @property
    def ids(self):
        return [v.id for v in self.vertices]

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise UnknownVertex(f"unknown vertex {vid!r}")

    def has_vertex(self, vid: str) -> bool:
        return any(v.id == vid for v in self.vertices)

    def key(self, vid: str):
        return self.vertex(vid).key

    def incident(self, vid: str):
        """Other endpoints of the edges at ``vid``, with repetition (a loop counts twice)."""
        out = []
        for a, b in self.edges:
            if a == vid:
                out.append(b)
            if b == vid:
                out.append(a)
        return out

    def neighbors(self, vid: str):
        return sorted(set(self.incident(vid)) - {vid}, key=self.key)

    def edge_count(self, a: str, b: str) -> int:
        return sum(1 for e in self.edges if e in ((a, b), (b, a)))

    def has_loops(self) -> bool:
        return any(a == b for a, b in self.edges)

    def exceptional_ids(self):
        return [v.id for v in self.vertices if v.kind == EXCEPTIONAL]

    def boundary_ids(self):
        if self.boundary is not None:
            return list(self.boundary)
        return [v.id for v in self.vertices if v.kind == BOUNDARY]

    def with_boundary(self, boundary) -> "DualGraph":
        return DualGraph.build(self.vertices, self.edges, boundary, self.point_log)

    def components(self, subset=None):
        """Connected components of the subgraph induced on ``subset`` (default: all)."""
        pool = set(self.ids if subset is None else subset)
        adj = {v: set() for v in pool}
        for a, b in self.edges:
            if a in pool and b in pool:
                adj[a].add(b)
                adj[b].add(a)
        seen, out = set(), []
        for start in sorted(pool, key=self.key):
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v] - seen:
                    seen.add(w)
                    stack.append(w)
            out.append(tuple(sorted(comp, key=self.key)))
        return out


# ---------------------------------------------------------------------------
# intersection form
# ---------------------------------------------------------------------------
class IntersectionMatrix(NamedTuple):
    matrix: list
    negative_definite: bool
    ids: list
    minors: list


def intersection_matrix(g: DualGraph, subset=None) -> IntersectionMatrix:
    ids = g.exceptional_ids() if subset is None else sorted(set(subset), key=g.key)
    if not ids:
        raise ValueError("the intersection matrix of an empty subset is undefined")
    m = [[g.vertex(a).self_int if a == b else g.edge_count(a, b) for b in ids] for a in ids]
    minors = linalg.leading_minors(m)
    neg = all((mk if k % 2 == 0 else -mk) > 0 for k, mk in enumerate(minors, start=1))
    return IntersectionMatrix(m, neg, ids, minors)


def exceptional_negative_definite(g: DualGraph) -> bool:
    ids = g.exceptional_ids()
    return True if not ids else intersection_matrix(g, ids).negative_definite


# ---------------------------------------------------------------------------
# contraction
# ---------------------------------------------------------------------------
def contract(g: DualGraph, vid: str) -> DualGraph:
    """Castelnuovo contraction of a rational (-1) vertex, keeping normal crossings."""
    v = g.vertex(vid)
    if v.kind == BOUNDARY or (g.boundary is not None and vid in g.boundary):
        raise BoundaryVertex(vid)
    if not v.rational:
        raise NotRational(vid)
    if v.self_int != -1:
        raise NotMinusOne(vid, f"self-intersection {v.self_int}")
    inc = g.incident(vid)
    if vid in inc:
        raise NodeOnImage(vid, "loop")
    if len(inc) >= 3:
        raise TriplePoint(vid, f"{len(inc)} branches")
    if len(inc) == 2 and inc[0] == inc[1]:
        raise NodeOnImage(vid, f"two intersections with {inc[0]}")
    branches = tuple(sorted(inc, key=g.key))
    verts = [replace(w, self_int=w.self_int + 1) if w.id in branches else w for w in g.vertices if w.id != vid]
    edges = [e for e in g.edges if vid not in e]
    if len(branches) == 2:
        edges.append(branches)
    event = PointEvent(vid, branches)
    return DualGraph.build(verts, edges, g.boundary, g.point_log + (event,))


@dataclass(frozen=True)
class ClusterOutcome:
    cluster: tuple
    kind: str  # SmoothPoint | SingularPoint | Failed
    branches: tuple = ()
    chain_type: str | None = None
    length: int = 0
    reason: str | None = None

    def describe(self) -> dict:
        out = {"cluster": list(self.cluster), "outcome": self.kind}
        if self.kind == "SmoothPoint":
            out["branches"] = list(self.branches)
        elif self.kind == "SingularPoint":
            out.update(type=self.chain_type, length=self.length, branches=list(self.branches))
        else:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class ContractionReport:
    graph: DualGraph
    outcomes: tuple
    trace: tuple

    def describe(self) -> dict:
        return {
            "trace": list(self.trace),
            "outcomes": [o.describe() for o in self.outcomes],
            "graph": to_json(self.graph),
        }


def a_chain(g: DualGraph, cluster) -> tuple | None:
    """If ``cluster`` is an all-(-2) path with exactly two attaching edges, their endpoints."""
    members = set(cluster)
    for v in cluster:
        vert = g.vertex(v)
        if vert.self_int != -2 or not vert.rational or vert.kind != EXCEPTIONAL:
            return None
    inner = [(a, b) for a, b in g.edges if a in members and b in members]
    if any(a == b for a, b in inner) or len(inner) != len(members) - 1:
        return None
    if len(set(inner)) != len(inner):
        return None
    attach = []
    for a, b in g.edges:
        if (a in members) != (b in members):
            attach.append((a, b) if a in members else (b, a))
    if len(attach) != 2:
        return None
    degree = {v: 0 for v in members}
    for a, b in inner:
        degree[a] += 1
        degree[b] += 1
    for inside, _ in attach:
        degree[inside] += 1
    # a path whose two ends carry the attaching edges: every vertex has total degree 2
    if any(d != 2 for d in degree.values()):
        return None
    return tuple(sorted((outside for _, outside in attach), key=g.key))


def contract_all(g: DualGraph, subset, rng=None) -> ContractionReport:
    """Contract (-1) vertices of ``subset`` until none can be, then classify what is left.

    The default order is least vertex id first; passing ``rng`` shuffles the
    candidates instead (used to test order independence).
    """
    subset = list(dict.fromkeys(subset))
    for v in subset:
        if g.vertex(v).kind == BOUNDARY or (g.boundary is not None and v in g.boundary):
            raise BoundaryVertex(v, "boundary vertices are never contracted")
    clusters = g.components(subset)
    owner = {v: i for i, c in enumerate(clusters) for v in c}
    remaining = set(subset)
    last_event = {}
    trace = []
    while True:
        candidates = sorted((v for v in remaining if g.vertex(v).self_int == -1), key=g.key)
        if rng is not None:
            rng.shuffle(candidates)
        for v in candidates:
            try:
                g = contract(g, v)
            except ContractionError:
                continue
            trace.append(v)
            remaining.discard(v)
            last_event[owner[v]] = g.point_log[-1]
            break
        else:
            break

    outcomes = []
    for i, cluster in enumerate(clusters):
        left = [v for v in cluster if v in remaining]
        if not left:
            outcomes.append(ClusterOutcome(cluster, "SmoothPoint", branches=last_event[i].branches))
            continue
        ends = a_chain(g, left)
        if ends is not None:
            outcomes.append(ClusterOutcome(cluster, "SingularPoint", branches=ends, chain_type="A", length=len(left)))
            continue
        reason = "NotContractible"
        for v in sorted(left, key=g.key):
            if g.vertex(v).self_int == -1:
                try:
                    contract(g, v)
                except ContractionError as exc:
                    reason = exc.reason
                    break
        outcomes.append(ClusterOutcome(cluster, "Failed", reason=reason))
    return ContractionReport(g, tuple(outcomes), tuple(trace))


def replay(g: DualGraph, trace) -> DualGraph:
    for v in trace:
        g = contract(g, v)
    return g


# ---------------------------------------------------------------------------
# blowups on graphs
# ---------------------------------------------------------------------------
def fresh_id(g: DualGraph, prefix: str = "E") -> str:
    used = {v.id for v in g.vertices}
    k = 1 + sum(1 for v in g.vertices if v.id.startswith(prefix))
    while f"{prefix}{k}" in used:
        k += 1
    return f"{prefix}{k}"


def blow_up_edge(g: DualGraph, a: str, b: str, new_id: str | None = None) -> DualGraph:
    """Blow up one intersection point of ``a`` and ``b``: subdivide one ``a-b`` edge."""
    if g.edge_count(a, b) == 0:
        raise ValueError(f"no edge between {a} and {b}")
    new_id = new_id or fresh_id(g)
    va, vb = g.vertex(a), g.vertex(b)
    edges = list(g.edges)
    edges.remove((a, b) if (a, b) in edges else (b, a))
    edges += [(a, new_id), (new_id, b)]
    dec = 2 if a == b else 1
    verts = [replace(v, self_int=v.self_int - (dec if v.id in (a, b) else 0)) for v in g.vertices]
    verts.append(Vertex(new_id, EXCEPTIONAL, va.N + vb.N, -1, True))
    return DualGraph.build(verts, edges, g.boundary, g.point_log)


def blow_up_vertex(g: DualGraph, a: str, new_id: str | None = None) -> DualGraph:
    """Blow up a general point of ``a``: attach a new (-1) leaf."""
    new_id = new_id or fresh_id(g)
    va = g.vertex(a)
    verts = [replace(v, self_int=v.self_int - 1) if v.id == a else v for v in g.vertices]
    verts.append(Vertex(new_id, EXCEPTIONAL, va.N, -1, True))
    return DualGraph.build(verts, list(g.edges) + [(a, new_id)], g.boundary, g.point_log)


# ---------------------------------------------------------------------------
# Hirzebruch-Jung chains
# ---------------------------------------------------------------------------
def hj_continued_fraction(n: int, q: int):
    """``n/q = b1 - 1/(b2 - 1/(...))`` with every ``b_i >= 2``."""
    if not (isinstance(n, int) and isinstance(q, int)) or n < 2 or not 1 <= q < n or gcd(n, q) != 1:
        raise BadParameters(f"need n >= 2, 1 <= q < n, gcd(n, q) = 1; got ({n}, {q})")
    out = []
    while q:
        b = -(-n // q)
        out.append(b)
        n, q = q, b * q - n
    return out


def hj_chain(n: int, q: int, boundary: bool = True) -> DualGraph:
    bs = hj_continued_fraction(n, q)
    verts = [Vertex(f"C{i}", EXCEPTIONAL, 1, -b, True) for i, b in enumerate(bs, start=1)]
    edges = [(f"C{i}", f"C{i + 1}") for i in range(1, len(bs))]
    anchors = None
    if boundary:
        verts += [Vertex("A1", BOUNDARY, 1, 0, False), Vertex("A2", BOUNDARY, 1, 0, False)]
        edges += [("A1", "C1"), (f"C{len(bs)}", "A2")]
        anchors = ("A1", "A2")
    return DualGraph.build(verts, edges, anchors)


# ---------------------------------------------------------------------------
# validation and serialization
# ---------------------------------------------------------------------------
def validate_log_resolution(g: DualGraph):
    """Problems preventing ``g`` from being the dual graph of a log resolution (empty if none)."""
    problems = []
    for a, b in g.edges:
        if a == b:
            problems.append(f"loop at {a}")
    if not exceptional_negative_definite(g):
        problems.append("exceptional intersection matrix is not negative definite")
    return problems


def to_json(g: DualGraph) -> dict:
    out = {
        "vertices": [
            {"id": v.id, "kind": v.kind, "N": v.N, "self_int": v.self_int, "rational": v.rational}
            for v in g.vertices
        ],
        "edges": [[a, b] for a, b in g.edges],
    }
    if g.boundary is not None:
        out["boundary"] = list(g.boundary)
    return out


def from_json(data) -> DualGraph:
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, dict) and "dual_graph" in data:
        data = data["dual_graph"]
    try:
        verts = [
            Vertex(str(v["id"]), v.get("kind", EXCEPTIONAL), int(v.get("N", 1)), int(v["self_int"]), bool(v.get("rational", True)))
            for v in data["vertices"]
        ]
        edges = [(str(a), str(b)) for a, b in data.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed dual graph: {exc}") from exc
    boundary = data.get("boundary")
    return DualGraph.build(verts, edges, None if boundary is None else [str(b) for b in boundary])


def to_dot(g: DualGraph) -> str:
    lines = ["graph dual {"]
    for v in g.vertices:
        shape = "box" if v.kind == BOUNDARY else "ellipse"
        lines.append(f'  "{v.id}" [shape={shape}, label="{v.id}\\n{v.self_int} N={v.N}"];')
    for a, b in g.edges:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
