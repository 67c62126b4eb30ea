"""Directed multigraphs and the graph-side constructions used by the
congruence classification: hereditary vertex sets, quotient graphs,
index-one vertices, cycles inside a vertex set, and exits of paths.

Graphs are immutable after construction and iterate in insertion order,
so every enumeration in this package is reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple

RESERVED_ID_CHARS = set(".|@*")


class GraphFormatError(ValueError):
    """Raised for malformed graph data (construction or JSON)."""


def _check_id(kind: str, ident: object) -> str:
    if not isinstance(ident, str) or not ident:
        raise GraphFormatError(f"{kind} id must be a nonempty string, got {ident!r}")
    bad = RESERVED_ID_CHARS.intersection(ident)
    if bad:
        raise GraphFormatError(
            f"{kind} id {ident!r} uses reserved characters {sorted(bad)}"
        )
    return ident


class Edge(NamedTuple):
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Graph:
    """A directed multigraph with stable string identifiers.

    Parallel edges and loops are allowed; edges are distinguished by id,
    never by their endpoints.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        seen_v: set[str] = set()
        for v in self.vertices:
            _check_id("vertex", v)
            if v in seen_v:
                raise GraphFormatError(f"duplicate vertex id {v!r}")
            seen_v.add(v)
        edge_map: dict[str, Edge] = {}
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            _check_id("edge", e.id)
            if e.id in edge_map:
                raise GraphFormatError(f"duplicate edge id {e.id!r}")
            if e.src not in seen_v or e.dst not in seen_v:
                raise GraphFormatError(f"edge {e.id!r} has undeclared endpoint")
            edge_map[e.id] = e
            out[e.src].append(e)
        object.__setattr__(self, "_edge_map", edge_map)
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in out.items()})
        object.__setattr__(self, "_vpos", {v: i for i, v in enumerate(self.vertices)})

    @classmethod
    def of(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> Graph:
        return cls(tuple(vertices), tuple(Edge(*e) for e in edges))

    def has_vertex(self, v: str) -> bool:
        return v in self._vpos  # type: ignore[attr-defined]

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_map[edge_id]  # type: ignore[attr-defined]
        except KeyError:
            raise KeyError(f"unknown edge id {edge_id!r}") from None

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        self._require_vertex(v)
        return self._out[v]  # type: ignore[attr-defined]

    def index(self, v: str) -> int:
        """Number of edges with source v."""
        return len(self.out_edges(v))

    def sort_vertices(self, vs: Iterable[str]) -> tuple[str, ...]:
        """Order a vertex collection by this graph's insertion order."""
        pos = self._vpos  # type: ignore[attr-defined]
        return tuple(sorted(vs, key=pos.__getitem__))

    def _require_vertex(self, v: str) -> None:
        if not self.has_vertex(v):
            raise KeyError(f"unknown vertex id {v!r}")


# ---------------------------------------------------------------------------
# Paths and cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """A (possibly empty) composable edge sequence.

    ``vertices`` lists the visited vertices, so ``len(vertices) ==
    len(edges) + 1``; a length-0 path is a single vertex. Paths are
    self-contained: once built against a graph they can be inspected and
    combined without it.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) != len(self.edges) + 1:
            raise ValueError("path vertex/edge counts are inconsistent")

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def target(self) -> str:
        return self.vertices[-1]

    @property
    def vertex_set(self) -> frozenset[str]:
        """Sources of the edges; empty for a length-0 path."""
        return frozenset(self.vertices[:-1])

    @property
    def is_closed(self) -> bool:
        return self.source == self.target

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        if not self.edges:
            return f"@{self.source}"
        return ".".join(self.edges)


def vertex_path(v: str) -> Path:
    """The length-0 path sitting at v."""
    return Path((v,), ())


def make_path(g: Graph, edge_ids: Iterable[str], source: str | None = None) -> Path:
    """Build a validated path of g from an edge-id sequence.

    With no edges a source vertex is required and the result is the
    length-0 path there.
    """
    ids = tuple(edge_ids)
    if not ids:
        if source is None:
            raise ValueError("a length-0 path needs an explicit source vertex")
        g._require_vertex(source)
        return vertex_path(source)
    edges = [g.edge(i) for i in ids]
    if source is not None and edges[0].src != source:
        raise ValueError(f"path source {source!r} does not match first edge {ids[0]!r}")
    verts = [edges[0].src]
    for prev, nxt in zip(edges, edges[1:]):
        if prev.dst != nxt.src:
            raise ValueError(f"edges {prev.id!r} and {nxt.id!r} do not compose")
        verts.append(prev.dst)
    verts.append(edges[-1].dst)
    return Path(tuple(verts), ids)


def concat(p: Path, q: Path) -> Path:
    if p.target != q.source:
        raise ValueError(f"paths do not compose: {p!r} ends at {p.target!r}, "
                         f"{q!r} starts at {q.source!r}")
    return Path(p.vertices + q.vertices[1:], p.edges + q.edges)


def is_prefix(p: Path, q: Path) -> bool:
    """True iff q = p followed by some path."""
    return p.source == q.source and q.edges[: len(p.edges)] == p.edges


def strip_prefix(p: Path, q: Path) -> Path:
    """The remainder of q after its prefix p."""
    if not is_prefix(p, q):
        raise ValueError(f"{p!r} is not a prefix of {q!r}")
    n = len(p.edges)
    return Path(q.vertices[n:], q.edges[n:])


def drop_last(p: Path) -> Path:
    if not p.edges:
        raise ValueError("cannot drop an edge from a length-0 path")
    return Path(p.vertices[:-1], p.edges[:-1])


@dataclass(frozen=True)
class Cycle:
    """A cycle stored in its canonical rotation.

    The canonical rotation is the one whose edge-id sequence is
    lexicographically least, so two cycles are cyclic permutations of each
    other exactly when they are equal. Data attached to a cycle (such as
    cycle-function values) is therefore rotation-invariant by construction.
    """

    path: Path

    def __post_init__(self) -> None:
        p = self.path
        if len(p) < 1 or not p.is_closed:
            raise ValueError(f"not a closed nonempty path: {p!r}")
        body = p.vertices[:-1]
        if len(set(body)) != len(body):
            raise ValueError(f"repeated source vertex in cycle candidate {p!r}")
        if p.edges != min(_rotate(p, k).edges for k in range(len(p))):
            raise ValueError(
                f"cycle {p.edges} is not in canonical rotation; "
                f"expected {Cycle.from_path(p).path.edges}"
            )

    @classmethod
    def from_path(cls, p: Path) -> Cycle:
        """Canonicalize any rotation of a cycle."""
        if len(p) < 1 or not p.is_closed:
            raise ValueError(f"not a closed nonempty path: {p!r}")
        best = min(range(len(p)), key=lambda k: _rotate(p, k).edges)
        return cls.__new_canonical(_rotate(p, best))

    @classmethod
    def __new_canonical(cls, p: Path) -> Cycle:
        obj = object.__new__(cls)
        object.__setattr__(obj, "path", p)
        body = p.vertices[:-1]
        if len(set(body)) != len(body):
            raise ValueError(f"repeated source vertex in cycle candidate {p!r}")
        return obj

    @property
    def base(self) -> str:
        return self.path.source

    @property
    def vertex_set(self) -> frozenset[str]:
        return self.path.vertex_set

    def __len__(self) -> int:
        return len(self.path)

    def rotations(self) -> list[Path]:
        return [_rotate(self.path, k) for k in range(len(self))]

    def based_at(self, v: str) -> Path:
        """The rotation of this cycle starting (and ending) at v."""
        body = self.path.vertices[:-1]
        try:
            k = body.index(v)
        except ValueError:
            raise ValueError(f"vertex {v!r} does not lie on cycle {self.path!r}") from None
        return _rotate(self.path, k)

    def power(self, m: int) -> Path:
        """The closed path tracing this cycle m times from its base."""
        return cycle_power(self.path, m)

    def __repr__(self) -> str:
        return f"<cycle {self.path!r}>"


def _rotate(p: Path, k: int) -> Path:
    if k == 0:
        return p
    n = len(p)
    return Path(p.vertices[k:] + p.vertices[1 : k + 1], p.edges[k:] + p.edges[:k])


def cycle_power(loop: Path, m: int) -> Path:
    if not loop.is_closed:
        raise ValueError(f"not a closed path: {loop!r}")
    if m < 0:
        raise ValueError("negative cycle power")
    out = vertex_path(loop.source)
    for _ in range(m):
        out = concat(out, loop)
    return out


# ---------------------------------------------------------------------------
# Hereditary subsets and quotients
# ---------------------------------------------------------------------------


def is_hereditary(g: Graph, h: Iterable[str]) -> bool:
    """True iff no edge leaves h: s(e) in h implies r(e) in h."""
    hs = set(h)
    for v in hs:
        g._require_vertex(v)
    return all(e.dst in hs for v in hs for e in g.out_edges(v))


def hereditary_closure(g: Graph, seed: Iterable[str]) -> frozenset[str]:
    """Smallest hereditary superset of seed (forward reachability)."""
    todo = list(seed)
    for v in todo:
        g._require_vertex(v)
    closed: set[str] = set()
    while todo:
        v = todo.pop()
        if v in closed:
            continue
        closed.add(v)
        todo.extend(e.dst for e in g.out_edges(v))
    return frozenset(closed)

def enumerate_hereditary(g: Graph) -> list[frozenset[str]]:
    """All hereditary subsets, in subset-bitmask order over the vertex tuple."""
    n = len(g.vertices)
    out = []
    for mask in range(1 << n):
        h = frozenset(v for i, v in enumerate(g.vertices) if mask >> i & 1)
        if is_hereditary(g, h):
            out.append(h)
    return out


def quotient(g: Graph, h: Iterable[str]) -> Graph:
    """The graph obtained by deleting a hereditary set h and every edge
    ranging into it."""
    hs = frozenset(h)
    if not is_hereditary(g, hs):
        raise ValueError(f"vertex set {sorted(hs)} is not hereditary")
    verts = tuple(v for v in g.vertices if v not in hs)
    edges = tuple(e for e in g.edges if e.dst not in hs)
    return Graph(verts, edges)


def index_one_vertices(g: Graph) -> frozenset[str]:
    """Vertices with exactly one outgoing edge."""
    return frozenset(v for v in g.vertices if g.index(v) == 1)


def cycles_in(g: Graph, w: Iterable[str]) -> list[Cycle]:
    """Canonical representatives of all cycles whose vertices lie in w.

    Requires every vertex of w to have index one; the cycles found are
    then pairwise disjoint and automatically no-exit.
    """
    ws = set(w)
    for v in ws:
        g._require_vertex(v)
        if g.index(v) != 1:
            raise ValueError(f"vertex {v!r} has index {g.index(v)}, expected 1")
    found: list[Cycle] = []
    seen: set[Cycle] = set()
    for start in g.sort_vertices(ws):
        edges = []
        visited = set()
        u = start
        while u in ws and u not in visited:
            visited.add(u)
            (e,) = g.out_edges(u)
            edges.append(e.id)
            u = e.dst
            if u == start:
                c = Cycle.from_path(make_path(g, edges))
                if c not in seen:
                    seen.add(c)
                    found.append(c)
                break
    return found


def exits_of(g: Graph, p: Path) -> list[str]:
    """Edges sharing a source with some edge of p but distinct from it."""
    on_path = set(p.edges)
    out: list[str] = []
    seen: set[str] = set()
    for v in p.vertices[:-1]:
        for e in g.out_edges(v):
            if e.id not in on_path and e.id not in seen:
                seen.add(e.id)
                out.append(e.id)
    return out


def is_no_exit(g: Graph, p: Path) -> bool:
    return not exits_of(g, p)


# ---------------------------------------------------------------------------
# Global predicates
# ---------------------------------------------------------------------------


def _reachable(g: Graph, start: str, reverse: bool = False) -> set[str]:
    adj: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e in g.edges:
        if reverse:
            adj[e.dst].append(e.src)
        else:
            adj[e.src].append(e.dst)
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def is_strongly_connected(g: Graph) -> bool:
    """Every ordered vertex pair joined by a path (empty graph: true)."""
    if not g.vertices:
        return True
    start = g.vertices[0]
    n = len(g.vertices)
    return len(_reachable(g, start)) == n and len(_reachable(g, start, reverse=True)) == n


def is_acyclic(g: Graph) -> bool:
    """No directed cycle (so the path set, and hence I(G), is finite)."""
    color: dict[str, int] = {}

    def visit(v: str) -> bool:
        color[v] = 1
        for e in g.out_edges(v):
            c = color.get(e.dst, 0)
            if c == 1 or (c == 0 and not visit(e.dst)):
                return False
        color[v] = 2
        return True

    return all(visit(v) for v in g.vertices if color.get(v, 0) == 0)


def rees_only_condition(g: Graph) -> bool:
    """True iff every quotient by a hereditary set has no index-one vertex.

    Equivalently, every congruence of the associated semigroup is a Rees
    congruence (induced by an ideal).
    """
    return all(not index_one_vertices(quotient(g, h)) for h in enumerate_hereditary(g))


def is_congruence_free_graph(g: Graph) -> bool:
    """Strongly connected with no index-one vertex (nonempty graph)."""
    if not g.vertices:
        raise ValueError("predicate needs at least one vertex")
    return is_strongly_connected(g) and not index_one_vertices(g)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.edges],
    }


def graph_from_json(data: object) -> Graph:
    if not isinstance(data, dict):
        raise GraphFormatError("graph JSON must be an object")
    try:
        vertices = data["vertices"]
        edges = data["edges"]
    except KeyError as k:
        raise GraphFormatError(f"graph JSON missing key {k}") from None
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise GraphFormatError("'vertices' and 'edges' must be arrays")
    triples = []
    for item in edges:
        if not isinstance(item, dict) or not {"id", "src", "dst"} <= item.keys():
            raise GraphFormatError(f"malformed edge entry {item!r}")
        triples.append((item["id"], item["src"], item["dst"]))
    return Graph.of(vertices, triples)


def load_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON in {path}: {exc}") from None
    return graph_from_json(data)


def graph_to_dot(g: Graph) -> str:
    lines = ["digraph G {"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for e in g.edges:
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.id}"];')
    lines.append("}")
    return "\n".join(lines)
