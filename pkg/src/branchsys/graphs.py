"""Finite directed multigraphs and the condition (K) decision procedure.

Vertices and edges carry string ids; parallel edges and self-loops are
allowed.  A vertex is a *sink* when it emits no edge, *regular*
otherwise (every non-sink of a finite graph has finite positive
out-degree).

Condition (K) asks, for every vertex v, that v either lies on no loop or
admits two loops based at v neither of which is an initial segment of
the other.  The decision runs on *first-return paths* (loops that do not
pass through v internally): any loop contains a first-return prefix, and
two distinct first-return paths are automatically mutually non-prefix,
so it suffices to find two of them.  When the depth-first search instead
runs into a cycle that avoids v, a second non-prefix return path is
synthesized by detouring around that cycle, which keeps the search
finite without enumerating non-simple paths.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field

from .errors import SchemaError

__all__ = [
    "Edge",
    "DirectedGraph",
    "VertexClassification",
    "ConditionKReport",
    "parse_graph",
    "graph_from_obj",
    "graph_to_obj",
    "classify_vertices",
    "first_return_paths",
    "check_condition_k",
    "random_graph",
    "MAX_GRAPH_SIZE",
]

MAX_GRAPH_SIZE = 10_000

NO_LOOP = "no-loop"
TWO_RETURN_PATHS = "two-return-paths"
VIOLATION = "VIOLATION"


@dataclass(frozen=True, slots=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class DirectedGraph:
    """Immutable finite directed multigraph."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _out: dict[str, tuple[Edge, ...]] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )

    def __post_init__(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            dup = _first_duplicate(self.vertices)
            raise SchemaError(f"duplicate vertex id {dup!r}")
        seen: set[str] = set()
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.id in seen:
                raise SchemaError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            if e.src not in vset:
                raise SchemaError(f"edge {e.id!r}: dangling vertex {e.src!r}")
            if e.dst not in vset:
                raise SchemaError(f"edge {e.id!r}: dangling vertex {e.dst!r}")
            out[e.src].append(e)
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in out.items()})

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        return self._out[v]

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)


def _first_duplicate(items) -> str:
    seen = set()
    for x in items:
        if x in seen:
            return x
        seen.add(x)
    return ""


# -- JSON ingestion -----------------------------------------------------------


def graph_from_obj(obj, path: str = "$", limit: int = MAX_GRAPH_SIZE) -> DirectedGraph:
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object")
    for key in ("vertices", "edges"):
        if key not in obj:
            raise SchemaError(f"{path}.{key}: missing")
    vertices = obj["vertices"]
    edges = obj["edges"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise SchemaError(f"{path}.vertices: expected a list of strings")
    if not isinstance(edges, list):
        raise SchemaError(f"{path}.edges: expected a list")
    if len(vertices) > limit or len(edges) > limit:
        raise SchemaError(
            f"{path}: graph too large (limit {limit} vertices/edges)"
        )
    parsed = []
    for i, e in enumerate(edges):
        if not isinstance(e, dict):
            raise SchemaError(f"{path}.edges[{i}]: expected an object")
        for key in ("id", "src", "dst"):
            if key not in e or not isinstance(e[key], str):
                raise SchemaError(f"{path}.edges[{i}].{key}: missing or not a string")
        parsed.append(Edge(e["id"], e["src"], e["dst"]))
    return DirectedGraph(tuple(vertices), tuple(parsed))


def graph_to_obj(g: DirectedGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.edges],
    }


def parse_graph(text: str, limit: int = MAX_GRAPH_SIZE) -> DirectedGraph:
    """Parse a graph JSON document; element order is preserved.

    Schema: ``{"vertices": [id, ...], "edges": [{"id", "src", "dst"}, ...]}``.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    return graph_from_obj(obj, limit=limit)


# -- vertex classification -----------------------------------------------------


@dataclass(frozen=True, slots=True)
class VertexClassification:
    sinks: tuple[str, ...]
    regular: frozenset[str]
    sink_index: dict[str, int]


def classify_vertices(g: DirectedGraph) -> VertexClassification:
    """Split vertices into sinks (out-degree 0, in id order) and regular ones."""
    sinks = tuple(sorted(v for v in g.vertices if not g.out_edges(v)))
    regular = frozenset(v for v in g.vertices if g.out_edges(v))
    return VertexClassification(sinks, regular, {v: i + 1 for i, v in enumerate(sinks)})


# -- loop structure --------------------------------------------------------------


def _bfs(starts, neighbours) -> set[str]:
    seen: set[str] = set()
    queue = deque(starts)
    while queue:
        u = queue.popleft()
        if u in seen:
            continue
        seen.add(u)
        queue.extend(w for w in neighbours.get(u, ()) if w not in seen)
    return seen


def _return_subgraph(g: DirectedGraph, v: str) -> dict[str, list[Edge]]:
    """Out-adjacency restricted to vertices that both descend from v and
    lead back to it; every edge here lies on some first-return path."""
    succ: dict[str, list[str]] = {}
    pred: dict[str, list[str]] = {}
    for e in g.edges:
        succ.setdefault(e.src, []).append(e.dst)
        pred.setdefault(e.dst, []).append(e.src)
    fwd = _bfs((e.dst for e in g.out_edges(v)), succ)
    back = _bfs(pred.get(v, ()), pred)
    core = (fwd & back) - {v}
    allowed = core | {v}
    adj: dict[str, list[Edge]] = {u: [] for u in allowed}
    for e in g.edges:
        if e.src in allowed and (e.dst in core or e.dst == v):
            adj[e.src].append(e)
    for u in adj:
        adj[u].sort(key=lambda e: e.id)
    return adj


def _shortest_completion(adj: dict[str, list[Edge]], start: str, v: str) -> list[Edge]:
    """Shortest edge path start -> v inside the return subgraph (BFS)."""
    if start == v:
        return []
    prev: dict[str, Edge] = {}
    queue = deque([start])
    seen = {start}
    while queue:
        u = queue.popleft()
        for e in adj.get(u, ()):
            w = e.dst
            if w == v:
                path = [e]
                while u != start:
                    back = prev[u]
                    path.append(back)
                    u = back.src
                path.reverse()
                return path
            if w not in seen:
                seen.add(w)
                prev[w] = e
                queue.append(w)
    raise AssertionError("return subgraph must reach the base vertex")


def first_return_paths(g: DirectedGraph, v: str, max_count: int) -> list[list[str]]:
    """Distinct return paths at v that do not visit v internally.

    The depth-first enumeration stops once `max_count` paths are found, or
    as soon as it meets a cycle avoiding v: such a cycle certifies a second
    non-prefix return path, which is synthesized by detouring around the
    cycle and completing back to v.
    """
    if max_count < 1:
        raise ValueError("max_count must be >= 1")
    if v not in set(g.vertices):
        raise KeyError(f"unknown vertex {v!r}")
    adj = _return_subgraph(g, v)
    found: list[tuple[str, ...]] = []

    # Iterative DFS over walks with distinct internal vertices.
    walk: list[Edge] = []
    on_path: dict[str, int] = {}  # internal vertex -> index where entered
    stack: list[tuple[str, int]] = [(v, 0)]
    while stack:
        u, nxt = stack[-1]
        out = adj.get(u, ())
        if nxt >= len(out):
            stack.pop()
            if walk:
                gone = walk.pop()
                if gone.dst != v:
                    del on_path[gone.dst]
            continue
        stack[-1] = (u, nxt + 1)
        e = out[nxt]
        w = e.dst
        if w == v:
            path = tuple(x.id for x in walk) + (e.id,)
            if path not in found:
                found.append(path)
                if len(found) >= max_count:
                    break
            continue
        if w in on_path:
            # Cycle avoiding v: walk[:k] reaches w, walk[k:] + e goes around.
            k = on_path[w]
            prefix = walk[:k]
            cycle = walk[k:] + [e]
            completion = _shortest_completion(adj, w, v)
            direct = tuple(x.id for x in prefix + completion)
            detour = tuple(x.id for x in prefix + cycle + completion)
            for path in (direct, detour):
                if path not in found:
                    found.append(path)
            break
        walk.append(e)
        on_path[w] = len(walk)
        stack.append((w, 0))
    return [list(p) for p in found[:max_count]]


@dataclass(frozen=True)
class ConditionKReport:
    satisfied: bool
    per_vertex: dict[str, str]
    witnesses: dict[str, tuple[tuple[str, ...], tuple[str, ...]]]


def check_condition_k(g: DirectedGraph) -> ConditionKReport:
    """Decide condition (K): every vertex lies on no loop or has two
    mutually non-prefix return paths (reported as witnesses)."""
    per_vertex: dict[str, str] = {}
    witnesses: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {}
    for v in g.vertices:
        paths = first_return_paths(g, v, 2)
        if not paths:
            per_vertex[v] = NO_LOOP
        elif len(paths) >= 2:
            per_vertex[v] = TWO_RETURN_PATHS
            witnesses[v] = (tuple(paths[0]), tuple(paths[1]))
        else:
            per_vertex[v] = VIOLATION
    satisfied = all(s != VIOLATION for s in per_vertex.values())
    return ConditionKReport(satisfied, per_vertex, witnesses)


# -- random instances ------------------------------------------------------------


def random_graph(rng: random.Random, max_vertices: int = 8, max_edges: int = 16) -> DirectedGraph:
    """A seeded random multigraph within the given size caps."""
    n_v = rng.randint(1, max_vertices)
    n_e = rng.randint(0, max_edges)
    vertices = tuple(f"v{i:02d}" for i in range(1, n_v + 1))
    edges = tuple(
        Edge(f"e{i:02d}", rng.choice(vertices), rng.choice(vertices))
        for i in range(1, n_e + 1)
    )
    return DirectedGraph(vertices, edges)
