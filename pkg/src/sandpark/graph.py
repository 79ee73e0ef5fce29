"""Rooted multigraphs with subset-degree queries and structural predicates.

Vertices are opaque strings.  Declaration order is canonical throughout the
package: configurations, parking values, enumeration output and reports all
follow it, which keeps every run reproducible.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DisconnectedGraphError,
    DuplicateVertexError,
    GraphError,
    LoopEdgeError,
    TooFewVerticesError,
    UnknownVertexError,
)


@dataclass(frozen=True)
class RootedMultigraph:
    """Finite connected loop-free multigraph with a designated sink.

    ``mult`` is the symmetric multiplicity matrix indexed by declaration
    order.  Instances are immutable value objects: equality and hashing use
    the vertex list, the sink and the matrix, so graphs can key caches.
    """

    vertices: tuple[str, ...]
    sink: str
    mult: tuple[tuple[int, ...], ...]

    # ------------------------------------------------------------------
    # derived lookups (computed once per instance)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def sink_index(self) -> int:
        return self.index[self.sink]

    @cached_property
    def nonsink(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if v != self.sink)

    @cached_property
    def nonsink_indices(self) -> tuple[int, ...]:
        return tuple(self.index[v] for v in self.nonsink)

    @cached_property
    def nonsink_pos(self) -> dict[str, int]:
        return {v: p for p, v in enumerate(self.nonsink)}

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.mult)

    @cached_property
    def nonsink_degrees(self) -> tuple[int, ...]:
        return tuple(self.degrees[i] for i in self.nonsink_indices)

    @cached_property
    def sink_mults(self) -> tuple[int, ...]:
        """Multiplicity towards the sink, per non-sink position."""
        si = self.sink_index
        return tuple(self.mult[i][si] for i in self.nonsink_indices)

    @cached_property
    def nonsink_adj(self) -> tuple[tuple[int, ...], ...]:
        """Multiplicity matrix restricted to non-sink vertices."""
        idx = self.nonsink_indices
        return tuple(tuple(self.mult[i][j] for j in idx) for i in idx)

    @cached_property
    def edge_total(self) -> int:
        return sum(self.degrees) // 2

    # ------------------------------------------------------------------
    # basic queries

    def _vertex_index(self, v: str) -> int:
        try:
            return self.index[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def multiplicity(self, v: str, w: str) -> int:
        return self.mult[self._vertex_index(v)][self._vertex_index(w)]

    def deg(self, v: str) -> int:
        return self.degrees[self._vertex_index(v)]

    def deg_within(self, v: str, within: Iterable[str]) -> int:
        """Number of edge endpoints at ``v`` leading into ``within``."""
        row = self.mult[self._vertex_index(v)]
        return sum(row[self._vertex_index(w)] for w in within)

    # ------------------------------------------------------------------
    # structural operations

    def induced_with_sink(self, keep: Iterable[str]) -> "RootedMultigraph":
        """Induced subgraph on ``keep`` plus the sink.

        ``keep`` must be a non-empty set of non-sink vertices and the result
        must be connected; declaration order is inherited from this graph.
        """
        keep_set = set(keep)
        if not keep_set:
            raise GraphError("induced subgraph needs at least one non-sink vertex")
        for v in keep_set:
            if v not in self.index:
                raise UnknownVertexError(f"unknown vertex {v!r}")
            if v == self.sink:
                raise GraphError("the sink is always kept; do not list it")
        names = tuple(v for v in self.vertices
                      if v == self.sink or v in keep_set)
        idx = [self.index[v] for v in names]
        sub = tuple(tuple(self.mult[i][j] for j in idx) for i in idx)
        g = RootedMultigraph(names, self.sink, sub)
        if not g.is_connected():
            raise DisconnectedGraphError(
                f"induced subgraph on {sorted(keep_set)} plus sink is disconnected")
        return g

    def delete_vertex(self, v: str) -> "RootedMultigraph":
        """Remove one non-sink vertex together with all incident edges."""
        iv = self._vertex_index(v)
        if iv == self.sink_index:
            raise GraphError("cannot delete the sink")
        if len(self.vertices) <= 2:
            raise TooFewVerticesError("deletion would leave fewer than 2 vertices")
        keep = [v2 for v2 in self.nonsink if v2 != v]
        return self.induced_with_sink(keep)

    def is_connected(self) -> bool:
        seen = {self.sink_index}
        queue = deque([self.sink_index])
        while queue:
            i = queue.popleft()
            for j, m in enumerate(self.mult[i]):
                if m and j not in seen:
                    seen.add(j)
                    queue.append(j)
        return len(seen) == len(self.vertices)

    def sink_is_cut_vertex(self) -> bool:
        """True iff removing the sink disconnects the remaining vertices."""
        k = len(self.nonsink)
        if k <= 1:
            return False
        adj = self.nonsink_adj
        seen = {0}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in range(k):
                if adj[i][j] and j not in seen:
                    seen.add(j)
                    queue.append(j)
        return len(seen) != k

    def spanning_tree_count(self) -> int:
        """Number of spanning trees, via the reduced Laplacian determinant.

        Computed with fraction-free elimination over Python integers so the
        result is exact for any multiplicities.
        """
        idx = self.nonsink_indices
        lap = [[self.degrees[i] if i == j else -self.mult[i][j] for j in idx]
               for i in idx]
        return _det_bareiss(lap)


def _det_bareiss(a: list[list[int]]) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def build_graph(vertices: Sequence[str], sink: str,
                edges: Iterable[tuple[str, str, int]]) -> RootedMultigraph:
    """Validate and assemble a rooted multigraph from an edge list.

    Duplicate (v, w) entries sum their multiplicities.  Loops, unknown
    names, duplicate vertex names, fewer than two vertices, non-positive
    multiplicities and disconnected results are all rejected with distinct
    error types.
    """
    names = tuple(vertices)
    if len(set(names)) != len(names):
        raise DuplicateVertexError("vertex names must be distinct")
    if len(names) < 2:
        raise TooFewVerticesError("a rooted graph needs at least 2 vertices")
    index = {v: i for i, v in enumerate(names)}
    if sink not in index:
        raise UnknownVertexError(f"sink {sink!r} is not a declared vertex")
    n = len(names)
    mat = [[0] * n for _ in range(n)]
    for v, w, m in edges:
        if v not in index:
            raise UnknownVertexError(f"unknown vertex {v!r} in edge list")
        if w not in index:
            raise UnknownVertexError(f"unknown vertex {w!r} in edge list")
        if v == w:
            raise LoopEdgeError(f"loop edge at {v!r}")
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise GraphError(f"edge multiplicity must be a positive integer, got {m!r}")
        mat[index[v]][index[w]] += m
        mat[index[w]][index[v]] += m
    g = RootedMultigraph(names, sink, tuple(tuple(row) for row in mat))
    if not g.is_connected():
        raise DisconnectedGraphError("graph is not connected")
    return g


# ----------------------------------------------------------------------
# JSON interchange
#
# {"vertices": ["0", "v1", ...], "sink": "0", "edges": [["v1", "v2", 1], ...]}
# The multiplicity field is mandatory on every edge.


def graph_from_dict(data: dict) -> RootedMultigraph:
    if not isinstance(data, dict):
        raise GraphError("graph document must be a JSON object")
    try:
        vertices = data["vertices"]
        sink = data["sink"]
        edges = data["edges"]
    except KeyError as e:
        raise GraphError(f"graph document missing key {e.args[0]!r}") from None
    if (not isinstance(vertices, list)
            or not all(isinstance(v, str) for v in vertices)):
        raise GraphError("'vertices' must be a list of strings")
    if not isinstance(sink, str):
        raise GraphError("'sink' must be a string")
    if not isinstance(edges, list):
        raise GraphError("'edges' must be a list")
    triples = []
    for e in edges:
        if not isinstance(e, list) or len(e) != 3:
            raise GraphError(
                f"each edge must be a [v, w, multiplicity] triple, got {e!r}")
        triples.append((e[0], e[1], e[2]))
    return build_graph(vertices, sink, triples)


def graph_to_dict(g: RootedMultigraph) -> dict:
    edges = []
    n = len(g.vertices)
    for i in range(n):
        for j in range(i + 1, n):
            if g.mult[i][j]:
                edges.append([g.vertices[i], g.vertices[j], g.mult[i][j]])
    return {"vertices": list(g.vertices), "sink": g.sink, "edges": edges}


def load_graph(path) -> RootedMultigraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_dict(json.load(fh))


def save_graph(g: RootedMultigraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_dict(g), fh, indent=2)
        fh.write("\n")
