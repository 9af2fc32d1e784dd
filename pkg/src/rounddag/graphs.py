"""Partially directed graphs over dense integer vertices.

A single representation covers DAGs, skeletons, essential graphs and
interventional essential graphs: a set of undirected edges plus a set of
directed arcs, with both pair-membership sets (O(1) edge queries) and
per-vertex neighbor sets (O(deg) scans).  Vertices are the integers
``0..n-1``; string labels, if any, belong to the I/O layer.

Iteration order is always ascending vertex index so that downstream
transcripts replay identically across runs and platforms.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable


class GraphError(Exception):
    """Base class for graph-structure errors raised by this package."""


class InvalidInputError(GraphError):
    """Malformed external input (files, CLI arguments, vertex ids)."""


class NotChainGraphError(GraphError):
    """The graph contains a partially directed cycle."""


class InternalInvariantError(GraphError):
    """A structural guarantee failed; indicates a bug, not bad input."""


def _und_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class MixedGraph:
    """Graph with undirected edges and directed arcs; no pair holds both."""

    __slots__ = ("n", "_und", "_arcs", "_nbrs", "_parents", "_children")

    def __init__(self, n: int):
        if n < 0:
            raise InvalidInputError(f"vertex count must be >= 0, got {n}")
        self.n = n
        self._und: set[tuple[int, int]] = set()
        self._arcs: set[tuple[int, int]] = set()
        self._nbrs: list[set[int]] = [set() for _ in range(n)]
        self._parents: list[set[int]] = [set() for _ in range(n)]
        self._children: list[set[int]] = [set() for _ in range(n)]

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        n: int,
        undirected: Iterable[tuple[int, int]] = (),
        arcs: Iterable[tuple[int, int]] = (),
    ) -> "MixedGraph":
        g = cls(n)
        for u, v in undirected:
            g.add_undirected(u, v)
        for u, v in arcs:
            g.add_arc(u, v)
        return g

    def copy(self) -> "MixedGraph":
        g = MixedGraph(self.n)
        g._und = set(self._und)
        g._arcs = set(self._arcs)
        g._nbrs = [set(s) for s in self._nbrs]
        g._parents = [set(s) for s in self._parents]
        g._children = [set(s) for s in self._children]
        return g

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidInputError(f"vertex {v} out of range [0, {self.n})")

    def _check_new_pair(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise InvalidInputError(f"self-loop at vertex {u}")
        if self.adjacent(u, v):
            raise InvalidInputError(f"pair ({u}, {v}) already present")

    def add_undirected(self, u: int, v: int) -> None:
        self._check_new_pair(u, v)
        self._und.add(_und_key(u, v))
        self._nbrs[u].add(v)
        self._nbrs[v].add(u)

    def add_arc(self, u: int, v: int) -> None:
        self._check_new_pair(u, v)
        self._arcs.add((u, v))
        self._children[u].add(v)
        self._parents[v].add(u)

    def orient(self, u: int, v: int) -> None:
        """Turn the undirected edge {u, v} into the arc u -> v."""
        key = _und_key(u, v)
        if key not in self._und:
            raise GraphError(f"no undirected edge {{{u}, {v}}} to orient")
        self._und.discard(key)
        self._nbrs[u].discard(v)
        self._nbrs[v].discard(u)
        self._arcs.add((u, v))
        self._children[u].add(v)
        self._parents[v].add(u)

    # -- queries -----------------------------------------------------------

    def has_undirected(self, u: int, v: int) -> bool:
        return _und_key(u, v) in self._und

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arcs

    def adjacent(self, u: int, v: int) -> bool:
        return (
            _und_key(u, v) in self._und
            or (u, v) in self._arcs
            or (v, u) in self._arcs
        )

    def neighbors(self, v: int) -> set[int]:
        """Endpoints of undirected edges at v."""
        return self._nbrs[v]

    def parents(self, v: int) -> set[int]:
        return self._parents[v]

    def children(self, v: int) -> set[int]:
        return self._children[v]

    def undirected_edges(self) -> list[tuple[int, int]]:
        return sorted(self._und)

    def arcs(self) -> list[tuple[int, int]]:
        return sorted(self._arcs)

    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self._arcs)

    def num_undirected(self) -> int:
        return len(self._und)

    def num_arcs(self) -> int:
        return len(self._arcs)

    def is_fully_directed(self) -> bool:
        return not self._und

    def is_fully_undirected(self) -> bool:
        return not self._arcs

    def degree(self, v: int) -> int:
        return len(self._nbrs[v]) + len(self._parents[v]) + len(self._children[v])

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return self.n == other.n and self._und == other._und and self._arcs == other._arcs

    __hash__ = None  # mutable container with value equality

    def __repr__(self) -> str:
        return (
            f"MixedGraph(n={self.n}, undirected={len(self._und)}, "
            f"arcs={len(self._arcs)})"
        )

    def is_dag(self) -> bool:
        """Fully directed and acyclic."""
        return not self._und and topological_order(self) is not None


@dataclass(frozen=True)
class ChainComponent:
    """One connected component of the undirected part of a chain graph."""

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def subgraph(self) -> tuple[MixedGraph, list[int]]:
        """Standalone undirected graph on local vertices plus local -> global map."""
        mapping = list(self.vertices)
        index = {g: i for i, g in enumerate(mapping)}
        sub = MixedGraph(len(mapping))
        for u, v in sorted(self.edges):
            sub.add_undirected(index[u], index[v])
        return sub, mapping

    def is_clique(self) -> bool:
        m = len(self.vertices)
        return len(self.edges) == m * (m - 1) // 2


def skeleton(g: MixedGraph) -> MixedGraph:
    """Same adjacencies with every arc made undirected."""
    out = MixedGraph(g.n)
    for u, v in g.undirected_edges():
        out.add_undirected(u, v)
    for u, v in g.arcs():
        out.add_undirected(u, v)
    return out


def v_structures(g: MixedGraph) -> set[tuple[int, int, int]]:
    """All triples (u, v, w) with u -> v <- w, u and w non-adjacent, u < w."""
    found = set()
    for v in g.vertices():
        ps = sorted(g.parents(v))
        for i, u in enumerate(ps):
            for w in ps[i + 1 :]:
                if not g.adjacent(u, w):
                    found.add((u, v, w))
    return found


def _undirected_components(g: MixedGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in g.vertices():
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in sorted(g.neighbors(x)):
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def has_partially_directed_cycle(g: MixedGraph) -> bool:
    """Cycle of length >= 3 using >= 1 arc with all arcs agreeing in direction.

    Equivalent check: some arc joins two vertices of one undirected component,
    or the arcs between undirected components form a directed cycle.
    """
    comps = _undirected_components(g)
    comp_of = [0] * g.n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    meta_succ: list[set[int]] = [set() for _ in comps]
    for u, v in g.arcs():
        if comp_of[u] == comp_of[v]:
            return True
        meta_succ[comp_of[u]].add(comp_of[v])
    # Kahn on the component digraph.
    indeg = [0] * len(comps)
    for u in range(len(comps)):
        for v in meta_succ[u]:
            indeg[v] += 1
    queue = [u for u in range(len(comps)) if indeg[u] == 0]
    removed = 0
    while queue:
        u = queue.pop()
        removed += 1
        for v in meta_succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return removed != len(comps)


def chain_components(g: MixedGraph) -> list[ChainComponent]:
    """Connected components of the undirected part; singletons included.

    Rejects graphs containing a partially directed cycle, since chain
    components are only meaningful for chain graphs.
    """
    if has_partially_directed_cycle(g):
        raise NotChainGraphError("input contains a partially directed cycle")
    out = []
    for comp in _undirected_components(g):
        members = set(comp)
        edges = frozenset(
            (u, v) for u, v in g.undirected_edges() if u in members and v in members
        )
        out.append(ChainComponent(vertices=tuple(comp), edges=edges))
    return out


def topological_order(g: MixedGraph) -> list[int] | None:
    """Topological order of the arcs, or None if they contain a cycle.

    Undirected edges are ignored; lowest-index-first tie-breaking.
    """
    indeg = [len(g.parents(v)) for v in g.vertices()]
    heap = [v for v in g.vertices() if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for c in sorted(g.children(v)):
            indeg[c] -= 1
            if indeg[c] == 0:
                heapq.heappush(heap, c)
    if len(order) != g.n:
        return None
    return order


# -- external formats ------------------------------------------------------


def write_edgelist(g: MixedGraph) -> str:
    """Edge-list text: header ``n m_und m_dir``, undirected lines, then arcs."""
    lines = [f"{g.n} {g.num_undirected()} {g.num_arcs()}"]
    lines.extend(f"{u} {v}" for u, v in g.undirected_edges())
    lines.extend(f"{u} {v}" for u, v in g.arcs())
    return "\n".join(lines) + "\n"


def read_edgelist(text: str) -> MixedGraph:
    """Parse the edge-list format; ``#`` comment lines are ignored."""
    rows: list[list[str]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split())
    if not rows:
        raise InvalidInputError("empty edge-list input")
    header = rows[0]
    if len(header) != 3:
        raise InvalidInputError(f"header must be 'n m_und m_dir', got {header!r}")
    try:
        n, m_und, m_dir = (int(x) for x in header)
    except ValueError as exc:
        raise InvalidInputError(f"non-integer header field: {header!r}") from exc
    body = rows[1:]
    if len(body) != m_und + m_dir:
        raise InvalidInputError(
            f"expected {m_und + m_dir} edge lines, found {len(body)}"
        )
    g = MixedGraph(n)
    try:
        for row in body[:m_und]:
            u, v = (int(x) for x in row)
            g.add_undirected(u, v)
        for row in body[m_und:]:
            u, v = (int(x) for x in row)
            g.add_arc(u, v)
    except ValueError as exc:
        raise InvalidInputError(f"malformed edge line: {exc}") from exc
    return g


def to_dot(g: MixedGraph, name: str = "g") -> str:
    """DOT text for debugging; undirected edges use dir=none."""
    lines = [f"digraph {name} {{"]
    for v in g.vertices():
        lines.append(f"  {v};")
    for u, v in g.undirected_edges():
        lines.append(f"  {u} -> {v} [dir=none];")
    for u, v in g.arcs():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
