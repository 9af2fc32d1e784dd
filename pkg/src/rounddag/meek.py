"""Orientation propagation to a fixed point, plus the extendability check.

The four propagation rules are applied with a vertex worklist: when an edge
at v becomes an arc, v, its other endpoint and their neighborhoods are
re-examined.  The fixed point is order-independent (asserted by tests, not
assumed).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import GraphError, MixedGraph, topological_order


class InconsistentOrientationError(GraphError):
    """Propagation produced a directed cycle: the input arcs were corrupt."""


@dataclass
class OrientationDelta:
    """Arcs added in application order, each tagged with its origin.

    Tags: R1-R4 for propagation rules, V for v-structure arcs, I for
    intervention-cut arcs.
    """

    entries: list[tuple[tuple[int, int], str]] = field(default_factory=list)

    def add(self, arc: tuple[int, int], tag: str) -> None:
        self.entries.append((arc, tag))

    def arcs(self) -> list[tuple[int, int]]:
        return [arc for arc, _ in self.entries]


def _rule_for(g: MixedGraph, a: int, b: int) -> str | None:
    """Tag of the first rule orienting the undirected edge {a, b} as a -> b."""
    # R1: some c -> a with c not adjacent to b.
    for c in g.parents(a):
        if not g.adjacent(c, b):
            return "R1"
    # R2: a directed path a -> c -> b.
    if g.children(a) & g.parents(b):
        return "R2"
    # R3: non-adjacent c, d joined to a by *undirected* edges, both pointing
    # at b.  (With c -> a or d -> a the collider at a already exists and the
    # orientation of {a, b} is genuinely ambiguous, so adjacency is not
    # enough.)
    und_a = g.neighbors(a)
    into_b = und_a & g.parents(b)
    if len(into_b) >= 2:
        ordered = sorted(into_b)
        for i, c in enumerate(ordered):
            for d in ordered[i + 1 :]:
                if not g.adjacent(c, d):
                    return "R3"
    # R4: a - d undirected, b not adjacent to d, and d -> c -> b with c
    # adjacent to a.
    adj_a = und_a | g.parents(a) | g.children(a)
    for c in g.parents(b) & adj_a:
        for d in g.parents(c) & und_a:
            if not g.adjacent(b, d):
                return "R4"
    return None


def _neighborhood(g: MixedGraph, v: int) -> set[int]:
    return g.neighbors(v) | g.parents(v) | g.children(v)


def meek_closure(
    g: MixedGraph, changed: list[tuple[int, int]] | None = None
) -> tuple[MixedGraph, OrientationDelta]:
    """Orient every edge forced by repeated rule application.

    When ``changed`` lists the arcs added since the last fixed point, only
    their neighborhoods are re-examined; with ``changed=None`` every vertex
    is scanned.  The input must admit a consistent extension; if propagation
    ever yields a directed cycle the input arcs were corrupt and
    InconsistentOrientationError is raised.
    """
    out = g.copy()
    delta = OrientationDelta()
    if changed is None:
        dirty = set(range(out.n))
    else:
        dirty = set()
        for u, v in changed:
            dirty.add(u)
            dirty.add(v)
            dirty |= _neighborhood(out, u)
            dirty |= _neighborhood(out, v)
    while dirty:
        wave = sorted(dirty)
        dirty = set()
        for v in wave:
            for u in sorted(out.neighbors(v)):
                if not out.has_undirected(v, u):
                    continue
                tag = _rule_for(out, v, u)
                if tag is not None:
                    a, b = v, u
                else:
                    tag = _rule_for(out, u, v)
                    a, b = u, v
                if tag is None:
                    continue
                out.orient(a, b)
                delta.add((a, b), tag)
                dirty.add(a)
                dirty.add(b)
                dirty |= _neighborhood(out, a)
                dirty |= _neighborhood(out, b)
    if topological_order(out) is None:
        raise InconsistentOrientationError(
            "rule application created a directed cycle"
        )
    return out, delta


def has_consistent_extension(g: MixedGraph) -> bool:
    """Whether some DAG orients all edges, keeps all arcs, and adds no v-structure.

    Standard sink-peeling: repeatedly remove a vertex with no outgoing arcs
    whose undirected neighbors are adjacent to every other vertex adjacent to
    it.
    """
    remaining = set(range(g.n))
    und = {v: set(g.neighbors(v)) for v in g.vertices()}
    pars = {v: set(g.parents(v)) for v in g.vertices()}
    kids = {v: set(g.children(v)) for v in g.vertices()}

    def removable(v: int) -> bool:
        if kids[v]:
            return False
        adj_v = und[v] | pars[v]
        for u in und[v]:
            for w in adj_v:
                if w != u and not g.adjacent(u, w):
                    return False
        return True

    while remaining:
        found = None
        for v in sorted(remaining):
            if removable(v):
                found = v
                break
        if found is None:
            return False
        remaining.discard(found)
        for u in und[found]:
            und[u].discard(found)
        for u in pars[found]:
            kids[u].discard(found)
        und[found] = set()
        pars[found] = set()
    return True
