"""Verification numbers and lower bounds.

The atomic verification number of a DAG equals the size of a minimum vertex
cover of its covered edges (arcs u -> v whose endpoints have identical
parent sets apart from u itself).  Covered edges always form a forest, so the
cover is computed exactly by tree dynamic programming.  A breadth-first
brute-force search over candidate intervention sets serves as the independent
oracle at small n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import chordal
from .graphs import (
    InternalInvariantError,
    InvalidInputError,
    MixedGraph,
    chain_components,
    topological_order,
)
from .oracle import EssentialState, HiddenDag, intervene, observational_essential


@dataclass(frozen=True)
class CoveredEdgeForest:
    """Covered edges kept with their direction; the skeleton is a forest."""

    edges: frozenset[tuple[int, int]]
    n: int

    def __post_init__(self):
        # Forest check: acyclic when read as undirected edges.
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in sorted(self.edges):
            ru, rv = find(u), find(v)
            if ru == rv:
                raise InternalInvariantError(
                    "covered edges of a DAG must form a forest"
                )
            parent[ru] = rv


def covered_edges(dag: MixedGraph) -> CoveredEdgeForest:
    """Arcs u -> v with parents(v) = parents(u) | {u}."""
    if dag.num_undirected() > 0 or topological_order(dag) is None:
        raise InvalidInputError("covered edges are defined for DAGs only")
    out = set()
    for u, v in dag.arcs():
        if dag.parents(v) == dag.parents(u) | {u}:
            out.add((u, v))
    return CoveredEdgeForest(edges=frozenset(out), n=dag.n)


def _forest_min_vertex_cover(n: int, edges: frozenset[tuple[int, int]]) -> set[int]:
    """Exact minimum vertex cover of a forest by leaf-to-root DP."""
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    cover: set[int] = set()
    visited: set[int] = set()
    for root in sorted(adj):
        if root in visited:
            continue
        # Iterative post-order over this tree component.
        order = []
        parent_of = {root: None}
        stack = [root]
        visited.add(root)
        while stack:
            x = stack.pop()
            order.append(x)
            for y in sorted(adj[x]):
                if y not in visited:
                    visited.add(y)
                    parent_of[y] = x
                    stack.append(y)
        take = {}  # min cover size of subtree if x is in the cover
        skip = {}  # ... if x is not
        for x in reversed(order):
            kids = [y for y in adj[x] if parent_of.get(y) == x]
            take[x] = 1 + sum(min(take[y], skip[y]) for y in kids)
            skip[x] = sum(take[y] for y in kids)
        # Reconstruct deterministically, preferring to skip on ties.
        choose = {root: take[root] < skip[root]}
        walk = [root]
        while walk:
            x = walk.pop()
            if choose[x]:
                cover.add(x)
            for y in sorted(adj[x]):
                if parent_of.get(y) == x:
                    # A skipped parent forces every child into the cover.
                    choose[y] = True if not choose[x] else take[y] < skip[y]
                    walk.append(y)
    return cover


def verification_number_atomic(dag: MixedGraph) -> tuple[int, set[int]]:
    """Minimum number of single-vertex interventions certifying the DAG.

    Returns the number together with a witness minimum vertex cover of the
    covered-edge forest.
    """
    forest = covered_edges(dag)
    cover = _forest_min_vertex_cover(dag.n, forest.edges)
    return len(cover), cover


def clique_sum_lower_bound(state: EssentialState) -> int:
    """Sum over chain components of floor(max-clique-size / 2)."""
    total = 0
    for comp in chain_components(state.graph):
        if len(comp.vertices) < 2:
            continue
        sub, _ = comp.subgraph()
        total += chordal.max_clique_size(sub) // 2
    return total


def bounded_verification_lower_bound(nu1: int, k: int) -> int:
    """ceil(nu1 / k): bounded-size interventions can cover at most k covered edges."""
    if nu1 < 0 or k < 1:
        raise InvalidInputError("need nu1 >= 0 and k >= 1")
    return -(-nu1 // k)


def brute_force_min_verifying_set(hidden: HiddenDag, k: int = 1) -> int:
    """Smallest count of <= k-sized interventions that fully orient the DAG.

    Breadth-first over candidate set sizes; test oracle only, guarded to
    small n.
    """
    if k == 1 and hidden.n > 12:
        raise InvalidInputError("brute force guarded to n <= 12 for atomic case")
    if k > 1 and hidden.n > 8:
        raise InvalidInputError("brute force guarded to n <= 8 for bounded case")
    base = observational_essential(hidden, size_bound=max(1, k))
    if base.is_fully_oriented():
        return 0
    if k == 1:
        candidates = [(v,) for v in range(hidden.n)]
    else:
        candidates = [
            tuple(c)
            for size in range(1, k + 1)
            for c in itertools.combinations(range(hidden.n), size)
        ]
    for m in range(1, hidden.n + 1):
        for combo in itertools.combinations(candidates, m):
            state = intervene(hidden, base, list(combo))
            if state.is_fully_oriented():
                return m
    raise InternalInvariantError("intervening on every vertex must orient the DAG")
