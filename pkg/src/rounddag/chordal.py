"""Chordal graph machinery: elimination orderings, cliques, clique trees.

Convention used throughout: a perfect elimination ordering lists vertices in
the order they are eliminated, i.e. for ``order = [p_0, ..., p_{n-1}]`` the
neighbors of ``p_i`` among the *later* vertices ``p_{i+1}, ..., p_{n-1}``
must induce a clique.  Validity is always established by that predicate, not
by trusting the producing algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import GraphError, InvalidInputError, MixedGraph


class NotChordalError(GraphError):
    """Raised with a witness chordless cycle of length >= 4."""

    def __init__(self, witness: list[int]):
        self.witness = witness
        super().__init__(f"graph is not chordal; chordless cycle {witness}")


@dataclass(frozen=True)
class Peo:
    """Perfect elimination ordering (eliminate ``order[0]`` first)."""

    order: tuple[int, ...]

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def is_perfect_elimination_ordering(g: MixedGraph, order: tuple[int, ...]) -> bool:
    """Direct O(n * d^2) check of the later-neighbors-form-a-clique predicate."""
    if sorted(order) != list(range(g.n)):
        return False
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
        for i, a in enumerate(later):
            for b in later[i + 1 :]:
                if not g.adjacent(a, b):
                    return False
    return True


def _lex_bfs_visit_order(g: MixedGraph) -> list[int]:
    """Lexicographic BFS visit order via partition refinement.

    Deterministic: the pivot is always the lowest-index vertex of the front
    class.  Works on disconnected graphs (new front class picked the same way).
    """
    # Classes are kept as ordered buckets; vertices move to a fresh bucket
    # directly in front of their current one when hit by a pivot.
    head: list[int] = list(range(g.n))  # vertices sorted by index initially
    bucket_of = {v: 0 for v in head}
    buckets: list[list[int]] = [sorted(head)]
    order: list[int] = []
    visited = [False] * g.n
    while buckets:
        while buckets and not buckets[0]:
            buckets.pop(0)
        if not buckets:
            break
        v = buckets[0].pop(0)
        visited[v] = True
        order.append(v)
        # Split every bucket into (hit, not hit); hit moves in front.
        hits = {u for u in g.neighbors(v) if not visited[u]}
        if not hits:
            continue
        new_buckets: list[list[int]] = []
        for bucket in buckets:
            inside = [u for u in bucket if u in hits]
            outside = [u for u in bucket if u not in hits]
            if inside:
                new_buckets.append(inside)
            if outside:
                new_buckets.append(outside)
        buckets = new_buckets
    return order


def _find_chordless_cycle(g: MixedGraph) -> list[int]:
    """Witness chordless cycle (length >= 4) in a non-chordal graph.

    For some vertex v with non-adjacent neighbors a, b there is an a-b path
    avoiding N[v] \\ {a, b}; the shortest such path closes a chordless cycle
    through v.
    """
    for v in g.vertices():
        nbrs = sorted(g.neighbors(v))
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1 :]:
                if g.adjacent(a, b):
                    continue
                blocked = (set(g.neighbors(v)) | {v}) - {a, b}
                # BFS shortest a-b path outside blocked.
                prev = {a: a}
                queue = [a]
                while queue and b not in prev:
                    nxt = []
                    for x in queue:
                        for y in sorted(g.neighbors(x)):
                            if y in blocked or y in prev:
                                continue
                            prev[y] = x
                            nxt.append(y)
                    queue = nxt
                if b not in prev:
                    continue
                path = [b]
                while path[-1] != a:
                    path.append(prev[path[-1]])
                path.reverse()
                return [v] + path
    raise AssertionError("no chordless cycle found in a graph believed non-chordal")


def lex_bfs_peo(g: MixedGraph) -> Peo:
    """PEO of an undirected chordal graph, or NotChordalError with witness.

    The reverse of a lexicographic BFS visit order is a PEO exactly when the
    graph is chordal; the predicate is re-checked directly rather than
    trusted.
    """
    if g.num_arcs() > 0:
        raise InvalidInputError("lex-BFS expects a fully undirected graph")
    order = tuple(reversed(_lex_bfs_visit_order(g)))
    if not is_perfect_elimination_ordering(g, order):
        raise NotChordalError(_find_chordless_cycle(g))
    return Peo(order=order)


def maximal_cliques(g: MixedGraph, peo: Peo) -> list[tuple[int, ...]]:
    """Maximal cliques of a chordal graph from a PEO.

    Candidate i is the eliminated vertex plus its later neighbors; it is kept
    unless contained in the candidate of some earlier-eliminated neighbor.
    """
    pos = peo.position()
    candidates: list[set[int]] = []
    for v in peo.order:
        later = {u for u in g.neighbors(v) if pos[u] > pos[v]}
        candidates.append({v} | later)
    kept = []
    for i, cand in enumerate(candidates):
        contained = False
        v = peo.order[i]
        for u in g.neighbors(v):
            j = pos[u]
            if j < i and cand <= candidates[j]:
                contained = True
                break
        if not contained:
            kept.append(tuple(sorted(cand)))
    return kept


@dataclass(frozen=True)
class CliqueTree:
    """Maximum-weight spanning tree over the maximal cliques.

    ``edges`` maps an index pair (i < j) to the separator size
    ``|cliques[i] & cliques[j]|``.
    """

    cliques: tuple[tuple[int, ...], ...]
    edges: dict[tuple[int, int], int]

    def tree_graph(self) -> MixedGraph:
        """The tree over clique indices as an undirected MixedGraph."""
        t = MixedGraph(len(self.cliques))
        for i, j in sorted(self.edges):
            t.add_undirected(i, j)
        return t

    def neighbors_of(self, i: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)


def build_clique_tree(g: MixedGraph, peo: Peo | None = None) -> CliqueTree:
    """Clique tree of a connected chordal graph.

    Kruskal on the clique-intersection graph sorted by (-weight, i, j) gives a
    maximum-weight spanning tree with deterministic tie-breaking: among equal
    weights the lexicographically smallest index pair wins.
    """
    if peo is None:
        peo = lex_bfs_peo(g)
    cliques = maximal_cliques(g, peo)
    c = len(cliques)
    clique_sets = [set(k) for k in cliques]
    cand = []
    for i in range(c):
        for j in range(i + 1, c):
            w = len(clique_sets[i] & clique_sets[j])
            if w > 0:
                cand.append((-w, i, j))
    cand.sort()
    parent = list(range(c))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges: dict[tuple[int, int], int] = {}
    for negw, i, j in cand:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges[(i, j)] = -negw
            if len(edges) == c - 1:
                break
    if len(edges) != c - 1:
        raise InvalidInputError("clique tree requires a connected graph")
    return CliqueTree(cliques=tuple(cliques), edges=edges)


def max_clique_size(g: MixedGraph, peo: Peo | None = None) -> int:
    """Size of the maximum clique of a chordal graph."""
    if g.n == 0:
        return 0
    if peo is None:
        peo = lex_bfs_peo(g)
    return max(len(k) for k in maximal_cliques(g, peo))


def maximum_independent_set_chordal(g: MixedGraph, peo: Peo | None = None) -> set[int]:
    """Greedy along the elimination order; exact on chordal graphs."""
    if peo is None:
        peo = lex_bfs_peo(g)
    blocked = set()
    chosen = set()
    for v in peo.order:
        if v in blocked:
            continue
        chosen.add(v)
        blocked.update(g.neighbors(v))
    return chosen


def min_vertex_cover_chordal(g: MixedGraph, peo: Peo | None = None) -> set[int]:
    """Complement of a maximum independent set; covers every edge, minimum size."""
    if peo is None:
        peo = lex_bfs_peo(g)
    return set(range(g.n)) - maximum_independent_set_chordal(g, peo)


def clique_tree_separation_check(t: CliqueTree, g: MixedGraph, i: int) -> bool:
    """Deleting clique node i must disconnect the other subtrees' private vertices.

    Test oracle: for cliques in different subtrees of t - {i}, vertices outside
    clique i must land in different components of g - V(cliques[i]).
    """
    c = len(t.cliques)
    if c == 1:
        return True
    removed = set(t.cliques[i])
    # Components of g with clique i's vertices deleted.
    comp_of = {}
    comp_id = 0
    for s in g.vertices():
        if s in removed or s in comp_of:
            continue
        stack = [s]
        comp_of[s] = comp_id
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y in removed or y in comp_of:
                    continue
                comp_of[y] = comp_id
                stack.append(y)
        comp_id += 1
    # Subtrees of the clique tree after deleting node i.
    adj: list[list[int]] = [[] for _ in range(c)]
    for a, b in t.edges:
        adj[a].append(b)
        adj[b].append(a)
    subtree_of = {}
    sub_id = 0
    for s in range(c):
        if s == i or s in subtree_of:
            continue
        stack = [s]
        subtree_of[s] = sub_id
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y == i or y in subtree_of:
                    continue
                subtree_of[y] = sub_id
                stack.append(y)
        sub_id += 1
    for k1 in range(c):
        if k1 == i:
            continue
        for k2 in range(k1 + 1, c):
            if k2 == i or subtree_of[k1] == subtree_of[k2]:
                continue
            for v1 in t.cliques[k1]:
                if v1 in removed:
                    continue
                for v2 in t.cliques[k2]:
                    if v2 in removed:
                        continue
                    if comp_of[v1] == comp_of[v2]:
                        return False
    return True
