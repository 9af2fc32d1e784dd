"""Synthetic moral-DAG generators for the benchmark harness.

All three families produce fully directed acyclic ground truths whose
skeletons are chordal and whose essential graphs are fully undirected (no
v-structures).  Randomness comes exclusively from a seeded PCG64 generator,
so a (family, parameters, seed) triple replays byte-identically on any
platform.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .graphs import InvalidInputError, MixedGraph
from .oracle import HiddenDag

FAMILIES = ("er_styled", "tree_like", "gnp_union_tree")


@dataclass(frozen=True)
class GeneratorConfig:
    family: str
    n: int
    seed: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInputError(
                f"unknown family {self.family!r}; expected one of {FAMILIES}"
            )
        if self.n < 2:
            raise InvalidInputError("need n >= 2")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _eliminate_with_fill(
    n: int, arcs: set[tuple[int, int]], position: list[int], elim_order: list[int]
) -> set[tuple[int, int]]:
    """Eliminate vertices in order, pairwise connecting surviving neighbors.

    Fill edges become arcs oriented by the given topological position, so the
    result stays acyclic.  Eliminating in reverse topological order also
    marries every vertex's parents, which removes all v-structures.
    """
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in arcs:
        adj[u].add(v)
        adj[v].add(u)
    out = set(arcs)
    gone = [False] * n
    for v in elim_order:
        nbrs = sorted(u for u in adj[v] if not gone[u])
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1 :]:
                if b not in adj[a]:
                    adj[a].add(b)
                    adj[b].add(a)
                    out.add((a, b) if position[a] < position[b] else (b, a))
        gone[v] = True
    return out


def _as_hidden(n: int, arcs: set[tuple[int, int]]) -> HiddenDag:
    g = MixedGraph(n)
    for u, v in sorted(arcs):
        g.add_arc(u, v)
    return HiddenDag(g)


def generate_er_styled(n: int, rho: float, seed: int) -> HiddenDag:
    """Random-order DAG with binomial in-degrees, chordalized by elimination.

    Vertex at position p receives max(1, Binomial(p, rho)) parents drawn
    uniformly from earlier positions; the elimination ordering is the reverse
    of the random vertex ordering.
    """
    if not 0.0 <= rho <= 1.0:
        raise InvalidInputError("rho must be in [0, 1]")
    rng = _rng(seed)
    sigma = [int(v) for v in rng.permutation(n)]
    position = [0] * n
    for pos, v in enumerate(sigma):
        position[v] = pos
    arcs: set[tuple[int, int]] = set()
    for pos in range(1, n):
        child = sigma[pos]
        want = max(1, int(rng.binomial(pos, rho)))
        want = min(want, pos)
        parents = rng.choice(pos, size=want, replace=False)
        for pp in sorted(int(x) for x in parents):
            arcs.add((sigma[pp], child))
    arcs = _eliminate_with_fill(n, arcs, position, list(reversed(sigma)))
    return _as_hidden(n, arcs)


def generate_tree_like(
    n: int,
    d_prop: float,
    e_min_prop: float,
    e_max_prop: float,
    seed: int,
) -> HiddenDag:
    """Complete d-ary tree plus random extra edges, triangulated along a DFS order.

    The branching degree and the extra-edge range scale with n:
    d = floor(n * d_prop), e_min/e_max = floor(n * prop).
    """
    d = int(n * d_prop)
    e_min = int(n * e_min_prop)
    e_max = int(n * e_max_prop)
    if d < 2:
        raise InvalidInputError(f"derived degree d={d} must be >= 2")
    if e_min > e_max:
        raise InvalidInputError("need e_min <= e_max")
    rng = _rng(seed)
    arcs: set[tuple[int, int]] = set()
    for child in range(1, n):
        arcs.add(((child - 1) // d, child))
    extra = int(rng.integers(e_min, e_max + 1))
    adjacent = {(min(u, v), max(u, v)) for u, v in arcs}
    added = 0
    attempts = 0
    max_attempts = 100 * (extra + 1) + 10 * n
    while added < extra and attempts < max_attempts:
        attempts += 1
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in adjacent:
            continue
        adjacent.add(key)
        arcs.add(key)  # tree indices are already topological (parent < child)
        added += 1
    # DFS topological order from the root, then eliminate in its reverse.
    children: list[list[int]] = [[] for _ in range(n)]
    for u, v in arcs:
        children[u].append(v)
    for u in range(n):
        children[u].sort()
    postorder: list[int] = []
    state = [(0, iter(children[0]))]
    seen = {0}
    while state:
        v, it = state[-1]
        advanced = False
        for c in it:
            if c not in seen:
                seen.add(c)
                state.append((c, iter(children[c])))
                advanced = True
                break
        if not advanced:
            postorder.append(v)
            state.pop()
    topo = list(reversed(postorder))
    position = [0] * n
    for pos, v in enumerate(topo):
        position[v] = pos
    arcs = _eliminate_with_fill(n, arcs, position, list(reversed(topo)))
    return _as_hidden(n, arcs)


def _prufer_tree(n: int, rng: np.random.Generator) -> set[tuple[int, int]]:
    """Uniform random labeled tree decoded from a Prufer sequence."""
    if n == 2:
        return {(0, 1)}
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = set()
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.add((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.add((min(u, v), max(u, v)))
    return edges


def generate_gnp_union_tree(n: int, p: float, seed: int) -> HiddenDag:
    """Union of G(n, p) with a uniform random tree, oriented acyclically.

    After orienting along a random order, arcs are added between the
    non-adjacent parents of any collider until none remain; that both
    moralizes and (hence) triangulates the graph.
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError("p must be in [0, 1]")
    rng = _rng(seed)
    edges: set[tuple[int, int]] = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    edges |= _prufer_tree(n, rng)
    # Acyclic orientation away from a random root, in BFS visit order.  On a
    # bare tree this creates no colliders, so p = 0 stays a tree.
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in sorted(edges):
        nbrs[u].append(v)
        nbrs[v].append(u)
    root = int(rng.integers(0, n))
    order = [root]
    seen = [False] * n
    seen[root] = True
    at = 0
    while at < len(order):
        v = order[at]
        at += 1
        shuffled = [nbrs[v][int(i)] for i in rng.permutation(len(nbrs[v]))]
        for u in shuffled:
            if not seen[u]:
                seen[u] = True
                order.append(u)
    position = [0] * n
    for pos, v in enumerate(order):
        position[v] = pos
    arcs = {
        (u, v) if position[u] < position[v] else (v, u) for u, v in edges
    }
    parents: list[set[int]] = [set() for _ in range(n)]
    adjacent = set(edges)
    for u, v in arcs:
        parents[v].add(u)
    while True:
        new_pairs = set()
        for v in range(n):
            ps = sorted(parents[v])
            for i, a in enumerate(ps):
                for b in ps[i + 1 :]:
                    if (min(a, b), max(a, b)) not in adjacent:
                        new_pairs.add((a, b) if position[a] < position[b] else (b, a))
        if not new_pairs:
            break
        for a, b in sorted(new_pairs):
            arcs.add((a, b))
            parents[b].add(a)
            adjacent.add((min(a, b), max(a, b)))
    return _as_hidden(n, arcs)


def generate(config: GeneratorConfig) -> HiddenDag:
    """Dispatch on family; params carries the family-specific knobs."""
    fam, n, seed, prm = config.family, config.n, config.seed, config.params
    if fam == "er_styled":
        return generate_er_styled(n, float(prm.get("rho", 0.1)), seed)
    if fam == "tree_like":
        return generate_tree_like(
            n,
            float(prm.get("d_prop", 0.4)),
            float(prm.get("e_min_prop", 0.2)),
            float(prm.get("e_max_prop", 0.5)),
            seed,
        )
    return generate_gnp_union_tree(n, float(prm.get("p", 0.03)), seed)
