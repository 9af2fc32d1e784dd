import itertools
import random

import pytest

from rounddag.chordal import (
    NotChordalError,
    build_clique_tree,
    clique_tree_separation_check,
    is_perfect_elimination_ordering,
    lex_bfs_peo,
    max_clique_size,
    maximal_cliques,
    maximum_independent_set_chordal,
    min_vertex_cover_chordal,
)
from rounddag.graphs import InvalidInputError, MixedGraph


def path_graph(n):
    return MixedGraph.from_edges(n, undirected=[(i, i + 1) for i in range(n - 1)])


def complete_graph(n):
    return MixedGraph.from_edges(
        n, undirected=[(u, v) for u in range(n) for v in range(u + 1, n)]
    )


def random_chordal(n, rng, extra=0.3):
    """Random chordal graph built by filling a random graph along an ordering."""
    order = list(range(n))
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set() for v in range(n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra:
                adj[u].add(v)
                adj[v].add(u)
    # connect into one component along the ordering
    for i in range(1, n):
        if not any(pos[u] < i for u in adj[order[i]]):
            j = rng.randrange(i)
            adj[order[i]].add(order[j])
            adj[order[j]].add(order[i])
    for v in order:
        later = sorted(u for u in adj[v] if pos[u] > pos[v])
        for a, b in itertools.combinations(later, 2):
            adj[a].add(b)
            adj[b].add(a)
    g = MixedGraph(n)
    for u in range(n):
        for v in adj[u]:
            if u < v:
                g.add_undirected(u, v)
    return g


def brute_max_clique(g):
    best = 0
    for size in range(g.n, 0, -1):
        for sub in itertools.combinations(range(g.n), size):
            if all(g.adjacent(u, v) for u, v in itertools.combinations(sub, 2)):
                return size
    return best


def brute_maximal_cliques(g):
    cliques = []
    for size in range(1, g.n + 1):
        for sub in itertools.combinations(range(g.n), size):
            if all(g.adjacent(u, v) for u, v in itertools.combinations(sub, 2)):
                cliques.append(set(sub))
    return {tuple(sorted(c)) for c in cliques if not any(c < d for d in cliques)}


def brute_min_vertex_cover_size(g):
    edges = g.undirected_edges()
    for size in range(0, g.n + 1):
        for sub in itertools.combinations(range(g.n), size):
            s = set(sub)
            if all(u in s or v in s for u, v in edges):
                return size
    return g.n


def test_peo_on_path():
    g = path_graph(3)
    peo = lex_bfs_peo(g)
    assert is_perfect_elimination_ordering(g, peo.order)


def test_four_cycle_not_chordal():
    g = MixedGraph.from_edges(4, undirected=[(0, 1), (1, 2), (2, 3), (0, 3)])
    with pytest.raises(NotChordalError) as err:
        lex_bfs_peo(g)
    cycle = err.value.witness
    assert len(cycle) == 4 and sorted(cycle) == [0, 1, 2, 3]


def test_witness_cycle_is_chordless():
    rng = random.Random(2)
    found = 0
    while found < 15:
        n = rng.randrange(5, 9)
        g = MixedGraph(n)
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.4:
                    g.add_undirected(u, v)
        try:
            lex_bfs_peo(g)
        except NotChordalError as err:
            cycle = err.witness
            found += 1
            m = len(cycle)
            assert m >= 4
            for i in range(m):
                assert g.has_undirected(cycle[i], cycle[(i + 1) % m])
            for i in range(m):
                for j in range(i + 2, m):
                    if (i, j) != (0, m - 1):
                        assert not g.adjacent(cycle[i], cycle[j])


def test_every_permutation_is_peo_for_clique():
    g = complete_graph(5)
    rng = random.Random(0)
    for _ in range(10):
        order = list(range(5))
        rng.shuffle(order)
        assert is_perfect_elimination_ordering(g, tuple(order))
    lex_bfs_peo(g)


def test_mixed_input_rejected():
    g = MixedGraph.from_edges(3, undirected=[(0, 1)], arcs=[(1, 2)])
    with pytest.raises(InvalidInputError):
        lex_bfs_peo(g)


def test_chordality_decision_exhaustive_small():
    # Independent referee: networkx's maximum-cardinality-search test.
    import networkx as nx

    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            g = MixedGraph.from_edges(n, undirected=edges)
            ref = nx.Graph()
            ref.add_nodes_from(range(n))
            ref.add_edges_from(edges)
            if nx.is_chordal(ref):
                peo = lex_bfs_peo(g)
                assert is_perfect_elimination_ordering(g, peo.order)
            else:
                with pytest.raises(NotChordalError):
                    lex_bfs_peo(g)


def test_chordality_decision_random_medium():
    import networkx as nx

    rng = random.Random(44)
    for _ in range(300):
        n = rng.randrange(6, 10)
        p = rng.uniform(0.2, 0.7)
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        ]
        g = MixedGraph.from_edges(n, undirected=edges)
        ref = nx.Graph()
        ref.add_nodes_from(range(n))
        ref.add_edges_from(edges)
        if nx.is_chordal(ref):
            lex_bfs_peo(g)
        else:
            with pytest.raises(NotChordalError):
                lex_bfs_peo(g)


def test_maximal_cliques_path():
    g = path_graph(3)
    peo = lex_bfs_peo(g)
    assert sorted(maximal_cliques(g, peo)) == [(0, 1), (1, 2)]


def test_maximal_cliques_k4():
    g = complete_graph(4)
    assert maximal_cliques(g, lex_bfs_peo(g)) == [(0, 1, 2, 3)]


def test_maximal_cliques_two_triangles():
    g = MixedGraph.from_edges(
        4, undirected=[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    )
    got = set(maximal_cliques(g, lex_bfs_peo(g)))
    assert got == {(0, 1, 2), (1, 2, 3)}


def test_maximal_cliques_match_brute_force():
    rng = random.Random(9)
    for _ in range(25):
        g = random_chordal(rng.randrange(4, 10), rng)
        peo = lex_bfs_peo(g)
        got = set(maximal_cliques(g, peo))
        assert got == brute_maximal_cliques(g)
        assert len(got) <= g.n


def test_clique_tree_on_path():
    n = 7
    g = path_graph(n)
    t = build_clique_tree(g)
    assert len(t.cliques) == n - 1
    assert all(w == 1 for w in t.edges.values())
    degrees = [len(t.neighbors_of(i)) for i in range(len(t.cliques))]
    assert sorted(degrees) == [1, 1] + [2] * (n - 3)


def test_clique_tree_single_clique():
    t = build_clique_tree(complete_graph(4))
    assert len(t.cliques) == 1 and not t.edges


def test_clique_tree_two_triangles():
    g = MixedGraph.from_edges(
        4, undirected=[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    )
    t = build_clique_tree(g)
    assert len(t.cliques) == 2
    assert list(t.edges.values()) == [2]


def clique_intersection_property(t):
    vertex_cliques = {}
    for i, clique in enumerate(t.cliques):
        for v in clique:
            vertex_cliques.setdefault(v, set()).add(i)
    adj = {i: set() for i in range(len(t.cliques))}
    for a, b in t.edges:
        adj[a].add(b)
        adj[b].add(a)
    for v, members in vertex_cliques.items():
        start = min(members)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in members and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != members:
            return False
    return True


def spanning_tree_weights_exhaustive(t):
    c = len(t.cliques)
    sets = [set(k) for k in t.cliques]
    cand = [
        (i, j, len(sets[i] & sets[j]))
        for i in range(c)
        for j in range(i + 1, c)
        if sets[i] & sets[j]
    ]
    best = -1
    for combo in itertools.combinations(cand, c - 1):
        parent = list(range(c))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        weight = 0
        for i, j, w in combo:
            ri, rj = find(i), find(j)
            if ri == rj:
                ok = False
                break
            parent[ri] = rj
            weight += w
        if ok:
            best = max(best, weight)
    return best


def random_spanning_tree_weight(t, rng):
    c = len(t.cliques)
    sets = [set(k) for k in t.cliques]
    cand = [
        (i, j, len(sets[i] & sets[j]))
        for i in range(c)
        for j in range(i + 1, c)
        if sets[i] & sets[j]
    ]
    rng.shuffle(cand)
    parent = list(range(c))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    weight = 0
    picked = 0
    for i, j, w in cand:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            weight += w
            picked += 1
    assert picked == c - 1
    return weight


def test_clique_tree_properties_random():
    rng = random.Random(4)
    for _ in range(20):
        g = random_chordal(rng.randrange(4, 11), rng)
        t = build_clique_tree(g)
        assert clique_intersection_property(t)
        if 2 <= len(t.cliques) <= 6:
            assert sum(t.edges.values()) == spanning_tree_weights_exhaustive(t)
        if len(t.cliques) >= 2:
            built = sum(t.edges.values())
            for _ in range(100):
                assert built >= random_spanning_tree_weight(t, rng)


def test_max_clique_size():
    assert max_clique_size(path_graph(5)) == 2
    assert max_clique_size(complete_graph(7)) == 7
    rng = random.Random(6)
    for _ in range(20):
        g = random_chordal(rng.randrange(3, 10), rng)
        assert max_clique_size(g) == brute_max_clique(g)


def test_min_vertex_cover_examples():
    assert len(min_vertex_cover_chordal(path_graph(5))) == 2
    assert len(min_vertex_cover_chordal(complete_graph(4))) == 3


def test_min_vertex_cover_random():
    rng = random.Random(8)
    for _ in range(20):
        g = random_chordal(rng.randrange(3, 10), rng)
        cover = min_vertex_cover_chordal(g)
        for u, v in g.undirected_edges():
            assert u in cover or v in cover
        assert len(cover) == brute_min_vertex_cover_size(g)
        mis = maximum_independent_set_chordal(g)
        assert cover | mis == set(range(g.n)) and not cover & mis
        for u, v in g.undirected_edges():
            assert not (u in mis and v in mis)


def test_separation_check_two_triangles():
    g = MixedGraph.from_edges(
        4, undirected=[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    )
    t = build_clique_tree(g)
    assert clique_tree_separation_check(t, g, 0)
    assert clique_tree_separation_check(t, g, 1)


def test_separation_check_path_and_random():
    g = path_graph(6)
    t = build_clique_tree(g)
    for i in range(len(t.cliques)):
        assert clique_tree_separation_check(t, g, i)
    rng = random.Random(12)
    for _ in range(15):
        g = random_chordal(rng.randrange(4, 13), rng)
        t = build_clique_tree(g)
        for i in range(len(t.cliques)):
            assert clique_tree_separation_check(t, g, i)
