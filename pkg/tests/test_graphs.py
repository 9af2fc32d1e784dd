import random

import pytest

from rounddag.graphs import (
    InvalidInputError,
    MixedGraph,
    NotChainGraphError,
    chain_components,
    has_partially_directed_cycle,
    read_edgelist,
    skeleton,
    to_dot,
    topological_order,
    v_structures,
    write_edgelist,
)


def random_mixed(n, rng, p_edge=0.35, p_arc=0.5):
    g = MixedGraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p_edge:
                if rng.random() < p_arc:
                    if rng.random() < 0.5:
                        g.add_arc(u, v)
                    else:
                        g.add_arc(v, u)
                else:
                    g.add_undirected(u, v)
    return g


def test_skeleton_of_directed_path():
    g = MixedGraph.from_edges(3, arcs=[(0, 1), (1, 2)])
    sk = skeleton(g)
    assert sk.undirected_edges() == [(0, 1), (1, 2)]
    assert sk.num_arcs() == 0


def test_skeleton_identity_on_undirected():
    g = MixedGraph.from_edges(4, undirected=[(0, 1), (1, 2), (2, 3)])
    assert skeleton(g) == g


def test_skeleton_mixed():
    g = MixedGraph.from_edges(3, undirected=[(1, 2)], arcs=[(0, 1)])
    assert skeleton(g).undirected_edges() == [(0, 1), (1, 2)]


def test_skeleton_idempotent():
    rng = random.Random(11)
    for _ in range(25):
        g = random_mixed(7, rng)
        once = skeleton(g)
        assert skeleton(once) == once


def test_v_structure_basic():
    g = MixedGraph.from_edges(3, arcs=[(0, 2), (1, 2)])
    assert v_structures(g) == {(0, 2, 1)}


def test_v_structure_blocked_by_adjacency():
    g = MixedGraph.from_edges(3, undirected=[(0, 1)], arcs=[(0, 2), (1, 2)])
    assert v_structures(g) == set()


def test_v_structure_none_on_path():
    g = MixedGraph.from_edges(3, arcs=[(0, 1), (1, 2)])
    assert v_structures(g) == set()


def test_v_structures_permutation_equivariant():
    rng = random.Random(5)
    for _ in range(20):
        g = random_mixed(7, rng)
        perm = list(range(7))
        rng.shuffle(perm)
        relabeled = MixedGraph.from_edges(
            7,
            undirected=[(perm[u], perm[v]) for u, v in g.undirected_edges()],
            arcs=[(perm[u], perm[v]) for u, v in g.arcs()],
        )
        want = set()
        for u, v, w in v_structures(g):
            a, b = perm[u], perm[w]
            want.add((min(a, b), perm[v], max(a, b)))
        assert v_structures(relabeled) == want


def test_chain_components_basic():
    g = MixedGraph.from_edges(3, undirected=[(0, 1)], arcs=[(1, 2)])
    comps = chain_components(g)
    assert [c.vertices for c in comps] == [(0, 1), (2,)]


def test_chain_components_all_singletons():
    g = MixedGraph.from_edges(5, arcs=[(0, 1), (1, 2), (2, 3), (3, 4)])
    comps = chain_components(g)
    assert [c.vertices for c in comps] == [(0,), (1,), (2,), (3,), (4,)]


def test_chain_components_single_path():
    n = 9
    g = MixedGraph.from_edges(n, undirected=[(i, i + 1) for i in range(n - 1)])
    comps = chain_components(g)
    assert len(comps) == 1 and comps[0].vertices == tuple(range(n))


def test_chain_components_partition_property():
    rng = random.Random(3)
    for _ in range(30):
        g = random_mixed(8, rng)
        if has_partially_directed_cycle(g):
            with pytest.raises(NotChainGraphError):
                chain_components(g)
            continue
        comps = chain_components(g)
        seen = [v for c in comps for v in c.vertices]
        assert sorted(seen) == list(range(8))
        assert len(seen) == len(set(seen))


def test_partially_directed_cycle_examples():
    g1 = MixedGraph.from_edges(3, undirected=[(1, 2), (0, 2)], arcs=[(0, 1)])
    assert has_partially_directed_cycle(g1)
    g2 = MixedGraph.from_edges(3, undirected=[(0, 1), (1, 2), (0, 2)])
    assert not has_partially_directed_cycle(g2)
    g3 = MixedGraph.from_edges(3, arcs=[(0, 1), (1, 2), (2, 0)])
    assert has_partially_directed_cycle(g3)


def test_directed_case_matches_topological_sort():
    rng = random.Random(7)
    for _ in range(40):
        n = 6
        g = MixedGraph(n)
        for u in range(n):
            for v in range(n):
                if u != v and rng.random() < 0.25 and not g.adjacent(u, v):
                    g.add_arc(u, v)
        assert has_partially_directed_cycle(g) == (topological_order(g) is None)


def test_edgelist_roundtrip():
    g = MixedGraph.from_edges(5, undirected=[(0, 1), (2, 3)], arcs=[(1, 2), (3, 4)])
    text = write_edgelist(g)
    assert read_edgelist(text) == g


def test_edgelist_comments_and_errors():
    text = "# a comment\n3 1 1\n0 1\n# another\n1 2\n"
    g = read_edgelist(text)
    assert g.undirected_edges() == [(0, 1)] and g.arcs() == [(1, 2)]
    with pytest.raises(InvalidInputError):
        read_edgelist("")
    with pytest.raises(InvalidInputError):
        read_edgelist("2 1 0\n0 2\n")  # vertex out of range
    with pytest.raises(InvalidInputError):
        read_edgelist("3 2 0\n0 1\n")  # missing edge line


def test_graph_invariants_enforced():
    g = MixedGraph(3)
    g.add_undirected(0, 1)
    with pytest.raises(InvalidInputError):
        g.add_arc(0, 1)
    with pytest.raises(InvalidInputError):
        g.add_undirected(1, 0)
    with pytest.raises(InvalidInputError):
        g.add_undirected(1, 1)


def test_dot_export_mentions_edges():
    g = MixedGraph.from_edges(3, undirected=[(0, 1)], arcs=[(1, 2)])
    dot = to_dot(g)
    assert "0 -> 1 [dir=none];" in dot and "1 -> 2;" in dot
