import random

import pytest

from mec_oracle import interventional_members, und_pairs, unanimous_arcs
from rounddag.chordal import lex_bfs_peo
from rounddag.graphs import InvalidInputError, MixedGraph, chain_components
from rounddag.oracle import (
    HiddenDag,
    InterventionSet,
    intervene,
    observational_essential,
    recovered_arcs,
    relevant_nodes,
    unoriented_subdag,
)
from rounddag.synth import generate, GeneratorConfig


def directed_path(n, source):
    g = MixedGraph(n)
    for i in range(source, 0, -1):
        g.add_arc(i, i - 1)
    for i in range(source, n - 1):
        g.add_arc(i, i + 1)
    return HiddenDag(g)


def random_dag(n, rng, p=0.4):
    order = list(range(n))
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    g = MixedGraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_arc(u, v) if pos[u] < pos[v] else g.add_arc(v, u)
    return HiddenDag(g)


def test_hidden_dag_validation():
    with pytest.raises(InvalidInputError):
        HiddenDag(MixedGraph.from_edges(2, undirected=[(0, 1)]))
    with pytest.raises(InvalidInputError):
        HiddenDag(MixedGraph.from_edges(3, arcs=[(0, 1), (1, 2), (2, 0)]))


def test_observational_path_fully_undirected():
    hidden = directed_path(6, 2)
    state = observational_essential(hidden)
    assert state.graph.num_arcs() == 0
    assert state.graph.num_undirected() == 5


def test_observational_v_structure_fixes_everything():
    g = MixedGraph.from_edges(3, arcs=[(0, 2), (1, 2)])
    state = observational_essential(HiddenDag(g))
    assert state.graph.arcs() == [(0, 2), (1, 2)]


def test_observational_moral_generators_fully_undirected():
    for seed in range(10):
        for family in ("er_styled", "tree_like", "gnp_union_tree"):
            cfg = GeneratorConfig(
                family=family,
                n=12,
                seed=seed,
                params={"rho": 0.2, "p": 0.1, "d_prop": 0.4, "e_min_prop": 0.1, "e_max_prop": 0.3},
            )
            state = observational_essential(generate(cfg))
            assert state.graph.num_arcs() == 0


def test_intervene_path_fixture():
    hidden = directed_path(100, 41)
    state = observational_essential(hidden)
    state = intervene(hidden, state, [(i,) for i in range(9, 100, 10)])
    comps = [c for c in chain_components(state.graph) if len(c.vertices) > 1]
    assert len(comps) == 1
    assert comps[0].vertices == tuple(range(40, 49))


def test_intervene_empty_batch_is_identity():
    hidden = directed_path(10, 3)
    state = observational_essential(hidden)
    after = intervene(hidden, state, [])
    assert after.graph == state.graph
    assert after.rounds == [[]]


def test_intervene_all_singletons_reveals_truth():
    rng = random.Random(1)
    for _ in range(10):
        hidden = random_dag(6, rng)
        state = observational_essential(hidden)
        state = intervene(hidden, state, [(v,) for v in range(6)])
        assert state.graph == hidden.dag_copy()


def test_intervene_rejects_bad_vertices():
    hidden = directed_path(5, 2)
    state = observational_essential(hidden)
    with pytest.raises(InvalidInputError):
        intervene(hidden, state, [(7,)])


def test_size_bound_enforced():
    hidden = directed_path(5, 2)
    state = observational_essential(hidden, size_bound=1)
    with pytest.raises(InvalidInputError):
        intervene(hidden, state, [(0, 1)])
    state3 = observational_essential(hidden, size_bound=3)
    intervene(hidden, state3, [(0, 1)])


def test_recovered_arcs_basics():
    rng = random.Random(3)
    hidden = random_dag(6, rng)
    assert recovered_arcs(hidden, [(v,) for v in range(6)]) == hidden.dag_copy().arc_set()
    # no interventions on a moral DAG: nothing recovered
    moral = directed_path(7, 4)
    assert recovered_arcs(moral, []) == frozenset()
    # with no interventions, exactly the observational arcs are recovered
    collider = HiddenDag(MixedGraph.from_edges(4, arcs=[(0, 2), (1, 2), (2, 3)]))
    assert recovered_arcs(collider, []) == observational_essential(collider).graph.arc_set()


def test_recovered_arcs_decomposition_identity():
    rng = random.Random(4)
    for _ in range(30):
        n = rng.randrange(3, 8)
        hidden = random_dag(n, rng)
        a = [tuple(sorted(rng.sample(range(n), rng.randrange(1, 3))))
             for _ in range(rng.randrange(0, 3))]
        b = [tuple(sorted(rng.sample(range(n), rng.randrange(1, 3))))
             for _ in range(rng.randrange(0, 3))]
        r_union = recovered_arcs(hidden, a + b)
        r_a = recovered_arcs(hidden, a)
        r_b = recovered_arcs(hidden, b)
        ga = unoriented_subdag(hidden, a)
        gb = unoriented_subdag(hidden, b)
        r_ga_b = recovered_arcs(HiddenDag(ga), b)
        r_gb_a = recovered_arcs(HiddenDag(gb), a)
        parts = [r_ga_b, r_gb_a, r_a & r_b]
        for i in range(3):
            for j in range(i + 1, 3):
                assert not parts[i] & parts[j], "parts must be disjoint"
        assert r_union == parts[0] | parts[1] | parts[2]


def test_unoriented_subdag_consistency():
    rng = random.Random(5)
    for _ in range(15):
        n = rng.randrange(3, 8)
        hidden = random_dag(n, rng)
        ivs = [tuple(sorted(rng.sample(range(n), 1))) for _ in range(2)]
        sub = unoriented_subdag(hidden, ivs)
        rec = recovered_arcs(hidden, ivs)
        truth = hidden.dag_copy().arc_set()
        assert sub.arc_set() == truth - rec
        assert sub.num_undirected() == 0


def test_relevant_nodes():
    hidden = directed_path(100, 41)
    state = observational_essential(hidden)
    assert relevant_nodes(state) == set(range(100))
    state = intervene(hidden, state, [(i,) for i in range(9, 100, 10)])
    assert relevant_nodes(state) == set(range(40, 49))
    full = intervene(hidden, state, [(v,) for v in range(40, 49)])
    assert relevant_nodes(full) == set()
    # scope restriction counts only edges inside the induced subgraph
    assert relevant_nodes(state, scope=set(range(0, 41))) == set()
    assert relevant_nodes(state, scope=set(range(0, 42))) == {40, 41}


def test_chain_components_stay_chordal():
    rng = random.Random(6)
    for _ in range(10):
        hidden = random_dag(8, rng, p=0.5)
        state = observational_essential(hidden)
        for _ in range(3):
            for comp in chain_components(state.graph):
                if len(comp.vertices) < 2:
                    continue
                sub, _ = comp.subgraph()
                lex_bfs_peo(sub)  # raises if not chordal
            targets = rng.sample(range(8), 2)
            state = intervene(hidden, state, [(t,) for t in targets])


def test_arcs_accumulate_monotonically():
    rng = random.Random(7)
    hidden = random_dag(8, rng, p=0.5)
    state = observational_essential(hidden)
    prev = state.graph.arc_set()
    for _ in range(4):
        targets = rng.sample(range(8), 2)
        state = intervene(hidden, state, [(t,) for t in targets])
        cur = state.graph.arc_set()
        assert prev <= cur
        prev = cur


def test_orientation_locality_across_components():
    # two disjoint undirected paths glued into one hidden DAG
    g = MixedGraph(6)
    g.add_arc(1, 0)
    g.add_arc(1, 2)
    g.add_arc(4, 3)
    g.add_arc(4, 5)
    hidden = HiddenDag(g)
    state = observational_essential(hidden)
    after = intervene(hidden, state, [(0,)])
    changed = after.graph.arc_set()
    assert all(u < 3 and v < 3 for u, v in changed)


def test_batching_equals_sequential_rounds():
    rng = random.Random(8)
    for _ in range(15):
        n = rng.randrange(4, 8)
        hidden = random_dag(n, rng)
        s1 = tuple(sorted(rng.sample(range(n), rng.randrange(1, 3))))
        s2 = tuple(sorted(rng.sample(range(n), rng.randrange(1, 3))))
        base = observational_essential(hidden, size_bound=3)
        batched = intervene(hidden, base, [s1, s2])
        stepped = intervene(hidden, intervene(hidden, base, [s1]), [s2])
        assert batched.graph == stepped.graph


def test_interventional_state_matches_mec_refinement():
    # constructive cut+closure equals unanimity over the refined class
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randrange(3, 8)
        hidden = random_dag(n, rng)
        ivs = [tuple(sorted(rng.sample(range(n), rng.randrange(1, 3))))
               for _ in range(rng.randrange(0, 3))]
        truth = frozenset(hidden.dag_copy().arc_set())
        pairs = und_pairs(hidden.dag_copy())
        members = interventional_members(truth, n, pairs, ivs)
        assert truth in members
        want = unanimous_arcs(members)
        got = recovered_arcs(hidden, ivs)
        assert got == want


def test_history_tracking():
    hidden = directed_path(6, 2)
    state = observational_essential(hidden)
    state = intervene(hidden, state, [(0,), (3,)])
    state = intervene(hidden, state, [(5,)])
    hist = state.history()
    assert isinstance(hist, InterventionSet)
    assert hist.interventions == ((0,), (3,), (5,))
    assert state.rounds == [[(0,), (3,)], [(5,)]]
