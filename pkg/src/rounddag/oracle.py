"""Ideal-intervention simulator around a hidden ground-truth DAG.

Search strategies never read arc directions directly; they see only the
observational essential graph and the states returned by :func:`intervene`.
Interventional states are built constructively: every still-undirected edge
cut by an intervened set receives its true orientation, then rule propagation
runs once for the whole round.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import (
    InvalidInputError,
    MixedGraph,
    chain_components,
    skeleton,
    topological_order,
    v_structures,
)
from .meek import OrientationDelta, meek_closure


class HiddenDag:
    """Fully directed acyclic ground truth; query only through this module."""

    __slots__ = ("_dag", "n")

    def __init__(self, dag: MixedGraph):
        if dag.num_undirected() > 0:
            raise InvalidInputError("hidden graph must be fully directed")
        if topological_order(dag) is None:
            raise InvalidInputError("hidden graph must be acyclic")
        self._dag = dag.copy()
        self.n = dag.n

    def skeleton(self) -> MixedGraph:
        return skeleton(self._dag)

    def true_arc(self, u: int, v: int) -> tuple[int, int]:
        """Orientation of the adjacent pair {u, v} in the ground truth."""
        if self._dag.has_arc(u, v):
            return (u, v)
        if self._dag.has_arc(v, u):
            return (v, u)
        raise InvalidInputError(f"vertices {u}, {v} are not adjacent")

    def dag_copy(self) -> MixedGraph:
        """Ground-truth arcs; for scoring and tests, never for searching."""
        return self._dag.copy()


@dataclass(frozen=True)
class InterventionSet:
    """Ordered interventions, each a vertex subset of size <= size_bound."""

    interventions: tuple[tuple[int, ...], ...]
    size_bound: int = 1

    def __post_init__(self):
        if self.size_bound < 1:
            raise InvalidInputError("size bound must be >= 1")
        for s in self.interventions:
            if len(s) > self.size_bound:
                raise InvalidInputError(
                    f"intervention {s} exceeds size bound {self.size_bound}"
                )
            if len(set(s)) != len(s):
                raise InvalidInputError(f"intervention {s} repeats a vertex")

    def __len__(self) -> int:
        return len(self.interventions)


@dataclass
class EssentialState:
    """Current interventional essential graph plus the rounds that led to it."""

    graph: MixedGraph
    rounds: list[list[tuple[int, ...]]] = field(default_factory=list)
    size_bound: int = 1

    def history(self) -> InterventionSet:
        flat = tuple(s for batch in self.rounds for s in batch)
        return InterventionSet(interventions=flat, size_bound=self.size_bound)

    def is_fully_oriented(self) -> bool:
        return self.graph.is_fully_directed()

    def copy(self) -> "EssentialState":
        return EssentialState(
            graph=self.graph.copy(),
            rounds=[list(batch) for batch in self.rounds],
            size_bound=self.size_bound,
        )


def observational_essential(hidden: HiddenDag, size_bound: int = 1) -> EssentialState:
    """Skeleton with v-structure arcs oriented, closed under the four rules."""
    g = hidden.skeleton()
    delta = OrientationDelta()
    for u, v, w in sorted(v_structures(hidden._dag)):
        if g.has_undirected(u, v):
            g.orient(u, v)
            delta.add((u, v), "V")
        if g.has_undirected(w, v):
            g.orient(w, v)
            delta.add((w, v), "V")
    closed, _ = meek_closure(g, changed=delta.arcs())
    return EssentialState(graph=closed, rounds=[], size_bound=size_bound)


def intervene(
    hidden: HiddenDag,
    state: EssentialState,
    batch: list[tuple[int, ...]],
) -> EssentialState:
    """One adaptivity round: cut-edge orientations for the whole batch, then closure.

    Every undirected edge with exactly one endpoint inside an intervened set
    receives its ground-truth direction; propagation runs once afterwards.
    Returns a fresh state; the input state is untouched.
    """
    for s in batch:
        if len(s) > state.size_bound:
            raise InvalidInputError(
                f"intervention {s} exceeds size bound {state.size_bound}"
            )
        for v in s:
            if not 0 <= v < hidden.n:
                raise InvalidInputError(f"vertex {v} out of range [0, {hidden.n})")
    g = state.graph.copy()
    cut: list[tuple[int, int]] = []
    for s in batch:
        inside = set(s)
        for u, v in g.undirected_edges():
            if (u in inside) != (v in inside):
                arc = hidden.true_arc(u, v)
                g.orient(*arc)
                cut.append(arc)
    # Incoming states are already rule fixed points, so closure only needs to
    # look around the freshly cut arcs.
    closed, _ = meek_closure(g, changed=cut)
    return EssentialState(
        graph=closed,
        rounds=[list(b) for b in state.rounds] + [[tuple(s) for s in batch]],
        size_bound=state.size_bound,
    )


def recovered_arcs(
    hidden: HiddenDag, interventions: InterventionSet | list[tuple[int, ...]]
) -> frozenset[tuple[int, int]]:
    """Arc set of the interventional essential graph for the given set."""
    if isinstance(interventions, InterventionSet):
        batch = [tuple(s) for s in interventions.interventions]
        bound = max(1, interventions.size_bound)
    else:
        batch = [tuple(s) for s in interventions]
        bound = max([1] + [len(s) for s in batch])
    state = observational_essential(hidden, size_bound=bound)
    if batch:
        state = intervene(hidden, state, batch)
    return state.graph.arc_set()


def unoriented_subdag(
    hidden: HiddenDag, interventions: InterventionSet | list[tuple[int, ...]]
) -> MixedGraph:
    """Fully directed subgraph of the ground truth on the still-unrecovered edges."""
    recovered = recovered_arcs(hidden, interventions)
    covered_pairs = {(min(u, v), max(u, v)) for u, v in recovered}
    out = MixedGraph(hidden.n)
    for u, v in hidden._dag.arcs():
        if (min(u, v), max(u, v)) not in covered_pairs:
            out.add_arc(u, v)
    return out


def relevant_nodes(state: EssentialState, scope: set[int] | None = None) -> set[int]:
    """Vertices in scope incident to an undirected edge inside the scope."""
    if scope is None:
        scope = set(range(state.graph.n))
    out = set()
    for u, v in state.graph.undirected_edges():
        if u in scope and v in scope:
            out.add(u)
            out.add(v)
    return out


def nonsingleton_components(state: EssentialState):
    """Chain components with at least one edge, ascending by lowest vertex."""
    return [c for c in chain_components(state.graph) if len(c.vertices) >= 2]
