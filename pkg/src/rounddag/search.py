"""Discovery strategies under a round budget.

The general strategy spends the first rounds shattering each chain component
through its clique tree: a balanced partition of the tree picks at most L
maximal cliques per component, and intervening on all of their vertices
splits the component into pieces whose clique trees shrink by a factor of
L + 1.  The last round sweeps whatever is still unoriented.  Path and tree
inputs get direct specializations, and a path adversary provides the
worst-case counterpart.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .chordal import build_clique_tree, lex_bfs_peo, min_vertex_cover_chordal
from .graphs import InvalidInputError, MixedGraph
from .partition import balanced_tree_partition
from .oracle import (
    EssentialState,
    HiddenDag,
    InterventionSet,
    intervene,
    nonsingleton_components,
    observational_essential,
    relevant_nodes,
)

Intervention = tuple[int, ...]


def ceil_log2(n: int) -> int:
    if n < 1:
        raise InvalidInputError("need n >= 1")
    return max(1, (n - 1).bit_length())


def integer_root_ceil(n: int, r: int) -> int:
    """Smallest L >= 1 with L**r >= n; exact integer arithmetic throughout."""
    if n < 1 or r < 1:
        raise InvalidInputError("need n >= 1 and r >= 1")
    lo, hi = 1, max(1, n)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**r >= n:
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True)
class SearchConfig:
    """Round budget r, intervention size bound k, and the two check knobs."""

    r: int
    k: int = 1
    checks_enabled: bool = False
    check_budget: int = 0
    final_round_vc_optimization: bool = True

    def __post_init__(self):
        if self.r < 1 or self.k < 1 or self.check_budget < 0:
            raise InvalidInputError("need r >= 1, k >= 1, check_budget >= 0")

    @classmethod
    def for_instance(
        cls,
        n: int,
        r: int,
        k: int = 1,
        checks_enabled: bool = False,
        final_round_vc_optimization: bool = True,
    ) -> "SearchConfig":
        """Derive the check budget as the rounds beyond ceil(log2 n)."""
        budget = max(0, r - ceil_log2(n)) if checks_enabled else 0
        return cls(
            r=r,
            k=k,
            checks_enabled=checks_enabled,
            check_budget=budget,
            final_round_vc_optimization=final_round_vc_optimization,
        )


@dataclass
class RoundRecord:
    interventions: list[Intervention]
    skipped: list[Intervention] = field(default_factory=list)
    newly_oriented: list[tuple[int, int]] = field(default_factory=list)
    component_sizes: list[int] = field(default_factory=list)


@dataclass
class SearchTranscript:
    algorithm: str
    n: int
    r: int
    k: int
    rounds: list[RoundRecord]
    total_interventions: int
    rounds_used: int  # intervention rounds plus checks spent
    checks_used: int
    completed: bool

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "n": self.n,
            "r": self.r,
            "k": self.k,
            "rounds": [
                {
                    "interventions": [list(s) for s in rec.interventions],
                    "skipped": [list(s) for s in rec.skipped],
                    "newly_oriented": [list(a) for a in rec.newly_oriented],
                    "component_sizes": rec.component_sizes,
                }
                for rec in self.rounds
            ],
            "total_interventions": self.total_interventions,
            "rounds_used": self.rounds_used,
            "checks_used": self.checks_used,
            "completed": self.completed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def intervention_sets(self, k: int | None = None) -> InterventionSet:
        flat = tuple(s for rec in self.rounds for s in rec.interventions)
        bound = k if k is not None else max([1] + [len(s) for s in flat])
        return InterventionSet(interventions=flat, size_bound=bound)


# -- labelling-based separating systems -------------------------------------


@dataclass(frozen=True)
class LabelingScheme:
    """Distinct bounded-multiplicity words; any differing index separates a pair.

    ``labels[i]`` is a word of ``length`` letters from {0} | [alphabet];
    at every index each nonzero letter occurs at most ``cap`` times.
    """

    count: int
    alphabet: int
    length: int
    cap: int
    labels: tuple[tuple[int, ...], ...]


def build_labeling(count: int, k: int) -> LabelingScheme:
    """Balanced labelling for ``count`` elements under size bound k >= 2.

    Words are grown column by column: every group of elements sharing a
    prefix splits into alphabet+1 near-even parts, the largest keeping letter
    0 (unbounded) and the rest taking distinct nonzero letters chosen
    least-loaded-first, which keeps every column under the cap.
    """
    if count < 1 or k < 2:
        raise InvalidInputError("need count >= 1 and k >= 2")
    k_eff = min(float(k), count / 2.0)
    alphabet = max(2, math.ceil(count / k_eff))
    cap = -(-count // alphabet)
    length = 1
    while alphabet**length < count:
        length += 1
    words = [[0] * length for _ in range(count)]
    groups: list[list[int]] = [list(range(count))]
    for col in range(length):
        load = [0] * (alphabet + 1)
        next_groups: list[list[int]] = []
        for grp in groups:
            s = len(grp)
            if s == 1:
                next_groups.append(grp)
                continue
            q, rem = divmod(s, alphabet + 1)
            sizes = [q + 1] * rem + [q] * (alphabet + 1 - rem)
            parts: list[list[int]] = []
            at = 0
            for size in sizes:
                if size > 0:
                    parts.append(grp[at : at + size])
                    at += size
            # First (largest) part keeps letter 0; the rest take distinct
            # nonzero letters, least-loaded first with lowest index on ties.
            free = sorted(range(1, alphabet + 1), key=lambda y: (load[y], y))
            for part, letter in zip(parts[1:], free):
                for e in part:
                    words[e][col] = letter
                load[letter] += len(part)
            next_groups.extend(parts)
        groups = next_groups
        for letter in range(1, alphabet + 1):
            if load[letter] > cap:
                raise AssertionError(
                    f"letter {letter} used {load[letter]} > cap {cap} in column {col}"
                )
    labels = tuple(tuple(w) for w in words)
    if len(set(labels)) != count:
        raise AssertionError("labelling failed to produce distinct words")
    return LabelingScheme(
        count=count, alphabet=alphabet, length=length, cap=cap, labels=labels
    )


def labeling_separating_system(vertices: list[int], k: int) -> list[Intervention]:
    """Interventions of size <= k separating every pair of the given vertices.

    k = 1 falls back to singletons; otherwise sets collect the vertices whose
    label carries a given nonzero letter at a given index.
    """
    verts = sorted(vertices)
    if k < 1:
        raise InvalidInputError("need k >= 1")
    if k == 1:
        return [(v,) for v in verts]
    if len(verts) <= 1:
        return []
    scheme = build_labeling(len(verts), k)
    out: list[Intervention] = []
    for col in range(scheme.length):
        for letter in range(1, scheme.alphabet + 1):
            members = tuple(
                verts[i] for i in range(len(verts)) if scheme.labels[i][col] == letter
            )
            if members:
                out.append(members)
    return out


# -- round proposals ---------------------------------------------------------


def _to_interventions(verts: list[int], k: int) -> list[Intervention]:
    if k == 1:
        return [(v,) for v in sorted(verts)]
    return labeling_separating_system(verts, k)


def _partition_round_proposal(
    state: EssentialState, max_removals: int, k: int
) -> list[Intervention]:
    """Clique-tree partition per chain component within one round."""
    proposal: list[Intervention] = []
    for comp in nonsingleton_components(state):
        if comp.is_clique():
            verts = sorted(comp.vertices)
        else:
            sub, mapping = comp.subgraph()
            peo = lex_bfs_peo(sub)
            tree = build_clique_tree(sub, peo)
            part = balanced_tree_partition(tree.tree_graph(), max_removals)
            chosen: set[int] = set()
            for idx in part.removed:
                chosen.update(tree.cliques[idx])
            verts = sorted(mapping[v] for v in chosen)
        proposal.extend(_to_interventions(verts, k))
    return proposal


def _final_round_proposal(
    state: EssentialState, k: int, vc_optimization: bool
) -> list[Intervention]:
    """Sweep of the remaining relevant vertices (or their vertex cover)."""
    if k == 1 and vc_optimization:
        verts: list[int] = []
        for comp in nonsingleton_components(state):
            sub, mapping = comp.subgraph()
            cover = min_vertex_cover_chordal(sub)
            verts.extend(mapping[v] for v in cover)
        return [(v,) for v in sorted(verts)]
    # The vertex-cover shortcut is atomic-only: labelled sets over a cover may
    # leave a cover vertex with the all-zero word and an uncut edge.
    return _to_interventions(sorted(relevant_nodes(state)), k)


def separating_system_nonadaptive(state: EssentialState) -> InterventionSet:
    """Atomic non-adaptive strategy: a minimum vertex cover per chain component."""
    ivs = _final_round_proposal(state, k=1, vc_optimization=True)
    return InterventionSet(interventions=tuple(ivs), size_bound=1)


# -- the adaptive engine -----------------------------------------------------


def _is_redundant(graph: MixedGraph, iv: Intervention) -> bool:
    return all(not graph.neighbors(v) for v in iv)


def _execute_round(
    hidden: HiddenDag,
    state: EssentialState,
    proposal: list[Intervention],
    budget: int,
) -> tuple[EssentialState, RoundRecord, int, int]:
    """Run one round; with budget left, peek before each intervention and skip
    redundant ones, each skip consuming one check (= one adaptivity round)."""
    before = state.graph.arc_set()
    checks_spent = 0
    if budget <= 0:
        performed = list(proposal)
        skipped: list[Intervention] = []
        new_state = intervene(hidden, state, performed) if performed else state
    else:
        performed = []
        skipped = []
        work = state
        for iv in proposal:
            if budget > 0 and _is_redundant(work.graph, iv):
                skipped.append(iv)
                budget -= 1
                checks_spent += 1
                continue
            work = intervene(hidden, work, [iv])
            performed.append(iv)
        new_state = work
    record = RoundRecord(
        interventions=performed,
        skipped=skipped,
        newly_oriented=sorted(new_state.graph.arc_set() - before),
        component_sizes=sorted(
            (len(c.vertices) for c in nonsingleton_components(new_state)),
            reverse=True,
        ),
    )
    return new_state, record, budget, checks_spent


def _run_adaptive(hidden: HiddenDag, cfg: SearchConfig, algorithm: str) -> SearchTranscript:
    n = hidden.n
    state = observational_essential(hidden, size_bound=cfg.k)
    r_eff = max(1, min(cfg.r, ceil_log2(n))) if n >= 2 else 1
    limit = integer_root_ceil(n, r_eff) if n >= 2 else 1
    budget = cfg.check_budget if cfg.checks_enabled else 0
    records: list[RoundRecord] = []
    checks_used = 0
    finished_early = False
    for _ in range(r_eff - 1):
        if state.is_fully_oriented():
            break
        proposal = _partition_round_proposal(state, limit, cfg.k)
        if budget > 0:
            fallback = _final_round_proposal(
                state, cfg.k, cfg.final_round_vc_optimization
            )
            if len(fallback) < len(proposal):
                # Cheaper to stop adapting now: treat this round as the last.
                state, rec, budget, spent = _execute_round(
                    hidden, state, fallback, budget
                )
                records.append(rec)
                checks_used += spent
                finished_early = True
                break
        state, rec, budget, spent = _execute_round(hidden, state, proposal, budget)
        records.append(rec)
        checks_used += spent
    if not finished_early and not state.is_fully_oriented():
        final = _final_round_proposal(state, cfg.k, cfg.final_round_vc_optimization)
        state, rec, budget, spent = _execute_round(hidden, state, final, budget)
        records.append(rec)
        checks_used += spent
    return SearchTranscript(
        algorithm=algorithm,
        n=n,
        r=cfg.r,
        k=cfg.k,
        rounds=records,
        total_interventions=sum(len(rec.interventions) for rec in records),
        rounds_used=len(records) + checks_used,
        checks_used=checks_used,
        completed=state.is_fully_oriented(),
    )


def adaptive_search(hidden: HiddenDag, cfg: SearchConfig) -> SearchTranscript:
    """Clique-tree partition search with atomic interventions, no checks."""
    if cfg.k != 1:
        raise InvalidInputError("adaptive_search is the atomic case; use the bounded variant")
    plain = SearchConfig(
        r=cfg.r,
        k=1,
        checks_enabled=False,
        check_budget=0,
        final_round_vc_optimization=cfg.final_round_vc_optimization,
    )
    return _run_adaptive(hidden, plain, algorithm="adaptive")


def adaptive_search_bounded(hidden: HiddenDag, cfg: SearchConfig) -> SearchTranscript:
    """Same skeleton with clique vertex sets converted to <= k-sized interventions."""
    if cfg.k <= 1:
        raise InvalidInputError("bounded search needs k > 1")
    plain = SearchConfig(
        r=cfg.r,
        k=cfg.k,
        checks_enabled=False,
        check_budget=0,
        final_round_vc_optimization=cfg.final_round_vc_optimization,
    )
    return _run_adaptive(hidden, plain, algorithm="adaptive_bounded")


def run_with_checks(hidden: HiddenDag, cfg: SearchConfig) -> SearchTranscript:
    """Adaptive search that may spend surplus rounds skipping redundant sets."""
    if not cfg.checks_enabled:
        raise InvalidInputError("run_with_checks requires checks_enabled")
    return _run_adaptive(hidden, cfg, algorithm="adaptive_checked")


def run_search(hidden: HiddenDag, cfg: SearchConfig) -> SearchTranscript:
    """Dispatch on the configuration flags."""
    if cfg.checks_enabled:
        return run_with_checks(hidden, cfg)
    if cfg.k == 1:
        return adaptive_search(hidden, cfg)
    return adaptive_search_bounded(hidden, cfg)


# -- path and tree specializations -------------------------------------------


def _path_order(g: MixedGraph) -> list[int]:
    """Vertices of an undirected path graph in walk order (lower endpoint first)."""
    if g.num_arcs() > 0:
        raise InvalidInputError("path input must be fully undirected")
    n = g.n
    if n == 1:
        return [0]
    degs = [len(g.neighbors(v)) for v in g.vertices()]
    ends = [v for v in g.vertices() if degs[v] == 1]
    if g.num_undirected() != n - 1 or len(ends) != 2 or any(d > 2 for d in degs):
        raise InvalidInputError("input is not an undirected path")
    start = min(ends)
    order = [start]
    prev = None
    cur = start
    while len(order) < n:
        nxt = [u for u in g.neighbors(cur) if u != prev]
        if len(nxt) != 1:
            raise InvalidInputError("input is not an undirected path")
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


class _HiddenPathOracle:
    """Adapter running path rounds against a real hidden DAG."""

    def __init__(self, hidden: HiddenDag):
        self.hidden = hidden
        self.state = observational_essential(hidden)
        self.order = _path_order(self.state.graph)
        self.n = hidden.n

    def initial_segment(self) -> list[int]:
        return list(self.order)

    def respond(self, batch: list[int]) -> list[int]:
        self.state = intervene(self.hidden, self.state, [(v,) for v in batch])
        comps = nonsingleton_components(self.state)
        if not comps:
            return []
        if len(comps) != 1:
            raise AssertionError("path state split into several unoriented pieces")
        members = set(comps[0].vertices)
        segment = [v for v in self.order if v in members]
        # Survivors must be contiguous along the path.
        first = self.order.index(segment[0])
        if segment != self.order[first : first + len(segment)]:
            raise AssertionError("unoriented path segment is not contiguous")
        return segment

    def fully_oriented(self) -> bool:
        return self.state.is_fully_oriented()


class PathAdversary:
    """Adaptive worst case on a path: the source hides in the largest gap.

    Pretends to be a hidden path DAG: each round it answers with the surviving
    unoriented segment, always the largest stretch of the current segment left
    untouched by the round's interventions (leftmost on ties).
    """

    def __init__(self, n: int):
        if n < 2:
            raise InvalidInputError("adversary path needs n >= 2")
        self.n = n
        self.segment = list(range(n))

    def initial_segment(self) -> list[int]:
        return list(self.segment)

    def respond(self, batch: list[int]) -> list[int]:
        hit = set(batch)
        pieces: list[list[int]] = []
        cur: list[int] = []
        for v in self.segment:
            if v in hit:
                if cur:
                    pieces.append(cur)
                cur = []
            else:
                cur.append(v)
        if cur:
            pieces.append(cur)
        best = max(pieces, key=lambda piece: (len(piece), -piece[0]), default=[])
        self.segment = list(best) if len(best) >= 2 else []
        return list(self.segment)

    def fully_oriented(self) -> bool:
        return not self.segment


def path_search(oracle: HiddenDag | PathAdversary, r: int) -> SearchTranscript:
    """Evenly spaced probes on the surviving subpath, then cover what is left.

    The last round cuts every remaining edge with an alternating vertex cover
    of the segment.  Accepts either a hidden path DAG or a PathAdversary; both
    answer a round of interventions with the still-unoriented segment.
    """
    if r < 1:
        raise InvalidInputError("need r >= 1")
    runner = _HiddenPathOracle(oracle) if isinstance(oracle, HiddenDag) else oracle
    segment = runner.initial_segment()
    n = len(segment)
    records: list[RoundRecord] = []
    if n >= 2:
        r_eff = max(1, min(r, ceil_log2(n)))
        limit = integer_root_ceil(n, r_eff)
        for _ in range(r_eff - 1):
            if len(segment) < 2:
                break
            length = len(segment)
            spacing = -(-length // (limit + 1))
            count = min(limit, length // spacing)
            batch = [segment[j * spacing - 1] for j in range(1, count + 1)]
            segment = runner.respond(batch)
            records.append(
                RoundRecord(
                    interventions=[(v,) for v in batch],
                    component_sizes=[len(segment)] if len(segment) >= 2 else [],
                )
            )
        if len(segment) >= 2:
            # Separating system of a path: every other vertex covers all edges.
            batch = segment[1::2]
            segment = runner.respond(batch)
            records.append(RoundRecord(interventions=[(v,) for v in batch]))
    completed = runner.fully_oriented()
    return SearchTranscript(
        algorithm="path",
        n=n,
        r=r,
        k=1,
        rounds=records,
        total_interventions=sum(len(rec.interventions) for rec in records),
        rounds_used=len(records),
        checks_used=0,
        completed=completed,
    )


def tree_search(hidden: HiddenDag, r: int) -> SearchTranscript:
    """Balanced partition directly on the unique surviving tree component.

    The last round intervenes on every vertex of whatever tree component is
    left.
    """
    if r < 1:
        raise InvalidInputError("need r >= 1")
    state = observational_essential(hidden)
    n = hidden.n
    g = state.graph
    if g.num_arcs() > 0 or g.num_undirected() != n - 1:
        raise InvalidInputError("tree search expects an undirected tree essential graph")
    r_eff = max(1, min(r, ceil_log2(n))) if n >= 2 else 1
    limit = integer_root_ceil(n, r_eff) if n >= 2 else 1
    records: list[RoundRecord] = []
    for _ in range(r_eff - 1):
        comps = nonsingleton_components(state)
        if not comps:
            break
        if len(comps) != 1:
            raise AssertionError("tree state has several unoriented components")
        sub, mapping = comps[0].subgraph()
        part = balanced_tree_partition(sub, limit)
        batch = [(mapping[v],) for v in sorted(part.removed)]
        before = state.graph.arc_set()
        state = intervene(hidden, state, batch)
        records.append(
            RoundRecord(
                interventions=batch,
                newly_oriented=sorted(state.graph.arc_set() - before),
                component_sizes=sorted(
                    (len(c.vertices) for c in nonsingleton_components(state)),
                    reverse=True,
                ),
            )
        )
    comps = nonsingleton_components(state)
    if comps:
        batch = [(v,) for c in comps for v in c.vertices]
        before = state.graph.arc_set()
        state = intervene(hidden, state, batch)
        records.append(
            RoundRecord(
                interventions=batch,
                newly_oriented=sorted(state.graph.arc_set() - before),
            )
        )
    return SearchTranscript(
        algorithm="tree",
        n=n,
        r=r,
        k=1,
        rounds=records,
        total_interventions=sum(len(rec.interventions) for rec in records),
        rounds_used=len(records),
        checks_used=0,
        completed=state.is_fully_oriented(),
    )
