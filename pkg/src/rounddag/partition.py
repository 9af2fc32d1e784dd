"""Balanced partitioning of a tree by bounded node removals.

Removing at most ``max_removals`` vertices splits the tree so that every
remaining component has at most ``ceil(n / (max_removals + 1))`` vertices.
Each loop iteration prunes one rooted subtree: either one of size exactly
``threshold + 1``, or a minimal oversized one whose children are all small,
found by descending from the root.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import InvalidInputError, MixedGraph


@dataclass(frozen=True)
class TreePartition:
    removed: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    def max_component_size(self) -> int:
        return max((len(c) for c in self.components), default=0)


def ceil_div(x: int, d: int) -> int:
    if d <= 0:
        raise InvalidInputError("divisor must be positive")
    return -(-x // d)


def nested_ceiling_div(x: int, divisors: list[int]) -> int:
    """Iterated ceiling division; equals one ceiling by the product.

    Both evaluations are performed and compared, so every call re-checks the
    collapse identity the partition analysis relies on.
    """
    iterated = x
    product = 1
    for d in divisors:
        iterated = ceil_div(iterated, d)
        product *= d
    direct = ceil_div(x, product)
    if iterated != direct:
        raise AssertionError(
            f"ceiling collapse failed: {x} over {divisors}: {iterated} != {direct}"
        )
    return direct


def _check_tree(tree: MixedGraph) -> None:
    if tree.num_arcs() > 0:
        raise InvalidInputError("partition input must be undirected")
    n = tree.n
    if n == 0:
        raise InvalidInputError("partition input must be non-empty")
    if tree.num_undirected() != n - 1:
        raise InvalidInputError("partition input must be a tree (n-1 edges)")
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in tree.neighbors(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != n:
        raise InvalidInputError("partition input must be connected")


def _subtree_sizes(
    nbrs: dict[int, set[int]], root: int
) -> tuple[dict[int, int], dict[int, int | None], dict[int, list[int]]]:
    """Sizes, parents and child lists for the tree rooted at root."""
    parent: dict[int, int | None] = {root: None}
    order = [root]
    stack = [root]
    while stack:
        x = stack.pop()
        for y in sorted(nbrs[x]):
            if y not in parent:
                parent[y] = x
                order.append(y)
                stack.append(y)
    children: dict[int, list[int]] = {v: [] for v in parent}
    for v, p in parent.items():
        if p is not None:
            children[p].append(v)
    size = {v: 1 for v in parent}
    for v in reversed(order):
        for c in children[v]:
            size[v] += size[c]
    return size, parent, children


def balanced_tree_partition(tree: MixedGraph, max_removals: int) -> TreePartition:
    """Remove <= max_removals vertices so every component is small.

    The size threshold is fixed from the *input* size: components end up with
    at most ceil(n / (max_removals + 1)) vertices.  Deterministic: the working
    tree is rooted at its lowest-index vertex and ties pick the lowest-index
    subtree root.
    """
    _check_tree(tree)
    if max_removals < 1:
        raise InvalidInputError("removal budget must be >= 1")
    n = tree.n
    threshold = ceil_div(n, max_removals + 1)

    nbrs: dict[int, set[int]] = {v: set(tree.neighbors(v)) for v in tree.vertices()}
    alive = set(tree.vertices())
    removed: list[int] = []

    def prune(v: int, doomed: set[int]) -> None:
        for x in doomed:
            for y in nbrs[x]:
                nbrs[y].discard(x)
            nbrs[x] = set()
            alive.discard(x)

    while len(alive) > threshold:
        root = min(alive)
        size, parent, children = _subtree_sizes(nbrs, root)
        exact = sorted(v for v in alive if size[v] == threshold + 1)
        if exact:
            u = exact[0]
        else:
            # Descend from the root to an oversized subtree with small children.
            u = root
            while True:
                big = [w for w in children[u] if size[w] > threshold]
                if not big:
                    break
                u = min(big)
        # Vertices of the subtree rooted at u.
        doomed = set()
        stack = [u]
        while stack:
            x = stack.pop()
            doomed.add(x)
            stack.extend(c for c in children[x] if c not in doomed)
        removed.append(u)
        prune(u, doomed)

    # Final components: connected pieces of the original tree minus removals.
    removed_set = set(removed)
    comp_nbrs = {v: set(tree.neighbors(v)) - removed_set for v in tree.vertices()}
    seen: set[int] = set()
    components: list[tuple[int, ...]] = []
    for s in tree.vertices():
        if s in removed_set or s in seen:
            continue
        comp = []
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in comp_nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        components.append(tuple(sorted(comp)))

    part = TreePartition(removed=tuple(removed), components=tuple(components))
    if len(part.removed) > max_removals:
        raise AssertionError(
            f"partition removed {len(part.removed)} > budget {max_removals}"
        )
    if part.max_component_size() > threshold:
        raise AssertionError(
            f"component of size {part.max_component_size()} exceeds {threshold}"
        )
    return part
