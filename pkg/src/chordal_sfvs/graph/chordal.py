# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""
Chordal and split graph structure: recognition, maximal cliques, clique trees,
simplicial vertices and separators of size one or two
"""

from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx
from networkx.utils import UnionFind

from .core import Graph


class ChordalityError(Exception):
    pass


class NotSplitError(Exception):
    pass


def lex_bfs(g: Graph) -> list[int]:
    """
    Lexicographic breadth-first search order, breaking ties by lowest id.

    Disconnected graphs are handled by restarting at the lowest unvisited vertex.
    """
    labels: dict[int, list[int]] = {v: [] for v in g.vertices()}
    order: list[int] = []
    n = len(labels)
    while labels:
        v = max(labels, key=lambda x: (labels[x], -x))
        del labels[v]
        order.append(v)
        stamp = n - len(order)
        for u in g.neighbor_set(v):
            if u in labels:
                labels[u].append(stamp)
    return order


def is_chordal(g: Graph) -> tuple[bool, list[int] | None]:
    """
    Recognise chordal graphs.

    Returns
    -------
    (bool, list of int or None)
        Whether ``g`` is chordal and, if so, a perfect elimination ordering
        (each vertex's later neighbours form a clique).
    """
    peo = list(reversed(lex_bfs(g)))
    position = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in g.neighbor_set(v) if position[u] > position[v]]
        if not later:
            continue
        parent = min(later, key=position.__getitem__)
        rest = set(later) - {parent}
        if not rest <= g.neighbor_set(parent):
            return False, None
    return True, peo


def maximal_cliques(g: Graph) -> list[frozenset[int]]:
    """
    The maximal cliques of a chordal graph, ordered by their sorted vertex tuples.

    Raises
    ------
    ChordalityError
        If the graph is not chordal.
    """
    chordal, peo = is_chordal(g)
    if not chordal:
        raise ChordalityError("Graph is not chordal")
    position = {v: i for i, v in enumerate(peo)}
    candidates = {
        frozenset([v] + [u for u in g.neighbor_set(v) if position[u] > position[v]])
        for v in peo
    }
    cliques = [
        c for c in candidates if not any(c < other for other in candidates)
    ]
    return sorted(cliques, key=lambda c: tuple(sorted(c)))


@dataclass
class CliqueTree:
    """
    Maximal cliques of a connected chordal graph and a maximum-weight spanning tree
    of their intersection graph.
    """

    cliques: list[frozenset[int]]
    edges: list[tuple[int, int, int]]  # (i, j, |Q_i ∩ Q_j|), i < j
    membership: dict[int, list[int]] = field(default_factory=dict)

    def neighbors(self, i: int) -> list[int]:
        return sorted(
            [b for a, b, _ in self.edges if a == i] + [a for a, b, _ in self.edges if b == i]
        )

    def separator(self, i: int, j: int) -> frozenset[int]:
        return self.cliques[i] & self.cliques[j]

    def leaves(self) -> list[int]:
        if len(self.cliques) == 1:
            return [0]
        return [i for i in range(len(self.cliques)) if len(self.neighbors(i)) == 1]


def build_clique_tree(g: Graph) -> CliqueTree:
    """
    Build a clique tree by Kruskal's algorithm on the clique intersection graph,
    taking edges by descending weight and then ascending clique index.

    Raises
    ------
    ChordalityError
        If the graph is not chordal or not connected.
    """
    if len(g) > 0 and not nx.is_connected(g.to_networkx()):
        raise ChordalityError("Clique trees are built for connected graphs only")
    cliques = maximal_cliques(g)

    candidates = []
    for i, j in combinations(range(len(cliques)), 2):
        w = len(cliques[i] & cliques[j])
        if w > 0:
            candidates.append((-w, i, j))
    candidates.sort()

    forest = UnionFind(range(len(cliques)))
    edges = []
    for w, i, j in candidates:
        if forest[i] != forest[j]:
            forest.union(i, j)
            edges.append((i, j, -w))
    edges.sort()

    membership: dict[int, list[int]] = {v: [] for v in g.vertices()}
    for i, c in enumerate(cliques):
        for v in c:
            membership[v].append(i)
    return CliqueTree(cliques, edges, membership)


def is_simplicial(g: Graph, v: int) -> bool:
    return g.is_clique(g.neighbors(v))


def simplicial_vertices(g: Graph) -> set[int]:
    """Vertices whose closed neighbourhood is a clique."""
    return {v for v in g.vertices() if is_simplicial(g, v)}


def _components_without(g: Graph, removed: frozenset[int]) -> list[frozenset[int]]:
    rest = g.to_networkx([v for v in g.vertices() if v not in removed])
    comps = [frozenset(c) for c in nx.connected_components(rest)]
    return sorted(comps, key=min)


def small_separators(
    g: Graph, max_size: int = 2, tree: CliqueTree | None = None
) -> Iterator[tuple[frozenset[int], frozenset[int]]]:
    """
    Yield clique separators ``Q`` with ``|Q| <= max_size`` together with a component
    ``Z`` of ``G - Q`` whose neighbourhood is exactly ``Q``, leaving other vertices
    outside ``Z ∪ Q``.

    Minimal separators from clique-tree edges come first (by size, then vertices),
    then the remaining single vertices and edges.
    """
    if max_size not in (1, 2):
        raise ValueError("max_size must be 1 or 2")
    if tree is None:
        tree = build_clique_tree(g)

    from_tree = sorted(
        {tree.separator(i, j) for i, j, w in tree.edges if w <= max_size},
        key=lambda q: (len(q), tuple(sorted(q))),
    )
    others = [frozenset([v]) for v in g.vertices()]
    if max_size == 2:
        others += [frozenset(e) for e in g.edges()]

    seen: set[frozenset[int]] = set()
    n = len(g)
    for q in from_tree + others:
        if q in seen:
            continue
        seen.add(q)
        for z in _components_without(g, q):
            if len(z) + len(q) >= n:
                continue
            boundary = set().union(*(g.neighbor_set(v) for v in z)) - z
            if boundary == q:
                yield q, z


def find_small_separator(
    g: Graph, max_size: int = 2
) -> tuple[frozenset[int], frozenset[int]] | None:
    """The first separator of size at most ``max_size`` with one of its components, or None."""
    return next(small_separators(g, max_size), None)


def split_partition(g: Graph) -> tuple[set[int], set[int]] | None:
    """
    Split partition ``(K, I)`` with ``K`` a clique and ``I`` independent, or None.

    Uses the degree-sequence characterisation: with degrees sorted descending
    (ties by id) and ``m`` the largest index with ``d_m >= m - 1``, the graph is
    split iff the first ``m`` degrees sum to ``m(m-1)`` plus the remaining degrees.
    """
    order = sorted(g.vertices(), key=lambda v: (-g.degree(v), v))
    degrees = [g.degree(v) for v in order]
    m = 0
    for i, d in enumerate(degrees, start=1):
        if d >= i - 1:
            m = i
    if sum(degrees[:m]) != m * (m - 1) + sum(degrees[m:]):
        return None
    clique, independent = set(order[:m]), set(order[m:])
    if not g.is_clique(clique) or any(
        g.neighbor_set(v) & independent for v in independent
    ):
        return None
    return clique, independent


def is_split(g: Graph) -> bool:
    return split_partition(g) is not None
