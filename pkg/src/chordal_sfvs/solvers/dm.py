# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""
Maximum bipartite matchings, the Dulmage-Mendelsohn decomposition, and the
DM reduction on split instances
"""

import logging
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field

import networkx as nx
from networkx.algorithms.bipartite import hopcroft_karp_matching

from ..graph.core import Instance
from .search import SolverInvariantError, Trail

logger = logging.getLogger(__name__)


@dataclass
class BipartiteGraph:
    """Bipartite graph with sides ``a`` and ``b``; edges are ``(a_vertex, b_vertex)`` pairs."""

    a: list[int]
    b: list[int]
    edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.a = sorted(set(self.a))
        self.b = sorted(set(self.b))
        if set(self.a) & set(self.b):
            raise ValueError("Bipartite sides must be disjoint")
        side_a, side_b = set(self.a), set(self.b)
        for x, y in self.edges:
            if x not in side_a or y not in side_b:
                raise ValueError(f"Edge {x} {y} does not join side a to side b")
        self.edges = sorted(set(self.edges))

    def neighbors(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.a + self.b}
        for x, y in self.edges:
            adj[x].append(y)
            adj[y].append(x)
        return adj

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.a, bipartite=0)
        g.add_nodes_from(self.b, bipartite=1)
        g.add_edges_from(self.edges)
        return g


@dataclass
class DMResult:
    C: frozenset[int]
    H: frozenset[int]
    R: frozenset[int]
    matching: frozenset[tuple[int, int]]


@dataclass
class AuxiliaryBipartite:
    """
    ``A``: independent-side vertices with at least one edge, all of them marked.
    ``B``: the neighbourhood of ``A``.
    """

    A: frozenset[int]
    B: frozenset[int]
    graph: BipartiteGraph


@dataclass
class DMReduction:
    """Outcome of :func:`dm_reduce`: the ``(Â, B̂)`` pair removed in each round."""

    rounds: list[tuple[frozenset[int], frozenset[int]]] = field(default_factory=list)

    @property
    def changed(self) -> bool:
        return bool(self.rounds)

    @property
    def committed(self) -> frozenset[int]:
        return frozenset().union(*(b for _, b in self.rounds))


def max_matching(f: BipartiteGraph) -> frozenset[tuple[int, int]]:
    """Maximum-cardinality matching as ``(a_vertex, b_vertex)`` pairs."""
    if not f.edges:
        return frozenset()
    g = f.to_networkx()
    g.remove_nodes_from([v for v in f.a + f.b if g.degree(v) == 0])
    top = [v for v in f.a if v in g]
    mate = hopcroft_karp_matching(g, top_nodes=top)
    return frozenset((x, mate[x]) for x in top if x in mate)


def _alternating_reach(
    starts: Iterable[int], adj: dict[int, list[int]], mate: dict[int, int]
) -> tuple[set[int], set[int]]:
    """
    Vertices reached from ``starts`` along alternating paths: non-matching edges
    out of even vertices, matching edges out of odd ones.
    """
    even, odd = set(starts), set()
    queue = deque(sorted(even))
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y in odd or mate.get(x) == y:
                continue
            odd.add(y)
            z = mate.get(y)
            if z is not None and z not in even:
                even.add(z)
                queue.append(z)
    return even, odd


def dm_decompose(f: BipartiteGraph) -> DMResult:
    """
    The Dulmage-Mendelsohn decomposition ``(C, H, R)`` of ``f``.

    ``C`` holds the vertices reachable at even distance from an unmatched vertex of
    their own side by alternating paths, ``H`` the vertices reached at odd distance,
    and ``R`` the rest.
    """
    matching = max_matching(f)
    mate: dict[int, int] = {}
    for x, y in matching:
        mate[x] = y
        mate[y] = x
    adj = f.neighbors()

    even_a, odd_b = _alternating_reach([x for x in f.a if x not in mate], adj, mate)
    even_b, odd_a = _alternating_reach([y for y in f.b if y not in mate], adj, mate)

    C = frozenset(even_a | even_b)
    H = frozenset(odd_a | odd_b)
    if C & H:
        raise SolverInvariantError(f"DM classes overlap on {sorted(C & H)}")
    R = frozenset(f.a + f.b) - C - H
    return DMResult(C, H, R, matching)


def build_auxiliary(inst: Instance, independent: Iterable[int] | None = None) -> AuxiliaryBipartite:
    """
    Auxiliary bipartite subgraph over the independent side of a split instance.

    ``independent`` defaults to the live terminals, the independent side of a good
    instance.
    """
    g = inst.graph
    side = inst.live_terminals() if independent is None else sorted(independent)
    A = [
        x
        for x in side
        if g.is_live(x) and g.degree(x) > 0 and len(g.marked_neighbors(x)) == g.degree(x)
    ]
    B = sorted({y for x in A for y in g.neighbor_set(x)})
    edges = [(x, y) for x in A for y in g.neighbors(x)]
    return AuxiliaryBipartite(frozenset(A), frozenset(B), BipartiteGraph(A, B, edges))


def dm_reduce(
    inst: Instance, trail: Trail, independent: Iterable[int] | None = None
) -> DMReduction:
    """
    Apply the DM reduction until it no longer changes the instance.

    Each round deletes ``Â = A ∩ (R ∪ C)`` and commits ``B̂ = B ∩ (R ∪ H)`` to the
    solution through ``trail``, decreasing ``k`` by ``|B̂|``.

    Raises
    ------
    SolverInvariantError
        If exactly one of ``Â`` and ``B̂`` is empty
    """
    side = None if independent is None else set(independent)
    result = DMReduction()
    while True:
        live_side = None if side is None else [x for x in side if inst.graph.is_live(x)]
        aux = build_auxiliary(inst, live_side)
        if not aux.A:
            return result
        dm = dm_decompose(aux.graph)
        a_hat = aux.A & (dm.R | dm.C)
        b_hat = aux.B & (dm.R | dm.H)
        if not a_hat and not b_hat:
            return result
        if not a_hat or not b_hat:
            raise SolverInvariantError(
                f"DM reduction found Â={sorted(a_hat)} and B̂={sorted(b_hat)}"
            )
        logger.debug("DM reduction removes %s and commits %s", sorted(a_hat), sorted(b_hat))
        trail.take(b_hat)
        trail.drop(a_hat)
        result.rounds.append((frozenset(a_hat), frozenset(b_hat)))
