# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""
Seeded random chordal and split instances.

All randomness comes from a :class:`random.Random` seeded with the given seed, so
an output depends only on the parameters and the seed.
"""

import random

from ..graph.core import Graph, Instance


class GeneratorError(Exception):
    pass


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise GeneratorError(f"{name} must lie in [0, 1], got {value}")


def _check_count(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 0:
        raise GeneratorError(f"{name} must be a non-negative integer, got {value!r}")


def _decorate(
    g: Graph, rng: random.Random, terminal_prob: float, mark_prob: float, k: int
) -> Instance:
    terminals = [v for v in g.vertices() if rng.random() < terminal_prob]
    for u, v in g.edges():
        if rng.random() < mark_prob:
            g.mark(u, v)
    return Instance(g, terminals, k)


def gen_chordal(
    n: int,
    density: float = 0.5,
    terminal_prob: float = 0.3,
    mark_prob: float = 0.1,
    k: int = 3,
    seed: int = 0,
) -> Instance:
    """
    Random chordal instance built by adding vertices one at a time.

    Vertex ``v`` picks an earlier anchor ``x`` and joins a clique grown greedily from
    ``x`` over the earlier neighbours of ``x``, each kept with probability ``density``
    when adjacent to everything chosen so far. Every new vertex is therefore simplicial
    at insertion, which keeps the graph chordal.

    Parameters
    ----------
    n: int
        Number of vertices
    density: float
        Probability of extending the attachment clique by each candidate
    terminal_prob: float
        Probability of each vertex being a terminal
    mark_prob: float
        Probability of each edge being marked
    k: int
        Budget of the instance
    seed: int
        Seed of the random number generator

    Raises
    ------
    GeneratorError
        If a parameter is out of range
    """
    _check_count("n", n)
    _check_count("k", k)
    for name, value in (
        ("density", density),
        ("terminal_prob", terminal_prob),
        ("mark_prob", mark_prob),
    ):
        _check_probability(name, value)

    rng = random.Random(seed)
    g = Graph(n)
    for v in range(2, n + 1):
        x = rng.randint(1, v - 1)
        clique = [x]
        for u in g.neighbors(x):
            if rng.random() < density and all(g.has_edge(u, c) for c in clique):
                clique.append(u)
        for u in clique:
            g.add_edge(v, u)
    return _decorate(g, rng, terminal_prob, mark_prob, k)


def gen_split(
    n_clique: int,
    n_indep: int,
    edge_prob: float = 0.5,
    terminal_prob: float = 0.3,
    mark_prob: float = 0.1,
    k: int = 3,
    seed: int = 0,
) -> Instance:
    """
    Random split instance: ids ``1..n_clique`` form a clique, the following
    ``n_indep`` ids an independent set, and each clique-independent pair is joined
    with probability ``edge_prob``.

    Raises
    ------
    GeneratorError
        If a parameter is out of range
    """
    _check_count("n_clique", n_clique)
    _check_count("n_indep", n_indep)
    _check_count("k", k)
    for name, value in (
        ("edge_prob", edge_prob),
        ("terminal_prob", terminal_prob),
        ("mark_prob", mark_prob),
    ):
        _check_probability(name, value)

    rng = random.Random(seed)
    g = Graph(n_clique + n_indep)
    clique = range(1, n_clique + 1)
    for u in clique:
        for v in range(u + 1, n_clique + 1):
            g.add_edge(u, v)
    for y in range(n_clique + 1, n_clique + n_indep + 1):
        for x in clique:
            if rng.random() < edge_prob:
                g.add_edge(x, y)
    return _decorate(g, rng, terminal_prob, mark_prob, k)
