# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

import random

import pytest

from chordal_sfvs.generators import gen_chordal
from chordal_sfvs.graph.core import (
    Graph,
    GraphError,
    Instance,
    delete_vertices,
    enumerate_t_triangles,
    find_violation,
    t_triangles_at,
    verify_solution,
)


def complete(n, terminals=(), k=0):
    g = Graph(n)
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            g.add_edge(u, v)
    return Instance(g, terminals, k)


def cycle(n, terminals=(), k=0):
    g = Graph(n)
    for v in range(1, n + 1):
        g.add_edge(v, v % n + 1)
    return Instance(g, terminals, k)


def test_graph_basics():
    g = Graph(3)
    g.add_edge(2, 1)
    g.add_edge(1, 2)
    g.add_edge(2, 3)
    assert g.edges() == [(1, 2), (2, 3)]
    assert g.neighbors(2) == [1, 3]
    assert g.degree(1) == 1
    assert len(g) == 3
    assert g.number_of_edges() == 2

    g.mark(3, 2)
    assert g.is_marked(2, 3)
    assert g.marked_edges() == [(2, 3)]
    assert g.marked_neighbors(2) == [3]

    g.remove_edge(2, 3)
    assert not g.is_marked(2, 3)


@pytest.mark.parametrize(
    "action",
    [
        lambda g: g.add_edge(1, 1),
        lambda g: g.mark(1, 3),
        lambda g: g.remove_edge(1, 3),
        lambda g: g.neighbors(4),
        lambda g: g.neighbors(0),
    ],
)
def test_graph_errors(action):
    g = Graph(3)
    g.add_edge(1, 2)
    with pytest.raises(GraphError):
        action(g)


def test_delete_vertex_keeps_ids():
    g = Graph(4)
    g.add_edge(1, 2)
    g.add_edge(2, 3)
    g.mark(2, 3)
    g.delete_vertex(2)
    assert g.vertices() == [1, 3, 4]
    assert g.capacity == 4
    assert g.marked_edges() == []
    assert g.neighbors(1) == []
    assert not g.is_live(2)
    assert g.add_vertex() == 5


@pytest.mark.parametrize(
    "inst, expected",
    [
        (complete(3, [1]), [(1, 2, 3)]),
        (complete(3), []),
        (complete(4, [1]), [(1, 2, 3), (1, 2, 4), (1, 3, 4)]),
    ],
)
def test_enumerate_t_triangles(inst, expected):
    assert enumerate_t_triangles(inst) == expected


def test_enumerate_t_triangles_path():
    g = Graph(3)
    g.add_edge(1, 2)
    g.add_edge(2, 3)
    assert enumerate_t_triangles(Instance(g, [2])) == []


def test_t_triangles_at():
    inst = complete(4, [1])
    assert t_triangles_at(inst, 1) == [(2, 3), (2, 4), (3, 4)]
    assert t_triangles_at(inst, 2) == [(1, 3), (1, 4)]


@pytest.mark.parametrize("mode", ["triangle", "cycle"])
def test_verify_triangle(mode):
    inst = complete(3, [1])
    assert verify_solution(inst, {2}, mode)
    assert not verify_solution(inst, set(), mode)


def test_verify_marked_edge():
    inst = complete(3, [1])
    inst.graph.mark(2, 3)
    assert not verify_solution(inst, {1})
    assert find_violation(inst, {1}) == "uncovered marked edge 2 3"
    assert verify_solution(inst, {2})


def test_verify_non_chordal_cycle():
    """Triangle and cycle semantics only agree on chordal graphs."""
    inst = cycle(5, [1])
    assert verify_solution(inst, set(), "triangle")
    assert not verify_solution(inst, set(), "cycle")
    assert find_violation(inst, set(), "cycle") == "terminal 1 lies on a cycle"
    assert verify_solution(inst, {3}, "cycle")


def test_verify_errors():
    inst = complete(3, [1])
    with pytest.raises(GraphError):
        verify_solution(inst, {7})
    with pytest.raises(ValueError):
        verify_solution(inst, {1}, "square")


@pytest.mark.parametrize("seed", range(100))
def test_verify_modes_agree_on_chordal(seed):
    inst = gen_chordal(random.Random(seed).randint(3, 14), mark_prob=0.0, seed=seed)
    rng = random.Random(seed)
    vertices = inst.graph.vertices()
    for _ in range(10):
        S = {v for v in vertices if rng.random() < 0.3}
        assert verify_solution(inst, S, "triangle") == verify_solution(inst, S, "cycle")


def test_delete_vertices_and_rollback():
    inst = complete(4, [1], k=3)
    inst.graph.mark(1, 2)
    before = inst.canonical()

    token = delete_vertices(inst, [2], dec=1)
    assert inst.k == 2
    assert inst.graph.vertices() == [1, 3, 4]
    assert all(inst.graph.degree(v) == 2 for v in (1, 3, 4))
    assert inst.graph.marked_edges() == []

    inst.rollback(token)
    assert inst.canonical() == before


def test_delete_nothing():
    inst = complete(3, [1], k=1)
    before = inst.canonical()
    delete_vertices(inst, [], dec=0)
    assert inst.canonical() == before


def test_rollback_terminals_and_added_vertices():
    inst = complete(3, [1], k=2)
    before = inst.canonical()
    token = inst.checkpoint()
    t = inst.add_vertex(terminal=True)
    inst.graph.add_edge(t, 2)
    inst.graph.unmark(2, 3)
    inst.delete([1], dec=1)
    assert inst.live_terminals() == [t]
    inst.rollback(token)
    assert inst.canonical() == before
    assert inst.graph.capacity == 3


def test_induced_keeps_ids():
    inst = complete(4, [1, 4], k=3)
    inst.graph.mark(3, 4)
    sub = inst.induced([1, 3, 4], k=1)
    assert sub.graph.vertices() == [1, 3, 4]
    assert sub.live_terminals() == [1, 4]
    assert sub.graph.marked_edges() == [(3, 4)]
    assert sub.k == 1
    # the original is untouched
    assert inst.graph.vertices() == [1, 2, 3, 4]


def test_terminal_must_be_live():
    with pytest.raises(GraphError):
        Instance(Graph(2), [3])


def test_to_networkx():
    inst = complete(4)
    nxg = inst.graph.to_networkx([1, 2, 3])
    assert sorted(nxg.nodes) == [1, 2, 3]
    assert nxg.number_of_edges() == 3
