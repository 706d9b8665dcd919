# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

import random

import pytest

from chordal_sfvs.generators import gen_chordal
from chordal_sfvs.graph.chordal import ChordalityError
from chordal_sfvs.graph.core import Graph, Instance, verify_solution
from chordal_sfvs.solvers import (
    BRANCHING_BASE,
    Answer,
    SolverInvariantError,
    SolverOptions,
    solve_chordal,
)
from chordal_sfvs.solvers.chordal import (
    PAIR_BRANCH,
    Branching,
    ThinCheck,
    _separator_gadget,
    apply_part1,
    build_dividing_context,
    component_min_solution_leq,
    divide_and_conquer,
    find_dividing_separator,
    inner_terminals,
    reduce_thin_to_good,
)
from chordal_sfvs.solvers.oracle import oracle_solve
from chordal_sfvs.solvers.search import PreconditionError, Trail
from chordal_sfvs.solvers.split import SPLIT_BRANCH, good_violation

PART2_BRANCHES = {"chordal.step3", "chordal.step7", "chordal.step11", "chordal.step12", "chordal.step13"}


def graph(n, edges, terminals=(), marks=(), k=0):
    g = Graph(n)
    for u, v in edges:
        g.add_edge(u, v)
    for u, v in marks:
        g.mark(u, v)
    return Instance(g, terminals, k)


def ids_of(ids, *keys):
    return frozenset(ids[x] for x in keys)


def agrees_with_oracle(inst, outcome) -> bool:
    expected = oracle_solve(inst)
    if outcome.answer is Answer.NO:
        return expected.size is None
    return (
        expected.size is not None
        and verify_solution(inst, outcome.solution)
        and outcome.size <= inst.k
    )


def random_chordal(seed: int) -> Instance:
    rng = random.Random(seed)
    n = rng.randint(1, 12)
    return gen_chordal(
        n,
        density=rng.choice([0.3, 0.6, 0.9]),
        terminal_prob=rng.choice([0.2, 0.4]),
        mark_prob=rng.choice([0.0, 0.1, 0.2]),
        k=rng.randint(0, 5),
        seed=seed,
    )


def test_trivial_instances(triangle):
    outcome = solve_chordal(Instance(Graph(0), k=0))
    assert outcome.answer is Answer.YES
    assert outcome.solution == frozenset()

    inst, _ = triangle
    outcome = solve_chordal(inst)
    assert outcome.answer is Answer.YES
    assert outcome.size == 1

    inst.k = 0
    assert solve_chordal(inst).answer is Answer.NO


def test_negative_budget():
    inst = graph(2, [(1, 2)], k=-1)
    assert solve_chordal(inst).answer is Answer.NO


def test_rejects_non_chordal():
    inst = graph(4, [(1, 2), (2, 3), (3, 4), (4, 1)], [1], k=1)
    with pytest.raises(ChordalityError):
        solve_chordal(inst)


def test_vertex_outside_constraints_is_idle():
    inst = graph(4, [(1, 2), (1, 3), (2, 3), (3, 4)], [1], k=1)
    outcome = solve_chordal(inst)
    assert outcome.stats.rules["chordal.step1"] >= 1
    assert 4 not in outcome.solution


def test_unmarked_bridge_is_removed():
    inst = graph(6, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)], [1, 4], k=2)
    outcome = solve_chordal(inst)
    assert outcome.stats.rules["chordal.step2"] >= 1
    assert outcome.stats.rules["chordal.components"] >= 1
    assert outcome.size == 2


def test_two_marks_branch():
    inst = graph(3, [(1, 2), (2, 3)], marks=[(1, 2), (2, 3)], k=1)
    outcome = solve_chordal(inst)
    assert outcome.stats.rules["chordal.step3"] == 1
    assert outcome.solution == {2}


def test_degree_two_vertex_marks_its_neighbours():
    inst = graph(3, [(1, 2), (1, 3), (2, 3)], [1], k=1)
    result = apply_part1(inst)
    assert result.answer is Answer.YES
    assert verify_solution(graph(3, [(1, 2), (1, 3), (2, 3)], [1]), result.trail.lift(()))


def test_simplicial_clique_branch():
    inst = graph(4, [(a, b) for a in range(1, 5) for b in range(a + 1, 5)], [2], k=1)
    found = apply_part1(inst.copy())
    assert isinstance(found.branch, Branching)
    assert found.branch.rule == "chordal.step7"
    assert found.branch.required == PAIR_BRANCH

    outcome = solve_chordal(inst)
    assert outcome.stats.rules["chordal.step7"] == 1
    assert outcome.solution == {2}


def test_dominated_marked_endpoint():
    # K4 with the non-terminal 1 marked to 2; N[1] lies inside N[2]
    edges = [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
    inst = graph(4, edges, [3], [(1, 2)], k=2)
    outcome = solve_chordal(inst)
    assert outcome.stats.rules["chordal.step6"] >= 1
    assert 2 in outcome.solution
    assert agrees_with_oracle(inst, outcome)


@pytest.mark.parametrize(
    "qs, profile, expected",
    [
        ([5], (0,), []),
        ([5], (1,), [((5,), (5,))]),
        ([5, 7], (0, 0, 0), []),
        ([5, 7], (0, 0, 1), [((5, 7), ())]),
        ([5, 7], (1, 0, 1), [((5, 7), (5,))]),
        ([5, 7], (0, 1, 1), [((5, 7), (7,))]),
        ([5, 7], (1, 1, 1), [((5, 7), (5, 7))]),
        ([5, 7], (1, 1, 2), [((5,), (5,)), ((7,), (7,))]),
    ],
)
def test_separator_gadgets(qs, profile, expected):
    assert _separator_gadget(qs, profile) == expected


@pytest.mark.parametrize("qs, profile", [([5], (2,)), ([5, 7], (1, 0, 2))])
def test_separator_gadget_unknown_profile(qs, profile):
    with pytest.raises(SolverInvariantError):
        _separator_gadget(qs, profile)


def test_component_min_solution_leq(build_instance):
    inst = graph(3, [(1, 2), (2, 3)], k=0)
    assert component_min_solution_leq(inst, [1, 2, 3]) == 0

    inst = graph(3, [(1, 2), (1, 3), (2, 3)], [1])
    assert component_min_solution_leq(inst, [1, 2, 3]) == 1

    names = ["a1", "a2", "a3", "b1", "b2", "b3"] + [f"{x}{i}" for i in range(4) for x in "pq"]
    edges = [("a1", "a2"), ("a1", "a3"), ("a2", "a3"), ("b1", "b2"), ("b1", "b3"), ("b2", "b3")]
    marks = [(f"p{i}", f"q{i}") for i in range(4)]
    inst, ids = build_instance(names, edges + marks, ["a1", "b1"], marks, k=6)
    assert component_min_solution_leq(inst, list(ids.values())) is None
    assert component_min_solution_leq(inst, list(ids.values()), bound=6) == 6


def test_reduce_thin_to_good():
    # non-terminals 1, 2, 3 with a mark on 1-2; terminal 4 on 2, 3
    inst = graph(4, [(1, 2), (2, 3), (2, 4), (3, 4)], [4], [(1, 2)], k=2)
    trail = Trail(inst)
    gi = reduce_thin_to_good(inst, trail)
    assert inst.graph.has_edge(1, 3)
    assert inst.graph.marked_edges() == []
    assert gi.terminals == [4, 5]
    assert inst.graph.neighbors(5) == [1, 2]
    assert inst.k == 2
    assert trail.lift({5}) == {1}


def test_reduce_thin_to_good_preconditions(inner_terminal_chordal):
    inst, _ = inner_terminal_chordal
    with pytest.raises(PreconditionError, match="not simplicial"):
        reduce_thin_to_good(inst)

    adjacent = graph(2, [(1, 2)], [1, 2], k=1)
    with pytest.raises(PreconditionError, match="adjacent"):
        reduce_thin_to_good(adjacent)


@pytest.mark.parametrize("seed", range(25))
def test_reduce_thin_to_good_keeps_optimum(seed):
    inst = random_chordal(seed)
    if inner_terminals(inst) or any(
        inst.graph.neighbor_set(t) & inst.terminals for t in inst.live_terminals()
    ):
        pytest.skip("generated instance has inner or adjacent terminals")
    before = oracle_solve(inst, cap=len(inst.graph)).size
    reduced = inst.copy()
    reduce_thin_to_good(reduced)
    assert good_violation(reduced) in (None, "the DM reduction applies")
    assert oracle_solve(reduced, cap=len(reduced.graph)).size == before


def test_thin_check(inner_terminal_chordal):
    inst, _ = inner_terminal_chordal
    check = ThinCheck.of(inst)
    assert not check
    assert check.failures() == ["unique_terminals"]


def test_dividing_separator(inner_terminal_chordal):
    inst, ids = inner_terminal_chordal
    ctx = find_dividing_separator(inst)
    assert ctx.hub == ids["th"]
    assert ctx.separator == ids_of(ids, "th", "v1", "v2")
    assert ctx.q1 == ids_of(ids, "th", "v1", "v2", "v3", "v4")
    assert ctx.component == ids_of(ids, "t1", "t2", "t3", "t4", "u2", "u3", "v3", "v4")
    assert ctx.x0 == ids_of(ids, "th", "u2", "u3", "t1", "t2", "t3", "t4")
    assert ctx.others == [ids[v] for v in ("v1", "v2", "v3", "v4")]


def test_no_dividing_separator_without_inner_terminal(triangle):
    inst, _ = triangle
    assert inner_terminals(inst) == []
    assert find_dividing_separator(inst) is None


def test_dividing_context_sizes(inner_terminal_chordal):
    inst, ids = inner_terminal_chordal
    ctx = build_dividing_context(inst)
    assert ctx.sizes == [1, 1, 2, 1, 2]
    assert ctx.u0 == ids_of(ids, "v1", "v3")
    assert ctx.u1 == ids_of(ids, "v2", "v4")
    for part, size, solution in zip(ctx.parts(), ctx.sizes, ctx.solutions):
        assert len(solution) == size
        assert verify_solution(inst.induced(part), solution)


@pytest.mark.parametrize("k, answer", [(4, Answer.YES), (3, Answer.NO)])
def test_divide_and_conquer(inner_terminal_chordal, k, answer):
    inst, _ = inner_terminal_chordal
    inst.k = k
    ctx = find_dividing_separator(inst)
    outcome = divide_and_conquer(inst, ctx)
    assert outcome.answer is answer
    assert outcome.stats.rules["chordal.step11"] >= 1
    assert agrees_with_oracle(inst, outcome)


@pytest.mark.parametrize("k", range(0, 6))
def test_reference_instance(inner_terminal_chordal, k):
    inst, _ = inner_terminal_chordal
    inst.k = k
    assert agrees_with_oracle(inst, solve_chordal(inst))


def test_part1_stops_at_branching(inner_terminal_chordal):
    inst, _ = inner_terminal_chordal
    before = inst.copy()
    result = apply_part1(inst)
    assert result.answer is None
    assert result.branch.rule == "chordal.step7"
    assert len(result.branch.edits) == 2
    assert len(inst.graph) == len(before.graph)


@pytest.mark.parametrize("seed", range(60))
def test_solve_chordal_random(seed):
    inst = random_chordal(seed)
    outcome = solve_chordal(inst)
    assert agrees_with_oracle(inst, outcome)
    for rule, index, drop in outcome.stats.branches:
        if rule in PART2_BRANCHES:
            assert drop >= PAIR_BRANCH[index], (rule, index, drop)


@pytest.mark.parametrize("seed", range(10))
def test_strict_audit_keeps_answers(seed):
    inst = random_chordal(seed + 1000)
    plain = solve_chordal(inst)
    audited = solve_chordal(inst, SolverOptions(audit=True, strict=True))
    assert plain.answer == audited.answer
    assert audited.stats.violations == []


@pytest.mark.suite
def test_chordal_suite():
    for seed in range(500):
        rng = random.Random(seed)
        inst = gen_chordal(
            rng.randint(1, 16),
            density=rng.random(),
            terminal_prob=0.35,
            mark_prob=0.1,
            k=rng.randint(0, 6),
            seed=seed,
        )
        bound = 10 * len(inst.graph) ** 3 * BRANCHING_BASE**inst.k
        outcome = solve_chordal(inst, SolverOptions(audit=True))
        assert agrees_with_oracle(inst, outcome), f"seed {seed}"
        assert outcome.stats.violations == [], f"seed {seed}"
        assert outcome.stats.nodes <= bound, f"seed {seed}: {outcome.stats.nodes} > {bound:.0f}"
        for rule, delta in outcome.stats.measures:
            assert delta >= 0, (seed, rule, delta)
        for rule, index, drop in outcome.stats.branches:
            if rule in PART2_BRANCHES:
                assert drop >= PAIR_BRANCH[index], (seed, rule, index, drop)
            elif rule in ("split.step5", "split.step6"):
                assert drop >= SPLIT_BRANCH[index], (seed, rule, index, drop)
