# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

import random

import pytest

from chordal_sfvs.generators import gen_chordal
from chordal_sfvs.graph.core import Graph, Instance, verify_solution
from chordal_sfvs.solvers import Answer, solve_oracle
from chordal_sfvs.solvers.oracle import min_hitting_set, oracle_solve


def test_single_triangle(triangle):
    inst, _ = triangle
    result = oracle_solve(inst)
    assert result.size == 1
    assert result.feasible
    assert verify_solution(inst, result.witness)


def test_nothing_to_hit():
    inst = Instance(Graph(3), [1], k=0)
    assert oracle_solve(inst).size == 0
    assert oracle_solve(inst).witness == frozenset()


def test_cap(triangle):
    inst, _ = triangle
    result = oracle_solve(inst, cap=0)
    assert result.size is None
    assert not result.feasible
    assert min_hitting_set(inst, -1) is None


def test_reference_part(inner_terminal_chordal):
    inst, ids = inner_terminal_chordal
    x2 = [ids[x] for x in ("th", "u2", "u3", "t1", "t2", "t3", "t4", "v2")]
    assert oracle_solve(inst.induced(x2)).size == 2
    assert oracle_solve(inst).size == 4


@pytest.mark.parametrize("seed", range(20))
def test_cycle_mode_agrees(seed):
    n = random.Random(seed).randint(3, 10)
    inst = gen_chordal(n, terminal_prob=0.4, mark_prob=0.15, k=n, seed=seed)
    triangle = oracle_solve(inst, mode="triangle")
    cycle = oracle_solve(inst, mode="cycle")
    assert triangle.size == cycle.size
    assert verify_solution(inst, triangle.witness, "cycle")
    assert verify_solution(inst, cycle.witness, "triangle")


@pytest.mark.suite
def test_cycle_mode_suite():
    for seed in range(100):
        rng = random.Random(seed)
        n = rng.randint(1, 12)
        inst = gen_chordal(
            n,
            density=rng.random(),
            terminal_prob=rng.choice([0.2, 0.4, 0.6]),
            mark_prob=rng.choice([0.0, 0.15]),
            k=n,
            seed=seed,
        )
        triangle = oracle_solve(inst, mode="triangle")
        cycle = oracle_solve(inst, mode="cycle")
        assert triangle.size == cycle.size, f"seed {seed}"


def test_cycle_mode_limit():
    inst = gen_chordal(13, seed=1)
    with pytest.raises(ValueError):
        oracle_solve(inst, mode="cycle")


def test_unknown_mode(triangle):
    inst, _ = triangle
    with pytest.raises(ValueError):
        oracle_solve(inst, mode="square")


def test_solve_oracle(triangle):
    inst, _ = triangle
    outcome = solve_oracle(inst)
    assert outcome.answer is Answer.YES
    assert outcome.size == 1

    inst.k = 0
    assert solve_oracle(inst).answer is Answer.NO
