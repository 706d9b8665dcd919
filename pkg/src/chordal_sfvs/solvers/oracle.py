# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""
Brute-force ground truth: minimum solutions by exhaustive search
"""

import logging
import time
from dataclasses import dataclass
from itertools import combinations

from ..graph.core import Instance, Mode, enumerate_t_triangles, find_violation
from .search import SolveOutcome, SolverOptions, SolveStats, certify

logger = logging.getLogger(__name__)

CYCLE_MODE_LIMIT = 12


@dataclass
class OracleResult:
    """``size`` is None when no solution of size at most the cap exists."""

    size: int | None
    witness: frozenset[int] | None

    @property
    def feasible(self) -> bool:
        return self.size is not None


def _constraints(inst: Instance) -> list[tuple[int, ...]]:
    # Edges first: two-way branches before three-way ones.
    return list(inst.graph.marked_edges()) + list(enumerate_t_triangles(inst))


def _hit(constraints: list[tuple[int, ...]], chosen: set[int], budget: int) -> set[int] | None:
    for constraint in constraints:
        if chosen.isdisjoint(constraint):
            break
    else:
        return set(chosen)
    if budget == 0:
        return None
    for v in constraint:
        chosen.add(v)
        found = _hit(constraints, chosen, budget - 1)
        chosen.discard(v)
        if found is not None:
            return found
    return None


def min_hitting_set(inst: Instance, cap: int) -> frozenset[int] | None:
    """
    A minimum set hitting every marked edge and T-triangle, or None if every such set
    is larger than ``cap``. Searched by iterative deepening.
    """
    if cap < 0:
        return None
    constraints = _constraints(inst)
    for budget in range(cap + 1):
        found = _hit(constraints, set(), budget)
        if found is not None:
            return frozenset(found)
    return None


def oracle_solve(inst: Instance, cap: int | None = None, mode: Mode = "triangle") -> OracleResult:
    """
    Exact minimum solution of ``inst`` if it has size at most ``cap`` (default ``inst.k``).

    ``mode="cycle"`` enumerates vertex subsets by size and checks that no terminal
    remains on a cycle; it is limited to small graphs.

    Raises
    ------
    ValueError
        If cycle mode is requested on more than ``CYCLE_MODE_LIMIT`` vertices, or the
        mode is unknown
    """
    cap = inst.k if cap is None else cap
    if mode == "triangle":
        witness = min_hitting_set(inst, cap)
    elif mode == "cycle":
        vertices = inst.graph.vertices()
        if len(vertices) > CYCLE_MODE_LIMIT:
            raise ValueError(
                f"Cycle-mode oracle is limited to {CYCLE_MODE_LIMIT} vertices, got {len(vertices)}"
            )
        witness = None
        for size in range(min(cap, len(vertices)) + 1):
            witness = next(
                (
                    frozenset(S)
                    for S in combinations(vertices, size)
                    if find_violation(inst, S, "cycle") is None
                ),
                None,
            )
            if witness is not None:
                break
    else:
        raise ValueError(f"Unknown oracle mode {mode!r}")

    if witness is None:
        logger.debug("oracle: no solution within %d for %r", cap, inst)
        return OracleResult(None, None)
    return OracleResult(len(witness), witness)


def solve_oracle(inst: Instance, options: SolverOptions | None = None) -> SolveOutcome:
    """:func:`oracle_solve` in triangle mode, wrapped like the other solvers."""
    start = time.perf_counter()
    result = oracle_solve(inst)
    stats = SolveStats(seconds=time.perf_counter() - start)
    return certify(inst, result.witness, stats)
