# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

""" Branch-and-reduce solvers for subset feedback vertex set on chordal and split graphs """

from .chordal import solve_chordal
from .exact import solve_split_exact
from .oracle import oracle_solve, solve_oracle
from .search import (
    Answer,
    PreconditionError,
    SolveOutcome,
    SolverInvariantError,
    SolverOptions,
    SolveStats,
    minimize,
)
from .split import good_alg, solve_split

# Base of the worst-case running-time bound shared by the parameterized solvers
BRANCHING_BASE = 1.820

__all__ = [
    "Answer",
    "BRANCHING_BASE",
    "PreconditionError",
    "SolveOutcome",
    "SolveStats",
    "SolverInvariantError",
    "SolverOptions",
    "good_alg",
    "minimize",
    "oracle_solve",
    "solve_chordal",
    "solve_oracle",
    "solve_split",
    "solve_split_exact",
]
