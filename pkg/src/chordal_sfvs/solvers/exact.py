# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""
Exact algorithm for subset feedback vertex set on split graphs without marked edges,
measured in the number of vertices
"""

import logging

from ..graph.chordal import NotSplitError, split_partition
from ..graph.core import Instance
from .search import (
    PreconditionError,
    Search,
    SolveOutcome,
    SolverOptions,
    Solution,
    explore,
    run,
)
from .split import SplitSolver, min_clique_survivor_solution

logger = logging.getLogger(__name__)


class ExactSplitSolver:
    def __init__(self, search: Search):
        self.search = search
        self.split = SplitSolver(search)

    def solve(self, inst: Instance) -> Solution | None:
        with self.search.node():
            if inst.k < 0:
                return None
            partition = split_partition(inst.graph)
            if partition is None:
                raise NotSplitError(f"Graph of {inst!r} is not split")
            K, I = partition
            options = self.search.options

            if len(K) <= options.exact_threshold:
                self.search.fire("exact.e1")
                best = min_clique_survivor_solution(inst, K, I)
                if best is None or len(best) > inst.k:
                    return None
                return set(best)

            in_clique = sorted(K & inst.terminals)
            if in_clique:
                t = in_clique[0]
                rest = sorted(K - {t})
                chunk, remainder = rest[: options.exact_chunk], rest[options.exact_chunk :]
                raw = (1, len(chunk), len(remainder))
                self.search.stats.e2.append(
                    {
                        "clique": len(K),
                        "raw": list(raw),
                        # n-drops as the running-time analysis counts them
                        "accounted": [1, len(chunk) - 3, len(remainder) + 3],
                    }
                )
                return explore(
                    self.search,
                    inst,
                    "exact.e2",
                    [
                        lambda trail: trail.take([t]),
                        lambda trail: trail.take(chunk),
                        lambda trail: trail.take(remainder),
                    ],
                    self.solve,
                    raw,
                    gauge=lambda: len(inst.graph),
                )

            if len(I) <= inst.k:
                self.search.fire("exact.e3")
                return set(I)
            if len(K) <= inst.k:
                self.search.fire("exact.e3")
                return set(K)

            self.search.fire("exact.e4")
            return self.split.solve(inst)


def solve_split_exact(inst: Instance, options: SolverOptions | None = None) -> SolveOutcome:
    """
    Decide a split instance that has no marked edges.

    Raises
    ------
    PreconditionError
        If the instance has marked edges
    NotSplitError
        If the graph is not split
    """
    if inst.graph.marked_edges():
        raise PreconditionError("The exact split solver does not accept marked edges")
    if split_partition(inst.graph) is None:
        raise NotSplitError(f"Graph of {inst!r} is not split")
    return run(lambda i, search: ExactSplitSolver(search).solve(i), inst, options)
