# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""
Solving subset feedback vertex set on split graphs: the measure-driven branching
algorithm for good instances (GoodAlg) and the wrapper that reduces any split
instance to good ones
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from ..graph.chordal import NotSplitError, split_partition
from ..graph.core import Instance, t_triangles_at
from .dm import AuxiliaryBipartite, build_auxiliary, dm_decompose, dm_reduce
from .search import (
    PreconditionError,
    Search,
    SolveOutcome,
    SolverInvariantError,
    SolverOptions,
    Solution,
    Trail,
    explore,
    run,
)

logger = logging.getLogger(__name__)

SPLIT_BRANCH = (1, Fraction(4, 3))


def good_violation(inst: Instance) -> str | None:
    """Describe why ``inst`` is not a good split instance, or None if it is."""
    g = inst.graph
    terminals = set(inst.live_terminals())
    for t in sorted(terminals):
        other = g.neighbor_set(t) & terminals
        if other:
            return f"terminals {t} and {min(other)} are adjacent"
    nonterminals = inst.nonterminals()
    for i, u in enumerate(nonterminals):
        missing = [v for v in nonterminals[i + 1 :] if not g.has_edge(u, v)]
        if missing:
            return f"non-terminals {u} and {missing[0]} are not adjacent"
    for u, v in g.marked_edges():
        if (u in terminals) == (v in terminals):
            return f"marked edge {u} {v} does not join a terminal to a non-terminal"
    aux = build_auxiliary(inst)
    if aux.A:
        dm = dm_decompose(aux.graph)
        if aux.A & (dm.R | dm.C):
            return "the DM reduction applies"
    return None


@dataclass
class GoodInstance:
    """
    A split instance whose terminals form the independent side, whose marks all
    join a terminal to a non-terminal, and on which the DM reduction does nothing.
    """

    inst: Instance

    @property
    def terminals(self) -> list[int]:
        return self.inst.live_terminals()

    @property
    def clique(self) -> list[int]:
        return self.inst.nonterminals()

    def auxiliary(self) -> AuxiliaryBipartite:
        return build_auxiliary(self.inst)

    def check(self) -> None:
        """
        Raises
        ------
        PreconditionError
            If the instance is not good
        """
        reason = good_violation(self.inst)
        if reason is not None:
            raise PreconditionError(f"Instance is not good: {reason}")


def measure(gi: GoodInstance | Instance) -> Fraction:
    """``k - 2|A|/3`` as an exact rational."""
    inst = gi.inst if isinstance(gi, GoodInstance) else gi
    return inst.k - Fraction(2 * len(build_auxiliary(inst).A), 3)


def hide_terminal(inst: Instance, t: int, trail: Trail) -> None:
    """Keep terminal ``t`` out of the solution by committing its marked neighbours."""
    trail.take(inst.marked_neighbors(t))


def hide_nonterminal(inst: Instance, v: int, trail: Trail) -> None:
    """
    Keep non-terminal ``v`` out of the solution: commit its marked neighbours, mark the
    opposite edge of each T-triangle through ``v``, and delete ``v``.
    """
    trail.forbid(v)


def _lowest_neighbor_swap(keep: int, neighbor: int):
    def lift(S: Solution) -> Solution:
        return (S - {keep}) | {neighbor} if keep in S else S

    return lift


class GoodAlg:
    """
    Branching algorithm for good split instances, analysed with the measure
    ``k - 2|A|/3``. Rules are tried in priority order and the scan restarts after
    every change.
    """

    def __init__(self, search: Search):
        self.search = search

    def solve(self, inst: Instance) -> Solution | None:
        with self.search.node(), Trail(inst) as trail:
            while True:
                if self.search.options.audit:
                    self._audit_good(inst)
                A = build_auxiliary(inst).A
                terminals = inst.live_terminals()
                if len(A) > inst.k:
                    self.search.fire("split.step1")
                    return None
                if len(terminals) <= inst.k:
                    self.search.fire("split.step1")
                    return trail.lift(terminals)
                if self._reduce(inst, trail):
                    continue
                solution = self._branch(inst)
                return None if solution is None else trail.lift(solution)

    # -- reductions ------------------------------------------------------------------

    def _reduce(self, inst: Instance, trail: Trail) -> bool:
        for rule, finder in (
            ("split.step2", self._step2),
            ("split.step3", self._step3),
            ("split.step4", self._step4),
        ):
            edit = finder(inst)
            if edit is None:
                continue
            before = measure(inst)
            self.search.fire(rule)
            edit(trail)
            dm_reduce(inst, trail)
            self.search.record_measure(rule, before - measure(inst))
            return True
        return False

    def _step2(self, inst: Instance):
        g = inst.graph
        idle = [
            v
            for v in g.vertices()
            if not g.marked_neighbors(v) and not t_triangles_at(inst, v)
        ]
        if not idle:
            return None
        return lambda trail: trail.drop(idle)

    def _step3(self, inst: Instance):
        g = inst.graph
        for v in inst.nonterminals():
            if sum(1 for u in g.neighbor_set(v) if u in inst.terminals) == 1:
                return lambda trail: hide_nonterminal(inst, v, trail)
        return None

    def _step4(self, inst: Instance):
        g = inst.graph
        A = build_auxiliary(inst).A
        twos = [t for t in inst.live_terminals() if t not in A and g.degree(t) == 2]
        for t in twos:
            if len(g.marked_neighbors(t)) == 1:
                return lambda trail: hide_terminal(inst, t, trail)
        unmarked = [t for t in twos if not g.marked_neighbors(t)]
        for i, keep in enumerate(unmarked):
            for other in unmarked[i + 1 :]:
                if g.neighbor_set(keep) == g.neighbor_set(other):

                    def edit(trail, keep=keep, other=other):
                        trail.patch(_lowest_neighbor_swap(keep, min(g.neighbor_set(keep))))
                        trail.drop([other])

                    return edit
        return None

    # -- branching -------------------------------------------------------------------

    def _branch(self, inst: Instance) -> Solution | None:
        g = inst.graph
        if self.search.options.audit:
            self._audit_hide_preconditions(inst)
        gauge = lambda: measure(inst)  # noqa: E731

        B = build_auxiliary(inst).B
        for v in sorted(B):
            terminal_nbrs = [u for u in g.neighbors(v) if u in inst.terminals]
            marked = [u for u in terminal_nbrs if g.is_marked(u, v)]
            if len(terminal_nbrs) == 2 and len(marked) == 1:
                t = marked[0]

                def hide_v(trail, v=v):
                    hide_nonterminal(inst, v, trail)
                    dm_reduce(inst, trail)

                def hide_t(trail, t=t):
                    hide_terminal(inst, t, trail)
                    dm_reduce(inst, trail)

                return explore(
                    self.search, inst, "split.step5", [hide_v, hide_t], self.solve, SPLIT_BRANCH, gauge
                )

        for v in inst.nonterminals():
            if any(u in inst.terminals and not g.is_marked(u, v) for u in g.neighbor_set(v)):

                def take_v(trail, v=v):
                    trail.take([v])
                    dm_reduce(inst, trail)

                def hide_v(trail, v=v):
                    hide_nonterminal(inst, v, trail)
                    dm_reduce(inst, trail)

                return explore(
                    self.search, inst, "split.step6", [take_v, hide_v], self.solve, SPLIT_BRANCH, gauge
                )

        raise SolverInvariantError(
            f"no GoodAlg rule applies to {inst!r} although |T| > k >= |A|"
        )

    # -- audit -----------------------------------------------------------------------

    def _audit_good(self, inst: Instance) -> None:
        reason = good_violation(inst)
        if reason is not None:
            self.search.violation(f"instance not good: {reason}")

    def _audit_hide_preconditions(self, inst: Instance) -> None:
        g = inst.graph
        A = build_auxiliary(inst).A
        seen: dict[frozenset[int], int] = {}
        for t in inst.live_terminals():
            nbrs = frozenset(g.neighbor_set(t))
            if len([u for u in nbrs if u not in inst.terminals]) < 2:
                self.search.violation(f"terminal {t} has fewer than two non-terminal neighbours")
            # Step 4 only merges unmarked twins outside A
            if t not in A and len(nbrs) == 2 and not g.marked_neighbors(t):
                if nbrs in seen:
                    self.search.violation(
                        f"degree-2 terminals {seen[nbrs]} and {t} share their neighbours"
                    )
                seen.setdefault(nbrs, t)


def min_clique_survivor_solution(
    inst: Instance, clique: Iterable[int], independent: Iterable[int]
) -> frozenset[int] | None:
    """
    Minimum solution of a split instance by enumerating which clique vertices stay
    out of the solution; the independent vertices forced in follow from that choice.
    Returns None if no choice is feasible.
    """
    g = inst.graph
    K = sorted(clique)
    bit = {v: 1 << i for i, v in enumerate(K)}
    terminal_mask = sum(bit[v] for v in K if v in inst.terminals)
    inner_marks = [bit[u] | bit[v] for u, v in g.marked_edges() if u in bit and v in bit]

    rows = []
    for y in sorted(independent):
        nbr = sum(bit[u] for u in g.neighbor_set(y) if u in bit)
        marked = sum(bit[u] for u in g.marked_neighbors(y) if u in bit)
        rows.append((y, nbr, marked, y in inst.terminals))

    best: frozenset[int] | None = None
    for R in range(1 << len(K)):
        size = R.bit_count()
        if size >= 3 and R & terminal_mask:
            continue
        if any(pair & R == pair for pair in inner_marks):
            continue
        forced = [
            y
            for y, nbr, marked, is_terminal in rows
            if marked & R
            or ((nbr & R).bit_count() >= 2 and (is_terminal or nbr & R & terminal_mask))
        ]
        cost = len(K) - size + len(forced)
        if best is None or cost < len(best):
            best = frozenset([v for v in K if not bit[v] & R] + forced)
    return best


class SplitSolver:
    """
    Reduce an arbitrary split instance to good instances: enumerate small cliques,
    branch three ways on a terminal in the clique, or otherwise rebuild the instance
    as a good one and run GoodAlg.
    """

    def __init__(self, search: Search):
        self.search = search
        self.good = GoodAlg(search)

    def solve(self, inst: Instance) -> Solution | None:
        with self.search.node():
            if inst.k < 0:
                return None
            partition = split_partition(inst.graph)
            if partition is None:
                raise NotSplitError(f"Graph of {inst!r} is not split")
            K, I = partition
            C = self.search.options.split_constant

            if len(K) <= 2 * C:
                self.search.fire("split.brute")
                best = min_clique_survivor_solution(inst, K, I)
                if best is None or len(best) > inst.k:
                    return None
                return set(best)

            in_clique = sorted(K & inst.terminals)
            if in_clique:
                t = in_clique[0]
                rest = sorted(K - {t})
                half = ceil(len(rest) / 2)
                first, second = rest[:half], rest[half:]
                return explore(
                    self.search,
                    inst,
                    "split.case1",
                    [
                        lambda trail: trail.take([t]),
                        lambda trail: trail.take(first),
                        lambda trail: trail.take(second),
                    ],
                    self.solve,
                    (1, C, C),
                )

            with Trail(inst) as trail:
                self.search.fire("split.case2")
                make_good(inst, trail)
                dm_reduce(inst, trail)
                solution = self.good.solve(inst)
                return None if solution is None else trail.lift(solution)


def make_good(inst: Instance, trail: Trail) -> None:
    """
    Complete the non-terminals into a clique and replace every mark between two
    non-terminals by a new degree-2 terminal on that edge.
    """
    g = inst.graph
    nonterminals = inst.nonterminals()
    for i, u in enumerate(nonterminals):
        for v in nonterminals[i + 1 :]:
            g.add_edge(u, v)
    for u, v in g.marked_edges():
        if u in inst.terminals or v in inst.terminals:
            continue
        t = inst.add_vertex(terminal=True)
        g.add_edge(t, u)
        g.add_edge(t, v)
        g.unmark(u, v)
        trail.patch(_lowest_neighbor_swap(t, u))


def solve_split(inst: Instance, options: SolverOptions | None = None) -> SolveOutcome:
    """
    Decide a split instance.

    Raises
    ------
    NotSplitError
        If the graph is not split
    """
    if split_partition(inst.graph) is None:
        raise NotSplitError(f"Graph of {inst!r} is not split")
    return run(lambda i, search: SplitSolver(search).solve(i), inst, options)


def good_alg(gi: GoodInstance, options: SolverOptions | None = None) -> SolveOutcome:
    """
    Decide a good split instance with GoodAlg alone.

    Raises
    ------
    PreconditionError
        If the instance is not good
    """
    gi.check()
    return run(lambda i, search: GoodAlg(search).solve(i), gi.inst, options)
