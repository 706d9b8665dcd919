# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""
Shared search machinery for the branch-and-reduce solvers: options, statistics,
outcomes, the undo trail and the branching helper
"""

import logging
import time
from collections import Counter
from collections.abc import Callable, Iterable, Iterator, Sequence
from contextlib import contextmanager
from dataclasses import dataclass, field, fields
from enum import Enum
from fractions import Fraction
from pathlib import Path

from .. import SOLVER_OPTIONS_SCHEMA
from ..graph.core import Instance, Mode, t_triangles_at, verify_solution
from ..utils import get_jsonschema, load_config_yaml

logger = logging.getLogger(__name__)

Solution = set[int]
Decider = Callable[[Instance], Solution | None]


class PreconditionError(Exception):
    pass


class SolverInvariantError(Exception):
    pass


class Answer(str, Enum):
    YES = "YES"
    NO = "NO"


@dataclass
class SolverOptions:
    """
    Tuning and audit switches shared by every solver.

    Parameters
    ----------
    split_constant: int
        Branching constant of the split wrapper; cliques of size ``<= 2 * split_constant``
        are enumerated directly
    separator_bound: int
        Largest component minimum the small-separator rule will replace
    exact_threshold: int
        Clique size up to which the exact split solver enumerates directly
    exact_chunk: int
        Size of the fixed clique chunk in the exact solver's three-way branch
    audit: bool
        Check good/thin instance structure after every step
    strict: bool
        Raise :class:`SolverInvariantError` on measure or branching shortfalls instead
        of recording them
    """

    split_constant: int = 3
    separator_bound: int = 5
    exact_threshold: int = 15
    exact_chunk: int = 10
    audit: bool = False
    strict: bool = False

    @classmethod
    def from_yaml(cls, path: str | Path) -> "SolverOptions":
        """
        Load options from a YAML file validated against the bundled schema.

        Raises
        ------
        jsonschema.exceptions.ValidationError
            If the file does not match the solver options schema
        """
        config = load_config_yaml(path, get_jsonschema(SOLVER_OPTIONS_SCHEMA))
        known = {f.name for f in fields(cls)}
        return cls(**{key: value for key, value in config.items() if key in known})


@dataclass
class SolveStats:
    """Counters and instrumentation records accumulated during one solve."""

    nodes: int = 0
    peak_depth: int = 0
    rules: Counter = field(default_factory=Counter)
    branches: list[tuple[str, int, Fraction]] = field(default_factory=list)
    measures: list[tuple[str, Fraction]] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    e2: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    def merge(self, other: "SolveStats") -> None:
        self.nodes += other.nodes
        self.peak_depth = max(self.peak_depth, other.peak_depth)
        self.rules.update(other.rules)
        self.branches.extend(other.branches)
        self.measures.extend(other.measures)
        self.violations.extend(other.violations)
        self.e2.extend(other.e2)
        self.seconds += other.seconds

    def min_drops(self) -> dict[str, list[str]]:
        """Smallest recorded drop per rule and branch index."""
        worst: dict[str, dict[int, Fraction]] = {}
        for rule, index, drop in self.branches:
            slot = worst.setdefault(rule, {})
            slot[index] = min(slot.get(index, drop), drop)
        return {
            rule: [str(slot[i]) for i in sorted(slot)] for rule, slot in worst.items()
        }

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "peak_depth": self.peak_depth,
            "rules": dict(sorted(self.rules.items())),
            "branch_min_drops": self.min_drops(),
            "min_measure_delta": str(min((d for _, d in self.measures), default=0)),
            "violations": list(self.violations),
            "e2": list(self.e2),
            "seconds": round(self.seconds, 6),
        }


@dataclass
class SolveOutcome:
    answer: Answer
    solution: frozenset[int] | None = None
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def size(self) -> int | None:
        return None if self.solution is None else len(self.solution)

    def __bool__(self) -> bool:
        return self.answer is Answer.YES


class Search:
    """
    Per-solve context: options, statistics and the current recursion depth.
    """

    def __init__(self, options: SolverOptions | None = None, stats: SolveStats | None = None):
        self.options = options or SolverOptions()
        self.stats = stats or SolveStats()
        self.depth = 0

    @contextmanager
    def node(self) -> Iterator[None]:
        self.stats.nodes += 1
        self.depth += 1
        self.stats.peak_depth = max(self.stats.peak_depth, self.depth)
        try:
            yield
        finally:
            self.depth -= 1

    def fire(self, rule: str) -> None:
        self.stats.rules[rule] += 1
        logger.debug("%s%s", "  " * self.depth, rule)

    def violation(self, message: str) -> None:
        self.stats.violations.append(message)
        logger.debug("violation: %s", message)
        if self.options.strict:
            raise SolverInvariantError(message)

    def record_branch(self, rule: str, index: int, drop, required) -> None:
        drop = Fraction(drop)
        self.stats.branches.append((rule, index, drop))
        if drop < required:
            self.violation(f"{rule} branch {index} dropped {drop} < {required}")

    def record_measure(self, rule: str, delta, required=0) -> None:
        delta = Fraction(delta)
        self.stats.measures.append((rule, delta))
        if delta < required:
            self.violation(f"{rule} changed the measure by {delta} < {required}")


class Trail:
    """
    Records edits to an instance together with how to lift a solution of the
    edited instance back to one of the instance at the trail's start.

    Used as a context manager, the instance is restored on exit.
    """

    def __init__(self, inst: Instance):
        self.inst = inst
        self._token = inst.checkpoint()
        self._lifts: list[Callable[[Solution], Iterable[int]]] = []

    def __enter__(self) -> "Trail":
        return self

    def __exit__(self, *exc) -> bool:
        self.undo()
        return False

    def undo(self) -> None:
        self.inst.rollback(self._token)
        self._lifts.clear()

    def take(self, vertices: Iterable[int]) -> None:
        """Put ``vertices`` into the solution: delete them and decrease ``k`` accordingly."""
        chosen = frozenset(vertices)
        if not chosen:
            return
        self.inst.delete(chosen, dec=len(chosen))
        self._lifts.append(lambda S: S | chosen)

    def drop(self, vertices: Iterable[int], dec: int = 0) -> None:
        """Delete ``vertices`` without committing them, decreasing ``k`` by ``dec``."""
        self.inst.delete(vertices, dec)

    def forbid(self, v: int) -> None:
        """
        Exclude ``v`` from the solution: commit its marked neighbours, mark the edge
        opposite ``v`` in every surviving T-triangle, then delete ``v``.
        """
        self.take(self.inst.marked_neighbors(v))
        for a, b in t_triangles_at(self.inst, v):
            self.inst.graph.mark(a, b)
        self.drop([v])

    def patch(self, lift: Callable[[Solution], Iterable[int]]) -> None:
        """Register a map from solutions after the following edits to solutions before them."""
        self._lifts.append(lift)

    def lift(self, solution: Iterable[int]) -> Solution:
        S = set(solution)
        for lift in reversed(self._lifts):
            S = set(lift(S))
        return S


def explore(
    search: Search,
    inst: Instance,
    rule: str,
    edits: Sequence[Callable[[Trail], None]],
    solve: Decider,
    required: Sequence,
    gauge: Callable[[], Fraction | int] | None = None,
) -> Solution | None:
    """
    Try each branch of ``rule`` in order and return the first lifted solution.

    ``gauge`` measures the instance before and after each branch's edits (``k`` by
    default); the drop is checked against the matching entry of ``required``.
    """
    gauge = gauge or (lambda: inst.k)
    search.fire(rule)
    for index, (edit, need) in enumerate(zip(edits, required)):
        with Trail(inst) as trail:
            before = gauge()
            edit(trail)
            search.record_branch(rule, index, before - gauge(), need)
            solution = solve(inst)
            if solution is not None:
                return trail.lift(solution)
    return None


def minimize_budget(inst: Instance, cap: int, decide: Decider) -> Solution | None:
    """Run ``decide`` at budgets ``0..cap`` and return the first solution found."""
    for budget in range(cap + 1):
        token = inst.checkpoint()
        inst.set_budget(budget)
        try:
            solution = decide(inst)
        finally:
            inst.rollback(token)
        if solution is not None:
            return solution
    return None


def certify(
    original: Instance,
    solution: Iterable[int] | None,
    stats: SolveStats,
    mode: Mode = "triangle",
) -> SolveOutcome:
    """
    Wrap a solver result, checking any solution against the untouched input.

    Raises
    ------
    SolverInvariantError
        If a claimed solution does not verify or exceeds the budget
    """
    if solution is None:
        return SolveOutcome(Answer.NO, None, stats)
    solution = frozenset(solution)
    if not verify_solution(original, solution, mode) or len(solution) > original.k:
        raise SolverInvariantError(
            f"solver produced an invalid solution {sorted(solution)} for {original!r}"
        )
    return SolveOutcome(Answer.YES, solution, stats)


def run(
    decide: Callable[[Instance, Search], Solution | None],
    inst: Instance,
    options: SolverOptions | None = None,
    mode: Mode = "triangle",
) -> SolveOutcome:
    """Solve a copy of ``inst`` with a fresh :class:`Search` and certify the result."""
    search = Search(options)
    start = time.perf_counter()
    solution = decide(inst.copy(), search)
    search.stats.seconds = time.perf_counter() - start
    return certify(inst, solution, search.stats, mode)


def minimize(
    solver: Callable[..., SolveOutcome],
    inst: Instance,
    cap: int | None = None,
    options: SolverOptions | None = None,
) -> SolveOutcome:
    """
    Smallest budget ``k' <= cap`` (default ``inst.k``) for which ``solver`` answers
    YES, with its solution. Statistics of every attempt are merged.
    """
    cap = inst.k if cap is None else cap
    stats = SolveStats()
    for budget in range(cap + 1):
        trial = Instance(inst.graph.copy(), inst.live_terminals(), budget)
        outcome = solver(trial, options)
        stats.merge(outcome.stats)
        if outcome:
            return SolveOutcome(Answer.YES, outcome.solution, stats)
    return SolveOutcome(Answer.NO, None, stats)
