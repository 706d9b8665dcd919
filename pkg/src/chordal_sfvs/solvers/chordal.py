# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""
Solving subset feedback vertex set on chordal graphs (WholeAlg).

Part I simplifies the instance until it is thin; thin instances without inner
terminals are handed to the split solver, and the rest are divided at a clique-tree
separator that contains an inner terminal.
"""

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from ..graph.chordal import (
    ChordalityError,
    build_clique_tree,
    is_chordal,
    is_simplicial,
    simplicial_vertices,
    small_separators,
)
from ..graph.core import Instance, enumerate_t_triangles, t_triangles_at
from .dm import dm_reduce
from .oracle import min_hitting_set
from .search import (
    Answer,
    PreconditionError,
    Search,
    SolveOutcome,
    SolverInvariantError,
    SolverOptions,
    Solution,
    Trail,
    explore,
    minimize_budget,
    run,
)
from .split import GoodAlg, GoodInstance, good_violation, make_good

logger = logging.getLogger(__name__)

Edit = Callable[[Trail], None]
Gadget = list[tuple[tuple[int, ...], tuple[int, ...]]]

PAIR_BRANCH = (1, 2)


@dataclass
class Reduction:
    rule: str
    edit: Edit


@dataclass
class Branching:
    rule: str
    edits: list[Edit]
    required: tuple


@dataclass
class Part1Result:
    """
    State after :func:`apply_part1`: the trail of applied reductions, plus either a
    pending branching rule, a final answer, or neither at the thin fixpoint.
    """

    trail: Trail
    branch: Branching | None = None
    answer: Answer | None = None


@dataclass
class ThinCheck:
    """Structural properties every instance has once no Part I rule applies."""

    matching: bool
    clique_sizes: bool
    unique_terminals: bool
    separators: bool

    @classmethod
    def of(cls, inst: Instance) -> "ThinCheck":
        g = inst.graph
        no_isolated = all(g.degree(v) > 0 for v in g.vertices())
        marked = [v for e in g.marked_edges() for v in e]
        matching = no_isolated and len(marked) == len(set(marked))

        simplicial = simplicial_vertices(g)
        cliques = {frozenset(g.neighbors(v) + [v]) for v in simplicial}
        clique_sizes = all(len(q) >= 4 for q in cliques)
        unique_terminals = all(
            len(q & simplicial) == 1 and q & simplicial == q & inst.terminals
            for q in cliques
        )

        separators = True
        if len(g) > 0 and nx.is_connected(g.to_networkx()):
            separators = all(len(z) >= 5 for _, z in small_separators(g, 2))
        return cls(matching, clique_sizes, unique_terminals, separators)

    def failures(self) -> list[str]:
        return [name for name, ok in vars(self).items() if not ok]

    def __bool__(self) -> bool:
        return not self.failures()


@dataclass
class DividingContext:
    """
    A clique-tree separator ``Q`` holding the inner terminal ``hub``, the clique ``q1``
    on the side of the component ``X`` and the clique ``q2`` on the other side.

    Step 10 fills ``sizes`` and ``solutions`` for the parts ``X_0, X_1, ...``.
    """

    hub: int
    separator: frozenset[int]
    q1: frozenset[int]
    q2: frozenset[int]
    component: frozenset[int]
    sizes: list[int] = field(default_factory=list)
    solutions: list[frozenset[int]] = field(default_factory=list)

    @property
    def x0(self) -> frozenset[int]:
        return (self.component - self.q1) | {self.hub}

    @property
    def others(self) -> list[int]:
        """``Q1`` without the hub, ascending."""
        return sorted(self.q1 - {self.hub})

    def parts(self) -> list[frozenset[int]]:
        return [self.x0] + [self.x0 | {v} for v in self.others]

    def _at(self, offset: int) -> frozenset[int]:
        s0 = self.sizes[0]
        return frozenset(v for v, s in zip(self.others, self.sizes[1:]) if s == s0 + offset)

    @property
    def u0(self) -> frozenset[int]:
        return self._at(0)

    @property
    def u1(self) -> frozenset[int]:
        return self._at(1)


def inner_terminals(inst: Instance) -> list[int]:
    """Terminals that are not simplicial."""
    g = inst.graph
    return [t for t in inst.live_terminals() if not is_simplicial(g, t)]


def component_min_solution_leq(inst: Instance, Z: Iterable[int], bound: int = 5) -> int | None:
    """Minimum solution size of the sub-instance induced by ``Z`` if at most ``bound``."""
    found = min_hitting_set(inst.induced(Z), bound)
    return None if found is None else len(found)


def reduce_thin_to_good(inst: Instance, trail: Trail | None = None) -> GoodInstance:
    """
    Turn a thin instance whose terminals are all simplicial into an equivalent good
    split instance with the same budget, in place.

    Raises
    ------
    PreconditionError
        If a terminal is not simplicial or two terminals are adjacent
    """
    inner = inner_terminals(inst)
    if inner:
        raise PreconditionError(f"Terminal {inner[0]} is not simplicial")
    terminals = set(inst.live_terminals())
    for t in sorted(terminals):
        if inst.graph.neighbor_set(t) & terminals:
            raise PreconditionError(f"Terminal {t} is adjacent to another terminal")
    make_good(inst, trail if trail is not None else Trail(inst))
    return GoodInstance(inst)


def find_dividing_separator(inst: Instance) -> DividingContext | None:
    """
    Scan the clique-tree edges for a separator ``Q`` containing an inner terminal with
    a component ``X`` of ``G - Q`` whose terminals are all simplicial and
    ``Q ⊊ Q1 ⊊ X ∪ Q``. The candidate with the largest ``X`` wins.

    Returns None when there is no inner terminal or no such separator.
    """
    g = inst.graph
    inner = set(inner_terminals(inst))
    if not inner:
        return None
    tree = build_clique_tree(g)
    best: DividingContext | None = None
    for i, j, _ in tree.edges:
        Q = tree.separator(i, j)
        hubs = sorted(Q & inner)
        if not hubs:
            continue
        rest = g.to_networkx([v for v in g.vertices() if v not in Q])
        for a, b in ((i, j), (j, i)):
            q1, q2 = tree.cliques[a], tree.cliques[b]
            X = frozenset(nx.node_connected_component(rest, min(q1 - Q)))
            if not X - q1:
                continue
            if any(t in inner for t in X):
                continue
            if best is None or len(X) > len(best.component):
                best = DividingContext(hubs[0], Q, q1, q2, X)
    return best


def _lift_swap(added: list[int], witnesses: dict[frozenset[int], frozenset[int]], Q: frozenset[int]):
    def lift(S: Solution) -> Solution:
        return (S - set(added)) | witnesses[Q - S]

    return lift


def _separator_gadget(qs: list[int], profile: tuple[int, ...]) -> Gadget:
    """
    Replacement for a separated component as ``(neighbours, marked neighbours)`` per new
    terminal, chosen by how much the component's minimum grows with each separator
    vertex kept.
    """
    if len(qs) == 1:
        (q,) = qs
        table = {(0,): [], (1,): [((q,), (q,))]}
    else:
        q1, q2 = qs
        table = {
            (0, 0, 0): [],
            (0, 0, 1): [((q1, q2), ())],
            (1, 0, 1): [((q1, q2), (q1,))],
            (0, 1, 1): [((q1, q2), (q2,))],
            (1, 1, 1): [((q1, q2), (q1, q2))],
            (1, 1, 2): [((q1,), (q1,)), ((q2,), (q2,))],
        }
    try:
        return table[profile]
    except KeyError:
        raise SolverInvariantError(f"No separator replacement for profile {profile} on {qs}")


class ChordalSolver:
    def __init__(self, search: Search):
        self.search = search
        self.good = GoodAlg(search)

    # -- entry points ----------------------------------------------------------------

    def solve(self, inst: Instance) -> Solution | None:
        with self.search.node(), Trail(inst) as trail:
            while True:
                if inst.k < 0:
                    return None
                if not inst.graph.marked_edges() and not enumerate_t_triangles(inst):
                    return trail.lift(())
                if not nx.is_connected(inst.graph.to_networkx()):
                    solution = self._by_components(inst)
                    return None if solution is None else trail.lift(solution)
                found = self.part1_rule(inst)
                if isinstance(found, Reduction):
                    self.search.fire(found.rule)
                    found.edit(trail)
                    continue
                if isinstance(found, Branching):
                    solution = explore(
                        self.search, inst, found.rule, found.edits, self.solve, found.required
                    )
                    return None if solution is None else trail.lift(solution)
                break

            if self.search.options.audit:
                for name in ThinCheck.of(inst).failures():
                    self.search.violation(f"thin property {name} fails on {inst!r}")
            solution = self._part2(inst)
            return None if solution is None else trail.lift(solution)

    def minimize(self, inst: Instance, cap: int) -> Solution | None:
        return minimize_budget(inst, cap, self.solve)

    def _by_components(self, inst: Instance) -> Solution | None:
        self.search.fire("chordal.components")
        components = sorted(nx.connected_components(inst.graph.to_networkx()), key=min)
        remaining = inst.k
        solution: Solution = set()
        for comp in components:
            found = self.minimize(inst.induced(comp, k=remaining), remaining)
            if found is None:
                return None
            remaining -= len(found)
            solution |= found
        return solution

    # -- Part I ----------------------------------------------------------------------

    def part1_rule(self, inst: Instance) -> Reduction | Branching | None:
        """The first applicable Part I rule, or None at the thin fixpoint."""
        for finder in (
            self._step1,
            self._step2,
            self._step3,
            self._step4,
            self._step5,
            self._step6,
            self._step7,
            self._step8,
        ):
            found = finder(inst)
            if found is not None:
                return found
        return None

    def _step1(self, inst: Instance):
        g = inst.graph
        idle = [
            v
            for v in g.vertices()
            if not g.marked_neighbors(v) and not t_triangles_at(inst, v)
        ]
        if idle:
            return Reduction("chordal.step1", lambda trail: trail.drop(idle))
        return None

    def _step2(self, inst: Instance):
        g = inst.graph
        bridges = sorted(
            tuple(sorted(e)) for e in nx.bridges(g.to_networkx()) if not g.is_marked(*e)
        )
        if not bridges:
            return None

        def edit(trail):
            for u, v in bridges:
                g.remove_edge(u, v)

        return Reduction("chordal.step2", edit)

    def _step3(self, inst: Instance):
        g = inst.graph
        for v in g.vertices():
            marked = g.marked_neighbors(v)
            if len(marked) >= 2:
                return Branching(
                    "chordal.step3",
                    [lambda trail: trail.take([v]), lambda trail: trail.take(marked)],
                    PAIR_BRANCH,
                )
        return None

    def _step4(self, inst: Instance):
        g = inst.graph
        for v in g.vertices():
            if g.degree(v) == 2 and not g.marked_neighbors(v):
                a, b = g.neighbors(v)
                if not g.has_edge(a, b):
                    continue

                def edit(trail, v=v, a=a, b=b):
                    g.mark(a, b)
                    trail.drop([v])

                return Reduction("chordal.step4", edit)
        return None

    def _step5(self, inst: Instance):
        g = inst.graph
        for v in g.vertices():
            if g.degree(v) in (1, 2):
                marked = g.marked_neighbors(v)
                if marked:
                    u = marked[0]
                    return Reduction("chordal.step5", lambda trail: trail.take([u]))
        return None

    def _step6(self, inst: Instance):
        g = inst.graph
        for a, b in g.marked_edges():
            for v, u in ((a, b), (b, a)):
                if v in inst.terminals and u not in inst.terminals:
                    continue
                if g.neighbor_set(v) - {u} <= g.neighbor_set(u):
                    return Reduction("chordal.step6", lambda trail, u=u: trail.take([u]))
        return None

    def _step7(self, inst: Instance):
        g = inst.graph
        for v in sorted(simplicial_vertices(g)):
            clique = set(g.neighbors(v)) | {v}
            if len(clique) < 4:
                continue
            terminals = sorted(t for t in clique - {v} if t in inst.terminals)
            if terminals:
                t = terminals[0]
                rest = clique - {t, v}
                return Branching(
                    "chordal.step7",
                    [lambda trail: trail.take([t]), lambda trail: trail.take(rest)],
                    PAIR_BRANCH,
                )
        return None

    def _step8(self, inst: Instance):
        g = inst.graph
        if not nx.is_connected(g.to_networkx()):
            return None
        bound = self.search.options.separator_bound
        for Q, Z in small_separators(g, 2):
            base = min_hitting_set(self._side(inst, Z, ()), bound)
            if base is None:
                continue
            a = len(base)
            qs = sorted(Q)
            witnesses = {frozenset(): base}
            for size in range(1, len(qs) + 1):
                for kept in combinations(qs, size):
                    found = min_hitting_set(self._side(inst, Z, kept), a + size)
                    if found is None:
                        raise SolverInvariantError(
                            f"Component {sorted(Z)} with {kept} kept exceeds {a + size}"
                        )
                    witnesses[frozenset(kept)] = found
            if len(qs) == 1:
                profile = (len(witnesses[Q]) - a,)
            else:
                profile = tuple(
                    len(witnesses[frozenset(kept)]) - a for kept in ([qs[0]], [qs[1]], qs)
                )
            gadget = _separator_gadget(qs, profile)
            if a == 0 and len(Z) <= len(gadget):
                continue
            logger.debug("separator %s: component %s profile %s", qs, sorted(Z), profile)
            return Reduction(
                "chordal.step8", lambda trail: self._replace(inst, trail, Q, Z, a, witnesses, gadget)
            )
        return None

    @staticmethod
    def _side(inst: Instance, Z: frozenset[int], kept: Iterable[int]) -> Instance:
        kept = list(kept)
        sub = inst.induced(set(Z) | set(kept))
        if len(kept) == 2:
            sub.graph.unmark(*kept)
        return sub

    @staticmethod
    def _replace(inst, trail, Q, Z, a, witnesses, gadget) -> None:
        added: list[int] = []
        trail.patch(_lift_swap(added, witnesses, Q))
        trail.drop(Z, dec=a)
        for nbrs, marked in gadget:
            t = inst.add_vertex(terminal=True)
            added.append(t)
            for q in nbrs:
                inst.graph.add_edge(t, q)
            for q in marked:
                inst.graph.mark(t, q)

    # -- Part II ---------------------------------------------------------------------

    def _part2(self, inst: Instance) -> Solution | None:
        if not inner_terminals(inst):
            self.search.fire("chordal.step9")
            return self._step9(inst)
        ctx = find_dividing_separator(inst)
        if ctx is None:
            self.search.violation(f"no dividing separator in {inst!r}")
            return self._fallback(inst)
        return self.divide(inst, ctx)

    def _step9(self, inst: Instance) -> Solution | None:
        with Trail(inst) as trail:
            try:
                reduce_thin_to_good(inst, trail)
                dm_reduce(inst, trail)
                reason = good_violation(inst)
            except PreconditionError as exc:
                reason = str(exc)
            if reason is None:
                solution = self.good.solve(inst)
                return None if solution is None else trail.lift(solution)
        self.search.violation(f"step 9 could not build a good instance: {reason}")
        return self._fallback(inst)

    def _fallback(self, inst: Instance) -> Solution | None:
        marked = inst.graph.marked_edges()
        if marked:
            constraint: tuple[int, ...] = marked[0]
        else:
            triangles = enumerate_t_triangles(inst)
            if not triangles:
                return set()
            constraint = triangles[0]
        return explore(
            self.search,
            inst,
            "chordal.fallback",
            [lambda trail, v=v: trail.take([v]) for v in constraint],
            self.solve,
            (1,) * len(constraint),
        )

    def measure_parts(self, inst: Instance, ctx: DividingContext) -> bool:
        """
        Solve every part ``X_i`` to optimality within budget ``k``, filling
        ``ctx.sizes`` and ``ctx.solutions``. False if some part needs more than ``k``.
        """
        ctx.sizes.clear()
        ctx.solutions.clear()
        for part in ctx.parts():
            found = self.minimize(inst.induced(part, k=inst.k), inst.k)
            if found is None:
                return False
            ctx.sizes.append(len(found))
            ctx.solutions.append(frozenset(found))
        s0 = ctx.sizes[0]
        for v, s in zip(ctx.others, ctx.sizes[1:]):
            if not s0 <= s <= s0 + 1:
                self.search.violation(f"part with {v} has size {s} outside [{s0}, {s0 + 1}]")
        return True

    def divide(self, inst: Instance, ctx: DividingContext) -> Solution | None:
        self.search.fire("chordal.step10")
        logger.debug(
            "dividing at %s with hub %d, component %s",
            sorted(ctx.separator),
            ctx.hub,
            sorted(ctx.component),
        )
        if not self.measure_parts(inst, ctx):
            return None
        s0, hub = ctx.sizes[0], ctx.hub
        U0, U1 = ctx.u0, ctx.u1
        outside = ctx.x0 - {hub}
        take_hub: Edit = lambda trail: trail.take([hub])  # noqa: E731

        if s0 + len(U1) >= 2:

            def lift(S: Solution) -> Solution:
                for v, part in zip(ctx.others, ctx.solutions[1:]):
                    if v in U0 and v not in S:
                        return S | part
                return S | ctx.solutions[0]

            def exclude_hub(trail):
                trail.patch(lift)
                trail.drop(outside, dec=s0)
                trail.take(U1)
                trail.forbid(hub)

            return explore(
                self.search, inst, "chordal.step11", [take_hub, exclude_hub], self.solve, PAIR_BRANCH
            )

        free = sorted(U0 - ctx.separator)
        if s0 + len(ctx.q1) >= 4 and free:
            v = free[0]
            part = ctx.solutions[1 + ctx.others.index(v)]

            def keep_v(trail):
                trail.patch(lambda S: S | part)
                trail.drop(outside, dec=s0)
                trail.take(ctx.q1 - {hub, v})

            return explore(
                self.search, inst, "chordal.step12", [take_hub, keep_v], self.solve, PAIR_BRANCH
            )

        return self._fish(inst, ctx)

    def _fish(self, inst: Instance, ctx: DividingContext) -> Solution | None:
        g = inst.graph
        s0, hub = ctx.sizes[0], ctx.hub
        U1 = ctx.u1
        tail = ctx.component - ctx.q1
        if not (
            s0 == 0
            and len(U1) == 1
            and U1 == ctx.q1 - ctx.separator
            and tail
            and all(is_simplicial(g, x) for x in tail)
        ):
            self.search.violation(
                f"fish shape fails at {sorted(ctx.separator)}: s0={s0}, U1={sorted(U1)}"
            )
            return self._fallback(inst)

        (v1,) = U1
        partners = [u for u in g.marked_neighbors(v1) if u != hub]
        if partners:
            u = partners[0]
            edits = [lambda trail: trail.take([v1]), lambda trail: trail.take([hub, u])]
        else:
            wings = (ctx.q1 | ctx.q2) - ctx.separator
            edits = [lambda trail: trail.take([hub]), lambda trail: trail.take(wings)]
        return explore(self.search, inst, "chordal.step13", edits, self.solve, PAIR_BRANCH)


def apply_part1(inst: Instance, options: SolverOptions | None = None) -> Part1Result:
    """
    Apply Part I reductions to ``inst`` in place until a branching rule applies, the
    answer is settled, or no rule applies. Disconnected instances skip the separator
    rule.
    """
    solver = ChordalSolver(Search(options))
    trail = Trail(inst)
    while True:
        if inst.k < 0:
            return Part1Result(trail, answer=Answer.NO)
        if not inst.graph.marked_edges() and not enumerate_t_triangles(inst):
            return Part1Result(trail, answer=Answer.YES)
        found = solver.part1_rule(inst)
        if isinstance(found, Reduction):
            solver.search.fire(found.rule)
            found.edit(trail)
            continue
        return Part1Result(trail, branch=found)


def build_dividing_context(
    inst: Instance, options: SolverOptions | None = None
) -> DividingContext | None:
    """:func:`find_dividing_separator` with the part sizes of Step 10 filled in."""
    ctx = find_dividing_separator(inst)
    if ctx is None:
        return None
    ChordalSolver(Search(options)).measure_parts(inst, ctx)
    return ctx


def _require_chordal(inst: Instance) -> None:
    if not is_chordal(inst.graph)[0]:
        raise ChordalityError(f"Graph of {inst!r} is not chordal")


def divide_and_conquer(
    inst: Instance, ctx: DividingContext, options: SolverOptions | None = None
) -> SolveOutcome:
    """Decide ``inst`` starting with Steps 10-13 at the given dividing context."""
    _require_chordal(inst)
    return run(lambda i, search: ChordalSolver(search).divide(i, ctx), inst, options)


def solve_chordal(inst: Instance, options: SolverOptions | None = None) -> SolveOutcome:
    """
    Decide a chordal instance.

    Raises
    ------
    ChordalityError
        If the graph is not chordal
    """
    _require_chordal(inst)
    return run(lambda i, search: ChordalSolver(search).solve(i), inst, options)
