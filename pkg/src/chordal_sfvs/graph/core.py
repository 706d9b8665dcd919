# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""
Graphs annotated with terminals and marked edges, with a journal for undo during search
"""

from collections.abc import Iterable
from itertools import combinations
from typing import Literal

import networkx as nx

Mode = Literal["triangle", "cycle"]
Edge = tuple[int, int]


class GraphError(Exception):
    pass


def _pair(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """
    Simple undirected graph over dense 1-indexed vertex ids.

    Deleting a vertex flips its liveness flag; ids are never reused or renumbered.
    Every mutation is appended to ``journal`` when one is attached, so an owning
    :class:`Instance` can roll it back.
    """

    def __init__(self, n: int = 0):
        self._adj: list[set[int]] = [set() for _ in range(n + 1)]
        self._alive: list[bool] = [False] + [True] * n
        self._marks: set[Edge] = set()
        self.journal: list | None = None

    # -- queries -----------------------------------------------------------------

    @property
    def capacity(self) -> int:
        """Largest id ever allocated."""
        return len(self._adj) - 1

    def is_live(self, v: int) -> bool:
        return 0 < v < len(self._alive) and self._alive[v]

    def vertices(self) -> list[int]:
        return [v for v in range(1, len(self._alive)) if self._alive[v]]

    def __len__(self) -> int:
        return sum(self._alive)

    def neighbors(self, v: int) -> list[int]:
        self._check(v)
        return sorted(self._adj[v])

    def neighbor_set(self, v: int) -> set[int]:
        """The live adjacency set of ``v``; callers must not mutate it."""
        self._check(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return self.is_live(u) and v in self._adj[u]

    def edges(self) -> list[Edge]:
        return [
            (u, v) for u in self.vertices() for v in sorted(self._adj[u]) if u < v
        ]

    def number_of_edges(self) -> int:
        return sum(len(self._adj[v]) for v in self.vertices()) // 2

    def is_marked(self, u: int, v: int) -> bool:
        return _pair(u, v) in self._marks

    def marked_edges(self) -> list[Edge]:
        return sorted(self._marks)

    def marked_neighbors(self, v: int) -> list[int]:
        self._check(v)
        return [u for u in sorted(self._adj[v]) if _pair(u, v) in self._marks]

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(b in self._adj[a] for a, b in combinations(vs, 2))

    def to_networkx(self, vertices: Iterable[int] | None = None) -> nx.Graph:
        """Copy the live graph, or the subgraph induced by ``vertices``, into networkx."""
        keep = set(self.vertices()) if vertices is None else set(vertices)
        g = nx.Graph()
        g.add_nodes_from(sorted(keep))
        g.add_edges_from(
            (u, v) for u, v in self.edges() if u in keep and v in keep
        )
        return g

    # -- mutation ----------------------------------------------------------------

    def add_vertex(self) -> int:
        self._adj.append(set())
        self._alive.append(True)
        v = len(self._adj) - 1
        self._log("add_vertex", v)
        return v

    def add_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        if u == v:
            raise GraphError(f"Loop at vertex {u} is not allowed")
        if v in self._adj[u]:
            return
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._log("add_edge", u, v)

    def remove_edge(self, u: int, v: int) -> None:
        if not self.has_edge(u, v):
            raise GraphError(f"Edge {u} {v} does not exist")
        marked = self.is_marked(u, v)
        if marked:
            self._marks.discard(_pair(u, v))
        self._adj[u].discard(v)
        self._adj[v].discard(u)
        self._log("remove_edge", u, v, marked)

    def mark(self, u: int, v: int) -> None:
        if not self.has_edge(u, v):
            raise GraphError(f"Cannot mark {u} {v}: not an edge")
        if _pair(u, v) in self._marks:
            return
        self._marks.add(_pair(u, v))
        self._log("mark", u, v)

    def unmark(self, u: int, v: int) -> None:
        if _pair(u, v) not in self._marks:
            return
        self._marks.discard(_pair(u, v))
        self._log("unmark", u, v)

    def delete_vertex(self, v: int) -> None:
        self._check(v)
        nbrs = sorted(self._adj[v])
        marked = [u for u in nbrs if _pair(u, v) in self._marks]
        for u in nbrs:
            self._adj[u].discard(v)
            self._marks.discard(_pair(u, v))
        self._adj[v] = set()
        self._alive[v] = False
        self._log("delete_vertex", v, nbrs, marked)

    def undo(self, entry: tuple) -> None:
        """Reverse a single journal entry. Only called by :meth:`Instance.rollback`."""
        op, *args = entry
        if op == "add_vertex":
            self._adj.pop()
            self._alive.pop()
        elif op == "add_edge":
            u, v = args
            self._adj[u].discard(v)
            self._adj[v].discard(u)
        elif op == "remove_edge":
            u, v, marked = args
            self._adj[u].add(v)
            self._adj[v].add(u)
            if marked:
                self._marks.add(_pair(u, v))
        elif op == "mark":
            self._marks.discard(_pair(*args))
        elif op == "unmark":
            self._marks.add(_pair(*args))
        elif op == "delete_vertex":
            v, nbrs, marked = args
            self._alive[v] = True
            self._adj[v] = set(nbrs)
            for u in nbrs:
                self._adj[u].add(v)
            for u in marked:
                self._marks.add(_pair(u, v))
        else:
            raise GraphError(f"Unknown journal entry {op!r}")

    def copy(self) -> "Graph":
        other = Graph()
        other._adj = [set(a) for a in self._adj]
        other._alive = list(self._alive)
        other._marks = set(self._marks)
        return other

    def _check(self, v: int) -> None:
        if not self.is_live(v):
            raise GraphError(f"Vertex {v} is dead or unknown")

    def _log(self, *entry) -> None:
        if self.journal is not None:
            self.journal.append(("graph", *entry))


class Instance:
    """
    A (generalized) SFVS instance: graph, terminal set, marked edges (held by the
    graph) and budget ``k``.

    ``checkpoint`` returns a token and ``rollback`` restores the exact state at that
    token, covering graph edits, terminal changes and budget changes.
    """

    def __init__(self, graph: Graph, terminals: Iterable[int] = (), k: int = 0):
        self.graph = graph
        self.terminals: set[int] = set(terminals)
        self.k = k
        self._journal: list = []
        graph.journal = self._journal
        for t in self.terminals:
            if not graph.is_live(t):
                raise GraphError(f"Terminal {t} is not a live vertex")

    # -- undo ----------------------------------------------------------------------

    def checkpoint(self) -> int:
        return len(self._journal)

    def rollback(self, token: int) -> None:
        while len(self._journal) > token:
            entry = self._journal.pop()
            kind, *rest = entry
            if kind == "graph":
                self.graph.undo(tuple(rest))
            elif kind == "budget":
                self.k = rest[0]
            elif kind == "terminal_add":
                self.terminals.discard(rest[0])
            elif kind == "terminal_remove":
                self.terminals.add(rest[0])

    # -- queries -------------------------------------------------------------------

    def is_terminal(self, v: int) -> bool:
        return v in self.terminals

    def live_terminals(self) -> list[int]:
        return sorted(t for t in self.terminals if self.graph.is_live(t))

    def nonterminals(self) -> list[int]:
        return [v for v in self.graph.vertices() if v not in self.terminals]

    def marked_neighbors(self, v: int) -> list[int]:
        return self.graph.marked_neighbors(v)

    def canonical(self) -> tuple:
        """Id-preserving structural fingerprint used for equality checks."""
        return (
            tuple(self.graph.vertices()),
            tuple(self.graph.edges()),
            tuple(self.live_terminals()),
            tuple(self.graph.marked_edges()),
            self.k,
        )

    # -- mutation ------------------------------------------------------------------

    def set_budget(self, k: int) -> None:
        self._journal.append(("budget", self.k))
        self.k = k

    def add_vertex(self, terminal: bool = False) -> int:
        v = self.graph.add_vertex()
        if terminal:
            self.terminals.add(v)
            self._journal.append(("terminal_add", v))
        return v

    def delete(self, vertices: Iterable[int], dec: int = 0) -> None:
        for v in sorted(set(vertices)):
            self.graph.delete_vertex(v)
            if v in self.terminals:
                self.terminals.discard(v)
                self._journal.append(("terminal_remove", v))
        if dec:
            self.set_budget(self.k - dec)

    def copy(self) -> "Instance":
        return Instance(self.graph.copy(), self.live_terminals(), self.k)

    def induced(self, vertices: Iterable[int], k: int | None = None) -> "Instance":
        """
        The sub-instance induced by ``vertices``, keeping vertex ids.

        Marked edges and terminals are restricted to the kept vertices.
        """
        keep = set(vertices)
        g = self.graph.copy()
        for v in g.vertices():
            if v not in keep:
                g.delete_vertex(v)
        return Instance(
            g,
            [t for t in self.live_terminals() if t in keep],
            self.k if k is None else k,
        )

    def __repr__(self) -> str:
        return (
            f"Instance(n={len(self.graph)}, m={self.graph.number_of_edges()}, "
            f"|T|={len(self.live_terminals())}, |M|={len(self.graph.marked_edges())}, k={self.k})"
        )


def t_triangles_at(inst: Instance, v: int) -> list[Edge]:
    """Pairs ``(a, b)`` such that ``v, a, b`` is a T-triangle, ascending."""
    g = inst.graph
    nbrs = g.neighbors(v)
    v_terminal = v in inst.terminals
    out = []
    for i, a in enumerate(nbrs):
        adj_a = g.neighbor_set(a)
        for b in nbrs[i + 1 :]:
            if b in adj_a and (
                v_terminal or a in inst.terminals or b in inst.terminals
            ):
                out.append((a, b))
    return out


def enumerate_t_triangles(inst: Instance) -> list[tuple[int, int, int]]:
    """
    Every triangle containing at least one terminal, as ascending triples in
    ascending lexicographic order.
    """
    g = inst.graph
    triangles = []
    for a in g.vertices():
        higher = [b for b in g.neighbors(a) if b > a]
        for i, b in enumerate(higher):
            adj_b = g.neighbor_set(b)
            for c in higher[i + 1 :]:
                if c in adj_b and (
                    a in inst.terminals or b in inst.terminals or c in inst.terminals
                ):
                    triangles.append((a, b, c))
    return triangles


def find_violation(inst: Instance, solution: Iterable[int], mode: Mode = "triangle") -> str | None:
    """
    Describe the first constraint ``solution`` leaves unsatisfied, or None.

    Raises
    ------
    GraphError
        If the solution names a dead or unknown vertex.
    """
    S = set(solution)
    for v in sorted(S):
        if not inst.graph.is_live(v):
            raise GraphError(f"Solution vertex {v} is dead or unknown")

    for u, v in inst.graph.marked_edges():
        if u not in S and v not in S:
            return f"uncovered marked edge {u} {v}"

    if mode == "triangle":
        for a, b, c in enumerate_t_triangles(inst):
            if a not in S and b not in S and c not in S:
                return f"T-triangle {a} {b} {c} survives"
        return None

    if mode != "cycle":
        raise ValueError(f"Unknown verification mode {mode!r}")

    rest = inst.graph.to_networkx([v for v in inst.graph.vertices() if v not in S])
    for block in nx.biconnected_components(rest):
        if len(block) >= 3:
            on_cycle = sorted(t for t in block if t in inst.terminals)
            if on_cycle:
                return f"terminal {on_cycle[0]} lies on a cycle"
    return None


def verify_solution(inst: Instance, solution: Iterable[int], mode: Mode = "triangle") -> bool:
    """
    Check that ``solution`` hits every T-triangle (``mode="triangle"``) or leaves no
    terminal on a cycle (``mode="cycle"``), and covers every marked edge.

    The budget is not checked here.
    """
    return find_violation(inst, solution, mode) is None


def delete_vertices(inst: Instance, vertices: Iterable[int], dec: int = 0) -> int:
    """
    Delete ``vertices`` with their edges and marks, decreasing ``k`` by ``dec``.

    Returns an undo token; ``inst.rollback(token)`` restores the prior state.
    """
    token = inst.checkpoint()
    inst.delete(vertices, dec)
    return token
