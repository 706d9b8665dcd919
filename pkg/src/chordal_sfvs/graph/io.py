# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""
Reading and writing the line-oriented instance and solution formats
"""

from collections.abc import Iterable
from pathlib import Path

from .core import Graph, Instance


class InstanceFormatError(Exception):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(f"{prefix}{message}")


def _ints(fields: list[str], count: int, lineno: int) -> list[int]:
    if len(fields) != count:
        raise InstanceFormatError(
            f"expected {count} integer field(s), got {len(fields)}", lineno
        )
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise InstanceFormatError(f"non-integer field in {' '.join(fields)!r}", lineno)


def parse_instance(text: str) -> Instance:
    """
    Parse an instance from text.

    Records are ``p sfvs <n> <m>`` (first), ``k <k>`` (once), ``e <u> <v>``,
    ``t <v>`` and ``m <u> <v>``. Blank lines and ``#`` comments are ignored.

    Raises
    ------
    InstanceFormatError
        On any malformed record, naming the offending line.
    """
    graph: Graph | None = None
    n = m = 0
    k: int | None = None
    terminals: set[int] = set()
    marks: list[tuple[int, int, int]] = []
    n_edges = 0

    def vertex(v: int, lineno: int) -> int:
        if not 1 <= v <= n:
            raise InstanceFormatError(f"vertex {v} outside 1..{n}", lineno)
        return v

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *fields = line.split()

        if graph is None:
            if tag != "p" or len(fields) != 3 or fields[0] != "sfvs":
                raise InstanceFormatError(
                    "expected header 'p sfvs <n> <m>' before any other record", lineno
                )
            n, m = _ints(fields[1:], 2, lineno)
            if n < 0 or m < 0:
                raise InstanceFormatError("negative vertex or edge count", lineno)
            graph = Graph(n)
            continue

        if tag == "p":
            raise InstanceFormatError("duplicate header", lineno)
        elif tag == "k":
            if k is not None:
                raise InstanceFormatError("duplicate budget record", lineno)
            (k,) = _ints(fields, 1, lineno)
        elif tag == "e":
            u, v = (vertex(x, lineno) for x in _ints(fields, 2, lineno))
            if u == v:
                raise InstanceFormatError(f"loop at vertex {u}", lineno)
            if graph.has_edge(u, v):
                raise InstanceFormatError(f"duplicate edge {u} {v}", lineno)
            graph.add_edge(u, v)
            n_edges += 1
        elif tag == "t":
            (v,) = _ints(fields, 1, lineno)
            terminals.add(vertex(v, lineno))
        elif tag == "m":
            u, v = (vertex(x, lineno) for x in _ints(fields, 2, lineno))
            marks.append((u, v, lineno))
        else:
            raise InstanceFormatError(f"unknown record type {tag!r}", lineno)

    if graph is None:
        raise InstanceFormatError("missing header 'p sfvs <n> <m>'", 1)
    if k is None:
        raise InstanceFormatError("missing budget record 'k <k>'")
    if n_edges != m:
        raise InstanceFormatError(f"header declares {m} edges but {n_edges} given")
    for u, v, lineno in marks:
        if not graph.has_edge(u, v):
            raise InstanceFormatError(f"marked pair {u} {v} is not an edge", lineno)
        graph.mark(u, v)

    return Instance(graph, terminals, k)


def read_instance(path: str | Path) -> Instance:
    return parse_instance(Path(path).read_text())


def serialize_instance(inst: Instance) -> str:
    """
    Canonical text form: live vertices are renumbered ``1..n`` in ascending id order,
    then edges, terminals and marks follow in ascending order.
    """
    g = inst.graph
    index = {v: i for i, v in enumerate(g.vertices(), start=1)}
    edges = sorted(_renumber(g.edges(), index))
    lines = [f"p sfvs {len(index)} {len(edges)}", f"k {inst.k}"]
    lines += [f"e {u} {v}" for u, v in edges]
    lines += [f"t {index[t]}" for t in inst.live_terminals()]
    lines += [f"m {u} {v}" for u, v in sorted(_renumber(g.marked_edges(), index))]
    return "\n".join(lines) + "\n"


def _renumber(pairs: Iterable[tuple[int, int]], index: dict[int, int]):
    for u, v in pairs:
        a, b = index[u], index[v]
        yield (a, b) if a < b else (b, a)


def write_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(serialize_instance(inst))


def parse_solution(text: str) -> frozenset[int] | None:
    """
    Parse a solution: one vertex id per line, or the single token ``NO`` (returns None).
    """
    ids: list[int] = []
    no = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "NO":
            no = True
            continue
        try:
            ids.append(int(line))
        except ValueError:
            raise InstanceFormatError(f"expected a vertex id or NO, got {line!r}", lineno)
    if no:
        if ids:
            raise InstanceFormatError("solution lists vertices and NO together")
        return None
    return frozenset(ids)


def serialize_solution(solution: Iterable[int] | None) -> str:
    if solution is None:
        return "NO\n"
    return "".join(f"{v}\n" for v in sorted(solution))
