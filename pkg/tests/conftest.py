# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

from pathlib import Path

import pytest
from pytest import fixture

from chordal_sfvs.graph.core import Graph, Instance
from chordal_sfvs.solvers.dm import BipartiteGraph

here = Path(__file__).parent


def build(names, edges, terminals=(), marks=(), k=0):
    """
    Build an instance from named vertices; ids follow the order of ``names``.

    Returns the instance and the name-to-id map.
    """
    ids = {name: i for i, name in enumerate(names, start=1)}
    g = Graph(len(names))
    for a, b in edges:
        g.add_edge(ids[a], ids[b])
    for a, b in marks:
        g.mark(ids[a], ids[b])
    return Instance(g, [ids[t] for t in terminals], k), ids


@fixture(scope="session")
def test_data():
    return Path(here / "data")


@fixture(scope="session")
def live_config_dir():
    return Path(here).parent / "config"


@fixture
def dm_bipartite():
    """Bipartite graph with a known Dulmage-Mendelsohn decomposition."""
    ids = {f"u{i}": i for i in range(1, 8)} | {f"v{i}": 7 + i for i in range(1, 8)}
    pairs = [
        ("u1", "v1"), ("u2", "v2"), ("u3", "v3"), ("u4", "v5"), ("u5", "v6"), ("u6", "v4"),
        ("u1", "v2"), ("u2", "v1"), ("u2", "v4"), ("u3", "v4"), ("u4", "v2"), ("u4", "v3"),
        ("u5", "v3"), ("u4", "v4"), ("u7", "v4"), ("u4", "v6"), ("u5", "v5"), ("u5", "v7"),
    ]  # fmt: skip
    f = BipartiteGraph(
        [ids[f"u{i}"] for i in range(1, 8)],
        [ids[f"v{i}"] for i in range(1, 8)],
        [(ids[a], ids[b]) for a, b in pairs],
    )
    return f, ids


@fixture
def good_split():
    """
    Good split instance with ``A = {t1, t2, t3}``; deleting ``v`` lets the DM reduction
    remove ``t2, t3`` and commit ``u3, u4``.
    """
    terminals = [f"t{i}" for i in range(1, 7)]
    clique = ["u1", "u2", "u3", "u4", "v", "u6"]
    marks = [
        ("t1", "u1"), ("t1", "u2"), ("t1", "u3"), ("t1", "u4"), ("t2", "u3"), ("t2", "v"),
        ("t3", "u3"), ("t3", "u4"), ("t3", "v"), ("t5", "u6"),
    ]  # fmt: skip
    plain = [("t4", "u4"), ("t4", "v"), ("t5", "u4"), ("t6", "v"), ("t6", "u6")]
    edges = marks + plain
    edges += [(a, b) for i, a in enumerate(clique) for b in clique[i + 1 :]]
    return build(terminals + clique, edges, terminals, marks, k=4)


@fixture
def clique_split():
    """
    Split instance whose non-terminals form a clique; hiding ``v`` makes the DM
    reduction delete ``t2, t3, t4`` and commit ``u3, u4, u5``.
    """
    terminals = [f"t{i}" for i in range(1, 7)]
    clique = [f"u{i}" for i in range(1, 8)] + ["v"]
    marks = [
        ("t1", "u1"), ("t1", "u2"), ("t1", "u3"), ("t2", "u3"), ("t2", "u4"), ("t4", "u5"),
        ("t5", "v"),
    ]  # fmt: skip
    plain = [
        ("t3", "u4"), ("t3", "u5"), ("t3", "v"), ("t4", "u4"), ("t4", "v"), ("t5", "u4"),
        ("t5", "u5"), ("t6", "v"), ("t6", "u6"), ("t6", "u7"),
    ]  # fmt: skip
    edges = marks + plain
    edges += [(a, b) for i, a in enumerate(clique) for b in clique[i + 1 :]]
    return build(terminals + clique, edges, terminals, marks, k=6)


@fixture
def inner_terminal_chordal():
    """
    Chordal instance with inner terminal ``th`` whose dividing separator is
    ``{th, v1, v2}``.
    """
    names = ["th", "v1", "v2", "v3", "v4", "u1", "u2", "u3", "t1", "t2", "t3", "t4"]
    vs = ["v1", "v2", "v3", "v4"]
    edges = [(a, b) for i, a in enumerate(["th", *vs]) for b in vs[i:] if a != b]
    edges += [
        ("u1", "th"), ("u1", "v1"), ("u1", "v2"),
        ("u2", "th"), ("u2", "v1"), ("u2", "v3"),
        ("u3", "th"), ("u3", "v2"), ("u3", "v4"),
        ("t1", "v1"), ("t1", "v3"), ("t1", "u2"),
        ("t2", "v2"), ("t2", "v4"), ("t2", "u3"),
        ("t3", "v1"), ("t3", "v3"), ("t3", "v4"),
        ("t4", "v2"), ("t4", "v3"), ("t4", "v4"),
    ]  # fmt: skip
    marks = [("th", "v2"), ("u2", "t1"), ("v4", "t4")]
    return build(names, edges, ["th", "t1", "t2", "t3", "t4"], marks, k=4)


@fixture
def triangle():
    """One T-triangle on a terminal and two non-terminals."""
    return build(["t", "a", "b"], [("t", "a"), ("t", "b"), ("a", "b")], ["t"], k=1)


def pytest_addoption(parser):
    parser.addoption(
        "--suite",
        action="store_true",
        default=False,
        help="Run the acceptance-size randomized suites",
        dest="suite",
    )


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "suite: acceptance-size randomized suite, only run with --suite"
    )


def pytest_collection_modifyitems(config, items):
    """
    Skip the acceptance-size suites unless ``--suite`` is given.
    """
    if config.getoption("suite"):
        return
    skip = pytest.mark.skip(reason="acceptance-size suite; pass --suite to run")
    for item in items:
        if "suite" in item.keywords:
            item.add_marker(skip)


@fixture
def build_instance():
    """The :func:`build` helper, for tests that assemble their own named instances."""
    return build
