# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""
Chordal instances with planted shapes that drive the solver into particular rules.

Each planter builds its shape from a seeded generator and relabels the vertices at
random. :func:`gen_structured` checks that the shape does what it is planted for and
re-seeds from a derived seed until it does.
"""

import logging
import random
from collections.abc import Callable, Hashable, Iterable
from itertools import combinations

from ..graph.core import Graph, Instance
from ..solvers.chordal import find_dividing_separator, solve_chordal
from .random import GeneratorError

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 20

Planter = Callable[..., Instance]


def _assemble(
    names: Iterable[Hashable],
    edges: Iterable[tuple[Hashable, Hashable]],
    terminals: Iterable[Hashable],
    marks: Iterable[tuple[Hashable, Hashable]],
    k: int,
    rng: random.Random,
) -> Instance:
    order = list(names)
    rng.shuffle(order)
    ids = {name: i for i, name in enumerate(order, start=1)}
    g = Graph(len(order))
    for a, b in edges:
        g.add_edge(ids[a], ids[b])
    for a, b in marks:
        g.mark(ids[a], ids[b])
    return Instance(g, [ids[t] for t in terminals], k)


def _clique(names: list) -> list[tuple]:
    return list(combinations(names, 2))


def _pick(rng: random.Random, value: int | None, low: int, high: int) -> int:
    return rng.randint(low, high) if value is None else value


def plant_fish(
    rng: random.Random, ell: int | None = None, tails: int | None = None, k: int = 4
) -> Instance:
    """
    A hub terminal on two cliques ``{hub, v1..v_ell}`` and ``{hub, v2..v_ell, a, b}``
    with the edge hub-v1 marked, ``tails`` terminals each on ``v1`` and at least two of
    ``v2..v_ell``, and a terminal on ``a, b, v2``.
    """
    ell = _pick(rng, ell, 3, 5)
    tails = _pick(rng, tails, 3, 5)
    if ell < 3 or tails < 3:
        raise GeneratorError("fish needs ell >= 3 and tails >= 3")
    vs = [f"v{i}" for i in range(1, ell + 1)]
    names = ["hub", *vs, "a", "b", "s"] + [f"t{j}" for j in range(1, tails + 1)]
    edges = _clique(["hub", *vs]) + _clique(["hub", *vs[1:], "a", "b"])
    edges += [("s", "a"), ("s", "b"), ("s", "v2")]
    for j in range(1, tails + 1):
        chosen = rng.sample(vs[1:], rng.randint(2, ell - 1))
        edges += [(f"t{j}", v) for v in ["v1", *chosen]]
    terminals = ["hub", "s"] + [f"t{j}" for j in range(1, tails + 1)]
    return _assemble(names, edges, terminals, [("hub", "v1")], k, rng)


def plant_separator1(rng: random.Random, blobs: int | None = None, k: int = 4) -> Instance:
    """Copies of a five-vertex blob hanging off a single cut vertex."""
    blobs = _pick(rng, blobs, 2, 3)
    if blobs < 2:
        raise GeneratorError("separator1 needs at least two blobs")
    names, edges, terminals = ["v"], [], []
    for i in range(blobs):
        c1, c2, c3, t1, t2 = (f"{x}_{i}" for x in ("c1", "c2", "c3", "t1", "t2"))
        names += [c1, c2, c3, t1, t2]
        edges += _clique(["v", c1, c2, c3])
        edges += [(t1, c1), (t1, c2), (t1, c3), (t2, "v"), (t2, c1), (t2, c2)]
        terminals += [t1, t2]
    return _assemble(names, edges, terminals, [], k, rng)


def plant_separator2(rng: random.Random, blobs: int | None = None, k: int = 4) -> Instance:
    """Copies of a five-vertex blob hanging off a single cut edge ``uv``."""
    blobs = _pick(rng, blobs, 2, 3)
    if blobs < 2:
        raise GeneratorError("separator2 needs at least two blobs")
    names, edges, terminals = ["u", "v"], [("u", "v")], []
    for i in range(blobs):
        c1, c2, c3, t1, t2 = (f"{x}_{i}" for x in ("c1", "c2", "c3", "t1", "t2"))
        names += [c1, c2, c3, t1, t2]
        edges += _clique(["u", "v", c1, c2])
        edges += [(c3, "u"), (c3, c1), (c3, c2)]
        edges += [(t1, c1), (t1, c2), (t1, c3), (t2, "u"), (t2, "v"), (t2, c1)]
        terminals += [t1, t2]
    return _assemble(names, edges, terminals, [], k, rng)


def plant_inner_terminal(
    rng: random.Random, core: int | None = None, petals: int | None = None, k: int = 4
) -> Instance:
    """
    A hub terminal joined to a core clique, with petals on distinct core pairs: a
    non-terminal on the hub and the pair, and a terminal on that non-terminal and
    the pair.
    """
    core = _pick(rng, core, 3, 5)
    pairs = list(combinations(range(1, core + 1), 2))
    petals = _pick(rng, petals, 2, min(4, len(pairs)))
    if core < 3 or not 2 <= petals <= len(pairs):
        raise GeneratorError(
            f"inner_terminal needs core >= 3 and 2 <= petals <= {len(pairs)}"
        )
    vs = [f"v{i}" for i in range(1, core + 1)]
    names, edges, terminals = ["hub", *vs], _clique(["hub", *vs]), ["hub"]
    for i, (a, b) in enumerate(rng.sample(pairs, petals)):
        va, vb, u, s = f"v{a}", f"v{b}", f"u{i}", f"s{i}"
        names += [u, s]
        edges += [(u, "hub"), (u, va), (u, vb), (s, u), (s, va), (s, vb)]
        terminals.append(s)
    return _assemble(names, edges, terminals, [], k, rng)


def _fires(rule: str) -> Callable[[Instance], bool]:
    def check(inst: Instance) -> bool:
        return solve_chordal(inst).stats.rules[rule] > 0

    return check


PLANTERS: dict[str, tuple[Planter, Callable[[Instance], bool]]] = {
    "fish": (plant_fish, _fires("chordal.step13")),
    "separator1": (plant_separator1, _fires("chordal.step8")),
    "separator2": (plant_separator2, _fires("chordal.step8")),
    "inner_terminal": (
        plant_inner_terminal,
        lambda inst: find_dividing_separator(inst) is not None,
    ),
}


def gen_structured(kind: str, params: dict | None = None, seed: int = 0) -> Instance:
    """
    Generate an instance of the planted shape ``kind``.

    Parameters
    ----------
    kind: str
        One of ``fish``, ``separator1``, ``separator2`` and ``inner_terminal``
    params: dict, optional
        Keyword parameters of the planter, e.g. ``{"tails": 4, "k": 5}``
    seed: int
        Seed; retries use seeds derived from it

    Raises
    ------
    GeneratorError
        If the kind or a parameter is unknown or out of range, or the shape could
        not be planted within ``MAX_ATTEMPTS`` attempts
    """
    try:
        planter, check = PLANTERS[kind]
    except KeyError:
        raise GeneratorError(
            f"Unknown structured kind {kind!r}; expected one of {sorted(PLANTERS)}"
        )
    params = dict(params or {})
    if params.get("k", 0) < 0:
        raise GeneratorError(f"k must be non-negative, got {params['k']}")

    for attempt in range(MAX_ATTEMPTS):
        rng = random.Random(f"{kind}:{seed}:{attempt}")
        try:
            inst = planter(rng, **params)
        except TypeError as exc:
            raise GeneratorError(f"Bad parameters for {kind}: {exc}")
        if check(inst):
            return inst
        logger.debug("%s attempt %d did not plant the shape", kind, attempt)
    raise GeneratorError(f"Could not plant {kind} in {MAX_ATTEMPTS} attempts")
