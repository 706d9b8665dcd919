# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

""" Seeded generators of chordal and split instances """

from .random import GeneratorError, gen_chordal, gen_split
from .structured import PLANTERS, gen_structured

KINDS = ["chordal", "split", *PLANTERS]

__all__ = ["KINDS", "GeneratorError", "gen_chordal", "gen_split", "gen_structured", "generate"]


def generate(kind: str, params: dict | None = None, seed: int = 0):
    """
    Generate an instance of any ``kind`` in :data:`KINDS` from keyword ``params``.

    Raises
    ------
    GeneratorError
        If the kind is unknown or the parameters do not fit it
    """
    params = dict(params or {})
    if kind == "chordal":
        factory = gen_chordal
    elif kind == "split":
        factory = gen_split
    else:
        return gen_structured(kind, params, seed)
    try:
        return factory(seed=seed, **params)
    except TypeError as exc:
        raise GeneratorError(f"Bad parameters for {kind}: {exc}")
