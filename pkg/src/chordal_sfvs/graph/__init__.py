# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

""" Graphs with terminals and marked edges, their text formats, and chordal structure """

from .core import (
    Graph,
    GraphError,
    Instance,
    delete_vertices,
    enumerate_t_triangles,
    find_violation,
    verify_solution,
)
from .io import InstanceFormatError, parse_instance, serialize_instance

__all__ = [
    "Graph",
    "GraphError",
    "Instance",
    "InstanceFormatError",
    "delete_vertices",
    "enumerate_t_triangles",
    "find_violation",
    "parse_instance",
    "serialize_instance",
    "verify_solution",
]
