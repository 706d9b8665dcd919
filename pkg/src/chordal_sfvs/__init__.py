# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

__version__ = "0.1.0"

SOLVER_OPTIONS_SCHEMA = "data/solver_options_schema.json"
SUITE_SCHEMA = "data/suite_schema.json"
