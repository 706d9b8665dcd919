# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

""" Bundled JSON schemas for solver options and benchmark suites """
