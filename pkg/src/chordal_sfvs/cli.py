# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""Command line interfaces for chordal-sfvs"""

import argparse
import json
import logging
import sys
import warnings
from collections.abc import Callable, Sequence
from pathlib import Path

import jsonschema
import pandas as pd
import yaml

from . import SUITE_SCHEMA
from .generators import KINDS, GeneratorError, generate
from .graph.chordal import ChordalityError, NotSplitError, is_chordal, is_split
from .graph.core import GraphError, Instance, find_violation
from .graph.io import (
    InstanceFormatError,
    parse_solution,
    read_instance,
    serialize_instance,
    serialize_solution,
)
from .solvers import (
    BRANCHING_BASE,
    PreconditionError,
    SolveOutcome,
    SolverOptions,
    minimize,
    solve_chordal,
    solve_oracle,
    solve_split,
    solve_split_exact,
)
from .utils import get_jsonschema, load_config_yaml

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

ALGORITHMS: dict[str, Callable[[Instance, SolverOptions | None], SolveOutcome]] = {
    "whole": solve_chordal,
    "split": solve_split,
    "exact-split": solve_split_exact,
    "oracle": solve_oracle,
}
ALGORITHM_CHOICES = ["auto", *ALGORITHMS]

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

PRECONDITION_ERRORS = (PreconditionError, ChordalityError, NotSplitError)

logger = logging.getLogger(__name__)


class SuiteError(Exception):
    pass


def _configure_logging(verbosity: int) -> None:
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(verbosity, 2)]
    logging.basicConfig(level=level, format=LOG_FORMAT)


def _add_verbosity(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log more detail to stderr: -v for progress, -vv for every rule firing.",
    )


def _resolve(algo: str, inst: Instance) -> str:
    """
    Map ``auto`` to a concrete algorithm: split when the graph is split, otherwise
    the chordal solver.

    Raises
    ------
    ChordalityError
        If ``algo`` is ``auto`` and the graph is not chordal
    """
    if algo != "auto":
        return algo
    if is_split(inst.graph):
        return "split"
    if is_chordal(inst.graph)[0]:
        return "whole"
    raise ChordalityError("Graph is neither split nor chordal")


def run_algorithm(
    algo: str, inst: Instance, mode: str = "decide", options: SolverOptions | None = None
) -> SolveOutcome:
    """
    Solve ``inst`` with a named algorithm from :data:`ALGORITHMS` (or ``auto``), either
    deciding at budget ``k`` or minimizing up to it.
    """
    solver = ALGORITHMS[_resolve(algo, inst)]
    if mode == "minimize":
        return minimize(solver, inst, cap=inst.k, options=options)
    return solver(inst, options)


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def solve(argv: Sequence[str] | None = None) -> int:
    """
    Solve an instance file and print YES or NO, followed by the solution vertices.
    """

    parser = argparse.ArgumentParser(
        description="Solve a subset feedback vertex set instance on a chordal or split graph."
    )
    parser.add_argument("instance", help="Path to the instance file.")
    parser.add_argument(
        "--algo",
        choices=ALGORITHM_CHOICES,
        default="auto",
        help=(
            "Algorithm to run. 'auto' uses the split solver on split graphs and the "
            "chordal solver otherwise. Defaults to 'auto'."
        ),
    )
    parser.add_argument(
        "--mode",
        choices=["decide", "minimize"],
        default="decide",
        help=(
            "'decide' answers whether a solution of size at most k exists; 'minimize' "
            "finds a smallest solution of size at most k. Defaults to 'decide'."
        ),
    )
    parser.add_argument(
        "--stats",
        action="store_true",
        help="Print search statistics as JSON on a final line prefixed with 'STATS: '.",
    )
    parser.add_argument(
        "--solution-out",
        type=str,
        default=None,
        help="Write the solution (or NO) to this file.",
    )
    parser.add_argument(
        "--options",
        type=str,
        default=None,
        help="YAML file of solver options, validated against the solver options schema.",
    )
    _add_verbosity(parser)

    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        inst = read_instance(args.instance)
        options = SolverOptions.from_yaml(args.options) if args.options else None
    except InstanceFormatError as exc:
        return _fail(f"{args.instance}: {exc}", EXIT_USAGE)
    except jsonschema.ValidationError as exc:
        return _fail(f"invalid solver options:{exc.message}", EXIT_USAGE)
    except OSError as exc:
        return _fail(str(exc), EXIT_USAGE)

    try:
        outcome = run_algorithm(args.algo, inst, args.mode, options)
    except PRECONDITION_ERRORS as exc:
        return _fail(str(exc), EXIT_PRECONDITION)

    logger.info("%s: %s after %d nodes", args.instance, outcome.answer.value, outcome.stats.nodes)
    print(outcome.answer.value)
    if outcome:
        print(serialize_solution(outcome.solution), end="")
    if args.solution_out:
        Path(args.solution_out).write_text(serialize_solution(outcome.solution))
    if args.stats:
        print("STATS: " + json.dumps(outcome.stats.to_dict(), sort_keys=True))
    return EXIT_YES if outcome else EXIT_NO


def verify(argv: Sequence[str] | None = None) -> int:
    """
    Check a solution file against an instance file.
    """

    parser = argparse.ArgumentParser(description="Verify a solution of an instance.")
    parser.add_argument("instance", help="Path to the instance file.")
    parser.add_argument("solution", help="Path to the solution file.")
    parser.add_argument(
        "--mode",
        choices=["triangle", "cycle"],
        default="triangle",
        help=(
            "'triangle' requires every triangle with a terminal to be hit; 'cycle' "
            "requires no terminal to remain on a cycle. Defaults to 'triangle'."
        ),
    )
    _add_verbosity(parser)

    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        inst = read_instance(args.instance)
        solution = parse_solution(Path(args.solution).read_text())
    except InstanceFormatError as exc:
        return _fail(str(exc), EXIT_USAGE)
    except OSError as exc:
        return _fail(str(exc), EXIT_USAGE)

    if solution is None:
        print("REJECTED: the solution file claims no solution exists")
        return EXIT_NO
    try:
        violation = find_violation(inst, solution, args.mode)
    except GraphError as exc:
        violation = str(exc)
    if violation is None and len(solution) > inst.k:
        violation = f"solution has {len(solution)} vertices but k = {inst.k}"
    if violation is not None:
        print(f"REJECTED: {violation}")
        return EXIT_NO
    print("ACCEPTED")
    return EXIT_YES


def _parse_params(pairs: Sequence[str]) -> dict:
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise GeneratorError(f"Expected KEY=VALUE, got {pair!r}")
        params[key] = yaml.safe_load(value)
    return params


def gen(argv: Sequence[str] | None = None) -> int:
    """
    Generate a seeded random or structured instance.
    """

    parser = argparse.ArgumentParser(description="Generate an instance.")
    parser.add_argument("kind", choices=KINDS, help="Instance family to generate.")
    parser.add_argument(
        "--seed", type=int, default=0, help="Seed of the generator. Defaults to 0."
    )
    parser.add_argument(
        "-p",
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Generator parameter, e.g. '-p n=12 -p density=0.4'. May be repeated.",
    )
    parser.add_argument(
        "-o",
        "--output",
        type=str,
        default=None,
        help="Write the instance here instead of standard output.",
    )
    _add_verbosity(parser)

    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        inst = generate(args.kind, _parse_params(args.param), args.seed)
    except GeneratorError as exc:
        return _fail(str(exc), EXIT_USAGE)

    text = serialize_instance(inst)
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="")
    return EXIT_YES


def load_suite(target: str | Path) -> tuple[list[tuple[str, Instance]], dict]:
    """
    Load the instances of a benchmark: a directory of ``.sfvs`` files, or a suite YAML
    file listing instance paths and generator entries.

    Returns
    -------
    (list of (str, Instance), dict)
        Named instances and the suite configuration (empty for a directory)

    Raises
    ------
    SuiteError
        If the target does not exist, the suite file is invalid, or an entry cannot
        be read or generated
    """
    target = Path(target)
    if target.is_dir():
        try:
            return [(p.name, read_instance(p)) for p in sorted(target.glob("*.sfvs"))], {}
        except InstanceFormatError as exc:
            raise SuiteError(f"Unreadable instance in {target}: {exc}")
    if not target.is_file():
        raise SuiteError(f"No such suite directory or file: {target}")

    try:
        config = load_config_yaml(target, get_jsonschema(SUITE_SCHEMA))
    except jsonschema.ValidationError as exc:
        raise SuiteError(f"Failed to validate suite {target}:{exc.message}")
    except yaml.YAMLError as exc:
        raise SuiteError(f"Suite {target} is not valid YAML: {exc}")

    instances = []
    for entry in config["instances"]:
        try:
            if isinstance(entry, str):
                instances.append((entry, read_instance(target.parent / entry)))
            else:
                name = f"{entry['kind']}-{entry['seed']}"
                instances.append((name, generate(entry["kind"], entry.get("params"), entry["seed"])))
        except (InstanceFormatError, GeneratorError, OSError) as exc:
            raise SuiteError(f"Bad suite entry {entry!r}: {exc}")
    return instances, config


def run_bench(
    instances: Sequence[tuple[str, Instance]],
    algorithms: Sequence[str],
    mode: str = "decide",
    options: SolverOptions | None = None,
) -> tuple[pd.DataFrame, list[str]]:
    """
    Solve every instance with every algorithm.

    Returns
    -------
    (pandas.DataFrame, list of str)
        One row per instance and algorithm, and the names of instances on which the
        algorithms disagree
    """
    rows = []
    mismatches = []
    for name, inst in instances:
        answers = set()
        n = len(inst.graph)
        bound = 10 * n**3 * BRANCHING_BASE ** max(inst.k, 0)
        for algo in algorithms:
            if algo not in ALGORITHM_CHOICES:
                warnings.warn(f"Skipping unknown algorithm {algo!r}")
                continue
            try:
                outcome = run_algorithm(algo, inst, mode, options)
            except PRECONDITION_ERRORS as exc:
                logger.warning("%s does not apply to %s: %s", algo, name, exc)
                rows.append([name, algo, "SKIP", None, None, None])
                continue
            if outcome.stats.nodes > bound:
                warnings.warn(
                    f"{algo} used {outcome.stats.nodes} nodes on {name}, above the advisory "
                    f"bound {bound:.0f}"
                )
            rows.append(
                [
                    name,
                    algo,
                    outcome.answer.value,
                    outcome.size,
                    outcome.stats.nodes,
                    round(outcome.stats.seconds, 6),
                ]
            )
            answers.add((outcome.answer, outcome.size if mode == "minimize" else None))
        if len(answers) > 1:
            mismatches.append(name)

    table = pd.DataFrame(
        rows, columns=["instance", "algorithm", "answer", "size", "nodes", "seconds"]
    )
    return table, mismatches


def bench(argv: Sequence[str] | None = None) -> int:
    """
    Cross-check algorithms over a directory of instances or a suite file.
    """

    parser = argparse.ArgumentParser(
        description="Run several algorithms over a benchmark and report disagreements."
    )
    parser.add_argument(
        "target", help="Directory of .sfvs instance files, or a suite YAML file."
    )
    parser.add_argument(
        "--algos",
        nargs="+",
        default=None,
        help=(
            "Algorithms to compare. Defaults to the suite's list, or 'auto oracle' for "
            "a directory."
        ),
    )
    parser.add_argument(
        "--mode",
        choices=["decide", "minimize"],
        default=None,
        help="Overrides the suite's mode. Defaults to the suite's mode, else 'decide'.",
    )
    parser.add_argument(
        "--csv", type=str, default=None, help="Also write the result table to this CSV file."
    )
    parser.add_argument(
        "--options",
        type=str,
        default=None,
        help="YAML file of solver options, validated against the solver options schema.",
    )
    _add_verbosity(parser)

    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        instances, config = load_suite(args.target)
        options = SolverOptions.from_yaml(args.options) if args.options else None
    except SuiteError as exc:
        return _fail(str(exc), EXIT_USAGE)
    except jsonschema.ValidationError as exc:
        return _fail(f"invalid solver options:{exc.message}", EXIT_USAGE)

    algorithms = args.algos or config.get("algorithms", ["auto", "oracle"])
    mode = args.mode or config.get("mode", "decide")
    logger.info("benchmarking %d instances with %s", len(instances), algorithms)

    table, mismatches = run_bench(instances, algorithms, mode, options)
    if table.empty:
        print("No instances.")
    else:
        print(table.to_string(index=False))
    if args.csv:
        table.to_csv(args.csv, index=False)

    for name in mismatches:
        print(f"MISMATCH: algorithms disagree on {name}")
    return EXIT_NO if mismatches else EXIT_YES
