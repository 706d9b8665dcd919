# Copyright 2026 chordal-sfvs contributors. See the top-level COPYRIGHT file for details.
# SPDX-License-Identifier: Apache-2.0

"""General utility functions for chordal-sfvs"""

import json
from importlib import resources as rsr
from pathlib import Path

import jsonschema
import yaml


def get_jsonschema(schema_file: str) -> dict:
    """
    Read in one of the bundled JSON schemas.

    Parameters
    ----------
    schema_file: str
        Path of the schema relative to the package root, e.g. ``data/suite_schema.json``
    """

    schema_path = rsr.files("chordal_sfvs").joinpath(schema_file)
    with schema_path.open(mode="r") as fpath:  # type: ignore
        return json.load(fpath)


def load_config_yaml(path: str | Path, schema: dict) -> dict:
    """
    Load a YAML configuration file and validate it against a jsonschema

    Parameters
    ----------
    path: str or Path
        The path to the YAML file
    schema: dict
        The jsonschema to validate against

    Raises
    ------
    jsonschema.exceptions.ValidationError
        If the file contents do not match the schema
    """

    with open(path) as fpath:
        config = yaml.safe_load(fpath)

    if config is None:
        config = {}

    validate_against_schema(config, schema)

    return config


def validate_against_schema(instance: dict, schema: dict) -> None:
    """
    Validate a dictionary against a jsonschema, allowing for tuples as arrays

    Parameters
    ----------
    instance: dict
        The instance to validate
    schema: dict
        The jsonschema

    Raises
    ------
    jsonschema.exceptions.ValidationError
        If the instance does not match the schema
    """

    Validator = jsonschema.validators.validator_for(schema)
    type_checker = Validator.TYPE_CHECKER.redefine(
        "array", lambda checker, instance: isinstance(instance, (list, tuple))
    )
    TupleAllowingValidator = jsonschema.validators.extend(
        Validator, type_checker=type_checker
    )

    issues = list(TupleAllowingValidator(schema).iter_errors(instance))

    if len(issues) > 0:
        issue_str = ""
        for i, issue in enumerate(issues, start=1):
            path = "/".join(str(p) for p in issue.absolute_path) or "(root)"
            issue_str += f"\n{i:02d} | {path} : {issue.message}"
        raise jsonschema.ValidationError(issue_str)
