# Copyright (c) fixaccel contributors.
# SPDX-License-Identifier: Apache-2.0
"""Interval fixpoint analysis of affine loops with sequence acceleration."""

import json as _json

from ._core import (
    AbstractState,
    DomainError,
    EngineConfig,
    Interval,
    NothingToAccelerate,
    ParseError,
    StructureError,
    ThresholdSet,
    aitken,
    analyze,
    combine,
    epsilon_diagonal,
    extract,
    join,
    leq,
    load_program,
    parse_program,
    print_program,
    samelson_inverse,
    vector_epsilon_diagonal,
    verify_postfixpoint,
    widen,
)


def report(program, config=None):
    """Run an analysis and return the JSON report as a dict."""
    from ._core import _report_json

    return _json.loads(_report_json(program, config or EngineConfig()))


__all__ = [
    "AbstractState",
    "DomainError",
    "EngineConfig",
    "Interval",
    "NothingToAccelerate",
    "ParseError",
    "StructureError",
    "ThresholdSet",
    "aitken",
    "analyze",
    "combine",
    "epsilon_diagonal",
    "extract",
    "join",
    "leq",
    "load_program",
    "parse_program",
    "print_program",
    "report",
    "samelson_inverse",
    "vector_epsilon_diagonal",
    "verify_postfixpoint",
    "widen",
]
