# Copyright (c) fixaccel contributors.
# SPDX-License-Identifier: Apache-2.0
import math
from pathlib import Path

import numpy as np
import pytest

import fixaccel

PROGRAMS = Path(__file__).resolve().parents[2] / "programs"


def test_interval_ops():
    a = fixaccel.Interval(0, 1)
    b = fixaccel.Interval(0, 2)
    assert fixaccel.leq(a, b)
    assert fixaccel.join(a, b) == b
    assert fixaccel.widen(a, b).ub == math.inf
    assert fixaccel.widen(a, b, fixaccel.ThresholdSet([5])).ub == 5
    assert fixaccel.Interval.bottom().is_bottom
    with pytest.raises(fixaccel.DomainError):
        fixaccel.Interval(0, math.nan)


def test_parse_error_position():
    with pytest.raises(fixaccel.ParseError) as err:
        fixaccel.parse_program("state x in [0, 1];\nloop {\n  x = x * x;\n}")
    assert err.value.line == 3


def test_intro_kleene():
    p = fixaccel.load_program(str(PROGRAMS / "intro.loop"))
    r = fixaccel.analyze(p, fixaccel.EngineConfig(mode="kleene"))
    x1 = r["invariant"]["x1"]
    assert abs(x1.lb - -5.1975) <= 5e-4
    assert abs(x1.ub - 8.8733) <= 5e-4
    assert r["sound"]
    assert r["trace"][0]["event"] == "initial"


def test_accelerated_report():
    p = fixaccel.load_program(str(PROGRAMS / "butterworth1.loop"))
    rep = fixaccel.report(p)
    assert rep["injections"] == 1
    assert abs(rep["invariant"]["x1"]["hi"] - 20.0084) <= 1e-3
    assert fixaccel.verify_postfixpoint(p, fixaccel.analyze(p)["invariant"])


def test_transformations():
    geo = [5 + 3 * 0.5**n for n in range(6)]
    y = fixaccel.aitken(geo)
    assert all(abs(v - 5) <= 1e-12 for v in y["values"])
    d = fixaccel.epsilon_diagonal(geo)
    assert abs(d["values"][-1] - 5) <= 1e-12

    a = np.array([[0.5, 0.1], [0.0, 0.25]])
    b = np.array([1.0, 1.0])
    xs = [np.zeros(2)]
    for _ in range(6):
        xs.append(a @ xs[-1] + b)
    v = fixaccel.vector_epsilon_diagonal(xs)
    fixed = np.linalg.solve(np.eye(2) - a, b)
    assert np.allclose(v["values"][2], fixed, atol=1e-8)
    assert fixaccel.samelson_inverse(np.zeros(2)) is None


def test_extract_combine_round_trip():
    s = fixaccel.AbstractState(["x", "y"], [fixaccel.Interval(-1, 2), fixaccel.Interval(0, math.inf)])
    vec, excluded = fixaccel.extract(s)
    assert excluded == [3]
    back, inverted = fixaccel.combine(vec, excluded, s.names)
    assert back == s
    assert inverted == []
