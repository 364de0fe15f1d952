# -*- coding: utf-8 -*-
"""
Sonlu fark gradyan denetimi testleri
"""

import numpy as np
import pytest

from network.nn_core import ParamVector
from experiment.gradcheck import CASES, run_gradcheck, relative_error, directional_check


def test_relative_error():
    assert relative_error(1.0, 1.0) == 0.0
    assert relative_error(2.0, 1.0) == pytest.approx(0.5)
    assert relative_error(0.0, 1e-9) < 1e-2


def test_directional_check_on_quadratic(rng):
    params = ParamVector(rng.normal(size=4), [("x", (4,))])

    def loss(p):
        return float(np.sum(p.values ** 2))

    grad = ParamVector(2.0 * params.values, params.layout)
    assert directional_check(loss, params, grad, rng) < 1e-8


def test_wrong_gradient_is_detected(rng):
    params = ParamVector(rng.normal(size=4), [("x", (4,))])
    grad = ParamVector(-2.0 * params.values, params.layout)
    assert directional_check(lambda p: float(np.sum(p.values ** 2)), params, grad, rng) > 1.0


def test_all_losses_pass_few_cases():
    report = run_gradcheck(seed=0, cases=5)
    assert [r.name for r in report.results] == list(CASES)
    assert report.passed, report.as_table()


def test_cases_must_be_positive():
    with pytest.raises(ValueError):
        run_gradcheck(cases=0)
