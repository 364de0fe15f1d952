# -*- coding: utf-8 -*-
"""
Öğrenme eğrisi ölçütü testleri
"""

import math

import numpy as np
import pytest

from experiment.metrics import moving_average, steps_to_threshold, final_mean, time_to_entropy


def test_moving_average_uses_partial_window_at_start():
    np.testing.assert_allclose(moving_average([1.0, 2.0, 3.0, 4.0], 2), [1.0, 1.5, 2.5, 3.5])
    np.testing.assert_allclose(moving_average([3.0, 6.0, 9.0], 5), [3.0, 4.5, 6.0])


def test_moving_average_full_windows_match_convolution(rng):
    values = rng.normal(size=50)
    expected = np.convolve(values, np.full(7, 1.0 / 7.0), mode="valid")
    np.testing.assert_allclose(moving_average(values, 7)[6:], expected, atol=1e-12)
    assert moving_average(values, 7)[0] == values[0]


def test_moving_average_rejects_bad_window():
    with pytest.raises(ValueError):
        moving_average([1.0], 0)


def test_steps_to_threshold():
    steps = [100, 200, 300, 400]
    returns = [-10.0, -5.0, 0.0, 5.0]
    assert steps_to_threshold(steps, returns, -4.0, 1) == 300
    assert steps_to_threshold(steps, returns, -4.0, 2) == 400
    assert steps_to_threshold(steps, returns, 10.0, 1) is None


def test_final_mean_uses_last_values():
    assert final_mean(list(range(20))) == pytest.approx(14.5)
    assert final_mean([1.0, 3.0]) == 2.0
    assert math.isnan(final_mean([]))


def test_time_to_entropy():
    steps = [10, 20, 30, 40]
    assert time_to_entropy(steps, [0.1, 0.98, 1.0, 0.5], 0.05) == 20
    assert time_to_entropy(steps, [0.1, 0.98, 1.0, 0.5], 0.0) == 30
    assert time_to_entropy(steps, [math.nan] * 4, 0.05) is None
