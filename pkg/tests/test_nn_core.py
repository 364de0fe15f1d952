# -*- coding: utf-8 -*-
"""
Yoğun ağ, Adam ve Polyak testleri
"""

import numpy as np
import pytest

from network.nn_core import (ParamVector, Mlp, mlp_layout, forward, backward, AdamState, adam_step,
                             polyak_update)
from utils.errors import ShapeError, NonFiniteError


def test_param_vector_rejects_wrong_size():
    with pytest.raises(ShapeError):
        ParamVector(np.zeros(5), [("W0", (2, 2))])


def test_param_vector_rejects_non_finite():
    with pytest.raises(NonFiniteError):
        ParamVector(np.array([1.0, np.nan]), [("b0", (2,))])


def test_view_is_not_a_copy():
    p = ParamVector.zeros(mlp_layout([2, 3]))
    p.view("b0")[...] = 1.0
    assert np.all(p.values[-3:] == 1.0)


def test_forward_shapes(rng):
    net = Mlp([3, 5, 2], rng=rng)
    assert forward(net, np.zeros(3)).shape == (2,)
    assert forward(net, np.zeros((4, 3))).shape == (4, 2)


def test_forward_rejects_wrong_input_width(rng):
    net = Mlp([3, 5, 2], rng=rng)
    with pytest.raises(ShapeError):
        forward(net, np.zeros(4))


def test_forward_nan_input_names_layer(rng):
    net = Mlp([2, 3, 1], rng=rng)
    with pytest.raises(NonFiniteError, match="Katman 0"):
        forward(net, np.array([np.nan, 0.0]))


def test_zero_network_outputs_zero():
    net = Mlp.zeros([3, 4, 4, 2])
    assert np.array_equal(forward(net, np.ones((5, 3))), np.zeros((5, 2)))


def test_forward_is_pure(rng):
    net = Mlp([3, 8, 2], rng=rng)
    x = rng.normal(size=(6, 3))
    assert np.array_equal(forward(net, x), forward(net, x))


def test_zero_output_grad_gives_zero_gradients(rng):
    net = Mlp([3, 8, 2], rng=rng)
    grad, input_grad = backward(net, rng.normal(size=(4, 3)), np.zeros((4, 2)))
    assert np.all(grad.values == 0.0)
    assert np.all(input_grad == 0.0)


def test_backward_matches_finite_differences(rng):
    net = Mlp([3, 6, 5, 2], rng=rng)
    x = rng.normal(size=(4, 3))
    w = rng.normal(size=(4, 2))
    grad, input_grad = backward(net, x, w)

    h = 1e-6
    numeric = np.zeros(net.params.size)
    for i in range(net.params.size):
        plus = net.params.values.copy()
        minus = net.params.values.copy()
        plus[i] += h
        minus[i] -= h
        f_plus = np.sum(w * forward(Mlp(net.widths, params=ParamVector(plus, net.params.layout)), x))
        f_minus = np.sum(w * forward(Mlp(net.widths, params=ParamVector(minus, net.params.layout)), x))
        numeric[i] = (f_plus - f_minus) / (2 * h)
    np.testing.assert_allclose(grad.values, numeric, rtol=1e-5, atol=1e-7)

    dx = np.zeros_like(x)
    for b in range(x.shape[0]):
        for j in range(x.shape[1]):
            xp, xm = x.copy(), x.copy()
            xp[b, j] += h
            xm[b, j] -= h
            dx[b, j] = (np.sum(w * forward(net, xp)) - np.sum(w * forward(net, xm))) / (2 * h)
    np.testing.assert_allclose(input_grad, dx, rtol=1e-5, atol=1e-7)


def test_adam_first_step_moves_by_learning_rate():
    params = ParamVector(np.array([1.0, -2.0, 0.5]), [("b0", (3,))])
    grads = ParamVector(np.array([0.3, -4.0, 2.0]), [("b0", (3,))])
    state = AdamState.for_params(params, lr=0.01)
    new_params, new_state = adam_step(state, params, grads)
    np.testing.assert_allclose(new_params.values - params.values, -0.01 * np.sign(grads.values), atol=1e-9)
    assert new_state.step == 1
    assert state.step == 0


def test_adam_zero_gradient_keeps_params():
    params = ParamVector(np.array([1.0, 2.0]), [("b0", (2,))])
    state = AdamState.for_params(params)
    new_params, _ = adam_step(state, params, params.zeros_like())
    assert new_params == params


def test_adam_length_mismatch():
    params = ParamVector(np.zeros(2), [("b0", (2,))])
    grads = ParamVector(np.zeros(3), [("b0", (3,))])
    with pytest.raises(ValueError):
        adam_step(AdamState.for_params(params), params, grads)


def test_adam_minimizes_quadratic():
    params = ParamVector(np.array([3.0, -2.0]), [("b0", (2,))])
    state = AdamState.for_params(params, lr=0.01)
    for _ in range(3000):
        params, state = adam_step(state, params, ParamVector(2.0 * params.values, params.layout))
    assert np.max(np.abs(params.values)) < 0.05


def test_adam_two_steps_differ_from_one_doubled_step():
    layout = [("b0", (2,))]
    params = ParamVector(np.array([1.0, -1.0]), layout)
    grads = ParamVector(np.array([0.5, -3.0]), layout)
    state = AdamState.for_params(params, lr=0.01)

    once, once_state = adam_step(state, params, grads)
    twice, twice_state = adam_step(once_state, once, grads)
    doubled, doubled_state = adam_step(state, params, ParamVector(2.0 * grads.values, layout))

    np.testing.assert_allclose(twice.values - params.values, -0.02 * np.sign(grads.values), atol=1e-8)
    np.testing.assert_allclose(doubled.values - params.values, -0.01 * np.sign(grads.values), atol=1e-8)
    assert not np.allclose(twice.values, doubled.values)
    assert (twice_state.step, doubled_state.step) == (2, 1)


def test_adam_second_step_depends_on_moments():
    layout = [("b0", (1,))]
    params = ParamVector(np.array([0.0]), layout)
    state = AdamState.for_params(params, lr=0.1)
    first, first_state = adam_step(state, params, ParamVector(np.array([1.0]), layout))
    carried, _ = adam_step(first_state, first, ParamVector(np.array([-1.0]), layout))
    fresh, _ = adam_step(state, first, ParamVector(np.array([-1.0]), layout))
    assert fresh.values[0] - first.values[0] == pytest.approx(0.1, abs=1e-8)
    assert abs(carried.values[0] - first.values[0]) < 0.1


def test_polyak_half_step_by_hand():
    layout = [("b0", (1,))]
    mixed = polyak_update(ParamVector(np.array([2.0]), layout), ParamVector(np.array([4.0]), layout), 0.5)
    assert mixed.values[0] == 3.0


def test_polyak_extremes(rng):
    layout = [("b0", (4,))]
    target = ParamVector(rng.normal(size=4), layout)
    online = ParamVector(rng.normal(size=4), layout)
    assert polyak_update(target, online, 1.0) == online
    assert polyak_update(target, online, 0.0) == target
    mid = polyak_update(target, online, 0.25)
    np.testing.assert_allclose(mid.values, 0.25 * online.values + 0.75 * target.values)


def test_polyak_rejects_bad_tau_and_layout():
    a = ParamVector(np.zeros(2), [("b0", (2,))])
    b = ParamVector(np.zeros(2), [("W0", (1, 2))])
    with pytest.raises(ValueError):
        polyak_update(a, a, 1.5)
    with pytest.raises(ShapeError):
        polyak_update(a, b, 0.5)
