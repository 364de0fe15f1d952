# -*- coding: utf-8 -*-
"""
Yumuşak aktör-eleştirmen çekirdeği testleri
"""

import numpy as np
import pytest

from network.nn_core import Mlp, adam_step, AdamState
from policy.gaussian_policy import ActionSample, GaussianPolicy, sample
from algorithm.sac_core import (CriticPair, TdBatch, td_target, critic_loss, policy_loss_reparam,
                                policy_loss_score_function, soft_update)


def fixed_samples(b, da, log_prob=0.0):
    action = np.zeros((b, da))
    return ActionSample(action, action.copy(), np.full(b, log_prob), action.copy())


def test_targets_start_equal_to_online(rng):
    critics = CriticPair(3, 1, hidden=(8,), rng=rng)
    assert critics.target_q1.params == critics.q1.params
    assert critics.target_q2.params == critics.q2.params
    assert critics.q1.params != critics.q2.params


def test_invalid_hyperparameters(rng):
    with pytest.raises(ValueError):
        CriticPair(3, 1, gamma=1.0, rng=rng)
    with pytest.raises(ValueError):
        CriticPair(3, 1, alpha=0.0, rng=rng)
    with pytest.raises(ValueError):
        CriticPair(3, 1, tau=0.0, rng=rng)


def test_terminal_target_is_reward(rng):
    critics = CriticPair(2, 1, hidden=(8,), rng=rng)
    batch = TdBatch(rng.normal(size=(4, 2)), np.zeros((4, 1)), [1.0, -2.0, 0.5, 3.0], rng.normal(size=(4, 2)),
                    [True] * 4, fixed_samples(4, 1))
    np.testing.assert_allclose(td_target(critics, batch), [1.0, -2.0, 0.5, 3.0])


def test_non_terminal_target_uses_soft_value(rng):
    critics = CriticPair(2, 1, hidden=(8,), gamma=0.9, alpha=0.5, rng=rng)
    next_states = rng.normal(size=(3, 2))
    samples = fixed_samples(3, 1, log_prob=-1.0)
    batch = TdBatch(np.zeros((3, 2)), np.zeros((3, 1)), np.ones(3), next_states, [False] * 3, samples)
    expected = 1.0 + 0.9 * (critics.min_q(next_states, samples.action, target=True) + 0.5)
    np.testing.assert_allclose(td_target(critics, batch), expected)


def test_critic_loss_decreases_on_bandit(rng):
    critics = CriticPair(1, 1, hidden=(16,), gamma=0.0, rng=rng)
    states = np.zeros((32, 1))
    actions = rng.uniform(-1, 1, size=(32, 1))
    rewards = np.sin(3.0 * actions[:, 0])
    batch = TdBatch(states, actions, rewards, states, [True] * 32, fixed_samples(32, 1))
    targets = td_target(critics, batch)
    opt1 = AdamState.for_params(critics.q1.params, lr=1e-2)
    opt2 = AdamState.for_params(critics.q2.params, lr=1e-2)
    first = critic_loss(critics, batch, targets)
    for _ in range(300):
        _, _, g1, g2 = critic_loss(critics, batch, targets)
        critics.q1.params, opt1 = adam_step(opt1, critics.q1.params, g1)
        critics.q2.params, opt2 = adam_step(opt2, critics.q2.params, g2)
    last = critic_loss(critics, batch, targets)
    assert last[0] < 0.5 * first[0]
    assert last[1] < 0.5 * first[1]


def test_critic_loss_target_length_checked(rng):
    critics = CriticPair(2, 1, hidden=(4,), rng=rng)
    batch = TdBatch(np.zeros((2, 2)), np.zeros((2, 1)), np.zeros(2), np.zeros((2, 2)), [True, True], fixed_samples(2, 1))
    with pytest.raises(ValueError):
        critic_loss(critics, batch, np.zeros(3))


def test_soft_update_mixes_parameters(rng):
    critics = CriticPair(2, 1, hidden=(4,), tau=0.25, rng=rng)
    old_target = critics.target_q1.params.copy()
    critics.q1.params = critics.q1.params.zeros_like()
    soft_update(critics)
    np.testing.assert_allclose(critics.target_q1.params.values, 0.75 * old_target.values)


def test_full_soft_update_copies_online(rng):
    critics = CriticPair(2, 1, hidden=(4,), tau=1.0, rng=rng)
    critics.q2.params = critics.q1.params.copy()
    soft_update(critics)
    assert critics.target_q2.params == critics.q1.params


def test_policy_losses_are_finite(rng):
    critics = CriticPair(3, 2, hidden=(8,), rng=rng)
    policy = GaussianPolicy(3, 2, hidden=(8,), rng=rng)
    states = rng.normal(size=(5, 3))
    loss, grad, draw = policy_loss_reparam(critics, policy, states, rng=rng)
    assert np.isfinite(loss)
    assert grad.same_layout(policy.params)
    assert draw.action.shape == (5, 2)
    loss_sf, grad_sf = policy_loss_score_function(critics, policy, states, draw.action)
    assert np.isfinite(loss_sf)
    assert np.all(np.isfinite(grad_sf.values))


def test_reparam_loss_with_fixed_noise_is_deterministic(rng):
    critics = CriticPair(3, 1, hidden=(8,), rng=rng)
    policy = GaussianPolicy(3, 1, hidden=(8,), rng=rng)
    states = rng.normal(size=(4, 3))
    noise = rng.standard_normal((4, 1))
    first = policy_loss_reparam(critics, policy, states, noise=noise)
    second = policy_loss_reparam(critics, policy, states, noise=noise)
    assert first[0] == second[0]
    np.testing.assert_array_equal(first[1].values, second[1].values)


def constant_critics(state_dim, action_dim, value, rng, alpha=0.2):
    critics = CriticPair(state_dim, action_dim, hidden=(4,), alpha=alpha, rng=rng)
    for net in critics.online():
        net.params = net.params.zeros_like()
        net.params.view("b1")[0] = value
    return critics


def constant_policy(state_dim, action_dim, mu, log_std, squash=False):
    policy = GaussianPolicy(state_dim, action_dim, squash=squash, trunk=Mlp.zeros([state_dim, 4, 2 * action_dim]))
    policy.trunk.params.view("b1")[:] = [*mu, *log_std]
    return policy


def test_critic_loss_single_transition_by_hand(rng):
    critics = constant_critics(2, 1, 2.0, rng)
    batch = TdBatch(np.zeros((1, 2)), np.zeros((1, 1)), [0.0], np.zeros((1, 2)), [True], fixed_samples(1, 1))
    loss1, loss2, grad1, _ = critic_loss(critics, batch, np.zeros(1))
    assert loss1 == pytest.approx(4.0)
    assert loss2 == pytest.approx(4.0)
    assert grad1.view("b1")[0] == pytest.approx(4.0)


def test_critic_loss_ignores_target_networks(rng):
    critics = CriticPair(2, 1, hidden=(4,), rng=rng)
    batch = TdBatch(rng.normal(size=(6, 2)), rng.uniform(-1, 1, size=(6, 1)), rng.normal(size=6),
                    rng.normal(size=(6, 2)), [False] * 6, fixed_samples(6, 1))
    targets = rng.normal(size=6)
    before = critic_loss(critics, batch, targets)
    critics.target_q1.params = critics.target_q1.params.zeros_like()
    critics.target_q2.params.values[:] += 1.0
    after = critic_loss(critics, batch, targets)
    assert before[:2] == after[:2]
    assert before[2] == after[2] and before[3] == after[3]
    assert before[2].same_layout(critics.q1.params)


def test_score_function_zero_critic_gives_zero_gradient(rng):
    critics = constant_critics(3, 2, 0.0, rng)
    policy = GaussianPolicy(3, 2, hidden=(8,), rng=rng)
    states = rng.normal(size=(20, 3))
    actions = rng.uniform(-0.9, 0.9, size=(20, 2))
    loss, grad = policy_loss_score_function(critics, policy, states, actions)
    assert loss == 0.0
    assert np.all(grad.values == 0.0)


def test_score_function_unit_critic_averages_to_zero(rng):
    b = 10000
    critics = constant_critics(2, 1, 1.0, rng)
    policy = constant_policy(2, 1, [0.0], [0.0])
    states = np.zeros((b, 2))
    actions = sample(policy, states, rng=rng).action
    _, grad = policy_loss_score_function(critics, policy, states, actions)
    # skor bileşenlerinin varyansları 1 (μ) ve 2 (log σ)
    assert np.linalg.norm(grad.values) < 3.0 * np.sqrt(3.0 / b)


def test_score_function_single_transition_by_hand(rng):
    mu, log_std, q, a = 0.5, -0.3, 2.5, 1.2
    critics = constant_critics(1, 1, q, rng)
    policy = constant_policy(1, 1, [mu], [log_std])
    sigma = np.exp(log_std)
    z = (a - mu) / sigma
    loss, grad = policy_loss_score_function(critics, policy, np.zeros((1, 1)), np.array([[a]]))
    expected_log_prob = -0.5 * z ** 2 - log_std - 0.5 * np.log(2.0 * np.pi)
    assert loss == pytest.approx(-q * expected_log_prob)
    np.testing.assert_allclose(grad.view("b1"), [-q * z / sigma, -q * (z ** 2 - 1.0)])


def test_reparam_linear_critic_pushes_mean_along_weights(rng):
    w = np.array([1.0, -2.0])
    c = 0.1
    critics = CriticPair(1, 2, hidden=(2,), alpha=1e-6, rng=rng)
    for net in critics.online():
        net.params = net.params.zeros_like()
        net.params.view("W0")[:] = [[0.0, c, 0.0], [0.0, 0.0, c]]
        net.params.view("W1")[:] = [w / c]
    policy = constant_policy(1, 2, [0.0, 0.0], [0.0, 0.0], squash=True)
    _, grad, _ = policy_loss_reparam(critics, policy, np.zeros((4096, 1)), rng=rng)
    step = -grad.view("b1")[:2]
    assert step[0] > 0.0 and step[1] < 0.0
    assert step[1] / step[0] == pytest.approx(-2.0, rel=0.1)
