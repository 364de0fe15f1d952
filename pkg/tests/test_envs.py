# -*- coding: utf-8 -*-
"""
Ortam testleri
"""

import logging
import math

import numpy as np
import pytest

from envs.environments import Pendulum, PointMass2D, EnvSpec, make_env, wrap_angle
from utils.errors import ShapeError


def test_pendulum_energy_is_conserved_without_torque():
    env = Pendulum()
    env.set_state(math.pi - 0.3, 0.0)
    e0 = env.energy()
    worst = 0.0
    for _ in range(200):
        env.step(np.zeros(1))
        worst = max(worst, abs(env.energy() - e0))
    assert worst < 1e-2 * abs(e0)


def test_pendulum_resting_at_bottom_stays():
    env = Pendulum()
    env.set_state(math.pi, 0.0)
    for _ in range(50):
        env.step(np.zeros(1))
    assert abs(wrap_angle(env.theta - math.pi)) < 1e-9


def test_upright_zero_torque_reward_is_zero():
    env = Pendulum()
    env.set_state(0.0, 0.0)
    _, reward, _ = env.step(np.zeros(1))
    assert reward == 0.0


def test_reset_is_deterministic():
    a, b = Pendulum(), Pendulum()
    np.testing.assert_array_equal(a.reset(7), b.reset(7))
    assert not np.array_equal(a.reset(7), a.reset(8))


def test_episode_ends_at_time_limit():
    env = PointMass2D()
    env.reset(0)
    dones = [env.step(np.zeros(2))[2] for _ in range(200)]
    assert dones[-1] and not any(dones[:-1])


def test_out_of_range_action_is_clipped_with_warning(caplog):
    env, twin = Pendulum(), Pendulum()
    env.reset(1)
    twin.reset(1)
    with caplog.at_level(logging.WARNING):
        obs, _, _ = env.step(np.array([5.0]))
    assert "kırpılıyor" in caplog.text
    np.testing.assert_array_equal(obs, twin.step(np.array([2.0]))[0])


def test_action_shape_checked():
    env = PointMass2D()
    env.reset(0)
    with pytest.raises(ShapeError):
        env.step(np.zeros(3))
    with pytest.raises(ValueError):
        env.step(np.array([np.nan, 0.0]))


def test_pointmass_observation_layout():
    env = PointMass2D()
    obs = env.set_state([1.0, 2.0], [0.5, -0.5], [3.0, 3.0])
    np.testing.assert_array_equal(obs, [1.0, 2.0, 0.5, -0.5, 2.0, 1.0])


def test_pointmass_goal_on_circle():
    env = PointMass2D()
    env.reset(5)
    assert np.linalg.norm(env.goal) == pytest.approx(2.0)


def test_scale_action_maps_unit_interval():
    spec = Pendulum.spec
    np.testing.assert_allclose(spec.scale_action([-1.0]), [-2.0])
    np.testing.assert_allclose(spec.scale_action([1.0]), [2.0])


def test_invalid_spec():
    with pytest.raises(ShapeError):
        EnvSpec(2, 1, (-1.0, -1.0), (1.0,), 10)
    with pytest.raises(ValueError):
        EnvSpec(2, 1, (1.0,), (1.0,), 10)


def test_make_env():
    assert isinstance(make_env("pendulum"), Pendulum)
    with pytest.raises(ValueError):
        make_env("cartpole")


def test_hanging_pendulum_reward():
    env = Pendulum()
    env.set_state(math.pi, 0.0)
    _, reward, _ = env.step(np.zeros(1))
    assert env.theta_dot == pytest.approx(0.0, abs=1e-12)
    assert reward == pytest.approx(-math.pi ** 2)


def test_pointmass_at_rest_keeps_position():
    env = PointMass2D()
    env.set_state([1.0, -1.0], [0.0, 0.0], [2.0, 0.0])
    _, reward, _ = env.step(np.zeros(2))
    np.testing.assert_array_equal(env.position, [1.0, -1.0])
    assert reward == pytest.approx(-2.0)


def test_reset_seeds_do_not_collide():
    env = Pendulum()
    states = {tuple(env.reset(seed)) for seed in range(100)}
    assert len(states) == 100


def test_reset_angle_encoding():
    env = Pendulum()
    for seed in range(20):
        obs = env.reset(seed)
        assert obs[0] ** 2 + obs[1] ** 2 == pytest.approx(1.0, abs=1e-12)
        assert -1.0 <= obs[2] <= 1.0


@pytest.mark.parametrize("env_class", [Pendulum, PointMass2D])
def test_clone_restep_is_bit_exact(env_class):
    env = env_class()
    env.reset(11)
    rng = np.random.default_rng(4)
    for _ in range(30):
        env.step(rng.uniform(env.spec.action_low, env.spec.action_high))
    twin = env.clone()
    actions = rng.uniform(env.spec.action_low, env.spec.action_high, size=(40, env.spec.action_dim))
    for action in actions:
        obs, reward, done = env.step(action)
        twin_obs, twin_reward, twin_done = twin.step(action)
        assert np.array_equal(obs, twin_obs)
        assert reward == twin_reward and done == twin_done


def test_clone_is_independent():
    env = PointMass2D()
    env.reset(2)
    twin = env.clone()
    env.step(np.ones(2))
    assert twin.steps == 0
    assert np.all(twin.velocity == 0.0)


def test_pendulum_reward_bounds():
    lower = -(math.pi ** 2 + 0.1 * 64 + 0.001 * 4)
    env = Pendulum()
    rng = np.random.default_rng(8)
    for episode in range(5):
        env.reset(episode)
        done = False
        while not done:
            _, reward, done = env.step(rng.choice([-2.0, 2.0], size=1))
            assert lower <= reward <= 0.0
