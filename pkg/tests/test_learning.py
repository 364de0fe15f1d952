# -*- coding: utf-8 -*-
"""
Uzun süren öğrenme testleri (pytest -m slow)
"""

import numpy as np
import pytest

from algorithm.agent import AgentConfig, SdsraAgent
from envs.environments import Pendulum, PointMass2D


@pytest.mark.slow
@pytest.mark.parametrize("mode", ["sac", "sdsra"])
def test_pointmass_return_improves(mode):
    config = AgentConfig(mode=mode, n_skills=2, hidden=(64, 64), batch_size=64, lr=1e-3, gamma=0.95,
                         warmup_steps=1000, skill_update_interval=500, log_interval=2000, seed=0)
    agent = SdsraAgent(config, PointMass2D.spec)
    before, _, _ = agent.evaluate(PointMass2D(), 3)
    agent.train(PointMass2D(), 10000)
    after, _, _ = agent.evaluate(PointMass2D(), 3)
    assert after > before


def random_rollout_return(episodes=100):
    env = Pendulum()
    rng = np.random.default_rng(0)
    totals = []
    for episode in range(episodes):
        env.reset(episode)
        total, done = 0.0, False
        while not done:
            _, reward, done = env.step(rng.uniform(-2.0, 2.0, size=1))
            total += reward
        totals.append(total)
    return float(np.mean(totals))


@pytest.mark.slow
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_pendulum_sac_closes_half_the_gap_to_zero(seed):
    baseline = random_rollout_return()
    config = AgentConfig(mode="sac", hidden=(64, 64), batch_size=128, log_interval=5000, seed=seed)
    agent = SdsraAgent(config, Pendulum.spec)
    agent.train(Pendulum(), 30000)
    final, _, _ = agent.evaluate(Pendulum(), 10)
    assert final >= 0.5 * baseline
