# -*- coding: utf-8 -*-
"""
Beceri kümesi testleri
"""

import numpy as np
import pytest

from network.nn_core import Mlp
from policy.gaussian_policy import GaussianPolicy, entropy
from algorithm.skills import (Skill, SkillSet, SkillBatch, selection_probs, select_skill, prediction_error,
                              skill_loss, update_relevance)
from utils.errors import ShapeError


def make_set(n, relevance=0.0, temperature=1.0, rng=None):
    rng = rng if rng is not None else np.random.default_rng(0)
    return SkillSet.create(n, 3, 1, rng, hidden=(4,), initial_relevance=relevance, temperature=temperature)


def test_uniform_relevance_gives_uniform_probabilities():
    np.testing.assert_allclose(selection_probs(make_set(4)), np.full(4, 0.25))


def test_selection_probabilities_softmax():
    skills = make_set(2)
    skills.set_relevance([1.0, 0.0])
    np.testing.assert_allclose(selection_probs(skills), [0.731059, 0.268941], atol=1e-6)


def test_temperature_flattens_distribution():
    skills = make_set(2, temperature=100.0)
    skills.set_relevance([1.0, 0.0])
    probs = selection_probs(skills)
    assert abs(probs[0] - 0.5) < 0.01


def test_single_skill_selection_draws_nothing(rng):
    skills = make_set(1)
    before = rng.bit_generator.state
    assert select_skill(skills, rng) == 0
    assert rng.bit_generator.state == before


def test_selection_frequencies(rng):
    skills = make_set(4)
    counts = np.bincount([select_skill(skills, rng) for _ in range(10000)], minlength=4)
    freqs = counts / 10000
    assert np.all((freqs >= 0.22) & (freqs <= 0.28))


def test_set_relevance_validation():
    skills = make_set(3)
    with pytest.raises(ShapeError):
        skills.set_relevance([0.0, 1.0])
    with pytest.raises(ValueError):
        skills.set_relevance([0.0, np.inf, 1.0])


def test_prediction_error_scales_quadratically(rng):
    states = rng.normal(size=(5, 3))
    targets = rng.uniform(-1, 1, size=(5, 2))
    preds = rng.uniform(-1, 1, size=(5, 2))
    base = prediction_error(SkillBatch(states, targets, preds))
    scaled = prediction_error(SkillBatch(states, 3.0 * targets, 3.0 * preds))
    assert scaled == pytest.approx(9.0 * base)


def test_perfect_prediction_has_zero_error():
    states = np.zeros((2, 3))
    actions = np.array([[0.1], [0.2]])
    assert prediction_error(SkillBatch(states, actions, actions)) == 0.0


def test_empty_or_mismatched_batch_rejected():
    with pytest.raises(ValueError):
        SkillBatch(np.zeros((0, 3)), np.zeros((0, 1)), np.zeros((0, 1)))
    with pytest.raises(ShapeError):
        SkillBatch(np.zeros((2, 3)), np.zeros((3, 1)), np.zeros((3, 1)))


def test_skill_loss_combines_error_and_entropy(rng):
    skill = Skill(GaussianPolicy(3, 1, hidden=(4,), rng=rng), 0.0, 0)
    states = rng.normal(size=(6, 3))
    targets = rng.uniform(-0.5, 0.5, size=(6, 1))
    batch = SkillBatch.for_skill(skill, states, targets)
    loss, grad = skill_loss(skill, batch, -0.1)
    expected = prediction_error(batch) - 0.1 * float(np.mean(entropy(skill.policy, states)))
    assert loss == pytest.approx(expected)
    assert grad.same_layout(skill.policy.params)


def test_constant_performance_only_decays_relevance():
    skills = make_set(3)
    skills.set_relevance([1.0, -1.0, 0.5])
    update_relevance(skills, [2.0, 2.0, 2.0], 0.1)
    np.testing.assert_allclose(skills.relevance, 0.9 * np.array([1.0, -1.0, 0.5]))


def test_single_skill_relevance_decays():
    skills = make_set(1, relevance=2.0)
    update_relevance(skills, [5.0], 0.25)
    assert skills.relevance[0] == pytest.approx(1.5)


def test_missing_performance_carries_score_forward():
    skills = make_set(3)
    skills.set_relevance([0.3, 0.0, 0.0])
    update_relevance(skills, [np.nan, 1.0, 3.0], 0.5)
    assert skills.relevance[0] == 0.3
    np.testing.assert_allclose(skills.relevance[1:], [-0.5, 0.5])


def test_higher_performance_increases_selection_probability():
    skills = make_set(2)
    before = selection_probs(skills)[0]
    update_relevance(skills, [10.0, 1.0], 0.1)
    assert selection_probs(skills)[0] > before


def test_eta_out_of_range():
    with pytest.raises(ValueError):
        update_relevance(make_set(2), [1.0, 2.0], 0.0)
    with pytest.raises(ValueError):
        update_relevance(make_set(2), [1.0, 2.0], 1.5)


def test_best_index_prefers_lowest_on_ties():
    skills = make_set(3)
    skills.set_relevance([0.5, 0.5, 0.1])
    assert skills.best_index() == 0
