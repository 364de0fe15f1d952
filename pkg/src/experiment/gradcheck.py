#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sonlu fark gradyan denetimi

Her kayıp türü için tohumlu küçük ağlarda analitik türev, rastgele bir
yöndeki merkezi fark türeviyle karşılaştırılır.
"""

import time
import logging
from dataclasses import dataclass, field

import numpy as np

from network.nn_core import ParamVector, Mlp, forward, backward
from policy.gaussian_policy import GaussianPolicy, sample, log_prob, log_prob_grad
from algorithm.skills import Skill, SkillBatch, skill_loss
from algorithm.sac_core import (CriticPair, TdBatch, td_target, critic_loss, policy_loss_reparam,
                                policy_loss_score_function)
from algorithm.replay_buffer import ReplaySample

logger = logging.getLogger(__name__)

STEP = 1e-5
TOLERANCE = 1e-4
DEFAULT_CASES = 100


@dataclass
class GradCheckResult:
    """
    Bir kayıp türünün denetim sonucu
    """
    name: str
    cases: int
    worst_error: float
    failures: int
    seconds: float = 0.0

    @property
    def passed(self):
        return self.failures == 0


@dataclass
class GradCheckReport:
    results: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def as_table(self):
        header = f"{'Kayıp':<28} {'Durum':>6} {'En kötü hata':>14} {'Hatalı':>7} {'Süre (s)':>9}  Sonuç"
        lines = [header, "-" * len(header)]
        for r in self.results:
            lines.append(f"{r.name:<28} {r.cases:>6} {r.worst_error:>14.3e} {r.failures:>7} {r.seconds:>9.2f}  "
                         + ("GEÇTİ" if r.passed else "KALDI"))
        return "\n".join(lines)


def relative_error(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-6)


def directional_check(loss_fn, params, grad, rng, h=STEP):
    """
    g·v ile (L(θ + hv) − L(θ − hv)) / 2h karşılaştırması

    Args:
        loss_fn (callable): ParamVector -> float
        params (ParamVector): Denetim noktası
        grad (ParamVector): Analitik türev
        rng (numpy.random.Generator): Yön üreteci
        h (float): Adım

    Returns:
        float: Göreli hata
    """
    direction = rng.standard_normal(params.size)
    plus = loss_fn(ParamVector(params.values + h * direction, params.layout))
    minus = loss_fn(ParamVector(params.values - h * direction, params.layout))
    numeric = (plus - minus) / (2.0 * h)
    analytic = float(np.dot(grad.values, direction))
    return relative_error(analytic, numeric)


def _perturbed(params, rng, scale=0.3):
    return ParamVector(params.values + scale * rng.standard_normal(params.size), params.layout)


def _policy(rng, state_dim, action_dim, squash):
    policy = GaussianPolicy(state_dim, action_dim, hidden=(6, 5), squash=squash, rng=rng)
    policy.params = _perturbed(policy.params, rng)
    return policy


def _critics(rng, state_dim, action_dim):
    critics = CriticPair(state_dim, action_dim, hidden=(6, 5), gamma=0.9, alpha=float(rng.uniform(0.05, 0.5)), rng=rng)
    critics.q1.params = _perturbed(critics.q1.params, rng)
    critics.q2.params = _perturbed(critics.q2.params, rng)
    critics.target_q1.params = _perturbed(critics.target_q1.params, rng)
    critics.target_q2.params = _perturbed(critics.target_q2.params, rng)
    return critics


def _dims(rng):
    return int(rng.integers(1, 5)), int(rng.integers(1, 3)), int(rng.integers(1, 6))


def case_mlp(rng):
    """
    MLP ortalama kare kaybı
    """
    d_in, d_out, b = int(rng.integers(1, 5)), int(rng.integers(1, 4)), int(rng.integers(1, 6))
    net = Mlp([d_in, 7, 4, d_out], rng=rng)
    net.params = _perturbed(net.params, rng)
    x = rng.normal(size=(b, d_in))
    y = rng.normal(size=(b, d_out))

    def loss(p):
        return float(np.mean((forward(Mlp(net.widths, params=p), x) - y) ** 2))

    out = forward(net, x)
    grad, _ = backward(net, x, 2.0 * (out - y) / out.size)
    return directional_check(loss, net.params, grad, rng)


def _case_log_prob(rng, squash):
    ds, da, b = _dims(rng)
    policy = _policy(rng, ds, da, squash)
    states = rng.normal(size=(b, ds))
    actions = rng.uniform(-0.95, 0.95, size=(b, da)) if squash else rng.normal(size=(b, da))
    weights = rng.normal(size=b)

    def loss(p):
        trial = policy.copy()
        trial.params = p
        return float(np.sum(weights * log_prob(trial, states, actions)))

    return directional_check(loss, policy.params, log_prob_grad(policy, states, actions, weights), rng)


def case_log_prob_squashed(rng):
    return _case_log_prob(rng, True)


def case_log_prob_linear(rng):
    return _case_log_prob(rng, False)


def case_skill_loss(rng):
    """
    Beceri kaybı (öngörü hatası + β·entropi)
    """
    ds, da, b = _dims(rng)
    squash = bool(rng.integers(0, 2))
    skill = Skill(_policy(rng, ds, da, squash), 0.0, 0)
    states = rng.normal(size=(b, ds))
    targets = rng.uniform(-0.9, 0.9, size=(b, da))
    beta = float(rng.uniform(-1.0, 1.0))

    def loss(p):
        trial = Skill(skill.policy.copy(), 0.0, 0)
        trial.policy.params = p
        value, _ = skill_loss(trial, SkillBatch.for_skill(trial, states, targets), beta)
        return value

    _, grad = skill_loss(skill, SkillBatch.for_skill(skill, states, targets), beta)
    return directional_check(loss, skill.policy.params, grad, rng)


def _td_batch(rng, policy, ds, da, b):
    replay = ReplaySample(rng.normal(size=(b, ds)), rng.uniform(-0.9, 0.9, size=(b, da)), rng.normal(size=b),
                          rng.normal(size=(b, ds)), rng.random(b) < 0.2, np.zeros(b, dtype=np.int64))
    return TdBatch.from_sample(replay, sample(policy, replay.next_states, rng=rng))


def case_critic_loss(rng):
    """
    Birinci ve ikinci eleştirmen kayıpları (hedefler sabit)
    """
    ds, da, b = _dims(rng)
    critics = _critics(rng, ds, da)
    policy = _policy(rng, ds, da, True)
    batch = _td_batch(rng, policy, ds, da, b)
    targets = td_target(critics, batch)
    _, _, grad1, grad2 = critic_loss(critics, batch, targets)

    def loss(index):
        def fn(p):
            trial = CriticPair(ds, da, hidden=(6, 5), rng=np.random.default_rng(0))
            trial.q1.params = p if index == 0 else critics.q1.params
            trial.q2.params = p if index == 1 else critics.q2.params
            return critic_loss(trial, batch, targets)[index]
        return fn

    return max(directional_check(loss(0), critics.q1.params, grad1, rng),
               directional_check(loss(1), critics.q2.params, grad2, rng))


def case_policy_reparam(rng):
    """
    Yeniden parametrelendirilmiş politika kaybı (gürültü sabit)
    """
    ds, da, b = _dims(rng)
    critics = _critics(rng, ds, da)
    policy = _policy(rng, ds, da, bool(rng.integers(0, 2)))
    states = rng.normal(size=(b, ds))
    noise = rng.standard_normal((b, da))

    def loss(p):
        trial = policy.copy()
        trial.params = p
        return policy_loss_reparam(critics, trial, states, noise=noise)[0]

    _, grad, _ = policy_loss_reparam(critics, policy, states, noise=noise)
    return directional_check(loss, policy.params, grad, rng)


def case_policy_score_function(rng):
    """
    Skor fonksiyonu politika kaybı (eylemler sabit)
    """
    ds, da, b = _dims(rng)
    critics = _critics(rng, ds, da)
    policy = _policy(rng, ds, da, True)
    states = rng.normal(size=(b, ds))
    actions = rng.uniform(-0.95, 0.95, size=(b, da))

    def loss(p):
        trial = policy.copy()
        trial.params = p
        return policy_loss_score_function(critics, trial, states, actions)[0]

    _, grad = policy_loss_score_function(critics, policy, states, actions)
    return directional_check(loss, policy.params, grad, rng)


CASES = {
    "mlp_mse": case_mlp,
    "log_prob_squashed": case_log_prob_squashed,
    "log_prob_linear": case_log_prob_linear,
    "skill_loss": case_skill_loss,
    "critic_loss": case_critic_loss,
    "policy_loss_reparam": case_policy_reparam,
    "policy_loss_score_function": case_policy_score_function,
}


def run_gradcheck(seed=0, cases=DEFAULT_CASES, tolerance=TOLERANCE):
    """
    Tüm kayıp türleri için gradyan denetimi

    Args:
        seed (int): Tohum
        cases (int): Kayıp türü başına durum sayısı
        tolerance (float): Göreli hata sınırı

    Returns:
        GradCheckReport: Rapor
    """
    if cases <= 0:
        raise ValueError(f"Durum sayısı pozitif olmalı: {cases}")
    report = GradCheckReport()
    streams = np.random.SeedSequence(seed).spawn(len(CASES))
    for (name, case), stream in zip(CASES.items(), streams):
        rng = np.random.default_rng(stream)
        start = time.perf_counter()
        errors = np.array([case(rng) for _ in range(cases)])
        result = GradCheckResult(name, cases, float(errors.max()), int(np.sum(errors >= tolerance)),
                                 time.perf_counter() - start)
        if not result.passed:
            logger.error(f"Gradyan denetimi başarısız: {name} ({result.failures} durum, en kötü {result.worst_error:.3e})")
        report.results.append(result)
    logger.info(f"Gradyan denetimi bitti: {'GEÇTİ' if report.passed else 'KALDI'}")
    return report
