#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Yumuşak aktör-eleştirmen çekirdeği

İkiz yumuşak Q ağları, Polyak ile izlenen hedefler, yumuşak Bellman
hedefleri, eleştirmen kaybı ve iki politika iyileştirme kaybı:
yeniden parametrelendirilmiş (varsayılan) ve skor fonksiyonu biçimi.
"""

import logging
from dataclasses import dataclass

import numpy as np

from network.nn_core import Mlp, DEFAULT_HIDDEN, forward, backward, polyak_update
from policy.gaussian_policy import ActionSample, sample, heads, log_prob, log_prob_grad, head_backward
from utils.errors import ShapeError, NonFiniteError

logger = logging.getLogger(__name__)

# Skor fonksiyonu kaybında bellekteki eylemler sıkıştırma sınırından bu kadar içeri çekilir
SQUASH_EDGE = 1e-9


class CriticPair:
    """
    İkiz Q ağları ve hedef kopyaları
    """

    def __init__(self, state_dim, action_dim, hidden=DEFAULT_HIDDEN, gamma=0.99, alpha=0.2, tau=0.005, rng=None):
        """
        Eleştirmen çiftini oluşturur; hedefler çevrimiçi ağların kopyasıdır

        Args:
            state_dim (int): Durum boyutu
            action_dim (int): Eylem boyutu
            hidden (tuple): Gizli katman genişlikleri
            gamma (float): İndirim, [0, 1)
            alpha (float): Sıcaklık, > 0
            tau (float): Polyak katsayısı, (0, 1]
            rng (numpy.random.Generator, optional): Başlatma üreteci
        """
        if not (0.0 <= gamma < 1.0):
            raise ValueError(f"gamma [0, 1) aralığında olmalı: {gamma}")
        if alpha <= 0.0:
            raise ValueError(f"alpha pozitif olmalı: {alpha}")
        if not (0.0 < tau <= 1.0):
            raise ValueError(f"tau (0, 1] aralığında olmalı: {tau}")

        self.state_dim = int(state_dim)
        self.action_dim = int(action_dim)
        self.gamma = float(gamma)
        self.alpha = float(alpha)
        self.tau = float(tau)

        widths = [self.state_dim + self.action_dim, *hidden, 1]
        self.q1 = Mlp(widths, rng=rng)
        self.q2 = Mlp(widths, rng=rng)
        self.target_q1 = self.q1.copy()
        self.target_q2 = self.q2.copy()

    def online(self):
        return (self.q1, self.q2)

    def targets(self):
        return (self.target_q1, self.target_q2)

    def q_values(self, states, actions, target=False):
        """
        İki ağın Q değerlerini döndürür

        Returns:
            tuple: (q1, q2) her biri (B,) dizi
        """
        sa = _join(states, actions)
        nets = self.targets() if target else self.online()
        return forward(nets[0], sa)[..., 0], forward(nets[1], sa)[..., 0]

    def min_q(self, states, actions, target=False):
        q1, q2 = self.q_values(states, actions, target=target)
        return np.minimum(q1, q2)


def _join(states, actions):
    states = np.atleast_2d(np.asarray(states, dtype=np.float64))
    actions = np.atleast_2d(np.asarray(actions, dtype=np.float64))
    if states.shape[0] != actions.shape[0]:
        raise ShapeError(f"Durum ({states.shape[0]}) ve eylem ({actions.shape[0]}) sayıları uyuşmuyor")
    return np.concatenate([states, actions], axis=1)


@dataclass
class TdBatch:
    """
    Zamansal fark topluluğu: kayıtlar ve s' üzerinde π_φ'den taze eylem örnekleri
    """
    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_states: np.ndarray
    dones: np.ndarray
    next_action_samples: ActionSample

    def __post_init__(self):
        self.states = np.atleast_2d(np.asarray(self.states, dtype=np.float64))
        self.actions = np.atleast_2d(np.asarray(self.actions, dtype=np.float64))
        self.rewards = np.asarray(self.rewards, dtype=np.float64).reshape(-1)
        self.next_states = np.atleast_2d(np.asarray(self.next_states, dtype=np.float64))
        self.dones = np.asarray(self.dones, dtype=bool).reshape(-1)
        b = self.states.shape[0]
        if b < 1:
            raise ValueError("TD topluluğu boş olamaz")
        if not (self.actions.shape[0] == self.rewards.shape[0] == self.next_states.shape[0] == self.dones.shape[0] == b):
            raise ShapeError("TD topluluğu alanları aynı uzunlukta olmalıdır")

    @classmethod
    def from_sample(cls, replay_sample, next_action_samples):
        """
        Bellek örneğinden topluluk oluşturur
        """
        return cls(replay_sample.states, replay_sample.actions, replay_sample.rewards,
                   replay_sample.next_states, replay_sample.dones, next_action_samples)

    @classmethod
    def with_policy_samples(cls, replay_sample, policy, rng):
        """
        s' üzerinde politikadan taze örnek çekerek topluluk oluşturur
        """
        return cls.from_sample(replay_sample, sample(policy, replay_sample.next_states, rng=rng))

    def __len__(self):
        return self.states.shape[0]


def td_target(critics, batch):
    """
    y = r + γ·(1 − done)·(min_j Q'_j(s', a') − α·log π_φ(a'|s'))

    Args:
        critics (CriticPair): Eleştirmenler
        batch (TdBatch): Topluluk

    Returns:
        numpy.ndarray: (B,) hedef değerleri
    """
    next_actions = np.atleast_2d(batch.next_action_samples.action)
    next_log_prob = np.asarray(batch.next_action_samples.log_prob, dtype=np.float64).reshape(-1)
    min_target = critics.min_q(batch.next_states, next_actions, target=True)
    soft_value = min_target - critics.alpha * next_log_prob
    y = batch.rewards + critics.gamma * (1.0 - batch.dones.astype(np.float64)) * soft_value
    if not np.all(np.isfinite(y)):
        raise NonFiniteError("TD hedefi sonlu olmayan değer içeriyor")
    return y


def _mse_and_grad(net, sa, targets):
    q = forward(net, sa)[:, 0]
    diff = q - targets
    loss = float(np.mean(diff ** 2))
    grad, _ = backward(net, sa, (2.0 * diff / diff.size)[:, None])
    return loss, grad


def critic_loss(critics, batch, targets):
    """
    L(θ_i) = mean_b (Q_θi(s, a) − y)²; hedefler sabit kabul edilir

    Args:
        critics (CriticPair): Eleştirmenler
        batch (TdBatch): Topluluk
        targets (array-like): (B,) hedefler

    Returns:
        tuple: (loss_q1, loss_q2, grad_q1, grad_q2); hedef ağlara türev akmaz
    """
    targets = np.asarray(targets, dtype=np.float64).reshape(-1)
    if targets.shape[0] != len(batch):
        raise ShapeError(f"Hedef uzunluğu ({targets.shape[0]}) topluluk boyutuyla ({len(batch)}) uyuşmuyor")
    sa = _join(batch.states, batch.actions)
    loss1, grad1 = _mse_and_grad(critics.q1, sa, targets)
    loss2, grad2 = _mse_and_grad(critics.q2, sa, targets)
    return loss1, loss2, grad1, grad2


def _action_grad(net, sa, action_dim, weights):
    _, input_grad = backward(net, sa, weights[:, None])
    return input_grad[:, -action_dim:]


def policy_loss_reparam(critics, policy, states, rng=None, noise=None):
    """
    E_s[α·log π_φ(ã|s) − min_j Q_θj(s, ã)], ã yeniden parametrelendirilmiş

    Args:
        critics (CriticPair): Eleştirmenler
        policy (GaussianPolicy): π_φ
        states (array-like): (B, d_s) durumlar
        rng (numpy.random.Generator, optional): Gürültü üreteci
        noise (array-like, optional): Hazır gürültü

    Returns:
        tuple: (kayıp, ParamVector türev, ActionSample)
    """
    states = np.atleast_2d(np.asarray(states, dtype=np.float64))
    b = states.shape[0]
    draw = sample(policy, states, rng=rng, noise=noise)
    a = draw.action
    sa = _join(states, a)

    q1 = forward(critics.q1, sa)[:, 0]
    q2 = forward(critics.q2, sa)[:, 0]
    min_q = np.minimum(q1, q2)
    loss = float(np.mean(critics.alpha * draw.log_prob - min_q))

    ones = np.ones(b)
    dq_da = np.where((q1 <= q2)[:, None],
                     _action_grad(critics.q1, sa, policy.action_dim, ones),
                     _action_grad(critics.q2, sa, policy.action_dim, ones))
    d_action = -dq_da / b

    # log π'nin u'ya bağımlılığı yalnızca tanh düzeltmesinden gelir: d/du = 2·tanh(u)
    if policy.squash:
        d_u = d_action * (1.0 - a ** 2) + critics.alpha * 2.0 * a / b
    else:
        d_u = d_action

    _, log_std, _ = heads(policy, states)
    d_log_std = d_u * np.exp(log_std) * draw.noise - critics.alpha / b
    grad = head_backward(policy, states, d_u, d_log_std)
    return loss, grad, draw


def policy_loss_score_function(critics, policy, states, actions):
    """
    Skor fonksiyonu kestiricisi: kayıp = −mean_b[log π_φ(a_b|s_b)·Q_θ1(s_b, a_b)]

    Q_θ1 sabit ağırlık olarak kullanılır, taban çizgisi yoktur; türev
    −E[∇_φ log π_φ(a|s)·Q_θ1(s, a)] olur.

    Args:
        critics (CriticPair): Eleştirmenler
        policy (GaussianPolicy): π_φ
        states (array-like): (B, d_s) bellekteki durumlar
        actions (array-like): (B, d_a) bellekteki eylemler

    Returns:
        tuple: (kayıp, ParamVector türev)
    """
    states = np.atleast_2d(np.asarray(states, dtype=np.float64))
    actions = np.atleast_2d(np.asarray(actions, dtype=np.float64))
    if policy.squash:
        actions = np.clip(actions, -1.0 + SQUASH_EDGE, 1.0 - SQUASH_EDGE)
    b = states.shape[0]

    q = forward(critics.q1, _join(states, actions))[:, 0]
    lp = log_prob(policy, states, actions)
    loss = float(-np.mean(lp * q))
    grad = log_prob_grad(policy, states, actions, weights=-q / b)
    return loss, grad


def soft_update(critics):
    """
    Hedef ağları Polyak ile günceller: θ'_i ← τθ_i + (1 − τ)θ'_i

    Args:
        critics (CriticPair): Eleştirmenler (yerinde güncellenir)

    Returns:
        CriticPair: Aynı nesne
    """
    critics.target_q1.params = polyak_update(critics.target_q1.params, critics.q1.params, critics.tau)
    critics.target_q2.params = polyak_update(critics.target_q2.params, critics.q2.params, critics.tau)
    return critics
