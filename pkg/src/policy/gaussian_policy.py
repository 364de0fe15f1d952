#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Köşegen Gauss politika modülü

Gövde ağı durumu 2·d_a çıktıya eşler: ortalama μ(s) ve log standart sapma.
Örnekleme yeniden parametrelendirilir (a = μ + σ⊙ε); isteğe bağlı tanh
sıkıştırması log-yoğunluğa değişken dönüşümü düzeltmesiyle yansıtılır.
"""

import math
import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from network.nn_core import Mlp, DEFAULT_HIDDEN, forward, backward
from utils.errors import ShapeError

logger = logging.getLogger(__name__)

LOG_STD_MIN = -20.0
LOG_STD_MAX = 2.0
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
# float64 içinde 1.0'dan küçük en büyük değer
ACTION_BOUND = float(np.nextafter(1.0, 0.0))


class GaussianPolicy:
    """
    Durum bağımlı köşegen kovaryanslı Gauss politika
    """

    def __init__(self, state_dim, action_dim, hidden=DEFAULT_HIDDEN, squash=True, rng=None, trunk=None):
        """
        Politikayı oluşturur

        Args:
            state_dim (int): Durum boyutu
            action_dim (int): Eylem boyutu
            hidden (tuple): Gizli katman genişlikleri
            squash (bool): Örneklere tanh uygulanıp uygulanmayacağı
            rng (numpy.random.Generator, optional): Başlatma üreteci
            trunk (Mlp, optional): Hazır gövde ağı
        """
        self.state_dim = int(state_dim)
        self.action_dim = int(action_dim)
        self.squash = bool(squash)
        if trunk is None:
            trunk = Mlp([self.state_dim, *hidden, 2 * self.action_dim], rng=rng)
        if trunk.input_dim != self.state_dim or trunk.output_dim != 2 * self.action_dim:
            raise ShapeError(f"Gövde ağı {trunk.widths} politika boyutlarıyla uyuşmuyor")
        self.trunk = trunk

    @property
    def params(self):
        return self.trunk.params

    @params.setter
    def params(self, value):
        if value.layout != self.trunk.params.layout:
            raise ShapeError("Parametre tanımlayıcıları gövde ağıyla uyuşmuyor")
        self.trunk.params = value

    def copy(self):
        return GaussianPolicy(self.state_dim, self.action_dim, squash=self.squash, trunk=self.trunk.copy())

    def __repr__(self):
        return f"GaussianPolicy(state_dim={self.state_dim}, action_dim={self.action_dim}, squash={self.squash})"


@dataclass
class ActionSample:
    """
    Tek (veya toplu) eylem örneği
    """
    action: np.ndarray
    pre_squash: np.ndarray
    log_prob: np.ndarray
    noise: np.ndarray


def heads(policy, state):
    """
    Ortalama, kırpılmış log-std ve ham log-std çıktılarını döndürür

    Args:
        policy (GaussianPolicy): Politika
        state (array-like): (d_s,) veya (B, d_s)

    Returns:
        tuple: (mu, log_std, raw_log_std)
    """
    out = forward(policy.trunk, state)
    d = policy.action_dim
    mu = out[..., :d]
    raw = out[..., d:]
    return mu, np.clip(raw, LOG_STD_MIN, LOG_STD_MAX), raw


def squash_action(u):
    """
    tanh sıkıştırması; sonuç her zaman açık (-1, 1) aralığında kalır
    """
    return np.clip(np.tanh(u), -ACTION_BOUND, ACTION_BOUND)


def _log1m_tanh_sq(u):
    # log(1 - tanh(u)^2) kararlı biçimde
    return 2.0 * (math.log(2.0) - u - np.logaddexp(0.0, -2.0 * u))


def sample(policy, state, rng=None, noise=None):
    """
    Yeniden parametrelendirilmiş örnek çeker

    Args:
        policy (GaussianPolicy): Politika
        state (array-like): Durum veya durum topluluğu
        rng (numpy.random.Generator, optional): Gürültü üreteci
        noise (array-like, optional): Hazır standart normal gürültü

    Returns:
        ActionSample: Eylem, sıkıştırma öncesi değer, log-olasılık, gürültü
    """
    mu, log_std, _ = heads(policy, state)
    if noise is None:
        if rng is None:
            raise ValueError("Örnekleme için rng veya noise verilmelidir")
        noise = rng.standard_normal(mu.shape)
    noise = np.asarray(noise, dtype=np.float64).reshape(mu.shape)

    u = mu + np.exp(log_std) * noise
    log_prob = np.sum(-0.5 * noise ** 2 - log_std - HALF_LOG_2PI, axis=-1)
    if policy.squash:
        action = squash_action(u)
        log_prob = log_prob - np.sum(_log1m_tanh_sq(u), axis=-1)
    else:
        action = u
    return ActionSample(action=action, pre_squash=u, log_prob=log_prob, noise=noise)


def _pre_squash(policy, action):
    action = np.asarray(action, dtype=np.float64)
    if not policy.squash:
        return action, np.zeros(action.shape[:-1])
    if np.any(np.abs(action) >= 1.0):
        raise ValueError("Sıkıştırılmış eylem (-1, 1) aralığı dışında; yoğunluk tanımsız")
    return np.arctanh(action), np.sum(np.log1p(-action ** 2), axis=-1)


def log_prob(policy, state, action):
    """
    Verilen eylemin tam log-yoğunluğu

    Args:
        policy (GaussianPolicy): Politika
        state (array-like): Durum
        action (array-like): Eylem (sıkıştırma açıksa (-1, 1) içinde)

    Returns:
        float | numpy.ndarray: Log-yoğunluk
    """
    mu, log_std, _ = heads(policy, state)
    u, correction = _pre_squash(policy, action)
    if u.shape != mu.shape:
        raise ShapeError(f"Eylem boyutu {u.shape} beklenen {mu.shape} ile uyuşmuyor")
    z = (u - mu) * np.exp(-log_std)
    return np.sum(-0.5 * z ** 2 - log_std - HALF_LOG_2PI, axis=-1) - correction


def entropy(policy, state, estimate=False, rng=None, samples=10000):
    """
    Politika entropisi

    Kapalı biçim sıkıştırma öncesi Gauss entropisidir; estimate=True ise
    -E[log π] Monte Carlo tahmini döndürülür.

    Args:
        policy (GaussianPolicy): Politika
        state (array-like): Durum veya durum topluluğu
        estimate (bool): Monte Carlo tahmini kullanılsın mı
        rng (numpy.random.Generator, optional): Tahmin için üreteç
        samples (int): Durum başına örnek sayısı

    Returns:
        float | numpy.ndarray: Entropi
    """
    if not estimate:
        _, log_std, _ = heads(policy, state)
        return np.sum(0.5 * (1.0 + math.log(2.0 * math.pi)) + log_std, axis=-1)

    if rng is None:
        raise ValueError("Monte Carlo entropi tahmini için rng gereklidir")
    state = np.asarray(state, dtype=np.float64)
    batch = np.atleast_2d(state)
    repeated = np.repeat(batch, samples, axis=0)
    draws = sample(policy, repeated, rng=rng)
    per_state = -draws.log_prob.reshape(batch.shape[0], samples).mean(axis=1)
    return per_state[0] if state.ndim == 1 else per_state


def mean_action(policy, state):
    """
    Deterministik değerlendirme eylemi: squash(μ(s))
    """
    mu, _, _ = heads(policy, state)
    return squash_action(mu) if policy.squash else mu


def head_backward(policy, state, d_mu, d_log_std):
    """
    Ortalama ve log-std başlıklarına gelen türevleri gövdeye geri yayar

    Log-std kırpma sınırlarının dışında kalan bileşenlerin türevi sıfırdır.

    Args:
        policy (GaussianPolicy): Politika
        state (array-like): Durum(lar)
        d_mu (array-like): μ'ye göre türev
        d_log_std (array-like): Kırpılmış log-std'ye göre türev

    Returns:
        ParamVector: Parametre türevi
    """
    _, _, raw = heads(policy, state)
    mask = (raw >= LOG_STD_MIN) & (raw <= LOG_STD_MAX)
    d_mu = np.broadcast_to(np.asarray(d_mu, dtype=np.float64), raw.shape)
    d_log_std = np.broadcast_to(np.asarray(d_log_std, dtype=np.float64), raw.shape) * mask
    grad, _ = backward(policy.trunk, state, np.concatenate([d_mu, d_log_std], axis=-1))
    return grad


def log_prob_grad(policy, state, action, weights=None):
    """
    Σ_b w_b·log π(a_b|s_b) ifadesinin parametre türevi (eylemler sabit)

    Args:
        policy (GaussianPolicy): Politika
        state (array-like): Durum(lar)
        action (array-like): Eylem(ler)
        weights (array-like, optional): Örnek ağırlıkları. Defaults to 1.

    Returns:
        ParamVector: Parametre türevi
    """
    mu, log_std, _ = heads(policy, state)
    u, _ = _pre_squash(policy, action)
    inv_std = np.exp(-log_std)
    z = (u - mu) * inv_std
    w = np.ones(mu.shape[:-1]) if weights is None else np.asarray(weights, dtype=np.float64)
    w = w[..., None]
    return head_backward(policy, state, w * z * inv_std, w * (z ** 2 - 1.0))


def gaussian_log_density(policy, state, pre_squash):
    """
    Sıkıştırma öncesi uzayda Gauss log-yoğunluğu
    """
    mu, log_std, _ = heads(policy, state)
    z = (np.asarray(pre_squash, dtype=np.float64) - mu) * np.exp(-log_std)
    return np.sum(-0.5 * z ** 2 - log_std - HALF_LOG_2PI, axis=-1)


def mixture_entropy_estimate(policies, weights, states, rng, samples=256):
    """
    Beceri karışımının Monte Carlo entropi tahmini (sıkıştırma öncesi uzay)

    π_mix(u|s) = Σ_i w_i·π_i(u|s); her durum için bileşen seçilip örnek
    çekilir ve -log π_mix ortalaması alınır.

    Args:
        policies (list): GaussianPolicy listesi
        weights (array-like): Karışım ağırlıkları
        states (array-like): (B, d_s) durumlar
        rng (numpy.random.Generator): Üreteç
        samples (int): Durum başına örnek sayısı

    Returns:
        float: Durumlar üzerinden ortalama karışım entropisi
    """
    weights = np.asarray(weights, dtype=np.float64)
    states = np.atleast_2d(np.asarray(states, dtype=np.float64))
    repeated = np.repeat(states, samples, axis=0)
    n = repeated.shape[0]

    components = rng.choice(len(policies), size=n, p=weights)
    draws = np.empty((n, policies[0].action_dim))
    for i, policy in enumerate(policies):
        rows = components == i
        if np.any(rows):
            mu, log_std, _ = heads(policy, repeated[rows])
            draws[rows] = mu + np.exp(log_std) * rng.standard_normal(mu.shape)

    with np.errstate(divide="ignore"):
        log_w = np.log(weights)
    log_terms = np.stack([log_w[i] + gaussian_log_density(p, repeated, draws) for i, p in enumerate(policies)])
    return float(-np.mean(logsumexp(log_terms, axis=0)))
