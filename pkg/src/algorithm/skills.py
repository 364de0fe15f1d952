#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Beceri kümesi modülü

Her beceri bir Gauss politika ve skaler bir ilgi puanından oluşur. Beceri
seçimi ilgi puanlarının softmax dağılımından yapılır; beceriler tahmin
hatası ile β ağırlıklı entropiden oluşan kayıpla iyileştirilir.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import softmax

from policy.gaussian_policy import GaussianPolicy, entropy, mean_action, heads, head_backward
from network.nn_core import DEFAULT_HIDDEN
from utils.errors import ShapeError

logger = logging.getLogger(__name__)


@dataclass
class Skill:
    """
    Tek beceri: politika, ilgi puanı ve sıra numarası
    """
    policy: GaussianPolicy
    relevance: float
    id: int


class SkillSet:
    """
    N becerilik sıralı küme
    """

    def __init__(self, skills, beta=-0.1, temperature=1.0):
        """
        Beceri kümesini oluşturur

        Args:
            skills (list): Skill listesi (en az bir)
            beta (float): Beceri kaybındaki entropi katsayısı (işaretli)
            temperature (float): Softmax sıcaklığı κ
        """
        if len(skills) < 1:
            raise ValueError("Beceri kümesi en az bir beceri içermelidir")
        if temperature <= 0:
            raise ValueError(f"Softmax sıcaklığı pozitif olmalı: {temperature}")
        self.skills = list(skills)
        self.beta = float(beta)
        self.temperature = float(temperature)

    @classmethod
    def create(cls, n_skills, state_dim, action_dim, rng, hidden=DEFAULT_HIDDEN, squash=True,
               initial_relevance=0.0, beta=-0.1, temperature=1.0):
        """
        Aynı ilgi puanıyla başlatılmış N beceri oluşturur

        Returns:
            SkillSet: Yeni beceri kümesi
        """
        skills = [
            Skill(GaussianPolicy(state_dim, action_dim, hidden=hidden, squash=squash, rng=rng), float(initial_relevance), i)
            for i in range(n_skills)
        ]
        return cls(skills, beta=beta, temperature=temperature)

    def __len__(self):
        return len(self.skills)

    def __getitem__(self, index):
        return self.skills[index]

    @property
    def relevance(self):
        return np.array([skill.relevance for skill in self.skills], dtype=np.float64)

    def set_relevance(self, values):
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (len(self.skills),):
            raise ShapeError(f"İlgi puanı vektörü uzunluğu {values.shape} beceri sayısıyla uyuşmuyor")
        if not np.all(np.isfinite(values)):
            raise ValueError("İlgi puanları sonlu olmalıdır")
        for skill, value in zip(self.skills, values):
            skill.relevance = float(value)

    def best_index(self):
        """
        En yüksek ilgi puanlı becerinin sırası (eşitlikte en küçük sıra)
        """
        return int(np.argmax(self.relevance))


@dataclass
class SkillBatch:
    """
    Beceri regresyon topluluğu: durumlar, hedef eylemler, tahmin edilen eylemler
    """
    states: np.ndarray
    target_actions: np.ndarray
    predicted_actions: np.ndarray

    def __post_init__(self):
        self.states = np.atleast_2d(np.asarray(self.states, dtype=np.float64))
        self.target_actions = np.atleast_2d(np.asarray(self.target_actions, dtype=np.float64))
        self.predicted_actions = np.atleast_2d(np.asarray(self.predicted_actions, dtype=np.float64))
        m = self.states.shape[0]
        if m < 1 or self.states.size == 0:
            raise ValueError("Beceri topluluğu boş olamaz")
        if self.target_actions.shape[0] != m or self.predicted_actions.shape[0] != m:
            raise ShapeError("Durum, hedef ve tahmin listeleri aynı uzunlukta olmalıdır")
        if self.target_actions.shape != self.predicted_actions.shape:
            raise ShapeError(f"Hedef {self.target_actions.shape} ve tahmin {self.predicted_actions.shape} boyutları uyuşmuyor")

    @classmethod
    def for_skill(cls, skill, states, target_actions):
        """
        Tahminleri becerinin ortalama eylemlerinden doldurur
        """
        states = np.atleast_2d(np.asarray(states, dtype=np.float64))
        return cls(states, target_actions, mean_action(skill.policy, states))

    def __len__(self):
        return self.states.shape[0]


def selection_probs(skill_set):
    """
    Beceri seçim olasılıkları: softmax(r_i / κ)

    Args:
        skill_set (SkillSet): Beceri kümesi

    Returns:
        numpy.ndarray: N uzunluklu olasılık vektörü
    """
    return softmax(skill_set.relevance / skill_set.temperature)


def select_skill(skill_set, rng):
    """
    Seçim olasılıklarından kategorik beceri çekilişi

    Args:
        skill_set (SkillSet): Beceri kümesi
        rng (numpy.random.Generator): Üreteç

    Returns:
        int: Beceri sırası
    """
    if len(skill_set) == 1:
        return 0
    return int(rng.choice(len(skill_set), p=selection_probs(skill_set)))


def prediction_error(batch):
    """
    ε_i = (1/M) Σ_m ‖â_{i,m} − a_m‖²

    Args:
        batch (SkillBatch): Topluluk

    Returns:
        float: Ortalama kare hata
    """
    diff = batch.predicted_actions - batch.target_actions
    return float(np.mean(np.sum(diff ** 2, axis=-1)))


def skill_loss(skill, batch, beta):
    """
    loss_i = ε_i + β·Ĥ ve parametre türevi

    Tahminler becerinin ortalama eylemlerinden yeniden hesaplanır; Ĥ topluluk
    durumları üzerinden ortalama kapalı biçim entropidir.

    Args:
        skill (Skill): Beceri
        batch (SkillBatch): Topluluk
        beta (float): Entropi katsayısı

    Returns:
        tuple: (kayıp, ParamVector türev)
    """
    policy = skill.policy
    states = batch.states
    m = len(batch)

    mu, _, _ = heads(policy, states)
    predicted = np.tanh(mu) if policy.squash else mu
    diff = predicted - batch.target_actions
    eps = float(np.mean(np.sum(diff ** 2, axis=-1)))
    h = float(np.mean(entropy(policy, states)))
    loss = eps + beta * h

    d_pred = 2.0 * diff / m
    d_mu = d_pred * (1.0 - predicted ** 2) if policy.squash else d_pred
    d_log_std = np.full(mu.shape, beta / m)
    grad = head_backward(policy, states, d_mu, d_log_std)
    return loss, grad


def update_relevance(skill_set, per_skill_performance, eta):
    """
    İlgi puanı güncellemesi: r_i ← (1 − η)·r_i + η·z_i

    z, performans vektörünün z-puanıdır (sabit vektör için sıfır). NaN
    performans "bu aralıkta veri yok" anlamına gelir ve o becerinin puanı
    aynen taşınır.

    Args:
        skill_set (SkillSet): Beceri kümesi (yerinde güncellenir)
        per_skill_performance (array-like): N uzunluklu performans vektörü
        eta (float): Karıştırma oranı, (0, 1]

    Returns:
        SkillSet: Güncellenmiş küme
    """
    if not (0.0 < eta <= 1.0):
        raise ValueError(f"eta (0, 1] aralığında olmalı: {eta}")
    performance = np.asarray(per_skill_performance, dtype=np.float64)
    if performance.shape != (len(skill_set),):
        raise ShapeError(f"Performans vektörü uzunluğu {performance.shape} beceri sayısıyla uyuşmuyor")

    valid = np.isfinite(performance)
    z = np.zeros(len(skill_set))
    if np.any(valid):
        values = performance[valid]
        if np.ptp(values) > 0:
            z[valid] = (values - values.mean()) / values.std()

    old = skill_set.relevance
    skill_set.set_relevance(np.where(valid, (1.0 - eta) * old + eta * z, old))
    logger.debug(f"İlgi puanları güncellendi: {skill_set.relevance}")
    return skill_set
