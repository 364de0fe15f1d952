#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sonlu MDP üzerinde kesin yumuşak (maksimum entropi) pekiştirmeli öğrenme

Yumuşak Bellman yedeği, yumuşak politika değerlendirme/iyileştirme/iterasyonu,
yumuşak değer iterasyonu ve karışım entropisi denetimleri. Tüm işlemler saftır.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp, softmax, xlogy

from utils.errors import StochasticMatrixError, NonFiniteError, VerificationError

logger = logging.getLogger(__name__)

STOCHASTIC_TOL = 1e-12
DEFAULT_TOL = 1e-10


def _check_rows(table, name):
    table = np.asarray(table, dtype=np.float64)
    if np.any(table < 0):
        raise StochasticMatrixError(f"{name} negatif olasılık içeriyor")
    sums = table.sum(axis=-1)
    if not np.all(np.abs(sums - 1.0) <= STOCHASTIC_TOL):
        worst = float(np.max(np.abs(sums - 1.0)))
        raise StochasticMatrixError(f"{name} satırlarının toplamı 1 değil (sapma {worst:.3e})")
    return table


@dataclass
class TabularMDP:
    """
    Sonlu MDP: P[s, a, s'], r[s, a], γ ∈ [0, 1), α > 0
    """
    transitions: np.ndarray
    rewards: np.ndarray
    gamma: float
    alpha: float = 1.0

    def __post_init__(self):
        self.transitions = _check_rows(self.transitions, "Geçiş tensörü")
        self.rewards = np.asarray(self.rewards, dtype=np.float64)
        if self.transitions.ndim != 3 or self.transitions.shape[0] != self.transitions.shape[2]:
            raise StochasticMatrixError(f"Geçiş tensörü (|S|, |A|, |S|) şeklinde olmalı: {self.transitions.shape}")
        if self.rewards.shape != self.transitions.shape[:2]:
            raise ValueError(f"Ödül tablosu şekli {self.rewards.shape}, beklenen {self.transitions.shape[:2]}")
        if not np.all(np.isfinite(self.rewards)):
            raise NonFiniteError("Ödül tablosu sonlu olmayan değer içeriyor")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError(f"gamma [0, 1) aralığında olmalı: {self.gamma}")
        if not self.alpha > 0:
            raise ValueError(f"alpha pozitif olmalı: {self.alpha}")

    @property
    def n_states(self):
        return self.transitions.shape[0]

    @property
    def n_actions(self):
        return self.transitions.shape[1]


@dataclass
class TabularPolicy:
    """
    π(a|s) tablosu
    """
    table: np.ndarray

    def __post_init__(self):
        self.table = _check_rows(self.table, "Politika tablosu")
        if self.table.ndim != 2:
            raise StochasticMatrixError("Politika tablosu iki boyutlu olmalı")

    @classmethod
    def uniform(cls, n_states, n_actions):
        return cls(np.full((n_states, n_actions), 1.0 / n_actions))

    def entropy(self):
        """
        Durum başına entropi (0·log 0 = 0)
        """
        return -np.sum(xlogy(self.table, self.table), axis=1)

    def total_variation(self, other):
        """
        Durumlar üzerinden en büyük toplam varyasyon uzaklığı
        """
        return float(np.max(0.5 * np.sum(np.abs(self.table - other.table), axis=1)))


@dataclass
class QTable:
    """
    Q(s, a) tablosu
    """
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if not np.all(np.isfinite(self.values)):
            raise NonFiniteError("Q tablosu sonlu olmayan değer içeriyor")

    @classmethod
    def zeros(cls, mdp):
        return cls(np.zeros((mdp.n_states, mdp.n_actions)))

    def distance(self, other):
        return float(np.max(np.abs(self.values - other.values)))


def _check_compatible(mdp, policy=None, q=None):
    shape = (mdp.n_states, mdp.n_actions)
    if policy is not None and policy.table.shape != shape:
        raise ValueError(f"Politika şekli {policy.table.shape}, beklenen {shape}")
    if q is not None and q.values.shape != shape:
        raise ValueError(f"Q tablosu şekli {q.values.shape}, beklenen {shape}")


def soft_value(mdp, policy, q):
    """
    V(s) = Σ_a π(a|s)·(Q(s,a) − α·log π(a|s)); sıfır olasılıklı eylemler katkı vermez

    Args:
        mdp (TabularMDP): MDP
        policy (TabularPolicy): Politika
        q (QTable): Q tablosu

    Returns:
        numpy.ndarray: Durum başına yumuşak değer
    """
    _check_compatible(mdp, policy, q)
    pi = policy.table
    return np.sum(pi * q.values, axis=1) - mdp.alpha * np.sum(xlogy(pi, pi), axis=1)


def soft_backup(mdp, policy, q):
    """
    T^π Q(s,a) = r(s,a) + γ·Σ_s' P(s'|s,a)·V(s')

    Args:
        mdp (TabularMDP): MDP
        policy (TabularPolicy): Politika
        q (QTable): Q tablosu

    Returns:
        QTable: Yedeklenmiş tablo
    """
    v = soft_value(mdp, policy, q)
    return QTable(mdp.rewards + mdp.gamma * mdp.transitions @ v)


def soft_optimal_backup(mdp, q):
    """
    T*Q(s,a) = r(s,a) + γ·Σ_s' P(s'|s,a)·α·logsumexp(Q(s',·)/α)
    """
    _check_compatible(mdp, q=q)
    v = mdp.alpha * logsumexp(q.values / mdp.alpha, axis=1)
    return QTable(mdp.rewards + mdp.gamma * mdp.transitions @ v)


def soft_policy_evaluation(mdp, policy, tol=DEFAULT_TOL, q0=None, max_iters=1_000_000):
    """
    T^π sabit noktasına yinelemeli yakınsama

    ‖Q_{k+1} − Q_k‖_∞ < tol olduğunda durur.

    Args:
        mdp (TabularMDP): MDP
        policy (TabularPolicy): Politika
        tol (float): Tolerans
        q0 (QTable, optional): Başlangıç tablosu
        max_iters (int): Güvenlik sınırı

    Returns:
        QTable: Sabit nokta
    """
    if tol <= 0:
        raise ValueError(f"tol pozitif olmalı: {tol}")
    q = q0 if q0 is not None else QTable.zeros(mdp)
    for _ in range(max_iters):
        nxt = soft_backup(mdp, policy, q)
        if nxt.distance(q) < tol:
            return nxt
        q = nxt
    logger.warning(f"Politika değerlendirme {max_iters} yinelemede yakınsamadı")
    return q


def soft_policy_evaluation_exact(mdp, policy):
    """
    Doğrusal çözüm: (I − γ·P_π)·Q = r + γ·P·h_π, h_π(s) = −α·Σ_a π log π

    Args:
        mdp (TabularMDP): MDP
        policy (TabularPolicy): Politika

    Returns:
        QTable: Kesin Q^π
    """
    _check_compatible(mdp, policy)
    n_s, n_a = mdp.n_states, mdp.n_actions
    pi = policy.table
    h = -mdp.alpha * np.sum(xlogy(pi, pi), axis=1)
    # P_π[(s,a), (s',a')] = P(s'|s,a)·π(a'|s')
    p_pi = (mdp.transitions[:, :, :, None] * pi[None, None, :, :]).reshape(n_s * n_a, n_s * n_a)
    rhs = (mdp.rewards + mdp.gamma * mdp.transitions @ h).reshape(-1)
    q = np.linalg.solve(np.eye(n_s * n_a) - mdp.gamma * p_pi, rhs)
    return QTable(q.reshape(n_s, n_a))


def soft_policy_improvement(mdp, q):
    """
    Boltzmann politikası: π'(a|s) ∝ exp(Q(s,a)/α)

    E_π[Q] + α·H(π) ifadesinin kesin en büyükleyicisidir.
    """
    _check_compatible(mdp, q=q)
    return TabularPolicy(softmax(q.values / mdp.alpha, axis=1))


@dataclass
class PolicyIterationResult:
    """
    Yumuşak politika iterasyonu sonucu
    """
    policy: TabularPolicy
    q: QTable
    trace: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False


def soft_policy_iteration(mdp, tol=DEFAULT_TOL, max_iters=1000, initial_policy=None):
    """
    Değerlendirme ve iyileştirmeyi ardışık uygular

    İz, her turun durum başına yumuşak değerlerini tutar. Ardışık
    politikaların toplam varyasyon farkı tol altına indiğinde durur.

    Args:
        mdp (TabularMDP): MDP
        tol (float): Tolerans
        max_iters (int): En fazla tur
        initial_policy (TabularPolicy, optional): Başlangıç (varsayılan düzgün)

    Returns:
        PolicyIterationResult: Son politika, Q, değer izi ve yakınsama bayrağı
    """
    policy = initial_policy if initial_policy is not None else TabularPolicy.uniform(mdp.n_states, mdp.n_actions)
    q = soft_policy_evaluation(mdp, policy, tol)
    trace = [soft_value(mdp, policy, q)]

    for iteration in range(1, max_iters + 1):
        improved = soft_policy_improvement(mdp, q)
        # sabit noktaya yakın başlangıç yinelemeyi kısaltır
        q_new = soft_policy_evaluation(mdp, improved, tol, q0=q)
        trace.append(soft_value(mdp, improved, q_new))
        change = improved.total_variation(policy)
        policy, q = improved, q_new
        if change < tol:
            return PolicyIterationResult(policy, q, trace, iteration, True)

    logger.warning(f"Yumuşak politika iterasyonu {max_iters} turda yakınsamadı")
    return PolicyIterationResult(policy, q, trace, max_iters, False)


def soft_value_iteration(mdp, tol=DEFAULT_TOL, max_iters=1_000_000):
    """
    T* operatörünün sabit noktası

    Returns:
        tuple: (QTable, yineleme sayısı, yakınsadı mı)
    """
    q = QTable.zeros(mdp)
    for iteration in range(1, max_iters + 1):
        nxt = soft_optimal_backup(mdp, q)
        if nxt.distance(q) < tol:
            return nxt, iteration, True
        q = nxt
    logger.warning(f"Yumuşak değer iterasyonu {max_iters} yinelemede yakınsamadı")
    return q, max_iters, False


@dataclass
class MixtureEntropyResult:
    """
    Karışım entropisi raporu
    """
    mixture_entropy: float
    weighted_entropy: float
    component_entropies: np.ndarray
    exceeds_max_component: bool


def discrete_entropy(p):
    p = np.asarray(p, dtype=np.float64)
    return -np.sum(xlogy(p, p), axis=-1)


def mixture_entropy_gap(weights, distributions, tol=1e-12):
    """
    H(Σ w_i p_i) ile Σ w_i H(p_i) karşılaştırması

    Jensen eşitsizliği doğrulanır; karışımın en büyük bileşen entropisini
    geçip geçmediği yalnızca raporlanır.

    Args:
        weights (array-like): Simpleks üzerindeki ağırlıklar
        distributions (array-like): (N, K) satır-stokastik dağılımlar
        tol (float): Jensen denetimi toleransı

    Returns:
        MixtureEntropyResult: Entropiler

    Raises:
        StochasticMatrixError: Geçersiz simpleks girdisinde
        VerificationError: Jensen sınırı ihlal edilirse
    """
    weights = _check_rows(np.atleast_1d(weights), "Ağırlık vektörü")
    distributions = _check_rows(np.atleast_2d(distributions), "Dağılım tablosu")
    if weights.shape[0] != distributions.shape[0]:
        raise ValueError(f"Ağırlık sayısı ({weights.shape[0]}) dağılım sayısıyla ({distributions.shape[0]}) uyuşmuyor")

    components = discrete_entropy(distributions)
    mixture = float(discrete_entropy(weights @ distributions))
    weighted = float(weights @ components)
    if mixture < weighted - tol:
        raise VerificationError(f"Jensen sınırı ihlal edildi: H(karışım)={mixture}, Σ w_i H_i={weighted}")

    exceeds = bool(mixture >= np.max(components))
    if not exceeds:
        logger.debug(f"Karışım entropisi ({mixture:.6f}) en büyük bileşen entropisinin ({np.max(components):.6f}) altında")
    return MixtureEntropyResult(mixture, weighted, components, exceeds)


def random_mdp(rng, n_states, n_actions, gamma=None, alpha=None):
    """
    Tohumlu rastgele MDP

    Geçiş satırları Dirichlet(1), ödüller U[−1, 1]. Verilmezse γ ∈ [0.3, 0.9],
    α ∈ [0.1, 2] çekilir.
    """
    transitions = rng.dirichlet(np.ones(n_states), size=(n_states, n_actions))
    # Dirichlet satırları kayan nokta hatasıyla 1'den sapabilir
    transitions /= transitions.sum(axis=-1, keepdims=True)
    rewards = rng.uniform(-1.0, 1.0, size=(n_states, n_actions))
    if gamma is None:
        gamma = float(rng.uniform(0.3, 0.9))
    if alpha is None:
        alpha = float(rng.uniform(0.1, 2.0))
    return TabularMDP(transitions, rewards, gamma, alpha)


def random_policy(rng, n_states, n_actions, sparse=False):
    """
    Tohumlu rastgele politika; sparse=True ise bazı eylemler sıfır olasılıklı olur
    """
    table = rng.dirichlet(np.ones(n_actions), size=n_states)
    if sparse and n_actions > 1:
        mask = rng.random((n_states, n_actions)) < 0.3
        mask[np.arange(n_states), rng.integers(0, n_actions, size=n_states)] = False
        table = np.where(mask, 0.0, table)
    table /= table.sum(axis=1, keepdims=True)
    return TabularPolicy(table)
