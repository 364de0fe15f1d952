#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tablo laboratuvarı özellik takımı

Rastgele MDP'ler üzerinde büzülme, monoton iyileştirme, sabit nokta,
rastgele politikalara üstünlük ve karışım entropisi denetimlerini çalıştırır.
"""

import time
import math
import logging
from dataclasses import dataclass, field

import numpy as np

from tabular.tabular_lab import (TabularMDP, TabularPolicy, QTable, soft_backup, soft_optimal_backup,
                                 soft_policy_evaluation, soft_policy_evaluation_exact, soft_policy_improvement,
                                 soft_policy_iteration, soft_value_iteration, mixture_entropy_gap,
                                 random_mdp, random_policy)
from utils.errors import VerificationError

logger = logging.getLogger(__name__)

CHECK_TOL = 1e-8
CONTRACTION_SLACK = 1e-9
MAX_SIZE = 6
RANDOM_POLICIES = 50
JENSEN_INSTANCES = 10_000


@dataclass
class VerificationRow:
    """
    Tek denetimin sonucu
    """
    name: str
    passed: bool
    cases: int
    worst: float
    detail: str = ""
    seconds: float = 0.0


@dataclass
class VerificationReport:
    """
    Denetim tablosu ve kaydedilen karşı örnek
    """
    seed: int
    rows: list = field(default_factory=list)
    counterexample: object = None

    @property
    def passed(self):
        return all(row.passed for row in self.rows)

    def as_table(self):
        """
        Satırları hizalı metin tablo olarak döndürür
        """
        header = f"{'Denetim':<34} {'Sonuç':<7} {'Durum':>6} {'En kötü':>12} {'Süre (s)':>9}  Açıklama"
        lines = [header, "-" * len(header)]
        for row in self.rows:
            status = "GEÇTİ" if row.passed else "KALDI"
            lines.append(f"{row.name:<34} {status:<7} {row.cases:>6} {row.worst:>12.3e} {row.seconds:>9.2f}  {row.detail}")
        lines.append("-" * len(header))
        lines.append("Genel sonuç: " + ("GEÇTİ" if self.passed else "KALDI"))
        return "\n".join(lines)


def _random_case(rng):
    n_states = int(rng.integers(1, MAX_SIZE + 1))
    n_actions = int(rng.integers(1, MAX_SIZE + 1))
    return random_mdp(rng, n_states, n_actions)


def check_contraction(rng, cases):
    """
    ‖T Q₁ − T Q₂‖_∞ ≤ γ‖Q₁ − Q₂‖_∞ hem T^π hem T* için
    """
    worst = -math.inf
    for _ in range(cases):
        mdp = _random_case(rng)
        policy = random_policy(rng, mdp.n_states, mdp.n_actions, sparse=True)
        shape = (mdp.n_states, mdp.n_actions)
        q1 = QTable(rng.normal(scale=5.0, size=shape))
        q2 = QTable(rng.normal(scale=5.0, size=shape))
        gap = q1.distance(q2)
        for backup in (lambda q: soft_backup(mdp, policy, q), lambda q: soft_optimal_backup(mdp, q)):
            excess = backup(q1).distance(backup(q2)) - mdp.gamma * gap
            worst = max(worst, excess)
    return VerificationRow("Büzülme (T^π, T*)", worst <= CONTRACTION_SLACK, cases, worst,
                           "max(‖TQ₁−TQ₂‖ − γ‖Q₁−Q₂‖)")


def check_evaluation(rng, cases):
    """
    Yinelemeli değerlendirme doğrusal çözümle örtüşür
    """
    worst = 0.0
    for _ in range(cases):
        mdp = _random_case(rng)
        policy = random_policy(rng, mdp.n_states, mdp.n_actions, sparse=True)
        worst = max(worst, soft_policy_evaluation(mdp, policy).distance(soft_policy_evaluation_exact(mdp, policy)))
    return VerificationRow("Politika değerlendirme", worst < CHECK_TOL, cases, worst, "yinelemeli ile doğrusal çözüm farkı")


def check_policy_iteration(rng, cases):
    """
    Monotonluk, sabit nokta, değer iterasyonu uyumu ve rastgele politikalara üstünlük
    """
    rows = {
        "monotone": 0.0,
        "residual": 0.0,
        "invariance": 0.0,
        "value_iteration": 0.0,
        "dominance": 0.0,
    }
    not_converged = 0
    for _ in range(cases):
        mdp = _random_case(rng)
        result = soft_policy_iteration(mdp)
        if not result.converged:
            not_converged += 1

        for prev, cur in zip(result.trace, result.trace[1:]):
            rows["monotone"] = max(rows["monotone"], float(np.max(prev - cur)))

        rows["residual"] = max(rows["residual"], soft_backup(mdp, result.policy, result.q).distance(result.q))
        rows["invariance"] = max(rows["invariance"],
                                 soft_policy_improvement(mdp, result.q).total_variation(result.policy))
        q_vi, _, _ = soft_value_iteration(mdp)
        rows["value_iteration"] = max(rows["value_iteration"], q_vi.distance(result.q))

        for _ in range(RANDOM_POLICIES):
            other = random_policy(rng, mdp.n_states, mdp.n_actions, sparse=True)
            q_other = soft_policy_evaluation_exact(mdp, other)
            rows["dominance"] = max(rows["dominance"], float(np.max(q_other.values - result.q.values)))

    suffix = f"; yakınsamayan {not_converged}" if not_converged else ""
    return [
        VerificationRow("Monoton iyileştirme", rows["monotone"] <= CHECK_TOL and not not_converged, cases,
                        rows["monotone"], "max(V_k − V_{k+1})" + suffix),
        VerificationRow("Sabit nokta artığı", rows["residual"] < CHECK_TOL, cases, rows["residual"],
                        "‖T^π* Q* − Q*‖"),
        VerificationRow("İyileştirme değişmezliği", rows["invariance"] < CHECK_TOL, cases, rows["invariance"],
                        "TV(improve(Q*), π*)"),
        VerificationRow("Değer iterasyonu uyumu", rows["value_iteration"] < CHECK_TOL, cases,
                        rows["value_iteration"], "‖Q_VI − Q_PI‖"),
        VerificationRow("Rastgele politikalara üstünlük", rows["dominance"] <= CHECK_TOL, cases * RANDOM_POLICIES,
                        rows["dominance"], "max(Q^π − Q*)"),
    ]


def check_bandit_anchor():
    """
    Tek durumlu haydut: r=(1,0), γ=0, α=1 → V* = log(1+e), π* = (0.731059, 0.268941)
    """
    mdp = TabularMDP(np.ones((1, 2, 1)), np.array([[1.0, 0.0]]), gamma=0.0, alpha=1.0)
    result = soft_policy_iteration(mdp)
    v_star = float(mdp.alpha * np.log(np.sum(np.exp(result.q.values / mdp.alpha))))
    expected_policy = np.array([math.e / (1.0 + math.e), 1.0 / (1.0 + math.e)])
    err = max(abs(v_star - math.log(1.0 + math.e)), float(np.max(np.abs(result.policy.table[0] - expected_policy))))
    return VerificationRow("Kapalı biçim haydut", err < 1e-9, 1, err, f"V*={v_star:.6f}")


def check_mixture_entropy(rng, instances):
    """
    Jensen sınırı rastgele örneklerde; güçlü iddia için karşı örnek kaydı
    """
    violations = 0
    worst = -math.inf
    for _ in range(instances):
        n = int(rng.integers(1, MAX_SIZE + 1))
        k = int(rng.integers(2, MAX_SIZE + 1))
        weights = rng.dirichlet(np.ones(n))
        weights /= weights.sum()
        dists = rng.dirichlet(np.ones(k), size=n)
        dists /= dists.sum(axis=1, keepdims=True)
        try:
            res = mixture_entropy_gap(weights, dists)
            worst = max(worst, res.weighted_entropy - res.mixture_entropy)
        except VerificationError:
            violations += 1

    counterexample = mixture_entropy_gap(np.array([0.01, 0.99]), np.array([[0.5, 0.5], [1.0, 0.0]]))
    logger.info(f"Karşı örnek: H(karışım)={counterexample.mixture_entropy:.6f} < "
                f"max H_i={np.max(counterexample.component_entropies):.6f}")
    row = VerificationRow("Karışım entropisi (Jensen)", violations == 0 and not counterexample.exceeds_max_component,
                          instances, worst, f"ihlal {violations}; karşı örnek H={counterexample.mixture_entropy:.6f}")
    return row, counterexample


def _timed(func, *args):
    start = time.perf_counter()
    result = func(*args)
    elapsed = time.perf_counter() - start
    rows = result if isinstance(result, list) else [result]
    for row in rows:
        row.seconds = elapsed / len(rows)
    return rows


def run_verification(seed=0, cases=100, jensen_instances=JENSEN_INSTANCES):
    """
    Tüm denetimleri tohumlu rastgele durumlar üzerinde çalıştırır

    Args:
        seed (int): Tohum
        cases (int): Denetim başına rastgele MDP sayısı
        jensen_instances (int): Karışım entropisi örnek sayısı

    Returns:
        VerificationReport: Rapor
    """
    if cases <= 0:
        raise ValueError(f"Durum sayısı pozitif olmalı: {cases}")
    logger.info(f"Tablo doğrulama başlıyor: seed={seed}, cases={cases}")
    streams = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(4)]

    report = VerificationReport(seed)
    report.rows += _timed(check_contraction, streams[0], cases)
    report.rows += _timed(check_evaluation, streams[1], cases)
    report.rows += _timed(check_policy_iteration, streams[2], cases)
    report.rows += _timed(check_bandit_anchor)

    start = time.perf_counter()
    row, report.counterexample = check_mixture_entropy(streams[3], jensen_instances)
    row.seconds = time.perf_counter() - start
    report.rows.append(row)

    for row in report.rows:
        if not row.passed:
            logger.error(f"Denetim başarısız: {row.name} (en kötü {row.worst:.3e})")
    logger.info(f"Tablo doğrulama bitti: {'GEÇTİ' if report.passed else 'KALDI'}")
    return report
