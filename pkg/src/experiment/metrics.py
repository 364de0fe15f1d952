#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Öğrenme eğrisi ölçütleri
"""

import math

import numpy as np

FINAL_EVALS = 10


def moving_average(values, window):
    """
    Sondan kayan ortalama; ilk window−1 noktada kısmi pencere kullanılır

    Args:
        values (array-like): Seri
        window (int): Pencere boyu

    Returns:
        numpy.ndarray: Ortalama serisi
    """
    if window <= 0:
        raise ValueError(f"Pencere boyu pozitif olmalı: {window}")
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return values.copy()
    sums = np.concatenate([[0.0], np.cumsum(values)])
    end = np.arange(1, values.size + 1)
    start = np.maximum(end - window, 0)
    return (sums[end] - sums[start]) / (end - start)


def steps_to_threshold(steps, returns, threshold, window):
    """
    Kayan ortalama getirinin eşiğe ulaştığı ilk adım

    Returns:
        int | None: Adım; ulaşılmadıysa None
    """
    avg = moving_average(returns, window)
    hits = np.nonzero(avg >= threshold)[0]
    if hits.size == 0:
        return None
    return int(np.asarray(steps)[hits[0]])


def final_mean(returns, count=FINAL_EVALS):
    """
    Son değerlendirmelerin ortalaması
    """
    returns = np.asarray(returns, dtype=np.float64)
    if returns.size == 0:
        return math.nan
    return float(np.mean(returns[-count:]))


def time_to_entropy(steps, entropies, epsilon):
    """
    Entropi izinin en büyük değerinin epsilon yakınına ilk girdiği adım

    Args:
        steps (array-like): Adımlar
        entropies (array-like): Entropi izi
        epsilon (float): Tolerans (negatif olamaz)

    Returns:
        int | None: Adım; iz boşsa None
    """
    if epsilon < 0:
        raise ValueError(f"epsilon negatif olamaz: {epsilon}")
    entropies = np.asarray(entropies, dtype=np.float64)
    finite = np.isfinite(entropies)
    if not np.any(finite):
        return None
    peak = np.max(entropies[finite])
    hits = np.nonzero(finite & (entropies >= peak - epsilon))[0]
    return int(np.asarray(steps)[hits[0]])
