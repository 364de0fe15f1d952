#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Yoğun (tam bağlı) ağ sayısal çekirdeği

Düz bir parametre vektörü, tanh gizli katmanlı çok katmanlı algılayıcı,
tam ters yön türevleri, Adam adımı ve Polyak karıştırması.
"""

import math
import logging
from dataclasses import dataclass

import numpy as np

from utils.errors import ShapeError, NonFiniteError

logger = logging.getLogger(__name__)

DEFAULT_HIDDEN = (64, 64)


class ParamVector:
    """
    Düz 64 bit gerçel dizi ve (ad, şekil) tanımlayıcı tablosu
    """

    def __init__(self, values, layout):
        """
        Parametre vektörünü oluşturur

        Args:
            values (array-like): Düz değer dizisi
            layout (list): (ad, şekil) tanımlayıcıları

        Raises:
            ShapeError: Değer sayısı tanımlayıcılarla uyuşmuyorsa
            NonFiniteError: Sonlu olmayan değer varsa
        """
        self.values = np.array(values, dtype=np.float64).reshape(-1)
        self.layout = [(str(name), tuple(int(d) for d in shape)) for name, shape in layout]

        self._offsets = {}
        offset = 0
        for name, shape in self.layout:
            count = int(np.prod(shape, dtype=np.int64)) if shape else 1
            self._offsets[name] = (offset, count, shape)
            offset += count

        if offset != self.values.size:
            raise ShapeError(f"Parametre sayısı ({self.values.size}) tanımlayıcı toplamıyla ({offset}) uyuşmuyor")

        if not np.all(np.isfinite(self.values)):
            raise NonFiniteError("Parametre vektörü sonlu olmayan değer içeriyor")

    @classmethod
    def zeros(cls, layout):
        """
        Sıfır değerli parametre vektörü döndürür

        Args:
            layout (list): (ad, şekil) tanımlayıcıları

        Returns:
            ParamVector: Sıfır vektör
        """
        total = sum(int(np.prod(shape, dtype=np.int64)) if shape else 1 for _, shape in layout)
        return cls(np.zeros(total), layout)

    @property
    def size(self):
        return self.values.size

    def __len__(self):
        return self.values.size

    def view(self, name):
        """
        Adı verilen dizinin şekillendirilmiş görünümünü döndürür (kopya değil)

        Args:
            name (str): Dizi adı

        Returns:
            numpy.ndarray: Görünüm
        """
        offset, count, shape = self._offsets[name]
        return self.values[offset:offset + count].reshape(shape)

    def same_layout(self, other):
        return self.layout == other.layout

    def copy(self):
        return ParamVector(self.values.copy(), self.layout)

    def zeros_like(self):
        return ParamVector(np.zeros_like(self.values), self.layout)

    def __eq__(self, other):
        if not isinstance(other, ParamVector):
            return NotImplemented
        return self.same_layout(other) and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"ParamVector(size={self.size}, arrays={[name for name, _ in self.layout]})"


def mlp_layout(widths):
    """
    Katman genişliklerinden parametre tanımlayıcılarını üretir

    Args:
        widths (list): Katman genişlikleri

    Returns:
        list: (ad, şekil) listesi; W_k şekli (çıkış, giriş)
    """
    layout = []
    for k in range(len(widths) - 1):
        layout.append((f"W{k}", (widths[k + 1], widths[k])))
        layout.append((f"b{k}", (widths[k + 1],)))
    return layout


class Mlp:
    """
    Gizli katmanlarda tanh, çıkışta özdeşlik kullanan yoğun ağ
    """

    def __init__(self, widths, params=None, rng=None):
        """
        Ağı oluşturur

        Args:
            widths (list): Katman genişlikleri (en az iki pozitif tam sayı)
            params (ParamVector, optional): Hazır parametreler. Defaults to None.
            rng (numpy.random.Generator, optional): Başlatma üreteci. Defaults to None.
        """
        widths = [int(w) for w in widths]
        if len(widths) < 2 or any(w <= 0 for w in widths):
            raise ShapeError(f"Geçersiz katman genişlikleri: {widths}")
        self.widths = widths
        layout = mlp_layout(widths)

        if params is not None:
            if params.layout != layout:
                raise ShapeError("Parametre tanımlayıcıları katman genişlikleriyle uyuşmuyor")
            self.params = params
        else:
            if rng is None:
                rng = np.random.default_rng(0)
            self.params = ParamVector.zeros(layout)
            # ±1/sqrt(fan_in) düzgün başlatma
            for k in range(self.n_layers):
                bound = 1.0 / math.sqrt(widths[k])
                self.params.view(f"W{k}")[...] = rng.uniform(-bound, bound, size=(widths[k + 1], widths[k]))
                self.params.view(f"b{k}")[...] = rng.uniform(-bound, bound, size=(widths[k + 1],))

    @classmethod
    def zeros(cls, widths):
        """
        Tüm parametreleri sıfır olan ağ döndürür
        """
        return cls(widths, params=ParamVector.zeros(mlp_layout(widths)))

    @property
    def n_layers(self):
        return len(self.widths) - 1

    @property
    def input_dim(self):
        return self.widths[0]

    @property
    def output_dim(self):
        return self.widths[-1]

    def layer(self, k):
        """
        k. katmanın (W, b) görünümlerini döndürür
        """
        return self.params.view(f"W{k}"), self.params.view(f"b{k}")

    def copy(self):
        return Mlp(self.widths, params=self.params.copy())

    def __repr__(self):
        return f"Mlp(widths={self.widths})"


def _as_batch(net, x):
    """
    Girdiyi (B, d) biçimine getirir ve boyutu doğrular
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    x2 = x.reshape(1, -1) if single else x
    if x2.ndim != 2 or x2.shape[1] != net.input_dim:
        raise ShapeError(f"Girdi boyutu {x.shape} ağ giriş genişliği {net.input_dim} ile uyuşmuyor")
    return x2, single


def _forward_cache(net, x2):
    """
    Tüm katman aktivasyonlarını döndürür: [girdi, h1, ..., çıktı]
    """
    acts = [x2]
    h = x2
    for k in range(net.n_layers):
        W, b = net.layer(k)
        z = h @ W.T + b
        if k < net.n_layers - 1:
            z = np.tanh(z)
        if not np.all(np.isfinite(z)):
            raise NonFiniteError(f"Katman {k} çıktısı sonlu olmayan değer içeriyor")
        acts.append(z)
        h = z
    return acts


def forward(net, x):
    """
    İleri geçiş

    Args:
        net (Mlp): Ağ
        x (array-like): (d,) veya (B, d) girdi

    Returns:
        numpy.ndarray: (d_out,) veya (B, d_out) çıktı

    Raises:
        ShapeError: Girdi boyutu ilk katman genişliğine eşit değilse
    """
    x2, single = _as_batch(net, x)
    out = _forward_cache(net, x2)[-1]
    return out[0] if single else out


def backward(net, x, output_grad):
    """
    Ters yön türev hesabı

    Toplu girdide parametre türevleri örnekler üzerinden toplanır.

    Args:
        net (Mlp): Ağ
        x (array-like): (d,) veya (B, d) girdi
        output_grad (array-like): Çıktıya göre kayıp türevi, çıktıyla aynı şekil

    Returns:
        tuple: (ParamVector parametre türevi, girdi türevi)
    """
    x2, single = _as_batch(net, x)
    g = np.asarray(output_grad, dtype=np.float64).reshape(x2.shape[0], net.output_dim)
    acts = _forward_cache(net, x2)

    grad = ParamVector.zeros(net.params.layout)
    for k in reversed(range(net.n_layers)):
        W, _ = net.layer(k)
        grad.view(f"W{k}")[...] = g.T @ acts[k]
        grad.view(f"b{k}")[...] = g.sum(axis=0)
        g = g @ W
        if k > 0:
            # tanh'(z) = 1 - tanh(z)^2
            g = g * (1.0 - acts[k] ** 2)
        if not np.all(np.isfinite(g)):
            raise NonFiniteError(f"Katman {k} türevi sonlu olmayan değer içeriyor")

    input_grad = g[0] if single else g
    return grad, input_grad


@dataclass
class AdamState:
    """
    Adam iyileştirici durumu
    """
    m: np.ndarray
    v: np.ndarray
    step: int = 0
    lr: float = 3e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def for_params(cls, params, lr=3e-4, beta1=0.9, beta2=0.999, eps=1e-8):
        """
        Parametre vektörüyle hizalı sıfır momentli durum döndürür
        """
        if lr <= 0 or eps <= 0 or not (0 < beta1 < 1) or not (0 < beta2 < 1):
            raise ValueError("Adam hiperparametreleri aralık dışında")
        return cls(np.zeros(params.size), np.zeros(params.size), 0, lr, beta1, beta2, eps)


def adam_step(state, params, grads):
    """
    Sapma düzeltmeli tek Adam adımı

    Args:
        state (AdamState): İyileştirici durumu
        params (ParamVector): Parametreler
        grads (ParamVector): Türevler

    Returns:
        tuple: (yeni ParamVector, yeni AdamState)

    Raises:
        ValueError: Uzunluklar uyuşmuyorsa
    """
    if not (params.size == grads.size == state.m.size == state.v.size):
        raise ValueError(f"Adam uzunluk uyuşmazlığı: parametre {params.size}, türev {grads.size}, moment {state.m.size}")

    g = grads.values
    step = state.step + 1
    m = state.beta1 * state.m + (1.0 - state.beta1) * g
    v = state.beta2 * state.v + (1.0 - state.beta2) * (g * g)
    m_hat = m / (1.0 - state.beta1 ** step)
    v_hat = v / (1.0 - state.beta2 ** step)
    values = params.values - state.lr * m_hat / (np.sqrt(v_hat) + state.eps)

    new_state = AdamState(m, v, step, state.lr, state.beta1, state.beta2, state.eps)
    return ParamVector(values, params.layout), new_state


def polyak_update(target, online, tau):
    """
    Hedef ağ takibi: θ' ← τθ + (1−τ)θ'

    Args:
        target (ParamVector): Hedef parametreler
        online (ParamVector): Çevrimiçi parametreler
        tau (float): Karıştırma katsayısı, [0, 1]

    Returns:
        ParamVector: Güncellenmiş hedef
    """
    if not (0.0 <= tau <= 1.0):
        raise ValueError(f"tau [0, 1] aralığında olmalı: {tau}")
    if not target.same_layout(online):
        raise ShapeError("Hedef ve çevrimiçi parametre tanımlayıcıları uyuşmuyor")
    return ParamVector(tau * online.values + (1.0 - tau) * target.values, target.layout)
