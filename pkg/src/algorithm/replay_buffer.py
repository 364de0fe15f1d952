#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Beceri etiketli deneyim tekrar belleği
"""

import logging
from dataclasses import dataclass

import numpy as np

from utils.errors import ShapeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Transition:
    """
    (s, a, r, s', done, beceri) kaydı
    """
    state: np.ndarray
    action: np.ndarray
    reward: float
    next_state: np.ndarray
    done: bool
    skill_index: int


@dataclass
class ReplaySample:
    """
    Bellekten çekilen dizi biçimli topluluk
    """
    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_states: np.ndarray
    dones: np.ndarray
    skill_indices: np.ndarray

    def __len__(self):
        return self.states.shape[0]


class ReplayBuffer:
    """
    Sabit kapasiteli halka bellek; taşmada en eski kayıt silinir (FIFO)
    """

    def __init__(self, capacity, state_dim, action_dim):
        """
        Belleği oluşturur

        Args:
            capacity (int): Kapasite
            state_dim (int): Durum boyutu
            action_dim (int): Eylem boyutu
        """
        if capacity <= 0:
            raise ValueError(f"Bellek kapasitesi pozitif olmalı: {capacity}")
        self.capacity = int(capacity)
        self.state_dim = int(state_dim)
        self.action_dim = int(action_dim)
        self.logger = logging.getLogger(__name__)

        self.states = np.zeros((self.capacity, self.state_dim))
        self.actions = np.zeros((self.capacity, self.action_dim))
        self.rewards = np.zeros(self.capacity)
        self.next_states = np.zeros((self.capacity, self.state_dim))
        self.dones = np.zeros(self.capacity, dtype=bool)
        self.skill_indices = np.zeros(self.capacity, dtype=np.int64)

        self.count = 0
        self._next = 0

    def __len__(self):
        return self.count

    def store(self, transition):
        """
        Kaydı ekler

        Args:
            transition (Transition): Kayıt

        Raises:
            ShapeError: Boyutlar bellekle uyuşmuyorsa
        """
        state = np.asarray(transition.state, dtype=np.float64)
        next_state = np.asarray(transition.next_state, dtype=np.float64)
        action = np.asarray(transition.action, dtype=np.float64)
        if state.shape != (self.state_dim,) or next_state.shape != (self.state_dim,):
            raise ShapeError(f"Durum boyutu {state.shape} / {next_state.shape}, beklenen ({self.state_dim},)")
        if action.shape != (self.action_dim,):
            raise ShapeError(f"Eylem boyutu {action.shape}, beklenen ({self.action_dim},)")
        if not np.isfinite(transition.reward):
            raise ValueError("Ödül sonlu olmalıdır")

        i = self._next
        self.states[i] = state
        self.actions[i] = action
        self.rewards[i] = float(transition.reward)
        self.next_states[i] = next_state
        self.dones[i] = bool(transition.done)
        self.skill_indices[i] = int(transition.skill_index)

        self._next = (self._next + 1) % self.capacity
        self.count = min(self.count + 1, self.capacity)

    def _physical(self, logical):
        # mantıksal 0 = en eski kayıt
        start = self._next if self.count == self.capacity else 0
        return (start + np.asarray(logical)) % self.capacity

    def get(self, logical_index):
        """
        En eskiden başlayarak sıradaki kaydı döndürür
        """
        if not (0 <= logical_index < self.count):
            raise IndexError(f"Geçersiz kayıt sırası: {logical_index}")
        i = int(self._physical(logical_index))
        return Transition(self.states[i].copy(), self.actions[i].copy(), float(self.rewards[i]),
                          self.next_states[i].copy(), bool(self.dones[i]), int(self.skill_indices[i]))

    def take(self, physical_indices):
        """
        Fiziksel sıralarla dizi biçimli topluluk döndürür
        """
        idx = np.asarray(physical_indices, dtype=np.int64)
        return ReplaySample(self.states[idx], self.actions[idx], self.rewards[idx],
                            self.next_states[idx], self.dones[idx], self.skill_indices[idx])

    def sample(self, rng, batch_size):
        """
        Saklanan kayıtlar üzerinden düzgün, yerine koymalı örnekleme

        Args:
            rng (numpy.random.Generator): Üreteç
            batch_size (int): Topluluk boyutu

        Returns:
            ReplaySample: Topluluk
        """
        if self.count == 0:
            raise ValueError("Boş bellekten örnek çekilemez")
        return self.take(rng.integers(0, self.count, size=batch_size))
