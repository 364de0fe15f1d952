#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sürekli kontrol ortamları modülü

Sarkaç klasik kontrol formülasyonunu izler (θ = 0 dik konum). Noktasal
kütle, tohumdan belirlenen bir hedefe ivme ile ulaşmaya çalışır.
"""

import math
import logging
from dataclasses import dataclass

import numpy as np

from utils.errors import ShapeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnvSpec:
    """
    Ortam boyutları ve eylem sınırları
    """
    state_dim: int
    action_dim: int
    action_low: tuple
    action_high: tuple
    max_episode_steps: int

    def __post_init__(self):
        if self.state_dim <= 0 or self.action_dim <= 0:
            raise ValueError("Durum ve eylem boyutları pozitif olmalıdır")
        if len(self.action_low) != self.action_dim or len(self.action_high) != self.action_dim:
            raise ShapeError("Eylem sınırları eylem boyutuyla uyuşmuyor")
        if any(lo >= hi for lo, hi in zip(self.action_low, self.action_high)):
            raise ValueError("Her boyutta alt sınır üst sınırdan küçük olmalıdır")

    def scale_action(self, normalized):
        """
        (-1, 1) aralığındaki eylemi ortam sınırlarına ölçekler
        """
        low = np.asarray(self.action_low, dtype=np.float64)
        high = np.asarray(self.action_high, dtype=np.float64)
        return low + (np.asarray(normalized, dtype=np.float64) + 1.0) * 0.5 * (high - low)


def wrap_angle(x):
    """
    Açıyı [-π, π) aralığına getirir
    """
    return ((x + math.pi) % (2.0 * math.pi)) - math.pi


class _Environment:
    """
    Ortak adım sayacı ve eylem doğrulaması
    """

    spec = None

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.steps = 0

    def _check_action(self, action):
        action = np.asarray(action, dtype=np.float64).reshape(-1)
        if action.shape != (self.spec.action_dim,):
            raise ShapeError(f"Eylem boyutu {action.shape}, beklenen ({self.spec.action_dim},)")
        if not np.all(np.isfinite(action)):
            raise ValueError("Eylem sonlu olmayan değer içeriyor")
        low = np.asarray(self.spec.action_low)
        high = np.asarray(self.spec.action_high)
        if np.any(action < low) or np.any(action > high):
            self.logger.warning(f"Eylem sınır dışında, kırpılıyor: {action}")
            action = np.clip(action, low, high)
        return action

    def _advance(self):
        self.steps += 1
        return self.steps >= self.spec.max_episode_steps


class Pendulum(_Environment):
    """
    Tork sınırlı ters sarkaç: durum (cos θ, sin θ, θ̇)
    """

    g = 10.0
    m = 1.0
    l = 1.0
    dt = 0.05
    max_speed = 8.0
    max_torque = 2.0
    spec = EnvSpec(state_dim=3, action_dim=1, action_low=(-2.0,), action_high=(2.0,), max_episode_steps=200)

    def __init__(self):
        super().__init__()
        self.theta = math.pi
        self.theta_dot = 0.0

    def reset(self, seed):
        """
        Tohuma göre başlangıç durumu: θ ∈ [−π, π], θ̇ ∈ [−1, 1]

        Args:
            seed (int): Tohum

        Returns:
            numpy.ndarray: Gözlem
        """
        rng = np.random.default_rng(seed)
        self.theta = float(rng.uniform(-math.pi, math.pi))
        self.theta_dot = float(rng.uniform(-1.0, 1.0))
        self.steps = 0
        return self.observation()

    def set_state(self, theta, theta_dot):
        self.theta = float(theta)
        self.theta_dot = float(theta_dot)
        return self.observation()

    def observation(self):
        return np.array([math.cos(self.theta), math.sin(self.theta), self.theta_dot])

    def energy(self):
        """
        Kuvvetsiz dinamiğin korunan büyüklüğü: ½θ̇² + (3g/2l)·cos θ
        """
        return 0.5 * self.theta_dot ** 2 + 1.5 * self.g / self.l * math.cos(self.theta)

    def step(self, action):
        """
        Yarı örtük Euler adımı

        Args:
            action (array-like): Tork, [−2, 2]

        Returns:
            tuple: (gözlem, ödül, bitti)
        """
        u = float(self._check_action(action)[0])
        th, thdot = self.theta, self.theta_dot

        reward = -(wrap_angle(th) ** 2 + 0.1 * thdot ** 2 + 0.001 * u ** 2)

        thdot = thdot + self.dt * (3.0 * self.g / (2.0 * self.l) * math.sin(th) + 3.0 * u / (self.m * self.l ** 2))
        thdot = min(max(thdot, -self.max_speed), self.max_speed)
        th = th + self.dt * thdot

        self.theta, self.theta_dot = th, thdot
        return self.observation(), reward, self._advance()

    def clone(self):
        other = Pendulum()
        other.theta, other.theta_dot, other.steps = self.theta, self.theta_dot, self.steps
        return other


class PointMass2D(_Environment):
    """
    Düzlemde ivme kontrollü noktasal kütle: durum (konum, hız, hedef − konum)
    """

    dt = 0.05
    bound = 5.0
    goal_radius = 2.0
    spec = EnvSpec(state_dim=6, action_dim=2, action_low=(-1.0, -1.0), action_high=(1.0, 1.0), max_episode_steps=200)

    def __init__(self):
        super().__init__()
        self.position = np.zeros(2)
        self.velocity = np.zeros(2)
        self.goal = np.array([self.goal_radius, 0.0])

    def reset(self, seed):
        """
        Tohuma göre başlangıç konumu ve bölüm boyunca sabit hedef

        Hedef, başlangıç noktası etrafında 2 yarıçaplı çember üzerinde rastgele
        bir yöndedir.
        """
        rng = np.random.default_rng(seed)
        self.position = rng.uniform(-0.5, 0.5, size=2)
        self.velocity = np.zeros(2)
        angle = rng.uniform(-math.pi, math.pi)
        self.goal = self.goal_radius * np.array([math.cos(angle), math.sin(angle)])
        self.steps = 0
        return self.observation()

    def set_state(self, position, velocity, goal):
        self.position = np.array(position, dtype=np.float64)
        self.velocity = np.array(velocity, dtype=np.float64)
        self.goal = np.array(goal, dtype=np.float64)
        return self.observation()

    def observation(self):
        return np.concatenate([self.position, self.velocity, self.goal - self.position])

    def step(self, action):
        """
        Yarı örtük Euler adımı; konum [−5, 5]² içine kırpılır

        Returns:
            tuple: (gözlem, ödül, bitti)
        """
        a = self._check_action(action)
        reward = -float(np.sum((self.position - self.goal) ** 2)) - 0.01 * float(np.sum(a ** 2))

        self.velocity = self.velocity + self.dt * a
        self.position = np.clip(self.position + self.dt * self.velocity, -self.bound, self.bound)
        return self.observation(), reward, self._advance()

    def clone(self):
        other = PointMass2D()
        other.position, other.velocity, other.goal = self.position.copy(), self.velocity.copy(), self.goal.copy()
        other.steps = self.steps
        return other


ENVIRONMENTS = {
    "pendulum": Pendulum,
    "pointmass": PointMass2D,
}


def make_env(name):
    """
    Ada göre ortam oluşturur

    Args:
        name (str): pendulum | pointmass

    Returns:
        Ortam nesnesi
    """
    try:
        return ENVIRONMENTS[name]()
    except KeyError:
        raise ValueError(f"Bilinmeyen ortam: {name} (seçenekler: {', '.join(ENVIRONMENTS)})")
