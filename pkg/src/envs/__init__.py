# -*- coding: utf-8 -*-
"""
Deterministik, tohumlanabilir sürekli kontrol ortamları
"""

from envs.environments import EnvSpec, Pendulum, PointMass2D, make_env

__all__ = ["EnvSpec", "Pendulum", "PointMass2D", "make_env"]
