# -*- coding: utf-8 -*-
"""
Sonlu MDP'ler üzerinde kesin yumuşak Bellman hesapları ve doğrulama takımı
"""
