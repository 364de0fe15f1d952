# -*- coding: utf-8 -*-
"""
Ortak test donatıları
"""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
