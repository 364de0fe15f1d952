# -*- coding: utf-8 -*-
"""
Beceri kümesi, yumuşak aktör-eleştirmen çekirdeği ve SDSRA ajanı
"""
