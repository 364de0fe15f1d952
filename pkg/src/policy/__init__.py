# -*- coding: utf-8 -*-
"""
Köşegen Gauss politika başlıkları
"""
