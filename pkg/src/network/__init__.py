# -*- coding: utf-8 -*-
"""
Yoğun ağ sayısal çekirdeği: parametreler, ileri/geri geçiş, Adam, Polyak
"""
