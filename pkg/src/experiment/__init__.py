# -*- coding: utf-8 -*-
"""
Deney yürütücüsü ve gradyan denetimi
"""
