# -*- coding: utf-8 -*-
"""
CSV günlüğü, SVG eğrileri, Excel ve PDF rapor dışa aktarımı
"""
