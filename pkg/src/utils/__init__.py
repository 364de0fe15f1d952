# -*- coding: utf-8 -*-
"""
Yardımcı modüller: yapılandırma, çalıştırma ayarları ve hata sınıfları
"""
