#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Uygulama genelinde kullanılan hata sınıfları
"""


class SdsraError(Exception):
    """
    Tüm uygulama hatalarının temel sınıfı
    """


class ShapeError(SdsraError, ValueError):
    """
    Boyut uyuşmazlığı hatası
    """


class NonFiniteError(SdsraError, FloatingPointError):
    """
    Sonlu olmayan (NaN / inf) ara değer hatası
    """


class CheckpointVersionError(SdsraError, ValueError):
    """
    Kontrol noktası dosyası sürüm veya tanımlayıcı uyuşmazlığı
    """


class StochasticMatrixError(SdsraError, ValueError):
    """
    Satırları olasılık dağılımı olmayan tablo hatası
    """


class ConfigError(SdsraError, ValueError):
    """
    Çalıştırma yapılandırması ayrıştırma hatası
    """

    def __init__(self, message, line_number=None):
        """
        Hata nesnesini oluşturur

        Args:
            message (str): Hata mesajı
            line_number (int, optional): Hatalı satır numarası. Defaults to None.
        """
        self.line_number = line_number
        if line_number is not None:
            message = f"Satır {line_number}: {message}"
        super().__init__(message)


class TrainingDivergedError(SdsraError, RuntimeError):
    """
    Eğitim sırasında kayıp değeri NaN olduğunda fırlatılır
    """

    def __init__(self, message, dump, run_log=None):
        """
        Args:
            message (str): Hata mesajı
            dump (dict): Tanı amaçlı durum dökümü
            run_log (RunLog, optional): Iraksamaya kadar tutulan günlük
        """
        self.dump = dump
        self.run_log = run_log
        super().__init__(message)

    def __reduce__(self):
        return (type(self), (str(self), self.dump, self.run_log))


class VerificationError(SdsraError, AssertionError):
    """
    Sayısal doğrulama özelliği sağlanmadığında fırlatılır
    """
