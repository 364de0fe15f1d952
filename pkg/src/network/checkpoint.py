#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Parametre kontrol noktası okuma/yazma

Biçim: `SDSRA-CKPT v1` başlık satırı, dizi başına bir `ad boyut...` satırı,
değer sayısını veren `@payload n` satırı ve ardından tanımlayıcı sırasıyla
küçük endian 64 bit gerçel değerler.
"""

import os
import logging

import numpy as np

from network.nn_core import ParamVector
from utils.errors import CheckpointVersionError

logger = logging.getLogger(__name__)

HEADER = b"SDSRA-CKPT v1"
PAYLOAD_TAG = "@payload"


def _encode(params):
    lines = [HEADER]
    for name, shape in params.layout:
        if not name or any(c.isspace() for c in name) or name.startswith("@"):
            raise ValueError(f"Geçersiz dizi adı: {name!r}")
        lines.append(" ".join([name] + [str(d) for d in shape]).encode("ascii"))
    lines.append(f"{PAYLOAD_TAG} {params.size}".encode("ascii"))
    return b"\n".join(lines) + b"\n" + params.values.astype("<f8").tobytes()


def _decode(data):
    pos = 0
    layout = []
    header_seen = False
    while True:
        end = data.find(b"\n", pos)
        if end < 0:
            raise CheckpointVersionError("Kontrol noktası başlığı eksik veya bozuk")
        line = data[pos:end]
        pos = end + 1

        if not header_seen:
            if line != HEADER:
                raise CheckpointVersionError(f"Tanınmayan kontrol noktası başlığı: {line[:32]!r}")
            header_seen = True
            continue

        try:
            fields = line.decode("ascii").split()
        except UnicodeDecodeError:
            raise CheckpointVersionError("Tanımlayıcı satırı ASCII değil")
        if not fields:
            raise CheckpointVersionError("Boş tanımlayıcı satırı")

        if fields[0] == PAYLOAD_TAG:
            if len(fields) != 2 or not fields[1].isdigit():
                raise CheckpointVersionError("Bozuk uzunluk alanı")
            count = int(fields[1])
            break

        try:
            shape = tuple(int(d) for d in fields[1:])
        except ValueError:
            raise CheckpointVersionError(f"Bozuk dizi şekli: {line!r}")
        if any(d < 0 for d in shape):
            raise CheckpointVersionError(f"Negatif boyut: {line!r}")
        layout.append((fields[0], shape))

    expected = sum(int(np.prod(shape, dtype=np.int64)) if shape else 1 for _, shape in layout)
    if count != expected:
        raise CheckpointVersionError(f"Uzunluk alanı ({count}) tanımlayıcı toplamıyla ({expected}) uyuşmuyor")
    payload = data[pos:]
    if len(payload) != 8 * count:
        raise CheckpointVersionError(f"Veri uzunluğu {len(payload)} bayt, beklenen {8 * count}")

    values = np.frombuffer(payload, dtype="<f8").astype(np.float64)
    return ParamVector(values, layout)


def save_params(params, sink):
    """
    Parametreleri kontrol noktası biçiminde yazar

    Args:
        params (ParamVector): Parametreler
        sink (str | file): Dosya yolu veya ikili yazılabilir nesne
    """
    data = _encode(params)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "wb") as f:
            f.write(data)
        logger.debug(f"Kontrol noktası yazıldı: {sink}")
    else:
        sink.write(data)


def load_params(source, expected_layout=None):
    """
    Kontrol noktasını okur; kısmi durum hiçbir zaman döndürülmez

    Args:
        source (str | file): Dosya yolu veya ikili okunabilir nesne
        expected_layout (list, optional): Beklenen tanımlayıcılar. Defaults to None.

    Returns:
        ParamVector: Okunan parametreler

    Raises:
        CheckpointVersionError: Başlık, uzunluk veya tanımlayıcı uyuşmazlığında
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as f:
            data = f.read()
    else:
        data = source.read()

    params = _decode(data)
    if expected_layout is not None:
        expected = [(str(n), tuple(int(d) for d in s)) for n, s in expected_layout]
        if params.layout != expected:
            raise CheckpointVersionError(f"Tanımlayıcı uyuşmazlığı: dosyada {params.layout}, beklenen {expected}")
    return params
