# -*- coding: utf-8 -*-
"""
Kontrol noktası biçimi testleri
"""

import io

import numpy as np
import pytest

from network.nn_core import Mlp
from network.checkpoint import save_params, load_params, HEADER
from utils.errors import CheckpointVersionError


def test_save_and_load_file(tmp_path, rng):
    net = Mlp([3, 4, 2], rng=rng)
    path = tmp_path / "net.ckpt"
    save_params(net.params, str(path))
    loaded = load_params(str(path), expected_layout=net.params.layout)
    assert loaded == net.params
    assert path.read_bytes().startswith(HEADER + b"\n")


def test_stream_round_trip_is_bit_exact(rng):
    net = Mlp([2, 3, 1], rng=rng)
    buffer = io.BytesIO()
    save_params(net.params, buffer)
    buffer.seek(0)
    assert np.array_equal(load_params(buffer).values, net.params.values)


def test_wrong_header_rejected(rng):
    net = Mlp([2, 3, 1], rng=rng)
    buffer = io.BytesIO()
    save_params(net.params, buffer)
    data = buffer.getvalue().replace(b"v1", b"v9", 1)
    with pytest.raises(CheckpointVersionError):
        load_params(io.BytesIO(data))


def test_truncated_payload_rejected(rng):
    net = Mlp([2, 3, 1], rng=rng)
    buffer = io.BytesIO()
    save_params(net.params, buffer)
    with pytest.raises(CheckpointVersionError):
        load_params(io.BytesIO(buffer.getvalue()[:-8]))


def test_layout_mismatch_rejected(rng):
    buffer = io.BytesIO()
    save_params(Mlp([2, 3, 1], rng=rng).params, buffer)
    buffer.seek(0)
    with pytest.raises(CheckpointVersionError):
        load_params(buffer, expected_layout=Mlp([2, 4, 1]).params.layout)


def test_missing_payload_line_rejected():
    with pytest.raises(CheckpointVersionError):
        load_params(io.BytesIO(HEADER + b"\nW0 1 2\n"))
