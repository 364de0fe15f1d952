#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Eğitim günlüğü CSV biçimi

Sütun sırası yapılandırmadan bağımsızdır; ilgi puanı sütunları en fazla
beceri sayısına kadar boş hücrelerle doldurulur.
"""

import os
import csv
import math
import logging

from algorithm.agent import MAX_SKILLS

logger = logging.getLogger(__name__)

RUN_COLUMNS = ["step", "episode", "return", "entropy", "active_skill",
               "loss_q1", "loss_q2", "loss_pi", "j_integrated"] + [f"r_{i}" for i in range(MAX_SKILLS)]
EVAL_COLUMNS = ["step", "mean_return", "mean_entropy", "mixture_entropy"]


def format_number(value):
    """
    Gerçel değeri 9 anlamlı basamakla yazar
    """
    value = float(value)
    if math.isnan(value):
        return "nan"
    return f"{value:.9g}"


def run_row(record):
    """
    LogRecord'u sabit sütun sırasıyla hücrelere çevirir
    """
    relevance = [format_number(r) for r in record.relevance]
    relevance += [""] * (MAX_SKILLS - len(relevance))
    return [str(record.step), str(record.episode), format_number(record.episode_return),
            format_number(record.entropy), str(record.active_skill), format_number(record.loss_q1),
            format_number(record.loss_q2), format_number(record.loss_pi),
            format_number(record.j_integrated)] + relevance


def eval_row(record):
    return [str(record.step), format_number(record.mean_return), format_number(record.mean_entropy),
            format_number(record.mixture_entropy)]


def _write(path, columns, rows):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)


def write_run_csv(run_log, path):
    """
    Eğitim kayıtlarını yazar

    Args:
        run_log (RunLog): Günlük
        path (str): Dosya yolu
    """
    _write(path, RUN_COLUMNS, [run_row(r) for r in run_log.records])
    logger.debug(f"Eğitim günlüğü yazıldı: {path} ({len(run_log.records)} satır)")


def write_eval_csv(run_log, path):
    """
    Değerlendirme kayıtlarını yazar
    """
    _write(path, EVAL_COLUMNS, [eval_row(r) for r in run_log.evaluations])


def read_csv(path):
    """
    CSV dosyasını sözlük satırları olarak okur; sayısal hücreler float olur

    Args:
        path (str): Dosya yolu

    Returns:
        list: Satır sözlükleri
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"CSV dosyası bulunamadı: {path}")
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        for raw in csv.DictReader(f):
            rows.append({k: (float(v) if v != "" else None) for k, v in raw.items()})
    return rows
