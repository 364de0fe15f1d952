#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Deney yürütücüsü

Tohumları bağımsız işçilere dağıtır, tohum başına CSV, değerlendirme CSV'si
ve kontrol noktası yazar; sonuçları tek iş parçacığında birleştirip SVG
eğrilerini üretir. Karşılaştırma raporu ve kontrol noktası değerlendirmesi
de buradadır.
"""

import os
import json
import math
import logging
from dataclasses import dataclass, field
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from algorithm.agent import SdsraAgent
from envs.environments import make_env
from export.csv_log import write_run_csv, write_eval_csv
from export.svg_plot import learning_curve_svg, write_svg
from experiment.metrics import steps_to_threshold, final_mean, time_to_entropy
from utils.errors import TrainingDivergedError

logger = logging.getLogger(__name__)

PARTIAL_SUFFIX = ".partial"
NOT_REACHED = "ulaşılamadı"
ENTROPY_EPSILON = 0.05


def run_paths(output_dir, seed):
    """
    Tohum başına çıktı dosya yolları
    """
    return {
        "train": os.path.join(output_dir, f"train_seed{seed}.csv"),
        "eval": os.path.join(output_dir, f"eval_seed{seed}.csv"),
        "checkpoint": os.path.join(output_dir, f"checkpoint_seed{seed}"),
        "diverged": os.path.join(output_dir, f"diverged_seed{seed}.json"),
    }


@dataclass
class SeedResult:
    """
    Tek tohumun eğitim sonucu
    """
    seed: int
    run_log: object
    ok: bool
    error: str = ""


def _write_final(path, writer, run_log):
    # önce .partial yazılır, başarıda yeniden adlandırılır
    partial = path + PARTIAL_SUFFIX
    writer(run_log, partial)
    os.replace(partial, path)


def train_seed(config, seed, output_dir):
    """
    Tek tohum için eğitim; işçi süreçlerde çalışır

    Args:
        config (RunConfig): Yapılandırma
        seed (int): Tohum
        output_dir (str): Çıktı dizini

    Returns:
        SeedResult: Sonuç
    """
    paths = run_paths(output_dir, seed)
    env = make_env(config.env)
    eval_env = make_env(config.env)
    agent = SdsraAgent(config.agent_config(seed), env.spec)
    logger.info(f"Eğitim başladı: env={config.env}, mode={config.agent.mode}, seed={seed}, adım={config.total_steps}")

    try:
        run_log = agent.train(env, config.total_steps, eval_env=eval_env,
                              eval_interval=config.eval_interval, eval_episodes=config.eval_episodes)
    except TrainingDivergedError as e:
        logger.error(f"Tohum {seed} ıraksadı: {str(e)}")
        with open(paths["diverged"], "w", encoding="utf-8") as f:
            json.dump(e.dump, f, ensure_ascii=False, indent=2, sort_keys=True)
        if e.run_log is not None:
            write_run_csv(e.run_log, paths["train"] + PARTIAL_SUFFIX)
            write_eval_csv(e.run_log, paths["eval"] + PARTIAL_SUFFIX)
        return SeedResult(seed, e.run_log, False, str(e))

    _write_final(paths["train"], write_run_csv, run_log)
    _write_final(paths["eval"], write_eval_csv, run_log)
    agent.save_checkpoint(paths["checkpoint"])
    logger.info(f"Eğitim bitti: seed={seed}, bölüm={agent.episodes}")
    return SeedResult(seed, run_log, True)


def _train_seed_safe(config, seed, output_dir):
    try:
        return train_seed(config, seed, output_dir)
    except OSError as e:
        logger.error(f"Tohum {seed} için dosya hatası: {str(e)}")
        return SeedResult(seed, None, False, str(e))


def train_all(config, output_dir=None):
    """
    Tohumları işçilere dağıtır; sonuçlar tohum sırasıyla döner

    Args:
        config (RunConfig): Yapılandırma
        output_dir (str, optional): Çıktı dizini (varsayılan config.output_dir)

    Returns:
        list: SeedResult listesi
    """
    output_dir = output_dir or config.output_dir
    os.makedirs(output_dir, exist_ok=True)
    seeds = list(config.seeds)
    if config.workers > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=min(config.workers, len(seeds))) as pool:
            futures = [pool.submit(_train_seed_safe, config, seed, output_dir) for seed in seeds]
            return [f.result() for f in futures]
    return [_train_seed_safe(config, seed, output_dir) for seed in seeds]


def _episode_series(run_log):
    episodes = run_log.episode_records()
    return [r.step for r in episodes], [r.episode_return for r in episodes]


def run_train(config, app_config=None, xlsx_path=None):
    """
    train alt komutu: eğitim, CSV, kontrol noktaları ve getiri eğrisi SVG'si

    Args:
        config (RunConfig): Yapılandırma
        app_config (Config, optional): Dışa aktarma ayarları için uygulama yapılandırması
        xlsx_path (str, optional): Günlüklerin yazılacağı Excel dosyası

    Returns:
        int: Çıkış kodu (0 başarı, 2 çalışma hatası)
    """
    results = train_all(config)

    series = {f"seed {r.seed}": _episode_series(r.run_log) for r in results if r.ok}
    svg = learning_curve_svg(series, title=f"{config.env} - {config.agent.mode}")
    svg_path = os.path.join(config.output_dir, "returns.svg")
    write_svg(svg, svg_path + PARTIAL_SUFFIX)

    failed = [r for r in results if not r.ok]
    if failed:
        logger.error(f"Başarısız tohumlar: {[r.seed for r in failed]}")
        return 2
    os.replace(svg_path + PARTIAL_SUFFIX, svg_path)

    if xlsx_path:
        from export.excel_exporter import ExcelExporter
        ExcelExporter(app_config).export_run_logs({r.seed: r.run_log for r in results}, xlsx_path)
    return 0


@dataclass
class CompareRow:
    """
    Karşılaştırma tablosu satırı
    """
    label: str
    seed: object
    steps_to_threshold: object
    final_mean_return: float
    mean_entropy: float
    time_to_entropy: object
    reached: str = ""


@dataclass
class ComparisonReport:
    """
    İki algoritmanın tohum başına ve ortalama ölçütleri
    """
    env: str
    threshold: float
    window: int
    rows: list = field(default_factory=list)
    aggregates: list = field(default_factory=list)
    entropy_traces: dict = field(default_factory=dict)

    @staticmethod
    def columns():
        return ["algoritma", "tohum", "eşiğe adım", "son ortalama getiri", "ortalama entropi",
                "entropi zamanı", "ulaşan"]

    def table_rows(self):
        out = []
        for row in self.rows + self.aggregates:
            out.append([row.label, row.seed, row.steps_to_threshold, row.final_mean_return,
                        row.mean_entropy, row.time_to_entropy, row.reached])
        return out

    def as_table(self):
        """
        Hizalı metin tablo
        """
        def text(v):
            if isinstance(v, float):
                return f"{v:.6g}"
            return str(v)

        data = [self.columns()] + [[text(v) for v in row] for row in self.table_rows()]
        widths = [max(len(r[i]) for r in data) for i in range(len(data[0]))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)) for row in data]
        lines.insert(1, "-" * len(lines[0]))
        return "\n".join(lines)


def _seed_row(label, seed, run_log, threshold, window):
    steps = [e.step for e in run_log.evaluations]
    returns = [e.mean_return for e in run_log.evaluations]
    entropies = [e.mean_entropy for e in run_log.evaluations]
    reached = steps_to_threshold(steps, returns, threshold, window) if steps else None
    entropy_step = time_to_entropy(steps, entropies, ENTROPY_EPSILON) if steps else None
    mean_h = float(np.mean(entropies)) if entropies else math.nan
    return CompareRow(label, seed, NOT_REACHED if reached is None else reached, final_mean(returns), mean_h,
                      NOT_REACHED if entropy_step is None else entropy_step)


def _aggregate(label, rows):
    reached = [r.steps_to_threshold for r in rows if r.steps_to_threshold != NOT_REACHED]
    times = [r.time_to_entropy for r in rows if r.time_to_entropy != NOT_REACHED]
    return CompareRow(label, "ortalama",
                      float(np.mean(reached)) if reached else NOT_REACHED,
                      float(np.mean([r.final_mean_return for r in rows])),
                      float(np.mean([r.mean_entropy for r in rows])),
                      float(np.mean(times)) if times else NOT_REACHED,
                      f"{len(reached)}/{len(rows)}")


def _entropy_trace(results):
    logs = [r.run_log for r in results]
    steps = [e.step for e in logs[0].evaluations]
    values = np.mean([[e.mean_entropy for e in log.evaluations] for log in logs], axis=0) if steps else []
    return steps, list(values)


def compare_labels(config_a, config_b):
    a, b = config_a.agent.mode, config_b.agent.mode
    if a == b:
        return f"{a}_a", f"{b}_b"
    return a, b


def run_compare(config_a, config_b, app_config=None, xlsx_path=None, pdf_path=None, output_dir=None):
    """
    compare alt komutu: iki yapılandırmayı aynı ortamda karşılaştırır

    Args:
        config_a (RunConfig): Birinci yapılandırma
        config_b (RunConfig): İkinci yapılandırma
        app_config (Config, optional): Uygulama yapılandırması
        xlsx_path (str, optional): Excel raporu
        pdf_path (str, optional): PDF raporu
        output_dir (str, optional): Çıktı dizini (varsayılan config_a.output_dir/compare)

    Returns:
        tuple: (ComparisonReport, çıkış kodu)

    Raises:
        ValueError: Ortam veya toplam adım farklıysa
    """
    if config_a.env != config_b.env or config_a.total_steps != config_b.total_steps:
        raise ValueError("Karşılaştırılan yapılandırmalar aynı ortamı ve toplam adımı kullanmalıdır")
    if config_a.eval_interval <= 0 or config_b.eval_interval <= 0:
        raise ValueError("Karşılaştırma için eval_interval pozitif olmalıdır")

    output_dir = output_dir or os.path.join(config_a.output_dir, "compare")
    threshold, window = config_a.threshold, config_a.ma_window
    report = ComparisonReport(config_a.env, threshold, window)
    curves = {}
    entropy_curves = {}
    status = 0

    for label, config in zip(compare_labels(config_a, config_b), (config_a, config_b)):
        results = train_all(config, os.path.join(output_dir, label))
        if not all(r.ok for r in results):
            logger.error(f"{label} için bazı tohumlar başarısız oldu")
            status = 2
            results = [r for r in results if r.ok]
            if not results:
                continue

        rows = [_seed_row(label, r.seed, r.run_log, threshold, window) for r in results]
        report.rows += rows
        report.aggregates.append(_aggregate(label, rows))
        report.entropy_traces[label] = _entropy_trace(results)
        entropy_curves[label] = report.entropy_traces[label]
        for r in results:
            curves[f"{label} seed {r.seed}"] = ([e.step for e in r.run_log.evaluations],
                                                [e.mean_return for e in r.run_log.evaluations])

    write_svg(learning_curve_svg(curves, title=f"{config_a.env} karşılaştırma", window=window),
              os.path.join(output_dir, "compare_returns.svg"))
    write_svg(learning_curve_svg(entropy_curves, title=f"{config_a.env} entropi", y_label="entropi", window=1),
              os.path.join(output_dir, "compare_entropy.svg"))

    if xlsx_path:
        from export.excel_exporter import ExcelExporter
        ExcelExporter(app_config).export_compare_report(report, xlsx_path)
    if pdf_path:
        from export.pdf_exporter import PDFExporter
        PDFExporter(app_config).export_compare_report(report, pdf_path)
    return report, status


def run_eval(checkpoint_dir, config, seed=None):
    """
    eval alt komutu: kontrol noktasındaki ajanı deterministik bölümlerle değerlendirir

    Args:
        checkpoint_dir (str): Kontrol noktası dizini
        config (RunConfig): Ağ yapısını belirleyen yapılandırma
        seed (int, optional): Değerlendirme tohumu (varsayılan ilk tohum)

    Returns:
        tuple: (ortalama getiri, ortalama entropi, karışım entropisi)
    """
    if not os.path.isdir(checkpoint_dir):
        raise FileNotFoundError(f"Kontrol noktası dizini bulunamadı: {checkpoint_dir}")
    env = make_env(config.env)
    agent = SdsraAgent(config.agent_config(config.seeds[0] if seed is None else seed), env.spec)
    agent.load_checkpoint(checkpoint_dir)
    result = agent.evaluate(env, config.eval_episodes)
    logger.info(f"Değerlendirme: getiri={result[0]:.3f}, entropi={result[1]:.3f}, karışım entropisi={result[2]:.3f}")
    return result
