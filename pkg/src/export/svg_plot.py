#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SVG öğrenme eğrisi çizimi

Her seri için bir ham çoklu çizgi ve bir kayan ortalama çizgisi üretilir.
Çıktı metin tabanlıdır ve aynı girdiler için bayt bayt aynıdır.
"""

import logging
import xml.etree.ElementTree as ET

import numpy as np

from experiment.metrics import moving_average

logger = logging.getLogger(__name__)

WIDTH = 800
HEIGHT = 500
MARGIN = 60
MA_WINDOW = 100
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def _fmt(x):
    return f"{x:.2f}"


def _bounds(series):
    xs = np.concatenate([np.asarray(s, dtype=np.float64) for s, _ in series.values()] or [np.zeros(1)])
    ys = np.concatenate([np.asarray(v, dtype=np.float64) for _, v in series.values()] or [np.zeros(1)])
    ys = ys[np.isfinite(ys)]
    if xs.size == 0:
        xs = np.zeros(1)
    if ys.size == 0:
        ys = np.zeros(1)
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 1.0, y1 + 1.0
    return x0, x1, y0, y1


def learning_curve_svg(series, title="", x_label="adım", y_label="getiri", window=MA_WINDOW):
    """
    Serileri tek grafikte üst üste çizer

    Args:
        series (dict): etiket -> (adımlar, değerler)
        title (str): Başlık
        x_label (str): Yatay eksen adı
        y_label (str): Dikey eksen adı
        window (int): Kayan ortalama penceresi

    Returns:
        str: SVG belgesi
    """
    x0, x1, y0, y1 = _bounds(series)
    plot_w, plot_h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def px(x):
        return MARGIN + (x - x0) / (x1 - x0) * plot_w

    def py(y):
        return HEIGHT - MARGIN - (y - y0) / (y1 - y0) * plot_h

    svg = ET.Element("svg", {"xmlns": "http://www.w3.org/2000/svg", "width": str(WIDTH),
                             "height": str(HEIGHT), "viewBox": f"0 0 {WIDTH} {HEIGHT}"})
    ET.SubElement(svg, "rect", {"x": "0", "y": "0", "width": str(WIDTH), "height": str(HEIGHT), "fill": "white"})

    axes = ET.SubElement(svg, "g", {"id": "axes", "stroke": "black", "stroke-width": "1"})
    ET.SubElement(axes, "line", {"x1": str(MARGIN), "y1": str(HEIGHT - MARGIN),
                                 "x2": str(WIDTH - MARGIN), "y2": str(HEIGHT - MARGIN)})
    ET.SubElement(axes, "line", {"x1": str(MARGIN), "y1": str(MARGIN),
                                 "x2": str(MARGIN), "y2": str(HEIGHT - MARGIN)})

    labels = ET.SubElement(svg, "g", {"id": "labels", "font-family": "sans-serif", "font-size": "12"})
    for text, attrs in [
        (title, {"x": str(WIDTH // 2), "y": str(MARGIN // 2), "text-anchor": "middle", "font-size": "16"}),
        (x_label, {"x": str(WIDTH // 2), "y": str(HEIGHT - 15), "text-anchor": "middle"}),
        (y_label, {"x": "15", "y": str(HEIGHT // 2), "text-anchor": "middle",
                   "transform": f"rotate(-90 15 {HEIGHT // 2})"}),
        (f"{x0:.6g}", {"x": str(MARGIN), "y": str(HEIGHT - MARGIN + 18), "text-anchor": "start"}),
        (f"{x1:.6g}", {"x": str(WIDTH - MARGIN), "y": str(HEIGHT - MARGIN + 18), "text-anchor": "end"}),
        (f"{y0:.6g}", {"x": str(MARGIN - 5), "y": str(HEIGHT - MARGIN), "text-anchor": "end"}),
        (f"{y1:.6g}", {"x": str(MARGIN - 5), "y": str(MARGIN + 5), "text-anchor": "end"}),
    ]:
        node = ET.SubElement(labels, "text", attrs)
        node.text = text

    curves = ET.SubElement(svg, "g", {"id": "curves", "fill": "none"})
    for k, (label, (steps, values)) in enumerate(series.items()):
        steps = np.asarray(steps, dtype=np.float64)
        values = np.asarray(values, dtype=np.float64)
        keep = np.isfinite(values)
        steps, values = steps[keep], values[keep]
        color = COLORS[k % len(COLORS)]
        for kind, ys, extra in [("raw", values, {"stroke-opacity": "0.35", "stroke-width": "1"}),
                                ("ma", moving_average(values, window), {"stroke-width": "2"})]:
            points = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(steps, ys))
            attrs = {"class": kind, "data-series": str(label), "stroke": color, "points": points}
            attrs.update(extra)
            ET.SubElement(curves, "polyline", attrs)

        legend = ET.SubElement(labels, "text", {"x": str(WIDTH - MARGIN - 5), "y": str(MARGIN + 15 * (k + 1)),
                                                "text-anchor": "end", "fill": color})
        legend.text = str(label)

    return ET.tostring(svg, encoding="unicode")


def write_svg(document, path):
    """
    SVG belgesini XML bildirimiyle yazar
    """
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write('<?xml version="1.0" encoding="UTF-8"?>\n')
        f.write(document)
        f.write("\n")
    logger.debug(f"SVG yazıldı: {path}")
