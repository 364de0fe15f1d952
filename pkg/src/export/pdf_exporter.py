#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
PDF dışa aktarma modülü
"""

import os
import logging
from datetime import datetime

from reportlab.lib import colors
from reportlab.lib.pagesizes import A4, A3, landscape, portrait
from reportlab.lib.styles import getSampleStyleSheet
from reportlab.lib.units import cm
from reportlab.pdfbase import pdfmetrics
from reportlab.pdfbase.ttfonts import TTFont
from reportlab.platypus import SimpleDocTemplate, Table, TableStyle, Paragraph, Spacer

PAGE_SIZES = {"A4": A4, "A3": A3}

# Türkçe karakterler için denenecek yazı tipleri
FONT_CANDIDATES = [
    "/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf",
    "/usr/share/fonts/dejavu/DejaVuSans.ttf",
    "C:\\Windows\\Fonts\\arial.ttf",
]


class PDFExporter:
    """
    PDF dışa aktarma sınıfı
    """

    def __init__(self, config):
        """
        PDF dışa aktarma sınıfını başlatır

        Args:
            config (Config): Uygulama yapılandırması
        """
        self.config = config
        self.logger = logging.getLogger(__name__)

        size = PAGE_SIZES.get(config.get("export", "pdf_page_size", "A4"), A4)
        orientation = config.get("export", "pdf_orientation", "landscape")
        self.page_size = landscape(size) if orientation == "landscape" else portrait(size)
        self.font = self._register_font()

    def _register_font(self):
        for path in FONT_CANDIDATES:
            if os.path.exists(path):
                try:
                    pdfmetrics.registerFont(TTFont("ReportFont", path))
                    return "ReportFont"
                except Exception as e:
                    self.logger.warning(f"Yazı tipi yüklenemedi ({path}): {str(e)}")
        return "Helvetica"

    def export_compare_report(self, report, output_path):
        """
        Karşılaştırma raporunu PDF olarak dışa aktarır

        Args:
            report (ComparisonReport): Rapor
            output_path (str): Çıktı dosya yolu

        Returns:
            bool: Başarılı mı?
        """
        try:
            styles = getSampleStyleSheet()
            for name in ("Title", "Normal"):
                styles[name].fontName = self.font

            doc = SimpleDocTemplate(output_path, pagesize=self.page_size,
                                    leftMargin=1.5 * cm, rightMargin=1.5 * cm,
                                    topMargin=1.5 * cm, bottomMargin=1.5 * cm)
            story = [
                Paragraph(f"Karşılaştırma Raporu - {report.env}", styles["Title"]),
                Paragraph(f"Oluşturulma Tarihi: {datetime.now().strftime('%d.%m.%Y %H:%M')}", styles["Normal"]),
                Paragraph(f"Eşik: {report.threshold:g}, kayan ortalama penceresi: {report.window}", styles["Normal"]),
                Spacer(1, 0.5 * cm),
            ]

            data = [report.columns()] + [[self._text(v) for v in row] for row in report.table_rows()]
            table = Table(data, repeatRows=1)
            style = [
                ("FONTNAME", (0, 0), (-1, -1), self.font),
                ("FONTSIZE", (0, 0), (-1, -1), 8),
                ("BACKGROUND", (0, 0), (-1, 0), colors.HexColor("#F0F0F0")),
                ("GRID", (0, 0), (-1, -1), 0.5, colors.grey),
                ("ALIGN", (1, 1), (-1, -1), "RIGHT"),
                ("VALIGN", (0, 0), (-1, -1), "MIDDLE"),
            ]
            for i, row in enumerate(data[1:], start=1):
                if row[1] == "ortalama":
                    style.append(("BACKGROUND", (0, i), (-1, i), colors.HexColor("#E0E0FF")))
            table.setStyle(TableStyle(style))
            story.append(table)

            doc.build(story)
            self.logger.info(f"Karşılaştırma raporu PDF olarak dışa aktarıldı: {output_path}")
            return True
        except Exception as e:
            self.logger.error(f"Karşılaştırma raporu PDF olarak dışa aktarılırken hata oluştu: {str(e)}")
            raise

    @staticmethod
    def _text(value):
        if value is None:
            return ""
        if isinstance(value, float):
            return f"{value:.6g}"
        return str(value)
