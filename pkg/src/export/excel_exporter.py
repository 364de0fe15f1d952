#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Excel dışa aktarma modülü
"""

import math
import logging
from datetime import datetime

import openpyxl
from openpyxl.styles import Font, Alignment, PatternFill, Border, Side
from openpyxl.utils import get_column_letter

from export.csv_log import RUN_COLUMNS, EVAL_COLUMNS, run_row, eval_row


class ExcelExporter:
    """
    Excel dışa aktarma sınıfı
    """

    HEADER_FILL = PatternFill(start_color="F0F0F0", end_color="F0F0F0", fill_type="solid")
    THIN_BORDER = Border(left=Side(style='thin'), right=Side(style='thin'),
                         top=Side(style='thin'), bottom=Side(style='thin'))
    # algoritma başına satır rengi
    COLORS = ["D6D6FF", "FFD6D6", "D6FFD6", "FFFFD6", "FFD6FF", "D6FFFF"]

    def __init__(self, config):
        """
        Excel dışa aktarma sınıfını başlatır

        Args:
            config (Config): Uygulama yapılandırması
        """
        self.config = config
        self.logger = logging.getLogger(__name__)
        self.sheet_name = config.get("export", "excel_sheet_name", "Rapor")
        self.include_header = config.get("export", "excel_include_header", True)

    def _title(self, ws, text, width):
        last = get_column_letter(max(width, 1))
        ws.merge_cells(f'A1:{last}1')
        ws['A1'] = text
        ws['A1'].font = Font(size=16, bold=True)
        ws['A1'].alignment = Alignment(horizontal='center', vertical='center')

        ws.merge_cells(f'A2:{last}2')
        ws['A2'] = f"Oluşturulma Tarihi: {datetime.now().strftime('%d.%m.%Y %H:%M')}"
        ws['A2'].alignment = Alignment(horizontal='center', vertical='center')

    def _table(self, ws, columns, rows, start_row, fills=None):
        for i, name in enumerate(columns):
            cell = ws.cell(row=start_row, column=i + 1, value=name)
            cell.font = Font(bold=True)
            cell.alignment = Alignment(horizontal='center', vertical='center')
            cell.fill = self.HEADER_FILL
            cell.border = self.THIN_BORDER

        for r, values in enumerate(rows):
            for c, value in enumerate(values):
                cell = ws.cell(row=start_row + 1 + r, column=c + 1, value=self._cell_value(value))
                cell.border = self.THIN_BORDER
                if fills is not None and fills[r]:
                    cell.fill = PatternFill(start_color=fills[r], end_color=fills[r], fill_type="solid")

        for i in range(len(columns)):
            ws.column_dimensions[get_column_letter(i + 1)].width = 16

    @staticmethod
    def _cell_value(value):
        if value is None or value == "":
            return None
        if isinstance(value, str):
            try:
                value = float(value)
            except ValueError:
                return value
        if isinstance(value, float) and math.isnan(value):
            return None
        return value

    def export_run_logs(self, logs, output_path):
        """
        Tohum başına eğitim ve değerlendirme günlüklerini sayfalara yazar

        Args:
            logs (dict): tohum -> RunLog
            output_path (str): Çıktı dosya yolu

        Returns:
            bool: Başarılı mı?
        """
        try:
            wb = openpyxl.Workbook()
            wb.remove(wb.active)
            for seed, run_log in sorted(logs.items()):
                ws = wb.create_sheet(f"seed_{seed}")
                start = 1
                if self.include_header:
                    self._title(ws, f"Eğitim Günlüğü - Tohum {seed}", len(RUN_COLUMNS))
                    start = 4
                self._table(ws, RUN_COLUMNS, [run_row(r) for r in run_log.records], start)

                if run_log.evaluations:
                    ws_eval = wb.create_sheet(f"eval_{seed}")
                    self._table(ws_eval, EVAL_COLUMNS, [eval_row(r) for r in run_log.evaluations], 1)

            wb.save(output_path)
            self.logger.info(f"Eğitim günlükleri Excel olarak dışa aktarıldı: {output_path}")
            return True
        except Exception as e:
            self.logger.error(f"Eğitim günlükleri dışa aktarılırken hata oluştu: {str(e)}")
            raise

    def export_compare_report(self, report, output_path):
        """
        Karşılaştırma raporunu Excel olarak dışa aktarır

        Args:
            report (ComparisonReport): Rapor
            output_path (str): Çıktı dosya yolu

        Returns:
            bool: Başarılı mı?
        """
        try:
            wb = openpyxl.Workbook()
            ws = wb.active
            ws.title = self.sheet_name

            columns = report.columns()
            rows = report.table_rows()
            start = 1
            if self.include_header:
                self._title(ws, f"Karşılaştırma Raporu - {report.env}", len(columns))
                start = 4

            labels = sorted({row[0] for row in rows})
            fills = [self.COLORS[labels.index(row[0]) % len(self.COLORS)] for row in rows]
            self._table(ws, columns, rows, start, fills)

            for row in range(start + 1, start + 1 + len(rows)):
                if ws.cell(row=row, column=2).value == "ortalama":
                    for col in range(1, len(columns) + 1):
                        ws.cell(row=row, column=col).font = Font(bold=True)

            trace = wb.create_sheet("entropi")
            trace_rows = []
            for label, (steps, values) in report.entropy_traces.items():
                trace_rows += [[label, int(s), float(v)] for s, v in zip(steps, values)]
            self._table(trace, ["algoritma", "step", "mean_entropy"], trace_rows, 1)

            wb.save(output_path)
            self.logger.info(f"Karşılaştırma raporu Excel olarak dışa aktarıldı: {output_path}")
            return True
        except Exception as e:
            self.logger.error(f"Karşılaştırma raporu dışa aktarılırken hata oluştu: {str(e)}")
            raise
