# -*- coding: utf-8 -*-
"""
벤치마크 보고서 내보내기: 정렬된 텍스트 표, JSON 줄, Excel 파일
"""
import io
import json
import logging

import pandas as pd

import config

logger = logging.getLogger(__name__)


def reports_to_frame(reports):
    """BenchReport 목록 → DataFrame (config.REPORT_COLUMNS 순서)"""
    rows = [report.as_row() for report in reports]
    return pd.DataFrame(rows, columns=config.REPORT_COLUMNS)


def format_report_table(reports, with_memory=False):
    """터미널 출력용 정렬 텍스트 표"""
    df = reports_to_frame(reports)
    if with_memory:
        df['peak_mb'] = [
            round(r.peak_memory / (1024 * 1024), 1) if r.peak_memory else None
            for r in reports
        ]
    if df.empty:
        return ""
    return df.to_string(index=False, float_format=lambda v: f"{v:.1f}")


def report_to_json(report):
    """보고서 하나 → JSON 객체 한 줄"""
    return json.dumps(report.as_row(), ensure_ascii=False)


def create_excel_report(reports, path=None):
    """Excel 보고서 생성. path 가 있으면 파일로 저장하고, 항상 바이트를 반환"""
    logger.info("📊 Excel 보고서 생성 시작")

    buffer = io.BytesIO()
    df = reports_to_frame(reports)
    desc = pd.DataFrame([
        {'name': name, 'default_size': info['default'],
         'min_size': info['range'][0], 'max_size': info['range'][1], 'description': info['desc']}
        for name, info in config.BENCHMARKS.items()
    ])

    with pd.ExcelWriter(buffer, engine='openpyxl') as writer:
        # 결과 시트
        df.to_excel(writer, sheet_name='벤치마크', index=False)
        # 벤치마크 설명 시트
        desc.to_excel(writer, sheet_name='설명', index=False)

    excel_data = buffer.getvalue()
    buffer.close()

    if path:
        with open(path, 'wb') as fh:
            fh.write(excel_data)

    logger.info("✅ Excel 생성 완료 - %d bytes", len(excel_data))
    return excel_data
