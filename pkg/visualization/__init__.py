# -*- coding: utf-8 -*-
"""
visualization 패키지 초기화 파일
벤치마크 결과 차트 기능을 제공합니다.
"""

from .charts import (
    create_bench_bar_chart,
    save_chart_html,
    PLOTLY_AVAILABLE
)

__all__ = [
    'create_bench_bar_chart',
    'save_chart_html',
    'PLOTLY_AVAILABLE'
]
