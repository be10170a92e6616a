# -*- coding: utf-8 -*-
import logging

import pandas as pd

import config

try:
    import plotly.express as px
    PLOTLY_AVAILABLE = True
except ImportError:
    PLOTLY_AVAILABLE = False

logger = logging.getLogger(__name__)


def create_bench_bar_chart(bench_df: pd.DataFrame):
    """벤치마크별 실행 시간 막대 차트 (막대 위에 답 개수)"""
    if not PLOTLY_AVAILABLE or bench_df.empty:
        return None

    chart_df = bench_df.copy()
    chart_df['label'] = chart_df['name'] + " (" + chart_df['size'].astype(str) + ")"

    fig = px.bar(
        chart_df, x='label', y='ms',
        title="📊 벤치마크 실행 시간",
        text='answers', color_discrete_sequence=[config.CHART_COLORS['primary']], height=450,
        hover_data=['tables', 'deps', 'suspensions', 'resumptions'],
    )
    fig.update_traces(texttemplate='%{text} answers', textposition='outside')
    fig.update_layout(
        yaxis_title="시간(ms)", xaxis_title="벤치마크",
        font=dict(family="Malgun Gothic, Apple SD Gothic Neo, sans-serif")
    )
    return fig


def save_chart_html(fig, path):
    """차트를 독립 실행 HTML 파일로 저장"""
    if fig is None:
        logger.warning("⚠️ plotly 를 사용할 수 없거나 데이터가 없어 차트를 만들지 않았습니다")
        return False
    fig.write_html(path, include_plotlyjs='cdn')
    logger.info("✅ 차트 저장: %s", path)
    return True
