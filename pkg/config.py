# -*- coding: utf-8 -*-
import logging
import os

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# .env 파일 로드 (로컬 환경용)
load_dotenv()

# ==========================
# 환경 설정
# ==========================
def get_setting(key_name, default_value=""):
    """환경 변수에서 설정값을 가져오는 함수"""
    return os.getenv(key_name, default_value)


def get_int_setting(key_name, default_value):
    raw = get_setting(key_name, str(default_value))
    try:
        return int(raw)
    except (TypeError, ValueError):
        logger.warning("⚠️ %s 값 '%s' 는 정수가 아니어서 기본값 %s 를 사용합니다", key_name, raw, default_value)
        return default_value


# 로그 레벨 (DEBUG / INFO / WARNING / ERROR)
LOG_LEVEL = get_setting("TABLING_LOG_LEVEL", "WARNING").upper()

# 추론 단계 예산, 0 이면 무제한
MAX_INFERENCES = get_int_setting("TABLING_MAX_INFERENCES", 0)

# 벤치마크 보고서를 기본으로 JSON 한 줄씩 출력할지 여부
BENCH_JSON = get_setting("TABLING_BENCH_JSON", "").lower() in ("1", "true", "yes", "on")

# ==========================
# 벤치마크 설정
# ==========================
# 이름 → 기본 크기, 허용 범위(포함), 설명
BENCHMARKS = {
    "fib": {"default": 500, "range": (0, 2000), "desc": "테이블 피보나치 (큰 정수)"},
    "recognize": {"default": 200, "range": (1, 2000), "desc": "표현식 문법 인식 (tok/3 입력)"},
    "nreverse": {"default": 300, "range": (0, 1000), "desc": "naive reverse, nrev 만 테이블"},
    "shuttle": {"default": 2000, "range": (1, 5000), "desc": "0..N 구간 ±1 이동, 왼쪽 재귀 도달"},
    "pingpong": {"default": 1000, "range": (1, 5000), "desc": "상호 재귀 ping/pong"},
    "path_double_first": {"default": 40, "range": (1, 150), "desc": "이중 재귀 경로, 체인 그래프"},
    "path_double_first_loop": {"default": 30, "range": (1, 100), "desc": "이중 재귀 경로, 순환 체인"},
    "path_right_last_pyramid": {"default": 20, "range": (1, 60), "desc": "오른쪽 재귀 경로, 피라미드 그래프"},
    "path_right_last_btree": {"default": 1000, "range": (1, 20000), "desc": "오른쪽 재귀 경로, 이진 트리"},
    "large_join": {"default": 60, "range": (1, 300), "desc": "세 관계 순환 조인 j(X,Y,Z)"},
}

DEFAULT_BENCH_SIZES = {name: info["default"] for name, info in BENCHMARKS.items()}

# 보고서 표 / 차트 컬럼 순서
REPORT_COLUMNS = ["name", "size", "ms", "answers", "tables", "deps", "suspensions", "resumptions"]

CHART_COLORS = {
    'primary': '#E31E24',
}
