# -*- coding: utf-8 -*-
"""
엔진 전체에서 사용하는 예외 계층
CLI는 PrologError 계열을 모두 받아서 종료 코드 2로 변환합니다.
"""
from __future__ import annotations


class PrologError(Exception):
    """모든 엔진 오류의 기본 클래스"""


class PrologSyntaxError(PrologError):
    """구문 오류 (줄/열 위치 포함)"""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class DirectiveError(PrologError):
    """지원하지 않는 지시문 또는 잘못된 table 지시문"""


class ExistenceError(PrologError):
    """정의되지 않은 술어 호출"""

    def __init__(self, indicator: str):
        super().__init__(f"unknown procedure {indicator}")
        self.indicator = indicator


class InstantiationError(PrologError):
    """인자가 충분히 바인딩되지 않음"""


class PrologTypeError(PrologError):
    """호출할 수 없는 항 등 타입 오류"""


class EvaluationError(PrologError):
    """산술 평가 불가 (0으로 나누기, 평가 불가능한 항 등)"""


class ShiftError(PrologError):
    """reset 없이 shift 호출, 또는 테이블 실행 중 예상 밖의 shift 값"""


class InferenceLimitError(PrologError):
    """추론 단계 예산 초과"""

    def __init__(self, limit: int):
        super().__init__(f"inference limit of {limit} exceeded")
        self.limit = limit


class TablingStateError(PrologError):
    """테이블 상태 전이 불변식 위반 (내부 오류)"""


class BenchmarkError(PrologError):
    """알 수 없는 벤치마크, 허용 범위 밖의 크기, 또는 오라클 불일치"""
