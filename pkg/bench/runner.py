# -*- coding: utf-8 -*-
"""
벤치마크 실행: 프로그램 생성 → 적재 → 질의 시간 측정 → 오라클 검증 → BenchReport
"""
from __future__ import annotations

import logging
import sys
import time
from dataclasses import asdict, dataclass
from typing import Iterable

import config
from bench.programs import GENERATORS, BenchmarkCase
from prolog.engine import Engine
from prolog.errors import BenchmarkError
from prolog.terms import CONS, NIL, Atom, Compound, Int, Term

try:
    import resource
    RESOURCE_AVAILABLE = True
except ImportError:
    RESOURCE_AVAILABLE = False

logger = logging.getLogger(__name__)


@dataclass
class BenchReport:
    name: str
    size: int
    ms: float
    answers: int
    tables: int
    deps: int
    suspensions: int
    resumptions: int
    peak_memory: int | None = None

    def as_row(self) -> dict:
        """JSON / 표 출력용 (config.REPORT_COLUMNS 순서)"""
        data = asdict(self)
        return {key: data[key] for key in config.REPORT_COLUMNS}


def maxrss_to_bytes(value: int, platform: str = sys.platform) -> int:
    # macOS 는 바이트, 그 밖의 유닉스는 KB 단위
    if platform == "darwin":
        return value
    return value * 1024


def peak_memory_bytes() -> int | None:
    """프로세스 최대 RSS (가능한 플랫폼에서만)"""
    if not RESOURCE_AVAILABLE:
        return None
    try:
        return maxrss_to_bytes(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss)
    except (OSError, ValueError):
        return None


def to_python(term: Term):
    """정수 → int, 원자 → str, 닫힌 리스트 → tuple, 그 외 복합항 → (functor, args...)"""
    if isinstance(term, Int):
        return term.value
    if isinstance(term, Atom):
        return () if term == NIL else term.name
    if isinstance(term, Compound):
        if term.functor == CONS and len(term.args) == 2:
            items = []
            while isinstance(term, Compound) and term.functor == CONS and len(term.args) == 2:
                items.append(to_python(term.args[0]))
                term = term.args[1]
            if term == NIL:
                return tuple(items)
            return ("$partial", tuple(items), to_python(term))
        return (term.functor, *(to_python(arg) for arg in term.args))
    return ("$var", term.id)


def check_size(name: str, size: int) -> None:
    info = config.BENCHMARKS.get(name)
    if info is None:
        known = ", ".join(sorted(config.BENCHMARKS))
        raise BenchmarkError(f"unknown benchmark '{name}' (known: {known})")
    low, high = info["range"]
    if not low <= size <= high:
        raise BenchmarkError(f"size {size} for '{name}' is outside the supported range {low}..{high}")


def run_case(case: BenchmarkCase) -> BenchReport:
    engine = Engine()
    engine.consult(case.program)
    started = time.perf_counter()
    answers = list(engine.query(case.query))
    elapsed_ms = (time.perf_counter() - started) * 1000.0

    values = {tuple(to_python(answer[var]) for var in case.variables) for answer in answers}
    if len(values) != len(answers):
        raise BenchmarkError(f"{case.name}: duplicate answers ({len(answers)} answers, {len(values)} distinct)")
    if values != case.expected:
        missing = len(case.expected - values)
        extra = len(values - case.expected)
        raise BenchmarkError(f"{case.name}: oracle mismatch ({missing} missing, {extra} unexpected)")

    stats = engine.statistics()
    report = BenchReport(
        name=case.name,
        size=case.size,
        ms=round(elapsed_ms, 3),
        answers=len(answers),
        tables=stats["tables"],
        deps=stats["dependencies"],
        suspensions=stats["suspensions"],
        resumptions=stats["resumptions"],
        peak_memory=peak_memory_bytes(),
    )
    logger.info("📊 %s(%d): %.1f ms, 답 %d개, 테이블 %d개", report.name, report.size,
                report.ms, report.answers, report.tables)
    return report


def run_bench(name: str, size: int) -> BenchReport:
    check_size(name, size)
    return run_case(GENERATORS[name](size))


def run_suite(names: Iterable[str] | None = None, size: int | None = None) -> list[BenchReport]:
    """여러 벤치마크를 차례로 실행. size 가 없으면 각자의 기본 크기"""
    reports = []
    for name in names or config.BENCHMARKS:
        bench_size = size if size is not None else config.DEFAULT_BENCH_SIZES[name]
        reports.append(run_bench(name, bench_size))
    return reports
