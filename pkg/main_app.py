# -*- coding: utf-8 -*-
"""
명령행 진입점

    python main_app.py -p closure.pl -q "p(X,Y)." --sorted
    python main_app.py bench fib 500 --stats
    python main_app.py bench all --json
    python main_app.py -p closure.pl repl

종료 코드: 0 성공, 1 답 없음, 2 적재/구문/실행 오류
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Iterable, TextIO

import config
from bench.runner import BenchReport, run_bench, run_suite
from prolog.engine import Engine
from prolog.errors import PrologError
from prolog.parser import format_term
from util.export import create_excel_report, format_report_table, report_to_json, reports_to_frame
from visualization.charts import create_bench_bar_chart, save_chart_html

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO_ANSWERS = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="main_app.py",
        description="테이블 논리 프로그래밍 엔진: 프로그램 적재, 질의, 벤치마크",
    )
    parser.add_argument("-p", "--program", action="append", default=[], metavar="FILE",
                        help="프로그램 파일 (여러 번 지정 가능)")
    parser.add_argument("-q", "--query", help='질의 문자열, 예: "p(X,Y)."')
    parser.add_argument("--all", action="store_true", help="모든 답 출력 (기본 동작)")
    parser.add_argument("--limit", type=int, metavar="N", help="출력할 최대 답 개수")
    parser.add_argument("--stats", action="store_true", help="테이블 통계 출력 (질의 모드에서는 stderr)")
    parser.add_argument("--sorted", action="store_true", help="답 줄을 사전순 정렬")
    parser.add_argument("--json", action="store_true", help="벤치마크 보고서를 JSON 한 줄씩 출력")
    parser.add_argument("--excel", metavar="PATH", help="벤치마크 보고서를 Excel 파일로 저장")
    parser.add_argument("--chart", metavar="PATH", help="벤치마크 실행 시간 차트를 HTML로 저장")
    parser.add_argument("command", nargs="*",
                        help="bench <name> <size> | bench all [size] | repl")
    return parser


def setup_logging() -> None:
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL, logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


# ==========================
# 답 출력
# ==========================
def format_answer(answer: dict) -> str:
    """`X = a, Y = b` 또는 변수가 없으면 `true.`"""
    parts = [f"{name} = {format_term(value)}" for name, value in answer.items()
             if not name.startswith("_")]
    return ", ".join(parts) if parts else "true."


def collect_answers(engine: Engine, query: str, limit: int | None) -> list[str]:
    lines = []
    for answer in engine.query(query):
        lines.append(format_answer(answer))
        if limit is not None and len(lines) >= limit:
            break
    return lines


def print_answers(lines: list[str], sort: bool, out: TextIO) -> None:
    if not lines:
        print("false.", file=out)
        return
    for line in (sorted(lines) if sort else lines):
        print(line, file=out)


def print_stats(engine: Engine, out: TextIO) -> None:
    stats = engine.statistics()
    print("📊 " + ", ".join(f"{key}={value}" for key, value in stats.items()), file=out)


# ==========================
# 모드별 실행
# ==========================
def load_engine(paths: Iterable[str]) -> Engine:
    engine = Engine()
    for path in paths:
        engine.consult_file(path)
        logger.info("✅ 적재 완료: %s", path)
    return engine


def run_query_mode(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    engine = load_engine(args.program)
    lines = collect_answers(engine, args.query, args.limit)
    print_answers(lines, args.sorted, out)
    if args.stats:
        print_stats(engine, err)
    return EXIT_OK if lines else EXIT_NO_ANSWERS


def run_repl_mode(args: argparse.Namespace, stdin: TextIO, out: TextIO, err: TextIO) -> int:
    engine = load_engine(args.program)
    for raw in stdin:
        text = raw.strip()
        if not text or text.startswith("%"):
            continue
        if text in ("halt.", "halt"):
            break
        try:
            lines = collect_answers(engine, text, args.limit)
        except PrologError as e:
            print(f"❌ {e}", file=err)
            continue
        print_answers(lines, args.sorted, out)
        if args.stats:
            print_stats(engine, err)
    return EXIT_OK


def _parse_size(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise PrologError(f"benchmark size must be an integer, got '{text}'") from None


def run_bench_mode(args: argparse.Namespace, rest: list[str], out: TextIO) -> int:
    if not rest:
        raise PrologError("bench mode requires a benchmark name (or 'all')")
    name = rest[0]
    if name == "all":
        if len(rest) > 2:
            raise PrologError("usage: bench all [size]")
        size = _parse_size(rest[1]) if len(rest) == 2 else None
        reports = run_suite(size=size)
    else:
        if len(rest) != 2:
            raise PrologError("usage: bench <name> <size>")
        reports = [run_bench(name, _parse_size(rest[1]))]
    emit_reports(reports, args, out)
    return EXIT_OK


def emit_reports(reports: list[BenchReport], args: argparse.Namespace, out: TextIO) -> None:
    if args.json or config.BENCH_JSON:
        for report in reports:
            print(report_to_json(report), file=out)
    else:
        print(format_report_table(reports, with_memory=args.stats), file=out)
    if args.excel:
        create_excel_report(reports, args.excel)
    if args.chart:
        save_chart_html(create_bench_bar_chart(reports_to_frame(reports)), args.chart)


def main(argv: list[str] | None = None, stdin: TextIO | None = None,
         out: TextIO | None = None, err: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_intermixed_args(argv)
    if args.limit is not None and args.limit < 1:
        print("❌ --limit must be a positive integer", file=err)
        return EXIT_ERROR

    command = args.command
    try:
        if command and command[0] == "bench":
            return run_bench_mode(args, command[1:], out)
        if command and command[0] == "repl":
            if len(command) > 1:
                raise PrologError("usage: repl")
            return run_repl_mode(args, stdin, out, err)
        if command:
            raise PrologError(f"unknown command '{command[0]}'")
        if not args.query:
            raise PrologError("query mode requires --query (or use 'bench' / 'repl')")
        return run_query_mode(args, out, err)
    except (PrologError, OSError) as e:
        print(f"❌ {e}", file=err)
        return EXIT_ERROR


if __name__ == "__main__":
    setup_logging()
    sys.exit(main())
