# -*- coding: utf-8 -*-
import dataclasses
import json
import time

import pytest

import config
from bench import oracles
from bench.programs import GENERATORS, chain_edges, closure_program, join_relations
from bench.runner import (
    BenchReport, check_size, maxrss_to_bytes, run_bench, run_case, run_suite, to_python,
)
from prolog.engine import Engine
from prolog.errors import BenchmarkError
from prolog.parser import parse_query
from util.export import create_excel_report, format_report_table, report_to_json, reports_to_frame
from visualization import PLOTLY_AVAILABLE, create_bench_bar_chart, save_chart_html


# ==========================
# 오라클
# ==========================
def test_fib_oracle():
    assert [oracles.fib(n) for n in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]


def test_reachable_excludes_source_without_cycle():
    assert oracles.reachable([(0, 1), (1, 2)], 0) == {1, 2}
    assert oracles.reachable([(0, 1), (1, 0)], 0) == {0, 1}


def test_reachable_with_parity():
    chain = chain_edges(0, 5)
    assert oracles.reachable_with_parity(chain, 0, odd=True) == {1, 3, 5}
    assert oracles.reachable_with_parity(chain, 0, odd=False) == {2, 4}


def test_transitive_closure():
    assert oracles.transitive_closure("abc", [("a", "b"), ("b", "c")]) == {("a", "b"), ("b", "c"), ("a", "c")}


def test_cyclic_join():
    assert oracles.cyclic_join([(1, 2)], [(2, 3)], [(3, 1), (3, 2)]) == {(1, 2, 3)}


def test_join_relations_are_reproducible():
    assert join_relations(20) == join_relations(20)


# ==========================
# 벤치마크 실행
# ==========================
def test_fib_1000_is_exact():
    report = run_bench("fib", 1000)
    assert report.answers == 1
    engine = Engine()
    case = GENERATORS["fib"](1000)
    engine.consult(case.program)
    started = time.perf_counter()
    (answer,) = list(engine.query(case.query))
    assert time.perf_counter() - started < 5.0
    assert to_python(answer["F"]) == oracles.fib(1000)


def test_fib_zero():
    assert run_bench("fib", 0).answers == 1


def test_chain_of_500_nodes():
    engine = Engine()
    engine.consult(closure_program(chain_edges(1, 500)))
    started = time.perf_counter()
    answers = list(engine.query("path(1, Y)"))
    elapsed = time.perf_counter() - started
    assert len(answers) == 499
    assert {to_python(a["Y"]) for a in answers} == set(range(2, 501))
    assert elapsed < 5.0


def test_shuttle_reaches_every_position():
    report = run_bench("shuttle", 2000)
    assert report.answers == 2001
    assert report.tables >= 1 and report.resumptions > 0


SMALL = {
    "fib": 30, "recognize": 9, "nreverse": 12, "shuttle": 20, "pingpong": 15,
    "path_double_first": 8, "path_double_first_loop": 6, "path_right_last_pyramid": 5,
    "path_right_last_btree": 31, "large_join": 12,
}


@pytest.mark.parametrize("name", sorted(config.BENCHMARKS))
def test_every_benchmark_matches_its_oracle(name):
    report = run_bench(name, SMALL[name])
    assert report.name == name and report.size == SMALL[name]
    assert report.answers == len(GENERATORS[name](SMALL[name]).expected)
    assert report.ms >= 0


@pytest.mark.parametrize("name", ["path_right_last_pyramid", "path_right_last_btree", "recognize"])
def test_smallest_sizes(name):
    low = config.BENCHMARKS[name]["range"][0]
    run_bench(name, low)


def test_unknown_benchmark():
    with pytest.raises(BenchmarkError, match="unknown benchmark"):
        run_bench("nope", 10)


def test_size_outside_range():
    with pytest.raises(BenchmarkError, match="outside"):
        check_size("fib", 5000)
    with pytest.raises(BenchmarkError):
        check_size("shuttle", 0)


def test_oracle_mismatch_is_reported():
    case = GENERATORS["fib"](10)
    broken = dataclasses.replace(case, expected=frozenset({(56,)}))
    with pytest.raises(BenchmarkError, match="oracle mismatch"):
        run_case(broken)


def test_suite_uses_default_sizes_when_not_given():
    reports = run_suite(["fib", "recognize"], size=None)
    assert [(r.name, r.size) for r in reports] == [
        ("fib", config.DEFAULT_BENCH_SIZES["fib"]),
        ("recognize", config.DEFAULT_BENCH_SIZES["recognize"]),
    ]


@pytest.mark.parametrize("platform, expected", [("linux", 2048), ("darwin", 2)])
def test_maxrss_units_depend_on_platform(platform, expected):
    assert maxrss_to_bytes(2, platform) == expected


def test_to_python_conversions():
    goal = parse_query("t(1, a, [x, [2]], [], f(b))")[0]
    assert [to_python(arg) for arg in goal.args] == [1, "a", ("x", (2,)), (), ("f", "b")]


# ==========================
# 보고서 내보내기
# ==========================
def sample_reports():
    return [
        BenchReport("fib", 10, 1.25, 1, 11, 0, 0, 0, peak_memory=50 * 1024 * 1024),
        BenchReport("shuttle", 5, 2.5, 6, 1, 1, 1, 6),
    ]


def test_report_row_order():
    row = sample_reports()[0].as_row()
    assert list(row) == config.REPORT_COLUMNS


def test_report_json_line():
    data = json.loads(report_to_json(sample_reports()[1]))
    assert data["name"] == "shuttle" and data["answers"] == 6
    assert "peak_memory" not in data


def test_report_table():
    text = format_report_table(sample_reports(), with_memory=True)
    header = text.splitlines()[0].split()
    assert header == config.REPORT_COLUMNS + ["peak_mb"]
    assert "shuttle" in text
    assert format_report_table([]) == ""


def test_excel_report(tmp_path):
    path = tmp_path / "bench.xlsx"
    data = create_excel_report(sample_reports(), str(path))
    assert data.startswith(b"PK")
    assert path.read_bytes() == data


@pytest.mark.skipif(not PLOTLY_AVAILABLE, reason="plotly not installed")
def test_chart_html(tmp_path):
    fig = create_bench_bar_chart(reports_to_frame(sample_reports()))
    path = tmp_path / "chart.html"
    assert save_chart_html(fig, str(path))
    assert "plotly" in path.read_text(encoding="utf-8").lower()


def test_chart_without_data():
    assert create_bench_bar_chart(reports_to_frame([])) is None
    assert save_chart_html(None, "unused.html") is False
