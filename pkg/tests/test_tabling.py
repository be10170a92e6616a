# -*- coding: utf-8 -*-
import time

import pytest
from hypothesis import given, settings, strategies as st

from bench.oracles import reachable, transitive_closure
from prolog.engine import Answer, Engine, Exhausted, Shifted
from prolog.errors import ExistenceError, InferenceLimitError, TablingStateError
from prolog.parser import format_term, parse_query
from prolog.terms import BindingStore, Compound, copy_term, variant_key
from tabling.tables import (
    CallInfo, Dependency, Suspension, TableStatus, TablingState,
)

from conftest import CLOSURE_PROGRAM, DOUBLE_PROGRAM

CLOSURE = {("a", "b"), ("b", "c"), ("a", "c")}


def parse_goal(text):
    return parse_query(text)[0]


def assert_completed_cleanly(engine, repeat_query):
    """모든 테이블이 fresh → active → complete 를 거치고 의존성이 지워졌으며 재질의는 워커를 돌리지 않음"""
    for table in engine.tabling.tables():
        assert table.history == [TableStatus.FRESH, TableStatus.ACTIVE, TableStatus.COMPLETE]
        assert list(table.worklist.dependencies()) == []
    before = engine.statistics()["worker_steps"]
    list(engine.query(repeat_query))
    assert engine.statistics()["worker_steps"] == before


# ==========================
# 고정점
# ==========================
def test_running_example_fixpoint(make_engine, answer_set):
    engine = make_engine(CLOSURE_PROGRAM)
    started = time.perf_counter()
    assert answer_set(engine, "p(X,Y)", "X", "Y") == CLOSURE
    assert time.perf_counter() - started < 1.0
    stats = engine.statistics()
    assert stats["answers"] == 3
    assert stats["dependencies"] == 1
    assert stats["resumptions"] == 3
    assert stats["completion_rounds"] == 2
    assert_completed_cleanly(engine, "p(U,V)")


def test_answers_are_not_duplicated(make_engine):
    engine = make_engine(CLOSURE_PROGRAM)
    assert len(list(engine.query("p(X,Y)"))) == 3


def test_repeated_query_is_served_from_table(make_engine, answer_set):
    engine = make_engine(CLOSURE_PROGRAM)
    answer_set(engine, "p(X,Y)", "X", "Y")
    before = engine.statistics()
    assert answer_set(engine, "p(U,V)", "U", "V") == CLOSURE
    after = engine.statistics()
    assert after["worker_invocations"] == before["worker_invocations"]
    assert after["worker_steps"] == before["worker_steps"]
    assert after["tables"] == before["tables"]


def test_instantiated_call_gets_its_own_table(make_engine, answer_set):
    engine = make_engine(CLOSURE_PROGRAM)
    answer_set(engine, "p(X,Y)", "X", "Y")
    assert answer_set(engine, "p(a,Y)", "Y") == {("b",), ("c",)}
    assert engine.statistics()["tables"] == 2
    table = engine.table_for("p(a,Y)")
    assert table is not None and table.status is TableStatus.COMPLETE


def test_double_recursion_tables(make_engine, answer_set):
    engine = make_engine(DOUBLE_PROGRAM)
    started = time.perf_counter()
    assert answer_set(engine, "r(a,Y)", "Y") == {("b",), ("c",)}
    assert time.perf_counter() - started < 1.0
    tables = {format_term(call): {format_term(a) for a in answers}
              for call, status, answers in engine.tables()}
    assert len(tables) == 3
    by_first = {call.split(",")[0]: answers for call, answers in tables.items()}
    assert by_first["r(a"] == {"r(a,b)", "r(a,c)"}
    assert by_first["r(b"] == {"r(b,c)"}
    assert by_first["r(c"] == set()
    assert {format_term(a) for a in engine.table_answers("r(b,Y)")} == {"r(b,c)"}
    assert engine.table_answers("r(c,Y)") == []
    assert engine.table_answers("r(d,Y)") is None
    assert_completed_cleanly(engine, "r(a,W)")


def test_tabled_predicate_without_clauses(make_engine):
    engine = make_engine(":- table q/1.")
    assert list(engine.query("q(X)")) == []
    table = engine.table_for("q(X)")
    assert table.status is TableStatus.COMPLETE
    assert not engine.tabling.leader_active


def test_facts_only_component(make_engine, answer_set):
    engine = make_engine(":- table e/2.\ne(a,b). e(b,c).")
    assert answer_set(engine, "e(X,Y)", "X", "Y") == {("a", "b"), ("b", "c")}
    assert engine.statistics()["dependencies"] == 0


def test_sequential_components(make_engine, answer_set):
    engine = make_engine(CLOSURE_PROGRAM + DOUBLE_PROGRAM.replace(
        "e(a,b). e(b,c).\n", ""))
    assert answer_set(engine, "p(X,Y)", "X", "Y") == CLOSURE
    assert not engine.tabling.leader_active
    assert answer_set(engine, "r(X,Y)", "X", "Y") == CLOSURE
    assert not engine.tabling.leader_active


def test_tabled_call_inside_ordinary_predicate(make_engine, answer_set):
    engine = make_engine(CLOSURE_PROGRAM + "q(Y) :- p(a,Y), Y \\= b.")
    assert answer_set(engine, "q(Y)", "Y") == {("c",)}


# ==========================
# 테이블 상태
# ==========================
def test_variant_calls_share_a_table():
    state = TablingState()
    store = BindingStore()
    first = state.get_table_for_variant(parse_goal("p(X,Y)"), store)
    assert first.status is TableStatus.FRESH
    assert len(first.answers) == 0 and len(first.worklist) == 0
    assert state.get_table_for_variant(parse_goal("p(A,B)"), store) is first
    assert state.get_table_for_variant(parse_goal("p(a,Y)"), store) is not first
    assert state.get_table_for_variant(parse_goal("p(A,A)"), store) is not first


def test_status_never_moves_backwards():
    state = TablingState()
    table = state.get_table_for_variant(parse_goal("p(X)"), BindingStore())
    with pytest.raises(TablingStateError):
        table.set_status(TableStatus.COMPLETE)
    table.set_status(TableStatus.ACTIVE)
    table.set_status(TableStatus.COMPLETE)
    with pytest.raises(TablingStateError):
        table.set_status(TableStatus.ACTIVE)


def test_store_answer_deduplicates():
    state = TablingState()
    store = BindingStore()
    table = state.get_table_for_variant(parse_goal("p(X,Y)"), store)
    assert state.store_answer(table, parse_goal("p(a,b)"), store)
    assert not state.store_answer(table, parse_goal("p(a,b)"), store)
    assert len(table.answers) == 1
    assert len(list(table.worklist.answers())) == 1
    assert table in state.worklist


def test_store_answer_canonicalizes_variables():
    state = TablingState()
    store = BindingStore()
    table = state.get_table_for_variant(parse_goal("p(X,Y)"), store)
    wrapper = parse_goal("p(a,Z)")
    state.store_answer(table, wrapper, store)
    assert not state.store_answer(table, parse_goal("p(a,W)"), store)
    (stored,) = list(table.answers.payloads())
    assert variant_key(stored, store) == variant_key(wrapper, store)
    # 저장된 답은 호출자의 변수와 분리된 사본
    assert stored.args[1] != wrapper.args[1]


def test_dependency_into_table_without_answers():
    state = TablingState()
    store = BindingStore()
    goal = parse_goal("p(X,Z)")
    table = state.get_table_for_variant(goal, store)
    dep = Dependency(CallInfo(goal, table), Suspension((parse_goal("e(Z,Y)"),)),
                     CallInfo(parse_goal("p(X,Y)"), table))
    state.store_dependency(table, dep)
    assert table in state.worklist
    assert table.worklist.get_work() is None
    assert list(table.worklist.dependencies()) == [dep]


def test_component_flag_is_exclusive():
    state = TablingState()
    state.create_scheduling_component()
    with pytest.raises(TablingStateError):
        state.create_scheduling_component()
    state.unset_scheduling_component()
    assert not state.leader_active and state.component == []


# ==========================
# 팔로워와 완성
# ==========================
def test_follower_suspends_and_component_completes(make_engine, answer_set):
    engine = make_engine(CLOSURE_PROGRAM)
    engine.create_scheduling_component()
    body = Compound(",", tuple(parse_query("p(X,Z), e(Z,Y)")))

    shifted, done = list(engine.run_delimited(body))
    assert isinstance(shifted, Shifted) and isinstance(done, Exhausted)
    table = engine.table_for("p(X,Z)")
    assert table.status is TableStatus.ACTIVE
    assert {format_term(a) for a in table.answers.payloads()} == {"p(a,b)", "p(b,c)"}
    activations = engine.statistics()["worker_invocations"]

    # 활성 테이블: 다시 활성화하지 않고 바로 중단
    again = list(engine.run_delimited(body))
    assert isinstance(again[0], Shifted)
    assert engine.statistics()["worker_invocations"] == activations

    engine.complete_scheduling_component()
    assert not engine.tabling.leader_active
    assert table.status is TableStatus.COMPLETE
    assert answer_set(engine, "p(X,Y)", "X", "Y") == CLOSURE


def test_continuations_resume_independently(make_engine):
    engine = make_engine(CLOSURE_PROGRAM)
    engine.create_scheduling_component()
    body = Compound(",", tuple(parse_query("p(X,Z), e(Z,Y)")))
    shifted, _ = list(engine.run_delimited(body))
    source = shifted.payload.args[0]
    answers = [parse_goal("p(a,b)"), parse_goal("p(b,c)")]

    def results(order):
        out = {}
        for answer in order:
            copied = copy_term(Compound("pair", (source, shifted.suspension.as_term())), engine.store)
            outcomes = engine.resume(Suspension.from_term(copied.args[1]), [(copied.args[0], answer)])
            out[format_term(answer)] = [format_term(o.goal.args[1], quoted=False)
                                        for o in outcomes if isinstance(o, Answer)]
        return out

    forward = results(answers)
    assert forward == results(list(reversed(answers)))
    assert forward == {"p(a,b)": ["$cont(e(b,c))"], "p(b,c)": []}
    engine.unset_scheduling_component()


def test_status_history_and_cleanup(make_engine):
    engine = make_engine(DOUBLE_PROGRAM + "e(c,a).")
    list(engine.query("r(X,Y)"))
    list(engine.query("r(a,Y)"))
    for table in engine.tabling.tables():
        assert table.history == [TableStatus.FRESH, TableStatus.ACTIVE, TableStatus.COMPLETE]
        assert list(table.worklist.dependencies()) == []
        assert not table.in_component


# ==========================
# 오라클 비교
# ==========================
NODES = [f"n{i}" for i in range(8)]
graphs = st.lists(st.tuples(st.sampled_from(NODES), st.sampled_from(NODES)), min_size=1, max_size=20)

RULES = {
    "left": "p(X,Y) :- p(X,Z), e(Z,Y).\np(X,Y) :- e(X,Y).",
    "double": "p(X,Y) :- p(X,Z), p(Z,Y).\np(X,Y) :- e(X,Y).",
}


def closure_engine(edges, rules):
    facts = "\n".join(f"e({a},{b})." for a, b in edges)
    engine = Engine(max_inferences=0)
    engine.consult(":- table p/2.\n" + rules + "\n" + facts)
    return engine


def pairs(engine, query):
    return {(format_term(answer["X"]), format_term(answer["Y"])) for answer in engine.query(query)}


def sources(engine):
    return {format_term(answer["Y"]) for answer in engine.query("p(n0,Y)")}


@settings(max_examples=200)
@given(graphs, st.sampled_from(sorted(RULES)))
def test_closure_matches_warshall(edges, rules):
    expected = transitive_closure(NODES, edges)
    engine = closure_engine(edges, RULES[rules])
    assert pairs(engine, "p(X,Y)") == expected
    assert_completed_cleanly(engine, "p(U,V)")
    fresh = closure_engine(edges, RULES[rules])
    assert sources(fresh) == reachable(edges, "n0")
    assert_completed_cleanly(fresh, "p(n0,W)")


CYCLE = [("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")]
PERMUTATIONS = [
    "p(X,Y) :- p(X,Z), e(Z,Y).\np(X,Y) :- e(X,Y).",
    "p(X,Y) :- e(X,Y).\np(X,Y) :- p(X,Z), e(Z,Y).",
    "p(X,Y) :- e(Z,Y), p(X,Z).\np(X,Y) :- e(X,Y).",
    "p(X,Y) :- e(X,Y).\np(X,Y) :- e(Z,Y), p(X,Z).",
]


@pytest.mark.parametrize("rules", PERMUTATIONS)
def test_clause_and_goal_order_do_not_change_answers(rules):
    engine = closure_engine(CYCLE, rules)
    assert pairs(engine, "p(X,Y)") == transitive_closure("abcd", CYCLE)


def test_cyclic_graph_terminates(make_engine, answer_set):
    engine = make_engine(DOUBLE_PROGRAM + "e(c,a).")
    nodes = {"a", "b", "c"}
    assert answer_set(engine, "r(X,Y)", "X", "Y") == {(x, y) for x in nodes for y in nodes}


# ==========================
# 오류 복구와 테이블 삭제
# ==========================
def test_error_resets_component(make_engine):
    engine = make_engine(":- table p/1.\np(X) :- q(X).")
    with pytest.raises(ExistenceError):
        list(engine.query("p(X)"))
    assert not engine.tabling.leader_active
    table = engine.table_for("p(X)")
    assert table.status is TableStatus.FRESH
    assert len(table.answers) == 0 and len(table.worklist) == 0

    engine.consult("q(1).")
    assert [format_term(a["X"]) for a in engine.query("p(X)")] == ["1"]


def test_abolish_all_tables(make_engine, answer_set):
    engine = make_engine(CLOSURE_PROGRAM)
    answer_set(engine, "p(X,Y)", "X", "Y")
    engine.abolish_all_tables()
    assert list(engine.tables()) == []
    assert engine.table_for("p(X,Y)") is None
    before = engine.statistics()["worker_invocations"]
    assert answer_set(engine, "p(X,Y)", "X", "Y") == CLOSURE
    assert engine.statistics()["worker_invocations"] > before


def test_abolish_refused_during_component(make_engine):
    engine = make_engine(CLOSURE_PROGRAM)
    engine.create_scheduling_component()
    with pytest.raises(TablingStateError):
        engine.abolish_all_tables()
    engine.unset_scheduling_component()
    engine.abolish_all_tables()


DOUBLE_PERMUTATIONS = [
    "p(X,Y) :- p(X,Z), p(Z,Y).\np(X,Y) :- e(X,Y).",
    "p(X,Y) :- e(X,Y).\np(X,Y) :- p(X,Z), p(Z,Y).",
    "p(X,Y) :- p(Z,Y), p(X,Z).\np(X,Y) :- e(X,Y).",
    "p(X,Y) :- e(X,Y).\np(X,Y) :- p(Z,Y), p(X,Z).",
]


@settings(max_examples=200)
@given(graphs)
def test_permutations_agree_on_random_graphs(edges):
    expected = transitive_closure(NODES, edges)
    expected_from_n0 = reachable(edges, "n0")
    for rules in PERMUTATIONS + DOUBLE_PERMUTATIONS:
        assert pairs(closure_engine(edges, rules), "p(X,Y)") == expected
        assert sources(closure_engine(edges, rules)) == expected_from_n0


def test_untabled_closure_on_cycle_exceeds_inference_cap():
    facts = "\n".join(f"e({a},{b})." for a, b in CYCLE)
    engine = Engine(max_inferences=50_000)
    engine.consult(PERMUTATIONS[0] + "\n" + facts)
    with pytest.raises(InferenceLimitError):
        list(engine.query("p(X,Y)"))
