# -*- coding: utf-8 -*-
"""
SLD 해석 머신과 엔진 파사드

머신은 하나의 반복 루프로 동작합니다.
- 목표 리스트: (goal, rest) 연결 리스트, None 이면 성공
- 선택점 스택: 절 커서 / 답 스트림 / 대체 목표 리스트
- reset/3 은 목표 뒤에 '$reset_marker'(Cont, Term) 을 넣고,
  shift/1 은 가장 가까운 표지까지의 남은 목표를 '$cont'(...) 항으로 잘라냅니다.
- 테이블 제어 흐름(리더, 활성화, delim, 완성 루프)도 '$' 로 시작하는 내부 명령으로
  같은 루프 안에서 실행되므로 파이썬 재귀가 깊어지지 않습니다.
"""
from __future__ import annotations

import logging
import operator
import sys
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, TextIO, Union

import config
from prolog.errors import (
    EvaluationError, ExistenceError, InferenceLimitError, InstantiationError,
    PrologError, PrologTypeError, ShiftError, TablingStateError,
)
from prolog.parser import Program, first_arg_token, format_term, parse_program, parse_query
from prolog.terms import (
    FAIL, ZERO, Atom, BindingStore, Compound, Int, Term, Var,
    copy_term, identical, indicator, resolve, term_variables, unify,
)
from tabling.tables import (
    CallInfo, Dependency, Suspension, Table, TableStatus, TablingState,
)

logger = logging.getLogger(__name__)

_FAIL = object()       # 현재 분기 실패
_EXHAUSTED = object()  # 이 실행의 선택점이 모두 소진됨

RESET_MARKER = "$reset_marker"
CONT = "$cont"
COMPLETION = Atom("$completion")
FAIL_GOALS = (FAIL, None)

Goals = Union[tuple, None]


def push_goals(goals: Iterable[Term], rest: Goals = None) -> Goals:
    for goal in reversed(list(goals)):
        rest = (goal, rest)
    return rest


# ===========================================
# 선택점
# ===========================================

class ClauseChoice:
    __slots__ = ("mark", "goal", "rest", "clauses", "index", "worker")

    def __init__(self, mark, goal, rest, clauses, worker):
        self.mark = mark
        self.goal = goal
        self.rest = rest
        self.clauses = clauses
        self.index = 0
        self.worker = worker


class StreamChoice:
    """생성기가 목표 리스트 또는 _FAIL 을 차례로 내놓는 선택점"""
    __slots__ = ("mark", "stream")

    def __init__(self, mark, stream):
        self.mark = mark
        self.stream = stream


class GoalsChoice:
    """한 번만 쓰이는 대체 목표 리스트"""
    __slots__ = ("mark", "goals")

    def __init__(self, mark, goals):
        self.mark = mark
        self.goals = goals


# ===========================================
# 산술
# ===========================================

def _int_div(a: int, b: int) -> int:
    if b == 0:
        raise EvaluationError("zero_divisor")
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _mod(a: int, b: int) -> int:
    if b == 0:
        raise EvaluationError("zero_divisor")
    return a % b


_ARITH: dict[tuple[str, int], Callable] = {
    ("+", 2): operator.add,
    ("-", 2): operator.sub,
    ("*", 2): operator.mul,
    ("//", 2): _int_div,
    ("mod", 2): _mod,
    ("min", 2): min,
    ("max", 2): max,
    ("-", 1): operator.neg,
    ("+", 1): operator.pos,
    ("abs", 1): abs,
}

_COMPARE = {
    "<": operator.lt, "=<": operator.le, ">": operator.gt, ">=": operator.ge,
    "=:=": operator.eq, "=\\=": operator.ne,
}


class Machine:
    """목표 스택 + 선택점 스택 + 트레일로 동작하는 해석기"""

    def __init__(self, program: Program, tabling: TablingState,
                 output: TextIO | None = None, max_inferences: int = 0):
        self.program = program
        self.tabling = tabling
        self.store = BindingStore()
        self.choices: list = []
        self.output = output
        self.max_inferences = max_inferences
        self.inferences = 0
        self._runs: list[object] = []
        self._leader_owner: object | None = None
        self._builtins: dict[tuple[str, int], Callable[[Term, Goals], object]] = {}
        self._register_builtins()

    def _register_builtins(self) -> None:
        b = self._builtins
        b[("true", 0)] = lambda goal, rest: rest
        b[("fail", 0)] = lambda goal, rest: _FAIL
        b[("false", 0)] = lambda goal, rest: _FAIL
        b[(",", 2)] = lambda goal, rest: (goal.args[0], (goal.args[1], rest))
        b[("=", 2)] = self._bi_unify
        b[("\\=", 2)] = self._bi_not_unify
        b[("==", 2)] = self._bi_identical
        b[("is", 2)] = self._bi_is
        for name in _COMPARE:
            b[(name, 2)] = self._bi_compare
        b[("writeln", 1)] = self._bi_writeln
        b[("nl", 0)] = self._bi_nl
        b[("call", 1)] = self._bi_call
        b[("reset", 3)] = self._bi_reset
        b[("shift", 1)] = self._bi_shift
        b[(RESET_MARKER, 2)] = self._bi_reset_marker
        # 테이블링 내부 명령
        b[("$activate", 2)] = self._bi_activate
        b[("$worker", 1)] = self._bi_worker
        b[("$delim_handle", 4)] = self._bi_delim_handle
        b[("$completion", 0)] = self._bi_completion
        b[("$leader_done", 2)] = self._bi_leader_done

    # ===========================================
    # 실행 루프
    # ===========================================

    def run(self, goals: Iterable[Term]) -> Iterator[None]:
        """해가 나올 때마다 yield (바인딩은 store 에서 읽음). 종료 시 트레일과 선택점을 원상 복구"""
        token = object()
        self._runs.append(token)
        base = len(self.choices)
        start = self.store.mark()
        current: object = push_goals(goals)
        try:
            while True:
                if current is _FAIL:
                    current = self._backtrack(base)
                    if current is _EXHAUSTED:
                        return
                    continue
                if current is None:
                    yield
                    if self._runs[-1] is not token:
                        raise PrologError("nested query generators must be consumed in LIFO order")
                    current = _FAIL
                    continue
                goal, rest = current
                current = self._step(goal, rest)
        finally:
            if self._leader_owner is token:
                self._leader_owner = None
                self.tabling.abort_component()
            choices = self.choices
            while len(choices) > base:
                choice = choices.pop()
                if choice.__class__ is StreamChoice:
                    choice.stream.close()
            self.store.undo(start)
            self._runs.remove(token)

    def _backtrack(self, base: int) -> object:
        choices = self.choices
        store = self.store
        while len(choices) > base:
            choice = choices[-1]
            store.undo(choice.mark)
            cls = choice.__class__
            if cls is ClauseChoice:
                goals = self._next_clause(choice)
                if goals is not _FAIL:
                    return goals
            elif cls is GoalsChoice:
                choices.pop()
                return choice.goals
            else:
                goals = next(choice.stream, _EXHAUSTED)
                if goals is _EXHAUSTED:
                    choices.pop()
                elif goals is not _FAIL:
                    return goals
        return _EXHAUSTED

    def _step(self, goal: Term, rest: Goals) -> object:
        goal = self.store.deref(goal)
        cls = goal.__class__
        if cls is Compound:
            key = (goal.functor, len(goal.args))
        elif cls is Atom:
            key = (goal.name, 0)
        elif cls is Var:
            raise InstantiationError("goal is not sufficiently instantiated")
        else:
            raise PrologTypeError(f"callable expected, found {format_term(goal)}")
        self.inferences += 1
        if self.max_inferences and self.inferences > self.max_inferences:
            raise InferenceLimitError(self.max_inferences)
        builtin = self._builtins.get(key)
        if builtin is not None:
            return builtin(goal, rest)
        if key[0] == CONT:
            return push_goals(goal.args, rest) if cls is Compound else rest
        if key in self.program.tabled:
            return self._table_call(goal, rest)
        if not self.program.is_defined(key):
            raise ExistenceError(f"{key[0]}/{key[1]}")
        return self._resolve(goal, key, rest, worker=False)

    # ===========================================
    # 절 해석
    # ===========================================

    def _resolve(self, goal: Term, key: tuple[str, int], rest: Goals, worker: bool) -> object:
        first = first_arg_token(self.store.deref(goal.args[0])) if key[1] else None
        clauses = self.program.candidates(key, first)
        if not clauses:
            return _FAIL
        if len(clauses) == 1:
            return self._try_clause(clauses[0], goal, rest, worker)
        choice = ClauseChoice(self.store.mark(), goal, rest, clauses, worker)
        self.choices.append(choice)
        return self._next_clause(choice)

    def _next_clause(self, choice: ClauseChoice) -> object:
        # choice 는 항상 선택점 스택의 맨 위
        clauses = choice.clauses
        while True:
            clause = clauses[choice.index]
            choice.index += 1
            if choice.index == len(clauses):
                self.choices.pop()
                return self._try_clause(clause, choice.goal, choice.rest, choice.worker)
            goals = self._try_clause(clause, choice.goal, choice.rest, choice.worker)
            if goals is not _FAIL:
                return goals
            self.store.undo(choice.mark)

    def _try_clause(self, clause, goal: Term, rest: Goals, worker: bool) -> object:
        if worker:
            self.tabling.stats.worker_steps += 1
        renamed = copy_term(clause.template, self.store)
        if not unify(renamed.args[0], goal, self.store):
            return _FAIL
        body = renamed.args
        for i in range(len(body) - 1, 0, -1):
            rest = (body[i], rest)
        return rest

    # ===========================================
    # 내장 술어
    # ===========================================

    def _bi_unify(self, goal: Term, rest: Goals) -> object:
        return rest if unify(goal.args[0], goal.args[1], self.store) else _FAIL

    def _bi_not_unify(self, goal: Term, rest: Goals) -> object:
        mark = self.store.mark()
        ok = unify(goal.args[0], goal.args[1], self.store)
        self.store.undo(mark)
        return _FAIL if ok else rest

    def _bi_identical(self, goal: Term, rest: Goals) -> object:
        return rest if identical(goal.args[0], goal.args[1], self.store) else _FAIL

    def evaluate(self, term: Term) -> int:
        term = self.store.deref(term)
        cls = term.__class__
        if cls is Int:
            return term.value
        if cls is Var:
            raise InstantiationError("arithmetic expression is not sufficiently instantiated")
        if cls is Atom:
            raise EvaluationError(f"not evaluable: {term.name}/0")
        fn = _ARITH.get((term.functor, len(term.args)))
        if fn is None:
            raise EvaluationError(f"not evaluable: {term.functor}/{len(term.args)}")
        return fn(*(self.evaluate(arg) for arg in term.args))

    def _bi_is(self, goal: Term, rest: Goals) -> object:
        value = Int(self.evaluate(goal.args[1]))
        return rest if unify(goal.args[0], value, self.store) else _FAIL

    def _bi_compare(self, goal: Term, rest: Goals) -> object:
        op = _COMPARE[goal.functor]
        return rest if op(self.evaluate(goal.args[0]), self.evaluate(goal.args[1])) else _FAIL

    def _write(self, text: str) -> None:
        out = self.output or sys.stdout
        out.write(text)
        out.flush()

    def _bi_writeln(self, goal: Term, rest: Goals) -> object:
        self._write(format_term(goal.args[0], self.store, quoted=False) + "\n")
        return rest

    def _bi_nl(self, goal: Term, rest: Goals) -> object:
        self._write("\n")
        return rest

    def _bi_call(self, goal: Term, rest: Goals) -> object:
        target = self.store.deref(goal.args[0])
        if target.__class__ is Var:
            raise InstantiationError("call/1: goal is not sufficiently instantiated")
        return (target, rest)

    # ---------------- 구분된 제어 ----------------

    def _bi_reset(self, goal: Term, rest: Goals) -> object:
        inner, cont, ball = goal.args
        return (inner, (Compound(RESET_MARKER, (cont, ball)), rest))

    def _bi_reset_marker(self, goal: Term, rest: Goals) -> object:
        # 목표가 정상 종료되면 Cont = 0
        return rest if unify(goal.args[0], ZERO, self.store) else _FAIL

    def _bi_shift(self, goal: Term, rest: Goals) -> object:
        captured = []
        node = rest
        while node is not None:
            pending, node = node
            if pending.__class__ is Compound and pending.functor == RESET_MARKER and len(pending.args) == 2:
                break
            captured.append(pending)
        else:
            raise ShiftError("shift/1 called without an enclosing reset/3")
        cont = Suspension(tuple(captured)).as_term()
        store = self.store
        if unify(pending.args[0], cont, store) and unify(pending.args[1], goal.args[0], store):
            return node
        return _FAIL

    # ===========================================
    # 테이블링
    # ===========================================

    def _table_call(self, goal: Term, rest: Goals) -> object:
        tabling = self.tabling
        table = tabling.get_table_for_variant(goal, self.store)
        if table.status is TableStatus.COMPLETE:
            return self._answers_from_table(table, goal, rest)
        if not tabling.leader_active:
            return self._run_leader(goal, table, rest)
        return self._run_follower(goal, table, rest)

    def _run_leader(self, goal: Term, table: Table, rest: Goals) -> object:
        if table.status is not TableStatus.FRESH:
            raise TablingStateError(f"leader table #{table.id} is {table.status.value}")
        self.tabling.create_scheduling_component()
        self._leader_owner = self._runs[-1]
        logger.debug("🚀 리더 시작: %s", format_term(goal, self.store))
        tid = Int(table.id)
        return (Compound("$activate", (goal, tid)),
                (COMPLETION, (Compound("$leader_done", (goal, tid)), rest)))

    def _run_follower(self, goal: Term, table: Table, rest: Goals) -> object:
        tid = Int(table.id)
        suspend = (Compound("shift", (Compound("call_info", (goal, tid)),)), rest)
        if table.status is TableStatus.FRESH:
            return (Compound("$activate", (goal, tid)), suspend)
        if table.status is TableStatus.ACTIVE:
            return suspend
        raise TablingStateError(f"follower reached complete table #{table.id}")

    def _bi_activate(self, goal: Term, rest: Goals) -> object:
        wrapper, tid = goal.args
        table = self.tabling.table(tid.value)
        self.tabling.activate(table)
        store = self.store
        cont, ball = store.new_var("Cont"), store.new_var("Ball")
        # 실패 구동 루프가 끝나면 이 대체 목표로 한 번 성공
        self.choices.append(GoalsChoice(store.mark(), rest))
        return (Compound("reset", (Compound("$worker", (wrapper,)), cont, ball)),
                (Compound("$delim_handle", (wrapper, cont, ball, tid)), FAIL_GOALS))

    def _bi_worker(self, goal: Term, rest: Goals) -> object:
        wrapper = self.store.deref(goal.args[0])
        return self._resolve(wrapper, indicator(wrapper), rest, worker=True)

    def _bi_delim_handle(self, goal: Term, rest: Goals) -> object:
        wrapper, cont, ball, tid = goal.args
        store = self.store
        tabling = self.tabling
        table = tabling.table(tid.value)
        cont = store.deref(cont)
        if cont == ZERO:
            tabling.store_answer(table, wrapper, store)
            return rest
        ball = store.deref(ball)
        if not (ball.__class__ is Compound and ball.functor == "call_info" and len(ball.args) == 2):
            raise ShiftError(f"unexpected shift inside a tabled call: {format_term(ball, store)}")
        source = tabling.table(store.deref(ball.args[1]).value)
        copied = copy_term(Compound("dependency", (ball.args[0], cont, wrapper)), store)
        source_wrapper, suspension, target_wrapper = copied.args
        dep = Dependency(CallInfo(source_wrapper, source),
                         Suspension.from_term(suspension),
                         CallInfo(target_wrapper, table))
        tabling.store_dependency(source, dep)
        return rest

    def _bi_completion(self, goal: Term, rest: Goals) -> object:
        tabling = self.tabling
        pair = tabling.next_pair()
        if pair is None:
            tabling.set_all_complete()
            tabling.cleanup_tables()
            return rest
        answer, dep = pair
        store = self.store
        self.choices.append(GoalsChoice(store.mark(), (goal, rest)))
        copied = copy_term(dep.as_term(), store)
        source_wrapper, suspension, target_wrapper = copied.args
        if not unify(source_wrapper, copy_term(answer, store), store):
            return _FAIL
        tabling.stats.resumptions += 1
        cont, ball = store.new_var("Cont"), store.new_var("Ball")
        tid = Int(dep.target.table.id)
        return (Compound("reset", (suspension, cont, ball)),
                (Compound("$delim_handle", (target_wrapper, cont, ball, tid)), FAIL_GOALS))

    def _bi_leader_done(self, goal: Term, rest: Goals) -> object:
        wrapper, tid = goal.args
        table = self.tabling.table(tid.value)
        self.tabling.unset_scheduling_component()
        self._leader_owner = None
        logger.debug("✅ 리더 완료: 테이블 #%d, 답 %d개", table.id, len(table.answers))
        return self._answers_from_table(table, wrapper, rest)

    def _answers_from_table(self, table: Table, wrapper: Term, rest: Goals) -> object:
        answers = list(table.answers.payloads())
        store = self.store
        if not answers:
            return _FAIL
        if len(answers) == 1:
            return rest if unify(wrapper, copy_term(answers[0], store), store) else _FAIL

        def stream():
            for answer in answers:
                yield rest if unify(wrapper, copy_term(answer, store), store) else _FAIL

        self.choices.append(StreamChoice(store.mark(), stream()))
        return _FAIL


# ===========================================
# 구분된 실행 결과
# ===========================================

@dataclass(frozen=True, slots=True)
class Answer:
    """구분된 목표가 정상 종료됨 (goal 은 바인딩이 반영된 사본)"""
    goal: Term


@dataclass(frozen=True, slots=True)
class Shifted:
    """shift 로 중단됨. payload, suspension, goal 은 하나의 사본에서 나와 변수를 공유"""
    payload: Term
    suspension: Suspension
    goal: Term


@dataclass(frozen=True, slots=True)
class Exhausted:
    pass


DelimOutcome = Union[Answer, Shifted, Exhausted]


class Engine:
    """프로그램 적재, 질의, 구분된 실행, 테이블 조회를 묶은 진입점"""

    def __init__(self, program: Program | None = None, output: TextIO | None = None,
                 max_inferences: int | None = None):
        if max_inferences is None:
            max_inferences = config.MAX_INFERENCES
        self.program = program if program is not None else Program()
        self.tabling = TablingState()
        self.machine = Machine(self.program, self.tabling, output=output, max_inferences=max_inferences)

    @property
    def store(self) -> BindingStore:
        return self.machine.store

    # ---------------- 적재 ----------------

    def load(self, program: Program) -> None:
        self.program.merge(program)

    def consult(self, text: str) -> Program:
        program = parse_program(text)
        self.load(program)
        logger.debug("📥 절 %d개 적재, 테이블 술어 %d개", len(program), len(program.tabled))
        return program

    def consult_file(self, path: str) -> Program:
        with open(path, encoding="utf-8") as fh:
            return self.consult(fh.read())

    # ---------------- 질의 ----------------

    def _start_query(self) -> None:
        if not self.machine._runs:
            self.machine.inferences = 0

    def solve(self, goals: list[Term]) -> Iterator[dict[str, Term]]:
        """해마다 {변수 이름: 값} (익명 변수 제외)"""
        self._start_query()
        names: dict[str, Var] = {}
        for var in self._query_vars(goals):
            if var.name != "_" and var.name not in names:
                names[var.name] = var
        store = self.store
        for _ in self.machine.run(goals):
            yield {name: resolve(var, store) for name, var in names.items()}

    def query(self, text: str) -> Iterator[dict[str, Term]]:
        return self.solve(parse_query(text))

    def _query_vars(self, goals: list[Term]) -> list[Var]:
        return term_variables(Compound("$query", tuple(goals)), self.store)

    # ---------------- 구분된 실행 ----------------

    def run_delimited(self, goal: Term) -> Iterator[DelimOutcome]:
        self._start_query()
        store = self.store
        cont, ball = store.new_var("Cont"), store.new_var("Ball")
        for _ in self.machine.run([Compound("reset", (goal, cont, ball))]):
            snapshot = copy_term(Compound("$outcome", (goal, cont, ball)), store)
            done_goal, done_cont, payload = snapshot.args
            if done_cont == ZERO:
                yield Answer(done_goal)
            else:
                self.tabling.stats.suspensions += 1
                yield Shifted(payload, Suspension.from_term(done_cont), done_goal)
        yield Exhausted()

    def resume(self, suspension: Suspension,
               bindings: Iterable[tuple[Term, Term]] = ()) -> Iterator[DelimOutcome]:
        """중단된 계속을 실행. bindings 의 (a, b) 쌍은 실행 전에 단일화됨"""
        goals = [Compound("=", pair) for pair in bindings]
        goals.append(suspension.as_term())
        goal = goals[-1]
        for earlier in reversed(goals[:-1]):
            goal = Compound(",", (earlier, goal))
        return self.run_delimited(goal)

    # ---------------- 테이블 ----------------

    def create_scheduling_component(self) -> None:
        self.tabling.create_scheduling_component()

    def complete_scheduling_component(self) -> None:
        """현재 컴포넌트의 완성 루프를 고정점까지 실행하고 플래그 해제"""
        for _ in self.machine.run([COMPLETION]):
            pass
        self.tabling.unset_scheduling_component()

    def unset_scheduling_component(self) -> None:
        """완성하지 않고 컴포넌트를 버림 (테이블은 fresh 로 되돌림)"""
        self.tabling.abort_component()

    def tables(self) -> Iterator[tuple[Term, TableStatus, list[Term]]]:
        for table in self.tabling.tables():
            yield table.call, table.status, list(table.answers.payloads())

    def table_for(self, goal: Term | str) -> Table | None:
        if isinstance(goal, str):
            goals = parse_query(goal)
            if len(goals) != 1:
                raise PrologError("expected a single call pattern")
            goal = goals[0]
        return self.tabling.lookup(goal, self.store)

    def table_answers(self, goal: Term | str) -> list[Term] | None:
        table = self.table_for(goal)
        if table is None:
            return None
        return list(table.answers.payloads())

    def abolish_all_tables(self) -> None:
        self.tabling.abolish_all()
        logger.debug("🧹 모든 테이블 삭제")

    def statistics(self) -> dict:
        stats = self.tabling.stats.as_dict()
        stats["inferences"] = self.machine.inferences
        stats["live_tables"] = len(self.tabling.call_trie)
        return stats
