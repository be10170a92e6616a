# -*- coding: utf-8 -*-
"""
테이블 상태와 스케줄링 컴포넌트

- Table: 호출 변형 하나에 대한 상태 / 답 트라이 / 지역 작업 목록
- Dependency: (원천 호출, 계속, 대상 호출) 중단 기록
- TablingState: 호출 트라이, 리더 플래그, 컴포넌트 테이블, 전역 작업 목록, 통계

실제 제어 흐름(리더/팔로워, 활성화, 완성 루프)은 엔진의 내부 명령으로 실행되고,
여기의 메서드들은 그 명령들이 사용하는 저장/조회 연산입니다.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Iterator

from prolog.errors import TablingStateError
from prolog.terms import (
    Atom, BindingStore, Compound, Term, VariantKey,
    copy_term, term_from_key, variant_key,
)
from tabling.tries import Trie
from tabling.worklist import GlobalWorklist, LocalWorklist

logger = logging.getLogger(__name__)


class TableStatus(Enum):
    FRESH = "fresh"
    ACTIVE = "active"
    COMPLETE = "complete"


_ALLOWED = {
    (TableStatus.FRESH, TableStatus.ACTIVE),
    (TableStatus.ACTIVE, TableStatus.COMPLETE),
}


@dataclass(eq=False)
class Table:
    id: int
    variant: VariantKey
    status: TableStatus = TableStatus.FRESH
    answers: Trie = field(default_factory=Trie)
    worklist: LocalWorklist = field(default_factory=LocalWorklist)
    in_component: bool = False
    history: list = field(default_factory=lambda: [TableStatus.FRESH])

    @property
    def call(self) -> Term:
        """정규 호출 패턴"""
        return term_from_key(self.variant)

    def set_status(self, status: TableStatus) -> None:
        if (self.status, status) not in _ALLOWED:
            raise TablingStateError(f"illegal table transition {self.status.value} -> {status.value}")
        self.status = status
        self.history.append(status)

    def reset(self) -> None:
        """오류 후 복구: fresh 상태, 빈 답 트라이와 작업 목록"""
        self.status = TableStatus.FRESH
        self.answers = Trie()
        self.worklist = LocalWorklist()
        self.in_component = False
        self.history = [TableStatus.FRESH]


@dataclass(frozen=True, slots=True)
class Suspension:
    """구분된 실행의 남은 목표들. 항으로는 '$cont'(G1, ..., Gn)"""
    goals: tuple = ()

    def as_term(self) -> Term:
        if not self.goals:
            return Atom("$cont")
        return Compound("$cont", self.goals)

    @classmethod
    def from_term(cls, term: Term) -> "Suspension":
        if isinstance(term, Atom) and term.name == "$cont":
            return cls(())
        if isinstance(term, Compound) and term.functor == "$cont":
            return cls(term.args)
        raise TablingStateError(f"not a continuation: {term!r}")


@dataclass(frozen=True, slots=True)
class CallInfo:
    wrapper: Term
    table: Table


@dataclass(frozen=True, slots=True)
class Dependency:
    source: CallInfo
    continuation: Suspension
    target: CallInfo

    def as_term(self) -> Term:
        """세 부분이 변수를 공유하는 하나의 항 (함께 복사해야 공유가 보존됨)"""
        return Compound("dependency", (self.source.wrapper, self.continuation.as_term(), self.target.wrapper))


@dataclass
class TablingStats:
    tables: int = 0
    answers: int = 0
    dependencies: int = 0
    worker_invocations: int = 0
    worker_steps: int = 0
    suspensions: int = 0
    resumptions: int = 0
    completion_rounds: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


class TablingState:
    """엔진 인스턴스 하나의 테이블링 상태"""

    def __init__(self):
        self.call_trie = Trie()
        self.by_id: dict[int, Table] = {}
        self.leader_active = False
        self.component: list[Table] = []
        self.worklist: GlobalWorklist[Table] = GlobalWorklist()
        self.stats = TablingStats()
        self._ids = itertools.count(1)
        self._pairs: Iterator | None = None

    # ===========================================
    # 테이블 조회
    # ===========================================

    def get_table_for_variant(self, wrapper: Term, store: BindingStore) -> Table:
        key = variant_key(wrapper, store)
        node, was_new = self.call_trie.insert(key)
        if was_new:
            table = Table(next(self._ids), key)
            node.payload = table
            self.by_id[table.id] = table
            self.stats.tables += 1
            logger.debug("📋 새 테이블 #%d", table.id)
        return node.payload

    def lookup(self, wrapper: Term, store: BindingStore) -> Table | None:
        node = self.call_trie.lookup(variant_key(wrapper, store))
        return None if node is None else node.payload

    def table(self, table_id: int) -> Table:
        try:
            return self.by_id[table_id]
        except KeyError:
            raise TablingStateError(f"unknown table #{table_id}") from None

    def tables(self) -> Iterator[Table]:
        yield from self.call_trie.payloads()

    # ===========================================
    # 스케줄링 컴포넌트
    # ===========================================

    def create_scheduling_component(self) -> None:
        if self.leader_active:
            raise TablingStateError("a scheduling component is already active")
        self.leader_active = True
        self.component = []
        self.worklist.clear()
        self._pairs = None

    def unset_scheduling_component(self) -> None:
        self.leader_active = False
        self.component = []
        self.worklist.clear()
        self._pairs = None

    def activate(self, table: Table) -> None:
        table.set_status(TableStatus.ACTIVE)
        if not table.in_component:
            table.in_component = True
            self.component.append(table)
        self.stats.worker_invocations += 1

    def store_answer(self, table: Table, wrapper: Term, store: BindingStore) -> bool:
        key = variant_key(wrapper, store)
        node, was_new = table.answers.insert(key)
        if not was_new:
            return False
        answer = copy_term(wrapper, store)
        node.payload = answer
        table.worklist.add_answer(answer)
        self.worklist.push(table)
        self.stats.answers += 1
        return True

    def store_dependency(self, source: Table, dep: Dependency) -> None:
        source.worklist.add_dependency(dep)
        self.worklist.push(source)
        self.stats.dependencies += 1
        self.stats.suspensions += 1

    # ===========================================
    # 완성(completion)
    # ===========================================

    def completion_step(self, table: Table) -> Iterator[tuple[Term, Dependency]]:
        """get_work 가 없을 때까지 (답, 의존성) 쌍의 곱을 생성"""
        while True:
            work = table.worklist.get_work()
            if work is None:
                return
            answers, deps = work
            for answer in answers:
                for dep in deps:
                    yield answer, dep

    def next_pair(self) -> tuple[Term, Dependency] | None:
        """현재 테이블을 다 비운 뒤 전역 작업 목록에서 다음 테이블로. 남은 일이 없으면 None"""
        while True:
            if self._pairs is not None:
                pair = next(self._pairs, None)
                if pair is not None:
                    return pair
                self._pairs = None
            table = self.worklist.pop()
            if table is None:
                return None
            self.stats.completion_rounds += 1
            self._pairs = self.completion_step(table)

    def set_all_complete(self) -> None:
        for table in self.component:
            if table.status is TableStatus.ACTIVE:
                table.set_status(TableStatus.COMPLETE)

    def cleanup_tables(self) -> None:
        for table in self.component:
            table.worklist.erase_dependencies()
            table.in_component = False
        logger.debug("✅ 컴포넌트 완성: 테이블 %d개", len(self.component))

    def abort_component(self) -> None:
        """오류 전파 전 정리: 컴포넌트 테이블을 fresh로 되돌리고 플래그 해제"""
        count = len(self.component)
        for table in self.component:
            table.reset()
        self.unset_scheduling_component()
        logger.warning("⚠️ 스케줄링 컴포넌트 중단: 테이블 %d개 초기화", count)

    def abolish_all(self) -> None:
        if self.leader_active:
            raise TablingStateError("cannot abolish tables while a scheduling component is active")
        self.call_trie = Trie()
        self.by_id.clear()
