# -*- coding: utf-8 -*-
"""
전역 작업 목록(테이블 큐)과 테이블별 지역 작업 목록(배치 덱)

지역 작업 목록 규칙:
- 새 답은 왼쪽, 새 의존성은 오른쪽에 추가
- 답이 의존성의 왼쪽에 있다 ⇔ 그 둘은 아직 결합되지 않았다
- 결합은 인접한 (답 배치, 의존성 배치) 쌍의 위치를 맞바꾸는 것
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Generic, Iterator, TypeVar

T = TypeVar("T")


class BatchKind(Enum):
    ANSWER = "answer"
    DEPENDENCY = "dependency"


@dataclass(slots=True, eq=False)
class Batch:
    kind: BatchKind
    items: list = field(default_factory=list)


class LocalWorklist:
    __slots__ = ("batches", "left_open", "right_open")

    def __init__(self):
        self.batches: deque[Batch] = deque()
        # 끝 배치가 삽입으로 만들어진 뒤 그 끝에서 교환이 없었는지
        self.left_open = False
        self.right_open = False

    def __len__(self) -> int:
        return len(self.batches)

    def add_answer(self, answer: Any) -> None:
        batches = self.batches
        if batches and self.left_open and batches[0].kind is BatchKind.ANSWER:
            batches[0].items.append(answer)
            return
        batches.appendleft(Batch(BatchKind.ANSWER, [answer]))
        self.left_open = True
        if len(batches) == 1:
            self.right_open = False

    def add_dependency(self, dep: Any) -> None:
        batches = self.batches
        if batches and self.right_open and batches[-1].kind is BatchKind.DEPENDENCY:
            batches[-1].items.append(dep)
            return
        batches.append(Batch(BatchKind.DEPENDENCY, [dep]))
        self.right_open = True
        if len(batches) == 1:
            self.left_open = False

    def get_work(self) -> tuple[list, list] | None:
        """가장 왼쪽의 (답, 의존성) 인접 쌍을 맞바꾸고 두 항목 목록의 사본을 반환"""
        batches = self.batches
        previous = None
        for i, batch in enumerate(batches):
            if previous is not None and previous.kind is BatchKind.ANSWER and batch.kind is BatchKind.DEPENDENCY:
                batches[i - 1], batches[i] = batch, previous
                if i - 1 == 0:
                    self.left_open = False
                if i == len(batches) - 1:
                    self.right_open = False
                return list(previous.items), list(batch.items)
            previous = batch
        return None

    def erase_dependencies(self) -> None:
        kept = [b for b in self.batches if b.kind is BatchKind.ANSWER]
        self.batches = deque(kept)
        self.left_open = self.right_open = False

    def answers(self) -> Iterator[Any]:
        for batch in self.batches:
            if batch.kind is BatchKind.ANSWER:
                yield from batch.items

    def dependencies(self) -> Iterator[Any]:
        for batch in self.batches:
            if batch.kind is BatchKind.DEPENDENCY:
                yield from batch.items

    def is_combined(self) -> bool:
        """모든 의존성 배치가 모든 답 배치보다 왼쪽이면 True"""
        seen_answer = False
        for batch in self.batches:
            if batch.kind is BatchKind.ANSWER:
                seen_answer = True
            elif seen_answer:
                return False
        return True


class GlobalWorklist(Generic[T]):
    """중복 없는 FIFO 테이블 큐"""

    __slots__ = ("_queue", "_members")

    def __init__(self):
        self._queue: deque[T] = deque()
        self._members: set[int] = set()

    def push(self, item: T) -> None:
        key = id(item)
        if key in self._members:
            return
        self._members.add(key)
        self._queue.append(item)

    def pop(self) -> T | None:
        if not self._queue:
            return None
        item = self._queue.popleft()
        self._members.discard(id(item))
        return item

    def __contains__(self, item: T) -> bool:
        return id(item) in self._members

    def __len__(self) -> int:
        return len(self._queue)

    def clear(self) -> None:
        self._queue.clear()
        self._members.clear()
