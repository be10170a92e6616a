# -*- coding: utf-8 -*-
"""
엔진과 독립적인 기대값 계산 (벤치마크 검증과 테스트에서 사용)
"""
from __future__ import annotations

from collections import defaultdict, deque
from typing import Hashable, Iterable


def fib(n: int) -> int:
    """반복 큰 정수 피보나치, fib(0) = 0"""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _successors(edges: Iterable[tuple[Hashable, Hashable]]) -> dict:
    succ = defaultdict(list)
    for a, b in edges:
        succ[a].append(b)
    return succ


def reachable(edges: Iterable[tuple[Hashable, Hashable]], source: Hashable) -> set:
    """길이 1 이상의 경로로 source 에서 도달 가능한 노드 (BFS)"""
    succ = _successors(edges)
    seen: set = set()
    queue = deque(succ.get(source, ()))
    while queue:
        node = queue.popleft()
        if node in seen:
            continue
        seen.add(node)
        queue.extend(succ.get(node, ()))
    return seen


def reachable_with_parity(edges: Iterable[tuple[Hashable, Hashable]], source: Hashable, odd: bool) -> set:
    """홀수(odd=True) 또는 2 이상의 짝수 길이 경로로 도달 가능한 노드"""
    succ = _successors(edges)
    seen: set = set()
    queue = deque((node, 1) for node in succ.get(source, ()))
    while queue:
        node, parity = queue.popleft()
        if (node, parity) in seen:
            continue
        seen.add((node, parity))
        for nxt in succ.get(node, ()):
            queue.append((nxt, 1 - parity))
    wanted = 1 if odd else 0
    return {node for node, parity in seen if parity == wanted}


def transitive_closure(nodes: Iterable[Hashable], edges: Iterable[tuple[Hashable, Hashable]]) -> set:
    """Warshall 방식 전이 폐포"""
    nodes = list(nodes)
    reach = {a: set() for a in nodes}
    for a, b in edges:
        reach.setdefault(a, set()).add(b)
        reach.setdefault(b, set())
    keys = list(reach)
    for k in keys:
        for i in keys:
            if k in reach[i]:
                reach[i] |= reach[k]
    return {(a, b) for a, targets in reach.items() for b in targets}


def cyclic_join(r: Iterable[tuple], s: Iterable[tuple], t: Iterable[tuple]) -> set:
    """{(x, y, z) | r(x,y), s(y,z), t(z,x)}"""
    s_by_first = _successors(s)
    t_set = set(t)
    return {(x, y, z) for x, y in r for z in s_by_first.get(y, ()) if (z, x) in t_set}
