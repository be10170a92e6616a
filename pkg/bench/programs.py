# -*- coding: utf-8 -*-
"""
내장 벤치마크 프로그램 생성기

각 생성기는 크기 N 에 맞는 프로그램 텍스트, 질의, 오라클로 구한 기대 답 집합을 돌려줍니다.
기대 답은 질의 변수 순서의 파이썬 값 튜플 집합입니다 (정수 → int, 원자 → str, 리스트 → tuple).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from bench import oracles


@dataclass(frozen=True)
class BenchmarkCase:
    name: str
    size: int
    program: str
    query: str
    variables: tuple[str, ...]
    expected: frozenset = field(default_factory=frozenset)


# ==========================
# 프로그램 조각
# ==========================
LEFT_CLOSURE = """\
:- table path/2.
path(X, Y) :- path(X, Z), e(Z, Y).
path(X, Y) :- e(X, Y).
"""

DOUBLE_CLOSURE = """\
:- table path/2.
path(X, Y) :- path(X, Z), path(Z, Y).
path(X, Y) :- e(X, Y).
"""

RIGHT_LAST_CLOSURE = """\
:- table path/2.
path(X, Y) :- e(X, Y).
path(X, Y) :- e(X, Z), path(Z, Y).
"""


def edge_facts(edges: Iterable[tuple[int, int]], name: str = "e") -> str:
    return "".join(f"{name}({a}, {b}).\n" for a, b in edges)


def closure_program(edges: Iterable[tuple[int, int]], rules: str = LEFT_CLOSURE) -> str:
    """경로 규칙 + e/2 사실"""
    facts = edge_facts(edges)
    if not facts:
        # 간선이 없어도 e/2 호출이 존재 오류가 되지 않도록 빈 테이블 술어로 선언
        facts = ":- table e/2.\n"
    return rules + facts


def chain_edges(first: int, last: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(first, last)]


def pyramid_edges(height: int) -> tuple[int, list[tuple[int, int]]]:
    """높이 height 피라미드: (r, c) → (r+1, c), (r+1, c+1). 노드 번호는 r(r+1)/2 + c"""
    def node(r: int, c: int) -> int:
        return r * (r + 1) // 2 + c

    edges = []
    for r in range(height - 1):
        for c in range(r + 1):
            edges.append((node(r, c), node(r + 1, c)))
            edges.append((node(r, c), node(r + 1, c + 1)))
    return height * (height + 1) // 2, edges


def btree_edges(size: int) -> list[tuple[int, int]]:
    """노드 1..size, i → 2i, 2i+1"""
    edges = []
    for i in range(1, size + 1):
        for child in (2 * i, 2 * i + 1):
            if child <= size:
                edges.append((i, child))
    return edges


def _singles(values: Iterable) -> frozenset:
    return frozenset((v,) for v in values)


# ==========================
# 벤치마크별 생성기
# ==========================
def fib_case(size: int) -> BenchmarkCase:
    program = """\
:- table fib/2.
fib(0, 0).
fib(1, 1).
fib(N, F) :- N > 1, N1 is N - 1, N2 is N - 2, fib(N1, F1), fib(N2, F2), F is F1 + F2.
"""
    return BenchmarkCase("fib", size, program, f"fib({size}, F).", ("F",),
                         _singles([oracles.fib(size)]))


def recognize_case(size: int) -> BenchmarkCase:
    # a + a * a + ... (피연산자 size 개). 모든 접두 표현식이 인식됨
    rules = """\
:- table expr/2, term/2.
expr(I, J) :- expr(I, K), tok(K, '+', L), term(L, J).
expr(I, J) :- term(I, J).
term(I, J) :- term(I, K), tok(K, '*', L), factor(L, J).
term(I, J) :- factor(I, J).
factor(I, J) :- tok(I, a, J).
factor(I, J) :- tok(I, '(', K), expr(K, L), tok(L, ')', J).
"""
    facts = []
    for i in range(size):
        facts.append(f"tok({2 * i}, a, {2 * i + 1}).\n")
        if i + 1 < size:
            op = "'+'" if i % 2 == 0 else "'*'"
            facts.append(f"tok({2 * i + 1}, {op}, {2 * i + 2}).\n")
    return BenchmarkCase("recognize", size, rules + "".join(facts), "expr(0, J).", ("J",),
                         _singles(2 * i + 1 for i in range(size)))


def nreverse_case(size: int) -> BenchmarkCase:
    program = """\
:- table nrev/2.
app([], L, L).
app([H|T], L, [H|R]) :- app(T, L, R).
nrev([], []).
nrev([H|T], R) :- nrev(T, RT), app(RT, [H], R).
"""
    items = list(range(1, size + 1))
    query = f"nrev([{', '.join(map(str, items))}], R)."
    return BenchmarkCase("nreverse", size, program, query, ("R",),
                         frozenset({(tuple(reversed(items)),)}))


def shuttle_case(size: int) -> BenchmarkCase:
    edges = []
    for i in range(size):
        edges.append((i, i + 1))
        edges.append((i + 1, i))
    program = """\
:- table reach/2.
reach(X, Y) :- reach(X, Z), e(Z, Y).
reach(X, Y) :- e(X, Y).
""" + edge_facts(edges)
    return BenchmarkCase("shuttle", size, program, "reach(0, Y).", ("Y",),
                         _singles(oracles.reachable(edges, 0)))


def pingpong_case(size: int) -> BenchmarkCase:
    edges = chain_edges(0, size)
    program = """\
:- table ping/2, pong/2.
ping(X, Y) :- pong(X, Z), e(Z, Y).
ping(X, Y) :- e(X, Y).
pong(X, Y) :- ping(X, Z), e(Z, Y).
""" + edge_facts(edges)
    return BenchmarkCase("pingpong", size, program, "ping(0, Y).", ("Y",),
                         _singles(oracles.reachable_with_parity(edges, 0, odd=True)))


def path_double_first_case(size: int) -> BenchmarkCase:
    edges = chain_edges(0, size)
    return BenchmarkCase("path_double_first", size, closure_program(edges, DOUBLE_CLOSURE),
                         "path(0, Y).", ("Y",), _singles(range(1, size + 1)))


def path_double_first_loop_case(size: int) -> BenchmarkCase:
    edges = chain_edges(0, size) + [(size, 0)]
    return BenchmarkCase("path_double_first_loop", size, closure_program(edges, DOUBLE_CLOSURE),
                         "path(0, Y).", ("Y",), _singles(oracles.reachable(edges, 0)))


def path_right_last_pyramid_case(size: int) -> BenchmarkCase:
    nodes, edges = pyramid_edges(size)
    return BenchmarkCase("path_right_last_pyramid", size, closure_program(edges, RIGHT_LAST_CLOSURE),
                         "path(0, Y).", ("Y",), _singles(range(1, nodes)))


def path_right_last_btree_case(size: int) -> BenchmarkCase:
    edges = btree_edges(size)
    return BenchmarkCase("path_right_last_btree", size, closure_program(edges, RIGHT_LAST_CLOSURE),
                         "path(1, Y).", ("Y",), _singles(range(2, size + 1)))


def join_relations(size: int) -> dict[str, list[tuple[int, int]]]:
    """크기로 시드를 고정한 무작위 이항 관계 r, s, t (도메인 0..size-1)"""
    rng = random.Random(size)
    relations = {}
    for name in ("r", "s", "t"):
        pairs = {(rng.randrange(size), rng.randrange(size)) for _ in range(3 * size)}
        relations[name] = sorted(pairs)
    return relations


def large_join_case(size: int) -> BenchmarkCase:
    relations = join_relations(size)
    program = ":- table j/3.\nj(X, Y, Z) :- r(X, Y), s(Y, Z), t(Z, X).\n"
    program += "".join(edge_facts(pairs, name) for name, pairs in relations.items())
    expected = oracles.cyclic_join(relations["r"], relations["s"], relations["t"])
    return BenchmarkCase("large_join", size, program, "j(X, Y, Z).", ("X", "Y", "Z"),
                         frozenset(expected))


GENERATORS: dict[str, Callable[[int], BenchmarkCase]] = {
    "fib": fib_case,
    "recognize": recognize_case,
    "nreverse": nreverse_case,
    "shuttle": shuttle_case,
    "pingpong": pingpong_case,
    "path_double_first": path_double_first_case,
    "path_double_first_loop": path_double_first_loop_case,
    "path_right_last_pyramid": path_right_last_pyramid_case,
    "path_right_last_btree": path_right_last_btree_case,
    "large_join": large_join_case,
}
