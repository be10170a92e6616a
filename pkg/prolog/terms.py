# -*- coding: utf-8 -*-
"""
논리 항(Term) 표현, 트레일 기반 단일화, 항 복사, 변형(variant) 정규화

- 변수의 동일성은 이름이 아니라 셀 ID로 결정됩니다.
- 긴 리스트(nreverse 등)에서도 재귀 한도에 걸리지 않도록 모든 순회는 명시적 스택을 사용합니다.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

# 프로세스 전체에서 셀 ID는 재사용되지 않음
_cell_ids = itertools.count(1)


def next_cell_id() -> int:
    return next(_cell_ids)


@dataclass(frozen=True, slots=True)
class Var:
    id: int
    name: str = field(default="_", compare=False)

    def __repr__(self) -> str:
        return f"Var({self.name}#{self.id})"


@dataclass(frozen=True, slots=True)
class Atom:
    name: str


@dataclass(frozen=True, slots=True)
class Int:
    value: int


@dataclass(frozen=True, slots=True)
class Compound:
    functor: str
    args: tuple


Term = Union[Var, Atom, Int, Compound]

# 변형 키의 토큰: (태그, 값...) 튜플. 해시가 빠르고 충돌이 없음
FUNCTOR_TAG = 0
ATOM_TAG = 1
INT_TAG = 2
VAR_TAG = 3

Token = tuple
VariantKey = tuple  # tuple[Token, ...]

NIL = Atom("[]")
FAIL = Atom("fail")
ZERO = Int(0)
CONS = "."


def make_list(items: Iterable[Term], tail: Term = NIL) -> Term:
    """파이썬 시퀀스 → '.'/2 리스트 항"""
    result = tail
    for item in reversed(list(items)):
        result = Compound(CONS, (item, result))
    return result


def indicator(term: Term) -> tuple[str, int]:
    """술어 지시자 (이름, 인자 수)"""
    if isinstance(term, Compound):
        return term.functor, len(term.args)
    if isinstance(term, Atom):
        return term.name, 0
    raise TypeError(f"not callable: {term!r}")


class BindingStore:
    """변수 셀 → 바인딩 맵과 트레일

    셀 맵에는 바인딩된 셀만 들어갑니다. 트레일 마크까지 되돌리면 그 이후의
    바인딩은 모두 해제됩니다.
    """

    __slots__ = ("cells", "trail")

    def __init__(self):
        self.cells: dict[int, Term] = {}
        self.trail: list[int] = []

    def new_var(self, name: str = "_") -> Var:
        return Var(next_cell_id(), name)

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        trail = self.trail
        cells = self.cells
        while len(trail) > mark:
            del cells[trail.pop()]

    def bind(self, var: Var, value: Term) -> None:
        self.cells[var.id] = value
        self.trail.append(var.id)

    def deref(self, term: Term) -> Term:
        cells = self.cells
        while term.__class__ is Var:
            bound = cells.get(term.id)
            if bound is None:
                return term
            term = bound
        return term


def unify(a: Term, b: Term, store: BindingStore) -> bool:
    """최일반 단일자(mgu)를 구해 store에 기록. occurs-check 없음

    실패 시 일부 바인딩이 남을 수 있으므로 호출 측 머신이 트레일을 되돌립니다.
    """
    deref = store.deref
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        x = deref(x)
        y = deref(y)
        if x is y:
            continue
        if x.__class__ is Var:
            if y.__class__ is Var and y.id == x.id:
                continue
            store.bind(x, y)
            continue
        if y.__class__ is Var:
            store.bind(y, x)
            continue
        if x.__class__ is Compound:
            if y.__class__ is not Compound or x.functor != y.functor or len(x.args) != len(y.args):
                return False
            stack.extend(zip(x.args, y.args))
            continue
        if x != y:
            return False
    return True


class _Build:
    __slots__ = ("node",)

    def __init__(self, node: Compound):
        self.node = node


def _rebuild(term: Term, store: BindingStore, leaf) -> Term:
    # 후위 순서로 재구성; 바뀐 것이 없는 하위 항은 원본 객체를 그대로 공유
    deref = store.deref
    out: list[Term] = []
    work: list = [term]
    while work:
        item = work.pop()
        if item.__class__ is _Build:
            node = item.node
            n = len(node.args)
            args = out[-n:]
            del out[-n:]
            if all(new is old for new, old in zip(args, node.args)):
                out.append(node)
            else:
                out.append(Compound(node.functor, tuple(args)))
            continue
        item = deref(item)
        if item.__class__ is Var:
            out.append(leaf(item))
        elif item.__class__ is Compound:
            work.append(_Build(item))
            work.extend(reversed(item.args))
        else:
            out.append(item)
    return out[0]


def copy_term(term: Term, store: BindingStore, mapping: dict | None = None) -> Term:
    """바인딩된 부분은 따라가고, 자유 변수는 새 변수로 바꾼 사본 (공유 관계 보존)"""
    if mapping is None:
        mapping = {}

    def fresh(var: Var) -> Var:
        new = mapping.get(var.id)
        if new is None:
            new = mapping[var.id] = Var(next_cell_id(), var.name)
        return new

    return _rebuild(term, store, fresh)


def resolve(term: Term, store: BindingStore) -> Term:
    """현재 바인딩을 모두 대입한 항 (자유 변수는 그대로)"""
    return _rebuild(term, store, lambda var: var)


def iter_subterms(term: Term, store: BindingStore) -> Iterator[Term]:
    """역참조된 하위 항을 전위 순서로 순회"""
    deref = store.deref
    stack = [term]
    while stack:
        t = deref(stack.pop())
        yield t
        if t.__class__ is Compound:
            stack.extend(reversed(t.args))


def term_variables(term: Term, store: BindingStore) -> list[Var]:
    """첫 등장 순서대로의 자유 변수 목록"""
    seen: dict[int, Var] = {}
    for t in iter_subterms(term, store):
        if t.__class__ is Var and t.id not in seen:
            seen[t.id] = t
    return list(seen.values())


def variant_key(term: Term, store: BindingStore) -> VariantKey:
    """변형 정규화: 각 자유 변수를 첫 등장 인덱스로 치환한 전위 토큰열"""
    tokens: list[Token] = []
    var_index: dict[int, int] = {}
    for t in iter_subterms(term, store):
        cls = t.__class__
        if cls is Compound:
            tokens.append((FUNCTOR_TAG, t.functor, len(t.args)))
        elif cls is Atom:
            tokens.append((ATOM_TAG, t.name))
        elif cls is Int:
            tokens.append((INT_TAG, t.value))
        else:
            index = var_index.get(t.id)
            if index is None:
                index = var_index[t.id] = len(var_index)
            tokens.append((VAR_TAG, index))
    return tuple(tokens)


def term_from_key(key: VariantKey) -> Term:
    """토큰열에서 정규 항을 복원 (변수 인덱스마다 새 변수)"""
    stack: list[Term] = []
    fresh: dict[int, Var] = {}
    for token in reversed(key):
        tag = token[0]
        if tag == FUNCTOR_TAG:
            arity = token[2]
            args = tuple(stack.pop() for _ in range(arity))
            stack.append(Compound(token[1], args))
        elif tag == ATOM_TAG:
            stack.append(Atom(token[1]))
        elif tag == INT_TAG:
            stack.append(Int(token[1]))
        else:
            var = fresh.get(token[1])
            if var is None:
                var = fresh[token[1]] = Var(next_cell_id(), f"_{token[1]}")
            stack.append(var)
    if len(stack) != 1:
        raise ValueError("malformed variant key")
    return stack[0]


def identical(a: Term, b: Term, store: BindingStore) -> bool:
    """구조 동일성(==): 변수는 같은 셀일 때만 같음"""
    left = iter_subterms(a, store)
    right = iter_subterms(b, store)
    for x, y in zip(left, right):
        if x.__class__ is not y.__class__:
            return False
        if x.__class__ is Compound:
            if x.functor != y.functor or len(x.args) != len(y.args):
                return False
        elif x != y:
            return False
    # 같은 모양이면 두 순회는 같은 길이에서 끝남
    return True
