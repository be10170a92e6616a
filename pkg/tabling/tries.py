# -*- coding: utf-8 -*-
"""
변형 키(VariantKey) 트라이

호출 트라이(호출 패턴 → Table)와 답 트라이(답 중복 제거 + 열거)에 함께 쓰입니다.
자식 맵은 삽입 순서를 유지하므로 열거 순서가 결정적입니다.
"""
from __future__ import annotations

from typing import Any, Iterator

from prolog.terms import Term, VariantKey, term_from_key


class TrieNode:
    __slots__ = ("children", "payload", "is_leaf")

    def __init__(self):
        self.children: dict[tuple, TrieNode] = {}
        self.payload: Any = None
        self.is_leaf = False


class Trie:
    def __init__(self):
        self.root = TrieNode()
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def insert(self, key: VariantKey) -> tuple[TrieNode, bool]:
        """키에 해당하는 잎을 만들거나 찾음 → (잎, 새로 생겼는지)"""
        node = self.root
        for token in key:
            child = node.children.get(token)
            if child is None:
                child = node.children[token] = TrieNode()
            node = child
        if node.is_leaf:
            return node, False
        node.is_leaf = True
        self._size += 1
        return node, True

    def lookup(self, key: VariantKey) -> TrieNode | None:
        node = self.root
        for token in key:
            node = node.children.get(token)
            if node is None:
                return None
        return node if node.is_leaf else None

    def _walk(self, with_path: bool) -> Iterator[tuple[tuple, TrieNode]]:
        # 명시적 스택 DFS, 자식은 삽입 순서대로 방문
        path: list = []
        stack: list = [(self.root, 0, None)]
        while stack:
            node, depth, token = stack.pop()
            if with_path and depth:
                del path[depth - 1:]
                path.append(token)
            if node.is_leaf:
                yield (tuple(path) if with_path else ()), node
            for child_token, child in reversed(list(node.children.items())):
                stack.append((child, depth + 1, child_token))

    def enumerate(self) -> Iterator[tuple[Term, Any]]:
        """(정규 항, payload) 를 잎마다 한 번씩"""
        for path, node in self._walk(with_path=True):
            yield term_from_key(path), node.payload

    def payloads(self) -> Iterator[Any]:
        for _, node in self._walk(with_path=False):
            yield node.payload
