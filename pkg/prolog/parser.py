# -*- coding: utf-8 -*-
"""
프로그램 파일 / 질의 문자열 파서와 항 출력기

지원 문법: 소문자 원자, 따옴표 원자, 변수, 정수(음수 포함), 복합항 f(t1,...,tn),
리스트 [a,b|T], 본문의 콤마 연결, % 줄 주석, /* */ 블록 주석,
`:- table name/arity.` 지시문. 연산자 표는 아래 INFIX_OPS / PREFIX_OPS 로 제한됩니다.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from prolog.errors import DirectiveError, PrologSyntaxError
from prolog.terms import (
    ATOM_TAG, CONS, FUNCTOR_TAG, INT_TAG, NIL,
    Atom, BindingStore, Compound, Int, Term, Var,
    iter_subterms, next_cell_id,
)

# 연산자: 이름 → (우선순위, 유형)
INFIX_OPS = {
    ":-": (1200, "xfx"),
    ",": (1000, "xfy"),
    "=": (700, "xfx"), "\\=": (700, "xfx"), "==": (700, "xfx"), "is": (700, "xfx"),
    "<": (700, "xfx"), "=<": (700, "xfx"), ">": (700, "xfx"), ">=": (700, "xfx"),
    "=:=": (700, "xfx"), "=\\=": (700, "xfx"),
    "+": (500, "yfx"), "-": (500, "yfx"),
    "*": (400, "yfx"), "//": (400, "yfx"), "mod": (400, "yfx"), "/": (400, "yfx"),
}
PREFIX_OPS = {
    ":-": (1200, "fx"),
    "table": (1150, "fx"),
    "-": (200, "fy"),
}

_SYMBOL_CHARS = "+-*/\\^<>=~:?@#&$"
_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|%[^\n]*|/\*.*?\*/)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<atom>[a-z][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<quoted>'(?:[^'\\]|\\.|'')*')
  | (?P<end>\.(?=\s|%|$))
  | (?P<punct>[()\[\],|])
  | (?P<symbol>[+\-*/\\^<>=~:?@\#&$]+)
""", re.VERBOSE | re.DOTALL)

_PLAIN_ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


@dataclass(slots=True)
class Token:
    kind: str      # var | atom | int | quoted | end | punct | symbol | eof
    value: object
    line: int
    column: int
    layout_before: bool


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _unquote(raw: str) -> str:
    body = raw[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            nxt = body[i + 1]
            out.append({"n": "\n", "t": "\t", "\\": "\\", "'": "'"}.get(nxt, nxt))
            i += 2
        elif ch == "'" and i + 1 < len(body) and body[i + 1] == "'":
            out.append("'")
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    layout = True
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            line, col = _position(text, pos)
            raise PrologSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "ws":
            layout = True
            pos = m.end()
            continue
        line, col = _position(text, pos)
        raw = m.group()
        if kind == "int":
            value: object = int(raw)
        elif kind == "quoted":
            value = _unquote(raw)
        else:
            value = raw
        tokens.append(Token(kind, value, line, col, layout))
        layout = False
        pos = m.end()
    line, col = _position(text, len(text))
    tokens.append(Token("eof", None, line, col, True))
    return tokens


@dataclass(slots=True)
class Clause:
    head: Term
    body: tuple = ()
    # 이름 바꾸기(renaming)용 묶음 항: '$clause'(Head, G1, ..., Gn)
    template: Term = field(init=False)

    def __post_init__(self):
        if isinstance(self.head, (Var, Int)):
            raise TypeError("clause head must be an atom or compound term")
        self.template = Compound("$clause", (self.head, *self.body))

    @property
    def is_fact(self) -> bool:
        return not self.body


def first_arg_token(term: Term):
    """첫 번째 인자 색인 토큰 (변수이면 None)"""
    if term.__class__ is Compound:
        return (FUNCTOR_TAG, term.functor, len(term.args))
    if term.__class__ is Atom:
        return (ATOM_TAG, term.name)
    if term.__class__ is Int:
        return (INT_TAG, term.value)
    return None


class Program:
    """술어 지시자 → 절 목록, 그리고 테이블 술어 집합"""

    def __init__(self):
        self.clauses: dict[tuple[str, int], list[Clause]] = {}
        self.tabled: set[tuple[str, int]] = set()
        self._index: dict[tuple[str, int], dict] = {}

    def add_clause(self, clause: Clause) -> None:
        if isinstance(clause.head, Compound):
            key = (clause.head.functor, len(clause.head.args))
        else:
            key = (clause.head.name, 0)
        self.clauses.setdefault(key, []).append(clause)
        self._index.pop(key, None)

    def add_table(self, name: str, arity: int) -> None:
        self.tabled.add((name, arity))
        # 절이 없는 테이블 술어도 정의된 것으로 취급
        self.clauses.setdefault((name, arity), [])

    def merge(self, other: "Program") -> None:
        for clauses in other.clauses.values():
            for clause in clauses:
                self.add_clause(clause)
        for name, arity in other.tabled:
            self.add_table(name, arity)

    def is_defined(self, key: tuple[str, int]) -> bool:
        return key in self.clauses

    def candidates(self, key: tuple[str, int], first_token) -> list[Clause]:
        """첫 인자 색인으로 걸러낸 후보 절 (원래 순서 유지)"""
        clauses = self.clauses.get(key, [])
        if first_token is None or key[1] == 0 or len(clauses) < 2:
            return clauses
        index = self._index.get(key)
        if index is None:
            index = self._index[key] = self._build_index(clauses)
        found = index.get(first_token)
        if found is None:
            return index[None]
        return found

    @staticmethod
    def _build_index(clauses: list[Clause]) -> dict:
        tokens = []
        for clause in clauses:
            tokens.append(first_arg_token(clause.head.args[0]))
        index: dict = {None: [c for c, t in zip(clauses, tokens) if t is None]}
        for token in set(t for t in tokens if t is not None):
            index[token] = [c for c, t in zip(clauses, tokens) if t is None or t == token]
        return index

    def __len__(self) -> int:
        return sum(len(c) for c in self.clauses.values())


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.varmap: dict[str, Var] = {}

    # ---------------- 토큰 유틸 ----------------

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message: str, tok: Token | None = None) -> PrologSyntaxError:
        tok = tok or self.peek()
        return PrologSyntaxError(message, tok.line, tok.column)

    def expect_punct(self, value: str) -> Token:
        tok = self.peek()
        if tok.kind != "punct" or tok.value != value:
            raise self.error(f"expected '{value}'", tok)
        return self.advance()

    @staticmethod
    def _name_of(tok: Token) -> str | None:
        if tok.kind in ("atom", "symbol"):
            return tok.value
        if tok.kind == "punct" and tok.value == ",":
            return ","
        return None

    def _starts_term(self, tok: Token) -> bool:
        if tok.kind in ("var", "int", "quoted", "atom", "symbol"):
            return tok.kind != "symbol" or tok.value not in INFIX_OPS or tok.value in PREFIX_OPS
        return tok.kind == "punct" and tok.value in ("(", "[")

    # ---------------- 항 ----------------

    def parse(self, max_prec: int) -> tuple[Term, int]:
        left, left_prec = self.parse_primary(max_prec)
        while True:
            tok = self.peek()
            name = self._name_of(tok)
            if name is None or name not in INFIX_OPS:
                break
            prec, kind = INFIX_OPS[name]
            if prec > max_prec:
                break
            left_max = prec if kind == "yfx" else prec - 1
            right_max = prec if kind == "xfy" else prec - 1
            if left_prec > left_max:
                break
            self.advance()
            right, _ = self.parse(right_max)
            left, left_prec = Compound(name, (left, right)), prec
        return left, left_prec

    def parse_primary(self, max_prec: int) -> tuple[Term, int]:
        tok = self.advance()
        kind = tok.kind
        if kind == "int":
            return Int(tok.value), 0
        if kind == "var":
            return self._variable(tok.value), 0
        if kind == "punct":
            if tok.value == "(":
                term, _ = self.parse(1200)
                self.expect_punct(")")
                return term, 0
            if tok.value == "[":
                return self._list(), 0
            raise self.error(f"unexpected '{tok.value}'", tok)
        if kind in ("atom", "symbol", "quoted"):
            name = tok.value
            nxt = self.peek()
            if nxt.kind == "punct" and nxt.value == "(" and not nxt.layout_before:
                self.advance()
                args = self._arguments()
                return Compound(name, tuple(args)), 0
            if kind == "symbol" and name == "-" and nxt.kind == "int" and not nxt.layout_before:
                self.advance()
                return Int(-nxt.value), 0
            if kind != "quoted" and name in PREFIX_OPS and self._starts_term(nxt):
                prec, op_kind = PREFIX_OPS[name]
                arg_max = prec if op_kind == "fy" else prec - 1
                if prec > max_prec:
                    prec, arg_max = max_prec, max_prec
                arg, _ = self.parse(arg_max)
                return Compound(name, (arg,)), prec
            return Atom(name), 0
        if kind == "end":
            raise self.error("unexpected end of clause", tok)
        raise self.error("unexpected end of input", tok)

    def _arguments(self) -> list[Term]:
        args = []
        while True:
            arg, _ = self.parse(999)
            args.append(arg)
            tok = self.peek()
            if tok.kind == "punct" and tok.value == ",":
                self.advance()
                continue
            if tok.kind == "punct" and tok.value == ")":
                self.advance()
                return args
            raise self.error("expected ',' or ')' in argument list", tok)

    def _list(self) -> Term:
        tok = self.peek()
        if tok.kind == "punct" and tok.value == "]":
            self.advance()
            return NIL
        items = []
        tail: Term = NIL
        while True:
            item, _ = self.parse(999)
            items.append(item)
            tok = self.peek()
            if tok.kind == "punct" and tok.value == ",":
                self.advance()
                continue
            if tok.kind == "punct" and tok.value == "|":
                self.advance()
                tail, _ = self.parse(999)
                self.expect_punct("]")
                break
            if tok.kind == "punct" and tok.value == "]":
                self.advance()
                break
            raise self.error("expected ',', '|' or ']' in list", tok)
        result = tail
        for item in reversed(items):
            result = Compound(CONS, (item, result))
        return result

    def _variable(self, name: str) -> Var:
        if name == "_":
            return Var(next_cell_id(), "_")
        var = self.varmap.get(name)
        if var is None:
            var = self.varmap[name] = Var(next_cell_id(), name)
        return var

    # ---------------- 절 ----------------

    def at_eof(self) -> bool:
        return self.peek().kind == "eof"

    def read_clause(self) -> tuple[Term, Token]:
        self.varmap = {}
        start = self.peek()
        term, _ = self.parse(1200)
        tok = self.peek()
        if tok.kind != "end":
            raise self.error("operator expected or missing '.'", tok)
        self.advance()
        return term, start


def conjunction_to_list(term: Term) -> list[Term]:
    """','/2 중첩을 목표 리스트로 펼침"""
    goals = []
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Compound) and t.functor == "," and len(t.args) == 2:
            stack.append(t.args[1])
            stack.append(t.args[0])
        else:
            goals.append(t)
    return goals


def _table_specs(term: Term, start: Token) -> Iterable[tuple[str, int]]:
    for spec in conjunction_to_list(term):
        if not (isinstance(spec, Compound) and spec.functor == "/" and len(spec.args) == 2):
            raise DirectiveError(f"table directive expects name/arity (line {start.line})")
        name, arity = spec.args
        if not isinstance(name, Atom):
            raise DirectiveError(f"table directive expects an atom name (line {start.line})")
        if not isinstance(arity, Int) or arity.value < 0:
            raise DirectiveError(f"table directive arity must be a non-negative integer (line {start.line})")
        yield name.name, arity.value


def parse_program(text: str) -> Program:
    """프로그램 텍스트 → Program"""
    parser = _Parser(text)
    program = Program()
    while not parser.at_eof():
        term, start = parser.read_clause()
        if isinstance(term, Compound) and term.functor == ":-" and len(term.args) == 1:
            directive = term.args[0]
            if isinstance(directive, Compound) and directive.functor == "table" and len(directive.args) == 1:
                for name, arity in _table_specs(directive.args[0], start):
                    program.add_table(name, arity)
                continue
            raise DirectiveError(f"unknown directive {format_term(directive)} (line {start.line})")
        if isinstance(term, Compound) and term.functor == ":-" and len(term.args) == 2:
            head, body = term.args[0], conjunction_to_list(term.args[1])
        else:
            head, body = term, []
        if not isinstance(head, (Atom, Compound)):
            raise PrologSyntaxError("clause head must be an atom or compound term", start.line, start.column)
        program.add_clause(Clause(head, tuple(body)))
    return program


def parse_query(text: str) -> list[Term]:
    """질의 문자열 → 목표 리스트 (마지막 '.'은 생략 가능)"""
    if not text.strip():
        raise PrologSyntaxError("empty query", 1, 1)
    parser = _Parser(text)
    if parser.peek().kind == "end":
        raise parser.error("empty query")
    term, _ = parser.parse(1200)
    tok = parser.peek()
    if tok.kind == "end":
        parser.advance()
        tok = parser.peek()
    if tok.kind != "eof":
        raise parser.error("operator expected or missing '.'", tok)
    return conjunction_to_list(term)


# ===========================================
# 항 출력
# ===========================================

def _atom_text(name: str, quoted: bool) -> str:
    if not quoted:
        return name
    if _PLAIN_ATOM_RE.match(name) or name == "[]":
        return name
    if name and all(ch in _SYMBOL_CHARS for ch in name):
        return name
    escaped = name.replace("\\", "\\\\").replace("'", "\\'").replace("\n", "\\n")
    return f"'{escaped}'"


def format_term(term: Term, store: BindingStore | None = None, quoted: bool = True,
                var_names: dict[int, str] | None = None) -> str:
    """표준(함수 표기) 형태의 항 문자열. 리스트는 [a,b|T] 로 출력"""
    deref = store.deref if store is not None else (lambda t: t)

    def var_text(var: Var) -> str:
        if var_names is not None and var.id in var_names:
            return var_names[var.id]
        return f"_G{var.id}"

    def fmt(t: Term) -> str:
        t = deref(t)
        if t.__class__ is Var:
            return var_text(t)
        if t.__class__ is Int:
            return str(t.value)
        if t.__class__ is Atom:
            return _atom_text(t.name, quoted)
        if t.functor == CONS and len(t.args) == 2:
            items = []
            while t.__class__ is Compound and t.functor == CONS and len(t.args) == 2:
                items.append(fmt(t.args[0]))
                t = deref(t.args[1])
            if t == NIL:
                return "[" + ",".join(items) + "]"
            return "[" + ",".join(items) + "|" + fmt(t) + "]"
        return _atom_text(t.functor, quoted) + "(" + ",".join(fmt(a) for a in t.args) + ")"

    return fmt(term)


def format_clause(clause: Clause) -> str:
    """정규 변수명(_G0, _G1, ...)으로 절을 출력"""
    names: dict[int, str] = {}
    store = BindingStore()
    for t in iter_subterms(clause.template, store):
        if isinstance(t, Var) and t.id not in names:
            names[t.id] = f"_G{len(names)}"
    head = format_term(clause.head, var_names=names)
    if not clause.body:
        return head + "."
    body = ", ".join(format_term(g, var_names=names) for g in clause.body)
    return f"{head} :- {body}."
