# -*- coding: utf-8 -*-
import os

import hypothesis
import pytest

from prolog.engine import Engine
from prolog.parser import format_term

hypothesis.settings.register_profile("dev", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))

# 왼쪽 재귀 전이 폐포 + e(a,b), e(b,c)
CLOSURE_PROGRAM = """\
:- table p/2.
p(X,Y) :- p(X,Z), e(Z,Y).
p(X,Y) :- e(X,Y).
e(a,b). e(b,c).
"""

# 이중 재귀
DOUBLE_PROGRAM = """\
:- table r/2.
r(X,Y) :- r(X,Z), r(Z,Y).
r(X,Y) :- e(X,Y).
e(a,b). e(b,c).
"""


@pytest.fixture
def make_engine():
    def factory(text="", output=None, max_inferences=0):
        engine = Engine(output=output, max_inferences=max_inferences)
        if text:
            engine.consult(text)
        return engine
    return factory


@pytest.fixture
def answer_set():
    """질의 답을 변수 값 문자열 튜플의 집합으로"""
    def collect(engine, query, *names):
        result = set()
        for answer in engine.query(query):
            result.add(tuple(format_term(answer[name]) for name in names))
        return result
    return collect
