# -*- coding: utf-8 -*-
from hypothesis import given, settings, strategies as st

from prolog.parser import parse_query
from prolog.terms import Atom, BindingStore, Compound, Int, Var, next_cell_id, variant_key
from tabling.tries import Trie

STORE = BindingStore()


def key_of(text):
    return variant_key(parse_query(text)[0], STORE)


def test_answers_of_running_example():
    trie = Trie()
    for text in ("p(a,b)", "p(b,c)", "p(a,c)"):
        _, was_new = trie.insert(key_of(text))
        assert was_new
    assert len(trie) == 3
    enumerated = {variant_key(term, STORE) for term, _ in trie.enumerate()}
    assert enumerated == {key_of(t) for t in ("p(a,b)", "p(b,c)", "p(a,c)")}


def test_duplicate_insert_returns_same_leaf():
    trie = Trie()
    node, was_new = trie.insert(key_of("p(a,b)"))
    node.payload = "table"
    again, was_new_again = trie.insert(key_of("p(a,b)"))
    assert was_new and not was_new_again
    assert again is node and again.payload == "table"
    assert len(trie) == 1


def test_variants_share_a_leaf():
    trie = Trie()
    trie.insert(key_of("p(X,Y)"))
    _, was_new = trie.insert(key_of("p(A,B)"))
    assert not was_new
    _, was_new = trie.insert(key_of("p(A,A)"))
    assert was_new


def test_prefix_is_not_a_leaf():
    trie = Trie()
    trie.insert(key_of("f(g(a))"))
    # f(g(a)) 의 키 앞부분만으로는 잎이 아님
    assert trie.lookup(key_of("f(g(a))")[:2]) is None
    assert trie.lookup(key_of("f(g(b))")) is None
    assert trie.lookup(key_of("f(g(a))")) is not None


def test_enumeration_follows_insertion_order():
    trie = Trie()
    for i, text in enumerate(("q(c)", "q(a)", "r", "q(b)")):
        node, _ = trie.insert(key_of(text))
        node.payload = i
    assert list(trie.payloads()) == [0, 1, 3, 2]


def test_empty_trie():
    trie = Trie()
    assert len(trie) == 0
    assert list(trie.enumerate()) == []


def test_enumerated_terms_keep_variable_sharing():
    trie = Trie()
    trie.insert(key_of("p(X, f(X), Y)"))
    ((term, _),) = list(trie.enumerate())
    first, inner, last = term.args
    assert isinstance(first, Var) and inner.args[0] == first and last != first


POOL = [Var(next_cell_id(), name) for name in "XYZ"]
terms = st.recursive(
    st.one_of(
        st.sampled_from(POOL),
        st.sampled_from(["a", "b", "c"]).map(Atom),
        st.integers(min_value=0, max_value=3).map(Int),
    ),
    lambda children: st.builds(
        lambda functor, args: Compound(functor, tuple(args)),
        st.sampled_from(["f", "g"]),
        st.lists(children, min_size=1, max_size=2),
    ),
    max_leaves=6,
)


@settings(max_examples=1000)
@given(st.lists(terms, max_size=12))
def test_insert_deduplicates_by_variant(inserted):
    trie = Trie()
    keys = [variant_key(term, STORE) for term in inserted]
    fresh = [trie.insert(key)[1] for key in keys]
    assert len(trie) == len(set(keys))
    assert sum(fresh) == len(set(keys))
    enumerated = [variant_key(term, STORE) for term, _ in trie.enumerate()]
    assert len(enumerated) == len(set(enumerated))
    assert set(enumerated) == set(keys)
    for key in keys:
        assert trie.lookup(key) is not None
