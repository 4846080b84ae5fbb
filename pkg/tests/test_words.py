from __future__ import annotations

from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from spin7.errors import IndexOutOfRange, MismatchedContext
from spin7.words import (
    Order, TraceWord, all_words, canon, canonicalize, code, compare_codes, concat,
    factor_search, find_factor, order_key, parse_word, reduction_compare,
)


def W(text, n=4):
    return parse_word(text, n)


def words_in(n, max_len=8):
    return st.lists(st.integers(0, 3 * (n - 1) - 1), max_size=max_len).map(tuple)


def representatives(w):
    # every commutation-equivalent spelling, by brute force over permutations
    return {p for p in set(permutations(w)) if canon(p) == canon(w)}


def test_canonicalize_examples():
    assert W("H3*U1") == W("U1*H3")
    assert W("H3*U1").letters == (code("U", 1), code("H", 3))
    assert W("U2*U1").letters == (code("U", 2), code("U", 1))
    assert canonicalize([code("K", 1), code("U", 3), code("H", 1)], 4) == W("K1*H1*U3")


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        W("U4", 4)


def test_concat():
    e = TraceWord((), 4)
    w = W("U1*K2")
    assert concat(e, w) == w
    assert concat(W("U1"), W("K1")).letters == (code("U", 1), code("K", 1))
    assert concat(W("H3"), W("U1")) == W("U1*H3")
    with pytest.raises(MismatchedContext):
        concat(W("U1", 3), W("U1", 4))


@given(words_in(6), words_in(6), words_in(6))
@settings(max_examples=200, deadline=None)
def test_concat_associative_and_canon_idempotent(a, b, c):
    assert canon(canon(a)) == canon(a)
    assert canon(canon(a + b) + c) == canon(a + canon(b + c))


def test_canon_is_lex_least():
    for w in [(0, 6, 1), (8, 0, 2, 7), (5, 3, 0, 6)]:
        assert canon(w) == min(representatives(w))


def test_reduction_compare_examples():
    assert reduction_compare(W("U1", 3), W("K1", 3)) is Order.LESS
    assert reduction_compare(W("H2*U1*H2", 3), W("K1*U2*K1", 3)) is Order.GREATER
    assert reduction_compare(W("U1*U2", 3), W("U2*U1", 3)) is Order.INCOMPARABLE
    assert reduction_compare(W("K1*H2", 3), W("K1*H2", 3)) is Order.EQUAL


def test_ungraded_order_cannot_orient_every_rule():
    lhs, rhs = W("U1*U2*K1", 3).letters, W("U1*H2", 3).letters
    assert compare_codes(rhs, lhs) is Order.LESS
    assert compare_codes(rhs, lhs, graded=False) is Order.GREATER


@given(words_in(4, 5), words_in(4, 5), words_in(4, 3), words_in(4, 3))
@settings(max_examples=300, deadline=None)
def test_order_translation_invariant(a, b, x, y):
    a, b = canon(a), canon(b)
    o = compare_codes(a, b)
    if o is Order.LESS:
        assert compare_codes(canon(x + a + y), canon(x + b + y)) is Order.LESS


@given(words_in(4, 6))
@settings(max_examples=100, deadline=None)
def test_order_key_depends_only_on_trace(w):
    keys = {order_key(canon(p)) for p in representatives(w)}
    assert len(keys) == 1


def test_down_sets_finite():
    # words below w have length <= len(w), so a bounded search sees them all
    for w in all_words(4, 3)[:40]:
        below = [v for k in range(len(w) + 1) for v in all_words(4, k)
                 if compare_codes(v, w) is Order.LESS]
        assert all(len(v) <= len(w) for v in below)
        assert () in below


def test_factor_search_examples():
    got = factor_search(W("U1*U3*K1"), W("U1*K1"))
    assert got == (TraceWord((), 4), W("U3"))
    assert factor_search(W("U1*U2*K1"), W("U1*K1")) is None
    w = W("K2*H1*U3")
    assert factor_search(w, TraceWord((), 4)) == (TraceWord((), 4), w)


def _brute_factor(w, p):
    for r in representatives(w):
        for i in range(len(r) - len(p) + 1):
            if canon(r[i:i + len(p)]) == p:
                return True
    return False


@given(words_in(4, 6), words_in(4, 3))
@settings(max_examples=300, deadline=None)
def test_find_factor_matches_brute_force(w, p):
    w, p = canon(w), canon(p)
    found = find_factor(w, p)
    assert (found is not None) == _brute_factor(w, p)
    if found is not None:
        x, y = found
        assert canon(x + p + y) == w
