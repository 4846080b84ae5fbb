from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from spin7.coeffs import RatFunc, q, qint
from spin7.elements import AlgElement, add, gen, mul, scalar_mul, support, word_element
from spin7.errors import MismatchedContext
from spin7.words import TraceWord, parse_word

N = 4
coeff = st.sampled_from([RatFunc(1), RatFunc(-2), RatFunc(q), RatFunc(qint(3)), RatFunc(1, qint(2))])
word = st.lists(st.integers(0, 3 * (N - 1) - 1), max_size=3).map(tuple)
element = st.dictionaries(word, coeff, max_size=4).map(lambda d: AlgElement(N, d))


def test_add_cancels():
    u = gen("U", 1, 3)
    assert add(u, scalar_mul(-1, u)).is_zero()
    assert support(u - u) == set()


def test_free_product():
    p = mul(gen("U", 1, 3), gen("K", 1, 3))
    assert p.terms == {parse_word("U1*K1").letters: RatFunc(1)}


def test_coefficients_multiply_and_words_canonicalize():
    p = mul(scalar_mul(q, gen("U", 1, N)), scalar_mul(RatFunc(1, q), gen("H", 3, N)))
    assert p == word_element("U1*H3", N)
    assert p.coefficient(parse_word("H3*U1").letters) == 1


def test_support():
    assert support(AlgElement.zero(3)) == set()
    x = scalar_mul(qint(3), AlgElement.one(3)) + scalar_mul(qint(4), gen("U", 1, 3))
    assert support(x) == {TraceWord((), 3), parse_word("U1", 3)}


def test_context_mismatch():
    with pytest.raises(MismatchedContext):
        gen("U", 1, 3) + gen("U", 1, 4)


@given(element, element, element)
@settings(max_examples=120, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert all(x for x in (a * b).terms.values())


@given(element)
@settings(max_examples=80, deadline=None)
def test_json_round_trip(a):
    assert AlgElement.from_json(a.to_json()) == a
