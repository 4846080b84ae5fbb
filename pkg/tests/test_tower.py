from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spin7.coeffs import RatFunc, as_ratfunc, loop_value, q, qint, quantum_dim
from spin7.elements import AlgElement, gen
from spin7.errors import BoundViolation
from spin7.presentation import algebra_rules
from spin7.rewrite import enumerate_irreducible, normal_form
from spin7.tower import (
    EIGENVALUES, TowerContext, cell_idempotent, epsilon, identify_weights,
    printed_u_idempotent, shift_element, spectral_idempotents, trace,
)
from spin7.words import code

LOOP = as_ratfunc(loop_value())


def Q(n):
    return as_ratfunc(qint(n))


def top(kind, n):
    return gen(kind, n - 1, n)


@pytest.mark.parametrize("n", [2, 3])
def test_epsilon_values(n):
    assert epsilon(n, AlgElement.one(n)) == AlgElement.one(n - 1).scale(LOOP)
    assert epsilon(n, top("U", n)) == AlgElement.one(n - 1)
    assert epsilon(n, top("K", n)) == AlgElement.one(n - 1).scale(Q(7))
    assert epsilon(n, top("H", n)).is_zero()


def test_epsilon_disagrees_with_displayed_rows():
    # the displayed rows would give eps(K) = 1 and eps(H) = [7]
    assert epsilon(2, top("K", 2)) != AlgElement.one(1)
    assert epsilon(2, top("H", 2)) != AlgElement.one(1).scale(Q(7))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_defining_property(n):
    ctx = TowerContext(n)
    un = AlgElement._raw(n + 1, {(code("U", n),): RatFunc(1)})
    basis = [()] if n == 1 else [w.letters for w in enumerate_irreducible(n, algebra_rules(n))]
    for w in basis:
        a = AlgElement._raw(n, {w: RatFunc(1)})
        lhs = ctx.nf(un * a.with_context(n + 1) * un, n + 1)
        rhs = ctx.nf(epsilon(n, a, ctx).with_context(n + 1) * un, n + 1)
        assert lhs == rhs


low = st.lists(st.integers(0, 2), max_size=2).map(tuple)  # letters of index 1
word3 = st.lists(st.integers(0, 5), max_size=3).map(tuple)


@given(low, word3, low)
@settings(max_examples=40, deadline=None)
def test_epsilon_bimodule(x, w, y):
    n = 3
    a = AlgElement(n, {w: 1})
    X, Y = AlgElement(n, {x: 1}), AlgElement(n, {y: 1})
    rules = algebra_rules(2)
    lhs = epsilon(n, X * a * Y)
    rhs = normal_form((X.with_context(2) * epsilon(n, a) * Y.with_context(2)), rules)
    assert lhs == rhs


def test_trace_values():
    for n in (1, 2, 3):
        assert trace(n, AlgElement.one(n)) == 1
    t = trace(2, gen("U", 1, 2))
    assert t == LOOP.inverse()
    assert t(1) == Fraction(1, 8)
    assert trace(2, gen("K", 1, 2))(1) == Fraction(7, 8)
    assert trace(2, gen("H", 1, 2)) == 0


@given(word3, word3)
@settings(max_examples=30, deadline=None)
def test_trace_is_central(u, v):
    a, b = AlgElement(3, {u: 1}), AlgElement(3, {v: q})
    assert trace(3, a * b) == trace(3, b * a)


def test_spectral_idempotents():
    ids = spectral_idempotents()
    rules = algebra_rules(2)
    total = AlgElement.zero(2)
    H = gen("H", 1, 2)
    for a, p in ids.items():
        assert normal_form(p * p, rules) == p
        assert normal_form(H * p, rules) == p.scale(EIGENVALUES[a])
        for b, p2 in ids.items():
            if a != b:
                assert normal_form(p * p2, rules).is_zero()
        total = total + p
    assert total == AlgElement.one(2)


def test_printed_idempotent_coefficients():
    ids = spectral_idempotents()
    assert ids["-[5]"] == gen("K", 1, 2).scale(Q(3) / (Q(2) ** 2 * Q(6)))
    want = (AlgElement.one(2).scale(1 / Q(2) ** 2) + gen("H", 1, 2).scale(1 / Q(2) ** 2)
            + gen("K", 1, 2).scale(1 / Q(2) ** 3) - gen("U", 1, 2).scale(Q(4) * Q(5) / (Q(2) ** 3 * Q(10))))
    assert ids["[3]"] == want
    assert ids["[7]"] == gen("U", 1, 2).scale(Q(5) * Q(3) / (Q(10) * Q(6) * Q(2)))


def test_printed_u_coefficient_is_not_idempotent():
    p = printed_u_idempotent()
    sq = normal_form(p * p, algebra_rules(2))
    assert sq != p
    assert sq.coefficient((code("U", 1),))(1) == Fraction(1, 2)  # (U/4)^2 = U/2 at q = 1


def test_identify_weights_and_traces():
    got = identify_weights()
    assert got == {"[7]": (0, 0, 0), "-[5]": (1, 0, 0), "[3]": (0, 1, 0), "-1": (0, 0, 2)}
    spin2 = as_ratfunc(quantum_dim("spin")) ** 2
    values = {}
    for label, p in spectral_idempotents().items():
        t = trace(2, p)
        assert t * spin2 == as_ratfunc(quantum_dim(got[label]))
        values[label] = t(1)
    assert values == {"[7]": Fraction(1, 64), "-[5]": Fraction(7, 64),
                      "[3]": Fraction(21, 64), "-1": Fraction(35, 64)}


def test_cell_idempotents():
    assert cell_idempotent(0, 0, 0, 3) == AlgElement.one(3)
    assert cell_idempotent(1, 0, 0, 2) == spectral_idempotents()["[7]"]
    e = cell_idempotent(0, 1, 1, 4)
    assert normal_form(e * e, algebra_rules(4)) == e
    ids = spectral_idempotents()
    want = normal_form(shift_element(ids["-[5]"], 0, 4) * shift_element(ids["[3]"], 2, 4), algebra_rules(4))
    assert e == want
    with pytest.raises(BoundViolation):
        cell_idempotent(1, 1, 0, 3)
