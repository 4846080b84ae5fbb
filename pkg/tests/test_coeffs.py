from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spin7.coeffs import (
    DeltaPoly, LaurentPoly, RatFunc, eval_at, exact_div, from_delta, loop_value, q, qint,
    qint_ratio, quantum_dim, to_delta,
)
from spin7.errors import NotBarInvariant, NotDivisible, PoleAtPoint

laurent = st.builds(
    lambda lo, cs: LaurentPoly(lo, tuple(cs)),
    st.integers(-6, 6), st.lists(st.integers(-9, 9), max_size=6),
)


def test_qint_small():
    assert qint(1) == LaurentPoly(0, (1,))
    assert qint(2) == q + q.bar()
    assert qint(4) == q ** 3 + q + q.bar() + q.bar() ** 3


def test_qint_recurrence():
    for n in range(2, 51):
        assert qint(2) * qint(n) == qint(n + 1) + qint(n - 1)


def test_qint_is_symmetric():
    for n in range(1, 20):
        assert qint(n).is_bar_invariant()


@pytest.mark.parametrize("num, den, delta", [
    ((1,), (), [1]),
    ((2,), (), [0, 1]),
    ((3,), (), [-1, 0, 1]),
    ((4,), (), [0, -2, 0, 1]),
    ((4,), (2,), [-2, 0, 1]),
    ((6,), (3,), [0, -3, 0, 1]),
    ((8,), (4,), [2, 0, -4, 0, 1]),
    ((10,), (5,), [0, 5, 0, -5, 0, 1]),
])
def test_delta_table(num, den, delta):
    p = qint_ratio(num, den)
    assert list(to_delta(p).coefficients) == delta
    assert from_delta(to_delta(p)) == p


def test_to_delta_rejects_asymmetric():
    with pytest.raises(NotBarInvariant):
        to_delta(q ** 2)


def test_delta_round_trip_high_degree():
    for d in (0, 1, 7, 40, 100):
        p = DeltaPoly(tuple([1] * d + [3]))
        assert to_delta(from_delta(p)) == p


def test_exact_div():
    assert exact_div(qint(4), qint(2)) == q ** 2 + q.bar() ** 2
    with pytest.raises(NotDivisible):
        exact_div(qint(6), qint(4))


def test_loop_value_delta_form():
    # [10][6][2]/([5][3]) = d^3 (d^2 - 3)(d^4 - 5 d^2 + 5)
    d = from_delta(DeltaPoly((0, 1)))
    want = d ** 3 * (d ** 2 - 3) * (d ** 4 - 5 * d ** 2 + 5)
    assert loop_value() == want
    assert eval_at(loop_value(), 1) == 8


@given(laurent, laurent.filter(lambda b: not b.is_zero()))
@settings(max_examples=150, deadline=None)
def test_exact_div_inverts_product(a, b):
    assert exact_div(a * b, b) == a


def test_quantum_dims_at_one():
    assert eval_at(quantum_dim("spin"), 1) == 8
    assert eval_at(quantum_dim("adjoint"), 1) == 21
    assert eval_at(quantum_dim("V"), 1) == 7
    assert quantum_dim("spin") == qint_ratio((10, 6, 2), (5, 3, 1))


def test_summands_of_spin_square():
    total = sum((quantum_dim(w) for w in ("trivial", "V", "adjoint", "Λ")), LaurentPoly())
    assert total == quantum_dim("spin") ** 2


def test_eval_at():
    assert eval_at(qint(2), 1) == 2
    assert eval_at(qint(4), 2) == Fraction(85, 8)
    with pytest.raises(PoleAtPoint):
        eval_at(RatFunc(1, q - q.bar()), 1)


@given(laurent, laurent.filter(lambda b: not b.is_zero()))
@settings(max_examples=100, deadline=None)
def test_ratfunc_normal_form(a, b):
    r = RatFunc(a, b)
    den = r.denominator
    assert den.lowest_exponent == 0 and den.coefficients[-1] > 0
    assert r * RatFunc(b) == RatFunc(a)
    assert RatFunc.from_json(r.to_json()) == r


def test_laurent_json():
    assert qint(2).to_json() == {"lo": -1, "c": [1, 0, 1]}
    assert LaurentPoly.from_json(qint(5).to_json()) == qint(5)
