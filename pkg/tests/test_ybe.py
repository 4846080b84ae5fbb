from __future__ import annotations

import pytest

from spin7.coeffs import as_ratfunc, q, qint
from spin7.ybe import (
    ParamElement, _nf, _weighted_projectors, build_R, build_S, check_eigenvalues,
    check_sandwich, check_specializations, check_unitarity, check_ybe, perturbed_R,
    r_eigenvalues, s_eigenvalues, sandwich_at_q5,
)


def Q(n):
    return as_ratfunc(qint(n))


def r_from_table(i, n=3):
    scale = -as_ratfunc((q - q.bar()) ** 3).inverse()
    out = ParamElement.zero(n)
    for wt, p in _weighted_projectors(i, n).items():
        out = out + ParamElement.lift(p) * (r_eigenvalues()[wt] * scale)
    return out


def test_specializations():
    assert check_specializations() == {"1": True, "q^5": True, "q^3": True, "q^2": True}
    assert all(check_specializations(2).values())


def test_ybe_symbolic_R():
    res = check_ybe(build_R)
    assert res.ok, res.witness


def test_ybe_sampled_R():
    res = check_ybe(build_R, mode="sampled", seed=3)
    assert res.ok and len(res.points) == 20


def test_ybe_perturbed_fails():
    res = check_ybe(perturbed_R)
    assert not res.ok and res.witness
    assert not check_ybe(perturbed_R, mode="sampled", points=2).ok


def test_spectral_construction_reproduces_R():
    for i in (1, 2):
        assert _nf(r_from_table(i) - build_R(i)).is_zero()
    assert check_ybe(r_from_table).ok


def test_eigenvalue_normalisation():
    assert all(check_eigenvalues(power=3).values())
    assert not any(check_eigenvalues(power=4).values())


def test_sandwich_identities():
    got = check_sandwich()
    assert len(got) == 7
    for name, res in got.items():
        assert res.ok, (name, res.witness)


def test_mixed_sandwich_printed_sign_fails():
    assert not check_sandwich(mixed_sign=-1)["R1(u) U2 R1(v)"].ok


def test_sandwich_value_at_q5():
    assert sandwich_at_q5() == -Q(5) * Q(3)


@pytest.mark.parametrize("builder", [build_R, build_S])
def test_unitarity(builder):
    assert check_unitarity(builder).ok


def test_s_eigenvalue_table():
    top = s_eigenvalues()[(0, 0, 0)]
    # -(u q^3 - q^-3/u)(u q^2 - q^-2/u)(u/q - q/u) at u = q^2
    want = -as_ratfunc((q ** 5 - q ** -5) * (q ** 4 - q ** -4) * (q - q.bar()))
    assert top.substitute(u=(2, 0, 0)).constant() == want
    assert set(s_eigenvalues()) == set(r_eigenvalues())


def test_far_apart_R_commute():
    a, b = build_R(1, 4), build_R(3, 4)
    assert a * b == b * a
