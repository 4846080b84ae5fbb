"""Spectral-parameter solutions of the Yang-Baxter equation in A(3).

Coefficients live in SpectralPoly: Laurent polynomials in the spectral
variables u, v whose coefficients are rational functions of q.  Every
coefficient that occurs here has a denominator in q alone, so nothing
more general is needed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import RAT_ONE, LaurentPoly, RatFunc, as_ratfunc, qint
from .elements import AlgElement, LinComb
from .rewrite import rewriter_for
from .words import code, format_word

__all__ = [
    "SpectralPoly", "ParamElement", "U", "V", "build_R", "build_S",
    "r_eigenvalues", "s_eigenvalues", "specialize", "check_ybe",
    "check_sandwich", "check_unitarity", "check_specializations",
    "check_eigenvalues", "perturbed_R", "YBEResult", "sandwich_at_q5",
]


class SpectralPoly:
    """Finite sum of c * u^a * v^b with c in Q(q)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            c = as_ratfunc(c)
            if c:
                clean[tuple(k)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, SpectralPoly):
            return x
        try:
            c = as_ratfunc(x)
        except TypeError:
            return None
        return cls._raw({(0, 0): c} if c else {})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = SpectralPoly.coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SpectralPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SpectralPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = SpectralPoly.coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SpectralPoly):
            other = SpectralPoly.coerce(other)
            if other is None:
                return NotImplemented
            if len(other.terms) == 1 and (0, 0) in other.terms:
                c = other.terms[(0, 0)]
                return SpectralPoly._raw({k: x * c for k, x in self.terms.items()})
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                s = out[k] + c1 * c2 if k in out else c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return SpectralPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = as_ratfunc(other)
        return SpectralPoly._raw({k: x / c for k, x in self.terms.items()})

    def __pow__(self, k):
        out = SpectralPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = SpectralPoly.coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def substitute(self, u=(0, 1, 0), v=(0, 0, 1)):
        """Replace u by q^a u^s v^t for u = (a, s, t), and likewise v."""
        out = SpectralPoly()
        for (eu, ev), c in self.terms.items():
            qe = u[0] * eu + v[0] * ev
            k = (u[1] * eu + v[1] * ev, u[2] * eu + v[2] * ev)
            out = out + SpectralPoly._raw({k: c * LaurentPoly.monomial(qe)})
        return out

    def evaluate(self, u0=None, v0=None):
        """Substitute rationals for u and/or v; returns a SpectralPoly."""
        out = SpectralPoly()
        for (eu, ev), c in self.terms.items():
            f = Fraction(1)
            k = [eu, ev]
            if u0 is not None:
                f *= Fraction(u0) ** eu
                k[0] = 0
            if v0 is not None:
                f *= Fraction(v0) ** ev
                k[1] = 0
            out = out + SpectralPoly._raw({tuple(k): c * f})
        return out

    def is_constant(self):
        return set(self.terms) <= {(0, 0)}

    def constant(self) -> RatFunc:
        return self.terms.get((0, 0), as_ratfunc(0))

    def __repr__(self):
        return f"SpectralPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            mono = "*".join(s for s in (_mono("u", a), _mono("v", b)) if s)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _mono(var, e):
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


class ParamElement(LinComb):
    """Element of A(n) with SpectralPoly coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        out = SpectralPoly.coerce(c)
        if out is None:
            raise TypeError(f"cannot use {c!r} as a coefficient")
        return out

    @classmethod
    def lift(cls, a: AlgElement):
        return cls._raw(a.n, {w: SpectralPoly.const(c) for w, c in a.terms.items()})

    def substitute(self, u=(0, 1, 0), v=(0, 0, 1)):
        return _map(self, lambda c: c.substitute(u, v))

    def evaluate(self, u0=None, v0=None):
        return _map(self, lambda c: c.evaluate(u0, v0))

    def at_q(self, q0):
        """Every coefficient must be free of u, v; returns word -> Fraction."""
        out = {}
        for w, c in self.terms.items():
            if not c.is_constant():
                raise ValueError("spectral variables remain")
            x = c.constant()(q0)
            if x:
                out[w] = x
        return out


def _map(a, f):
    out = {}
    for w, c in a.terms.items():
        d = f(c)
        if d:
            out[w] = d
    return ParamElement._raw(a.n, out)


U = SpectralPoly({(1, 0): 1})
V = SpectralPoly({(0, 1): 1})
_Q = LaurentPoly.monomial(1)


def _qm(k):
    return as_ratfunc(LaurentPoly.monomial(k))


def _b(k, var="u", flip=False):
    """x q^k - x^-1 q^-k for x = u or v, or its reversal x^-1 q^k - x q^-k."""
    e = (1, 0) if var == "u" else (0, 1)
    neg = (-e[0], -e[1])
    if flip:
        return SpectralPoly({neg: _qm(k), e: -_qm(-k)})
    return SpectralPoly({e: _qm(k), neg: -_qm(-k)})


def _gen(kind, i, n):
    return AlgElement._raw(n, {(code(kind, i),): RAT_ONE})


_D = as_ratfunc((_Q - _Q.bar()) ** 2 * (_Q ** 2 - _Q.bar() ** 2))


def build_R(i: int, n: int = 3, u: SpectralPoly = U) -> ParamElement:
    """R_i(u) over the basis 1, U_i, K_i, H_i."""
    if u is not U:
        raise ValueError("substitute into build_R(i, n) instead")
    c0 = -(_b(-5) * _b(-3) * _b(-2))
    cu = -(_b(0) * _b(-3) * _b(-2))
    ck = _b(0) * _b(-5) * _b(-2)
    ch = _b(0) * _b(-5) * _b(-3)
    out = ParamElement._raw(n, {(): c0 / _D})
    for kind, c in (("U", cu), ("K", ck), ("H", ch)):
        out = out + ParamElement.lift(_gen(kind, i, n)) * (c / _D)
    return out


def r_eigenvalues() -> dict:
    """Eigenvalues of -(q - 1/q)^3 R(u), keyed by dominant weight.

    The same four products are sometimes quoted for -(q - 1/q)^4 R(u); that
    version is off by one factor of q - 1/q (see ``check_eigenvalues``).
    """
    return {
        (0, 0, 0): _b(5) * _b(1) * _b(-3),
        (0, 1, 0): _b(5, flip=True) * _b(1) * _b(-3),
        (0, 0, 2): _b(5, flip=True) * _b(1, flip=True) * _b(-3),
        (1, 0, 0): _b(5, flip=True) * _b(1, flip=True) * _b(-3, flip=True),
    }


def s_eigenvalues() -> dict:
    """Eigenvalues of (q - 1/q)^4 S(u), keyed by dominant weight."""
    return {
        (0, 0, 0): -(_b(3) * _b(2) * _b(-1)),
        (1, 0, 0): -(_b(3, flip=True) * _b(2) * _b(-1)),
        (0, 1, 0): _b(3, flip=True) * _b(2, flip=True) * _b(-1),
        (0, 0, 2): _b(3, flip=True) * _b(2, flip=True) * _b(-1, flip=True),
    }


def _weighted_projectors(i, n):
    from .tower import identify_weights, shift_element, spectral_idempotents

    ids = spectral_idempotents()
    weights = identify_weights()
    return {weights[label]: shift_element(p, i - 1, n) for label, p in ids.items()}


def build_S(i: int, n: int = 3) -> ParamElement:
    """(q - 1/q)^-4 times the sum of eigenvalue * projector."""
    scale = as_ratfunc((_Q - _Q.bar()) ** 4).inverse()
    proj = _weighted_projectors(i, n)
    out = ParamElement.zero(n)
    for wt, eig in s_eigenvalues().items():
        out = out + ParamElement.lift(proj[wt]) * (eig * scale)
    return out


# substitutions as (q exponent, u exponent, v exponent)
def specialize(a: ParamElement, u0) -> ParamElement:
    """Put u = q^k (u0 = k, an int) or u = a rational Fraction."""
    if isinstance(u0, int) and not isinstance(u0, bool):
        return a.substitute(u=(u0, 0, 0))
    return a.evaluate(u0=u0)


@dataclass
class YBEResult:
    ok: bool
    name: str
    witness: str = ""
    points: tuple = ()

    def __bool__(self):
        return self.ok


def _rules3():
    from .presentation import algebra_rules

    return algebra_rules(3)


def _nf(a):
    return rewriter_for(_rules3()).normal_form(a)


def _witness(diff):
    if not diff.terms:
        return ""
    w, c = min(diff.terms.items(), key=lambda t: (len(t[0]), t[0]))
    return f"{format_word(w) or '1'}: {c}"


def _compare(name, lhs, rhs):
    diff = _nf(lhs) - _nf(rhs)
    return YBEResult(not diff, name, _witness(diff))


def _ybe_sides(R1, R2, uv=(0, 1, 1), v=(0, 0, 1)):
    # R1(u) R2(uv) R1(v) = R2(v) R1(uv) R2(u)
    lhs = R1 * R2.substitute(u=uv) * R1.substitute(u=v)
    rhs = R2.substitute(u=v) * R1.substitute(u=uv) * R2
    return lhs, rhs


def check_ybe(builder=build_R, n=3, mode="symbolic", points=20, seed=0) -> YBEResult:
    """The braid-like Yang-Baxter relation with spectral parameter in A(3)."""
    R1, R2 = builder(1, n), builder(2, n)
    name = getattr(builder, "__name__", "R")
    if mode == "symbolic":
        lhs, rhs = _ybe_sides(R1, R2)
        return _compare(name, lhs, rhs)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    tried = []
    for _ in range(points):
        u0 = Fraction(rng.randint(1, 29), rng.randint(1, 29))
        v0 = Fraction(rng.randint(1, 29), rng.randint(1, 29))
        q0 = Fraction(rng.randint(2, 31), rng.randint(1, 7))
        tried.append((q0, u0, v0))
        a1, a2 = R1.evaluate(u0=u0), R2.evaluate(u0=u0)
        b1, b2 = R1.evaluate(u0=v0), R2.evaluate(u0=v0)
        c1, c2 = R1.evaluate(u0=u0 * v0), R2.evaluate(u0=u0 * v0)
        lhs = _nf(a1 * c2 * b1).at_q(q0)
        rhs = _nf(b2 * c1 * a2).at_q(q0)
        if lhs != rhs:
            keys = sorted(set(lhs) | set(rhs), key=lambda w: (len(w), w))
            w = next(k for k in keys if lhs.get(k, 0) != rhs.get(k, 0))
            return YBEResult(False, name, f"at q={q0}, u={u0}, v={v0}: {format_word(w) or '1'}",
                             tuple(tried))
    return YBEResult(True, name, points=tuple(tried))


def perturbed_R(i: int, n: int = 3) -> ParamElement:
    """R_i(u) with the H_i coefficient multiplied by q."""
    R = build_R(i, n)
    h = (code("H", i),)
    terms = dict(R.terms)
    terms[h] = terms[h] * _Q
    return ParamElement._raw(n, terms)


def check_specializations(i: int = 1, n: int = 3) -> dict:
    R = build_R(i, n)
    q2, q3, q5 = (as_ratfunc(qint(k)) for k in (2, 3, 5))
    want = {
        0: AlgElement.one(n).scale(q5 * q3),
        5: _gen("U", i, n).scale(-q5 * q3),
        3: _gen("K", i, n).scale(-q3),
        2: _gen("H", i, n).scale(q3),
    }
    return {f"q^{k}" if k else "1": specialize(R, k) == ParamElement.lift(w)
            for k, w in want.items()}


def _sandwich_scalar():
    num = _b(-10) * _b(-6) * _b(-2)
    return -num / as_ratfunc((_Q - _Q.bar()) ** 3)


def check_sandwich(mixed_sign: int = 1) -> dict:
    """The U-sandwich identities for R in A(3), both index orders.

    The mixed identity R1(u) U2 R1(v) = s R2(q^5/u) U1 R2(q^5/v) holds with
    s = +1; each reflected R factor carries one sign, so -1 fails.
    """
    n = 3
    out = {}
    lift = ParamElement.lift
    R = {1: build_R(1, n), 2: build_R(2, n)}
    Ug = {1: lift(_gen("U", 1, n)), 2: lift(_gen("U", 2, n))}
    refl = (5, -1, 0)  # u -> q^5 u^-1
    for i, j in ((1, 2), (2, 1)):
        out[f"U{i} R{j}(u) U{i}"] = _compare(
            "sandwich", Ug[i] * R[j] * Ug[i], Ug[i].scale(_sandwich_scalar()))
        out[f"U{i} U{j} R{i}(u)"] = _compare(
            "left", Ug[i] * Ug[j] * R[i], -(Ug[i] * R[j].substitute(u=refl)))
        out[f"R{i}(u) U{j} U{i}"] = _compare(
            "right", R[i] * Ug[j] * Ug[i], -(R[j].substitute(u=refl) * Ug[i]))
    v_refl = (5, 0, -1)
    lhs = R[1] * Ug[2] * R[1].substitute(u=(0, 0, 1))
    rhs = (R[2].substitute(u=refl) * Ug[1] * R[2].substitute(u=v_refl)).scale(mixed_sign)
    out["R1(u) U2 R1(v)"] = _compare("mixed", lhs, rhs)
    return out


def check_unitarity(builder=build_R, n=3) -> YBEResult:
    """builder(u) builder(1/u) is a scalar."""
    a = builder(1, n)
    prod = _nf(a * a.substitute(u=(0, -1, 0)))
    scalar = set(prod.terms) <= {()}
    return YBEResult(scalar, f"{getattr(builder, '__name__', 'R')} unitarity",
                     "" if scalar else _witness(prod))


def check_eigenvalues(i: int = 1, n: int = 3, power: int = 3) -> dict:
    """-(q - 1/q)^power R(u) acts on each projector by the tabulated eigenvalue."""
    R = build_R(i, n)
    scale = -as_ratfunc((_Q - _Q.bar()) ** power)
    out = {}
    for wt, p in _weighted_projectors(i, n).items():
        lp = ParamElement.lift(p)
        lhs = _nf(R * lp) * scale
        rhs = lp * r_eigenvalues()[wt]
        out[wt] = _nf(lhs - rhs).is_zero()
    return out


def sandwich_at_q5() -> RatFunc:
    """The sandwich scalar at u = q^5.

    R2(q^5) = -[5][3] U2 and U1 U2 U1 = U1 force this to be -[5][3].
    """
    s = SpectralPoly.const(1) * _sandwich_scalar()
    return s.substitute(u=(5, 0, 0)).constant()
