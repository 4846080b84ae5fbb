"""Dense univariate integer polynomials as ascending coefficient lists.

Low-level helpers for the Laurent and rational-function types.  Every list
here is trimmed: no trailing zeros, and ``[]`` is the zero polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from flint import fmpz_poly


def trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n] if n != len(c) else c


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return trim(out)


# below this many terms the plain loops beat the conversion overhead
_FLINT_MIN = 12


def _fp(a):
    return fmpz_poly(list(a))


def _back(p):
    return [int(x) for x in p.coeffs()]


def mul(a, b):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        k = b[0]
        return [k * x for x in a]
    if len(b) >= _FLINT_MIN:
        return _back(_fp(a) * _fp(b))
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                out[i + j] += x * y
    return trim(out)


def scale(a, k):
    if k == 0:
        return []
    return [k * x for x in a]


def content(a):
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


def primitive(a):
    g = content(a)
    if g in (0, 1):
        return list(a)
    return [x // g for x in a]


def divmod_q(a, b):
    """Quotient and remainder over the rationals (b nonzero)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(x) for x in a]
    db = len(b) - 1
    lc = b[-1]
    if len(rem) - 1 < db:
        return [], trim(rem)
    quo = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        coef = rem[k]
        if coef:
            t = coef / lc
            quo[k - db] = t
            for i, y in enumerate(b):
                rem[k - db + i] -= t * y
    return trim(quo), trim(rem[:db])


def exact_quo(a, b):
    """Divide in Z[x]; returns None when b does not divide a exactly."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    if len(a) < len(b):
        return None
    if len(b) >= _FLINT_MIN:
        quo, rem = divmod(_fp(a), _fp(b))
        if rem != 0:
            return None
        return _back(quo)
    rem = list(a)
    db = len(b) - 1
    lc = b[-1]
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        coef = rem[k]
        if coef:
            t, r = divmod(coef, lc)
            if r:
                return None
            quo[k - db] = t
            for i, y in enumerate(b):
                rem[k - db + i] -= t * y
    if any(rem[:db]):
        return None
    return trim(quo)


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pgcd(a, b):
    """Primitive gcd with positive leading coefficient of primitive a, b."""
    if not a:
        return primitive(b) if b else []
    if not b:
        return primitive(a)
    if len(a) == 1 or len(b) == 1:
        return [1]
    g = primitive(_back(_fp(a).gcd(_fp(b))))
    if g[-1] < 0:
        g = [-x for x in g]
    return g
