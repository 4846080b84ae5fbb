"""Exact coefficients: Laurent polynomials in q, their fraction field, and
the delta = q + 1/q form of bar-invariant elements.

Nothing in this module ever touches a float.  ``LaurentPoly`` and
``RatFunc`` are immutable and hashable, and ``RatFunc`` keeps a canonical
representative so that ``==`` is a structural comparison.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from . import _zpoly as zp
from .errors import NotBarInvariant, NotDivisible, PoleAtPoint

__all__ = [
    "LaurentPoly", "DeltaPoly", "RatFunc",
    "q", "one", "zero", "qint", "qint_ratio", "loop_value",
    "to_delta", "from_delta", "exact_div", "quantum_dim", "eval_at",
    "as_ratfunc", "QUANTUM_DIM_LABELS",
]


class LaurentPoly:
    """An element of Z[q, 1/q].

    ``coefficients[k]`` is the coefficient of ``q**(lowest_exponent + k)``.
    The zero polynomial has ``lowest_exponent == 0`` and no coefficients.
    """

    __slots__ = ("lo", "c", "_hash")

    def __init__(self, lowest_exponent=0, coefficients=()):
        c = list(coefficients)
        start = 0
        while start < len(c) and c[start] == 0:
            start += 1
        end = len(c)
        while end > start and c[end - 1] == 0:
            end -= 1
        if start == end:
            self.lo, self.c = 0, ()
        else:
            self.lo, self.c = lowest_exponent + start, tuple(c[start:end])
        self._hash = None

    @classmethod
    def _raw(cls, lo, c):
        # c already trimmed on both ends
        obj = object.__new__(cls)
        if c:
            obj.lo, obj.c = lo, tuple(c)
        else:
            obj.lo, obj.c = 0, ()
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls(exponent, (coefficient,))

    @classmethod
    def from_dict(cls, terms):
        terms = {e: v for e, v in terms.items() if v}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(e, 0) for e in range(lo, hi + 1)])

    # -- inspection -------------------------------------------------------
    @property
    def lowest_exponent(self):
        return self.lo

    @property
    def coefficients(self):
        return self.c

    @property
    def hi(self):
        return self.lo + len(self.c) - 1

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def terms(self):
        return {self.lo + k: v for k, v in enumerate(self.c) if v}

    def is_monomial(self):
        return len(self.c) == 1

    def constant(self):
        """Return the integer when the polynomial is a constant, else None."""
        if not self.c:
            return 0
        if self.lo == 0 and len(self.c) == 1:
            return self.c[0]
        return None

    def bar(self):
        """Apply the involution q <-> 1/q."""
        return LaurentPoly._raw(-self.hi, self.c[::-1]) if self.c else self

    def is_bar_invariant(self):
        return not self.c or (self.lo == -self.hi and self.c == self.c[::-1])

    def shift(self, k):
        """Multiply by q**k."""
        return LaurentPoly._raw(self.lo + k, self.c) if self.c else self

    def substitute_power(self, k):
        """Return p(q**k) for a nonzero integer k."""
        if not self.c or k == 1:
            return self
        terms = {}
        for e, v in self.terms().items():
            terms[e * k] = v
        return LaurentPoly.from_dict(terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, int):
                other = LaurentPoly(0, (other,))
            else:
                return NotImplemented
        if not self.c:
            return other
        if not other.c:
            return self
        lo = min(self.lo, other.lo)
        a = [0] * (self.lo - lo) + list(self.c)
        b = [0] * (other.lo - lo) + list(other.c)
        return LaurentPoly(lo, zp.add(a, b))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.lo, [-x for x in self.c])

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(0, (other,))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            if not self.c or not other.c:
                return LaurentPoly()
            return LaurentPoly._raw(self.lo + other.lo, zp.mul(self.c, other.c))
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            return LaurentPoly._raw(self.lo, [other * x for x in self.c])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.c) == 1 and abs(self.c[0]) == 1:
                return LaurentPoly(self.lo * k, (self.c[0] ** (-k),))
            raise NotDivisible("negative power of a non-unit Laurent polynomial")
        result = LaurentPoly(0, (1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        return RatFunc(self, other)

    def __rtruediv__(self, other):
        return RatFunc(other, self)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.lo == other.lo and self.c == other.c
        if isinstance(other, int):
            return self.constant() == other
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.lo, self.c))
        return self._hash

    def __call__(self, q0):
        return eval_at(self, q0)

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)})"

    def __str__(self):
        return format_laurent(self)

    def to_json(self):
        return {"lo": self.lo, "c": list(self.c)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["lo"]), [int(x) for x in obj["c"]])


def format_laurent(p, var="q"):
    if not p.c:
        return "0"
    parts = []
    for e in range(p.hi, p.lo - 1, -1):
        v = p.c[e - p.lo]
        if not v:
            continue
        if e == 0:
            mono = str(abs(v))
        else:
            power = var if e == 1 else f"{var}^{e}" if e > 0 else f"{var}^({e})"
            mono = power if abs(v) == 1 else f"{abs(v)}*{power}"
        sign = "-" if v < 0 else "+"
        parts.append((sign, mono))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        out += f" {sign} {mono}"
    return out


class DeltaPoly:
    """A polynomial in delta; ``coefficients[k]`` multiplies ``delta**k``."""

    __slots__ = ("c",)

    def __init__(self, coefficients=()):
        self.c = tuple(zp.trim(list(coefficients)))

    @property
    def coefficients(self):
        return self.c

    def degree(self):
        return len(self.c) - 1

    def __eq__(self, other):
        if isinstance(other, DeltaPoly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(("delta", self.c))

    def __add__(self, other):
        return DeltaPoly(zp.add(list(self.c), list(other.c)))

    def __mul__(self, other):
        if isinstance(other, int):
            return DeltaPoly(zp.scale(list(self.c), other))
        return DeltaPoly(zp.mul(list(self.c), list(other.c)))

    def __repr__(self):
        return f"DeltaPoly({format_laurent(LaurentPoly(0, self.c), 'd')})"

    def to_json(self):
        return {"d": list(self.c)}

    @classmethod
    def from_json(cls, obj):
        return cls([int(x) for x in obj["d"]])


class RatFunc:
    """An element of Q(q) stored as a reduced fraction of Laurent polynomials.

    Canonical form: integer coefficients, no common factor (including integer
    content), denominator with lowest exponent 0 and positive leading
    coefficient.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, numerator, denominator=1):
        num, den = _as_laurent(numerator), _as_laurent(denominator)
        if not den.c:
            raise ZeroDivisionError("RatFunc with zero denominator")
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        obj._hash = None
        return obj

    @property
    def numerator(self):
        return self.num

    @property
    def denominator(self):
        return self.den

    def is_zero(self):
        return not self.num.c

    def __bool__(self):
        return bool(self.num.c)

    def is_laurent(self):
        return self.den.c == (1,)

    def as_laurent(self):
        if not self.is_laurent():
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        return self.num

    def bar(self):
        return RatFunc(self.num.bar(), self.den.bar())

    def substitute_power(self, k):
        return RatFunc(self.num.substitute_power(k), self.den.substitute_power(k))

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.num.c:
            return self
        if not self.num.c:
            return other
        if self.den == other.den:
            if self.den.c == (1,):
                return RatFunc._raw(self.num + other.num, _ONE_L)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.num.c or not other.num.c:
            return RAT_ZERO
        if self.den.c == (1,) and other.den.c == (1,):
            return RatFunc._raw(self.num * other.num, _ONE_L)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.num.c:
            raise ZeroDivisionError("division by zero RatFunc")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def inverse(self):
        return RAT_ONE / self

    def __pow__(self, k):
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc._raw(self.num ** k, self.den ** k)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den)) if self.den.c != (1,) else hash(self.num)
        return self._hash

    def __call__(self, q0):
        return eval_at(self, q0)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den.c == (1,):
            return format_laurent(self.num)
        return f"({format_laurent(self.num)})/({format_laurent(self.den)})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj):
        if "num" in obj:
            return cls(LaurentPoly.from_json(obj["num"]), LaurentPoly.from_json(obj["den"]))
        return cls(LaurentPoly.from_json(obj))


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(0, (x,))
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc._raw(x, _ONE_L)
    if isinstance(x, int):
        return RatFunc._raw(LaurentPoly(0, (x,)), _ONE_L)
    if isinstance(x, Fraction):
        return RatFunc(x.numerator, x.denominator)
    return None


def as_ratfunc(x):
    out = _coerce(x)
    if out is None:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return out


def _normalize(num, den):
    if not num.c:
        return LaurentPoly(), _ONE_L
    # move the q-power of the denominator to the numerator
    nlo = num.lo - den.lo
    n, d = list(num.c), list(den.c)
    if len(d) > 1:
        g = zp.pgcd(zp.primitive(n), zp.primitive(d))
        if len(g) > 1:
            n = zp.exact_quo(n, g)
            d = zp.exact_quo(d, g)
    k = gcd(zp.content(n), zp.content(d))
    if d[-1] < 0:
        k = -k
    if k != 1:
        n = [x // k for x in n]
        d = [x // k for x in d]
    return LaurentPoly._raw(nlo, n), LaurentPoly._raw(0, d)


_ONE_L = LaurentPoly(0, (1,))
RAT_ZERO = RatFunc._raw(LaurentPoly(), _ONE_L)
RAT_ONE = RatFunc._raw(_ONE_L, _ONE_L)

q = LaurentPoly(1, (1,))
one = _ONE_L
zero = LaurentPoly()


@lru_cache(maxsize=None)
def qint(n: int) -> LaurentPoly:
    """The quantum integer q^(n-1) + q^(n-3) + ... + q^(1-n).

    Non-positive arguments follow [-n] = -[n], [0] = 0.
    """
    if n == 0:
        return zero
    if n < 0:
        return -qint(-n)
    return LaurentPoly(1 - n, [1 if k % 2 == 0 else 0 for k in range(2 * n - 1)])


def exact_div(a, b) -> LaurentPoly:
    """Divide Laurent polynomials, insisting on a Laurent-polynomial quotient."""
    a, b = _as_laurent(a), _as_laurent(b)
    if not b.c:
        raise ZeroDivisionError("exact_div by zero")
    if not a.c:
        return zero
    quo = zp.exact_quo(list(a.c), list(b.c))
    if quo is None:
        raise NotDivisible(f"({a}) is not divisible by ({b})")
    return LaurentPoly(a.lo - b.lo, quo)


def qint_ratio(numer, denom=()) -> LaurentPoly:
    """Product of [n] over ``numer`` divided exactly by the product over ``denom``."""
    top = one
    for n in numer:
        top = top * qint(n)
    bottom = one
    for n in denom:
        bottom = bottom * qint(n)
    return exact_div(top, bottom)


def loop_value() -> LaurentPoly:
    """[10][6][2]/([5][3]), the value of a closed single loop."""
    return qint_ratio((10, 6, 2), (5, 3))


@lru_cache(maxsize=None)
def _delta_power(k):
    # (q + 1/q)^k as a Laurent polynomial
    return (q + q.bar()) ** k


def to_delta(p) -> DeltaPoly:
    """Express a bar-invariant Laurent polynomial as a polynomial in delta."""
    p = _as_laurent(p)
    if not p.is_bar_invariant():
        raise NotBarInvariant(f"{p} is not invariant under q <-> 1/q")
    out = {}
    while p.c:
        d = p.hi
        lead = p.c[-1]
        out[d] = lead
        p = p - _delta_power(d) * lead
    return DeltaPoly([out.get(k, 0) for k in range(max(out) + 1)] if out else [])


def from_delta(d: DeltaPoly) -> LaurentPoly:
    acc = zero
    for k, v in enumerate(d.c):
        if v:
            acc = acc + _delta_power(k) * v
    return acc


QUANTUM_DIM_LABELS = {
    "trivial": ((), ()),
    "V": ((10, 7), (5, 2)),
    "adjoint": ((12, 7, 6), (4, 3, 2)),
    "spin": ((10, 6, 2), (5, 3, 1)),
    "Λ": ((12, 10, 7), (6, 4, 1)),
}
_ALIASES = {
    "vector": "V", "L": "Λ", "Lambda": "Λ", "wedge3": "Λ",
    (0, 0, 0): "trivial", (1, 0, 0): "V", (0, 1, 0): "adjoint",
    (0, 0, 1): "spin", (0, 0, 2): "Λ",
}


def quantum_dim(label) -> LaurentPoly:
    """Quantum dimension of a summand, by name or by dominant weight [a, b, c]."""
    if isinstance(label, list):
        label = tuple(label)
    label = _ALIASES.get(label, label)
    try:
        numer, denom = QUANTUM_DIM_LABELS[label]
    except (KeyError, TypeError):
        raise KeyError(f"unknown quantum dimension label {label!r}") from None
    return qint_ratio(numer, denom)


def eval_at(p, q0):
    """Substitute an exact rational q0 for q."""
    q0 = Fraction(q0)
    if isinstance(p, int):
        return Fraction(p)
    if isinstance(p, LaurentPoly):
        if not p.c:
            return Fraction(0)
        if q0 == 0 and p.lo < 0:
            raise PoleAtPoint("negative powers of q at q = 0")
        val = Fraction(zp.evaluate(p.c, q0))
        return val * q0 ** p.lo
    if isinstance(p, RatFunc):
        d = eval_at(p.den, q0)
        if d == 0:
            raise PoleAtPoint(f"denominator of {p} vanishes at q = {q0}")
        return eval_at(p.num, q0) / d
    if isinstance(p, Rational):
        return Fraction(p)
    raise TypeError(f"cannot evaluate {p!r}")
