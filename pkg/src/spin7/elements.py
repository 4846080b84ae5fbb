"""Finite linear combinations of trace words (the free algebra over C(n)).

Terms are kept in a dict from canonical code tuples to nonzero
coefficients.  Multiplication is the bilinear extension of concatenation;
no relations are applied here (see ``rewrite.normal_form`` for that).
"""
from __future__ import annotations

from .coeffs import RatFunc, as_ratfunc
from .errors import IndexOutOfRange, MismatchedContext
from .words import (
    TraceWord, canon, code, format_word, letter_name, max_index, parse_letter, parse_word,
)

__all__ = ["AlgElement", "LinComb", "add", "scalar_mul", "mul", "support", "gen", "word_element"]


class LinComb:
    """Linear combination of words with coefficients from some ring.

    Subclasses fix the coefficient ring through ``_coerce``.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        if terms:
            for w, c in terms.items():
                if isinstance(w, TraceWord):
                    w = w.letters
                else:
                    w = canon(tuple(w))
                c = self._coerce(c)
                if c:
                    if w in clean:
                        c = clean[w] + c
                        if not c:
                            del clean[w]
                            continue
                    clean[w] = c
        if n is not None:
            for w in clean:
                if max_index(w) > n - 1:
                    raise IndexOutOfRange(f"{format_word(w)} is out of range for n={n}")
        self.terms = clean

    @staticmethod
    def _coerce(c):
        return c

    @classmethod
    def _raw(cls, n, terms):
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def one(cls, n):
        return cls._raw(n, {(): cls._coerce(1)})

    def _check(self, other):
        if self.n is not None and other.n is not None and self.n != other.n:
            raise MismatchedContext(f"elements of A({self.n}) and A({other.n})")
        return self.n if self.n is not None else other.n

    def _operand(self, other):
        if isinstance(other, LinComb):
            return other
        c = self._coerce(other)
        return type(self)._raw(self.n, {(): c} if c else {})

    def __add__(self, other):
        other = self._operand(other)
        n = self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            if w in out:
                s = out[w] + c
                if s:
                    out[w] = s
                else:
                    del out[w]
            else:
                out[w] = c
        return type(self)._raw(n, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._operand(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self._coerce(c)
        if not c:
            return type(self)._raw(self.n, {})
        out = {}
        for w, x in self.terms.items():
            y = x * c
            if y:
                out[w] = y
        return type(self)._raw(self.n, out)

    def __mul__(self, other):
        if not isinstance(other, LinComb):
            return self.scale(other)
        n = self._check(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = canon(w1 + w2) if w1 and w2 else (w1 or w2)
                c = c1 * c2
                if w in out:
                    s = out[w] + c
                    if s:
                        out[w] = s
                    else:
                        del out[w]
                elif c:
                    out[w] = c
        # a parametrised operand wins so that its coefficient ring is kept
        cls = type(other) if isinstance(self, AlgElement) else type(self)
        return cls._raw(n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self.terms == other.terms
        return self.terms == self._operand(other).terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient(self, w):
        if isinstance(w, TraceWord):
            w = w.letters
        return self.terms.get(canon(tuple(w)), self._coerce(0))

    def support(self):
        return {TraceWord._raw(w, self.n) for w in self.terms}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def map_words(self, f):
        """Apply a word map (canonical tuple -> tuple) termwise."""
        out = {}
        for w, c in self.terms.items():
            w2 = canon(f(w))
            s = out[w2] + c if w2 in out else c
            if s:
                out[w2] = s
            else:
                out.pop(w2, None)
        return type(self)._raw(self.n, out)

    def with_context(self, n):
        return type(self)(n, self.terms)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            cs = str(c)
            if not w:
                parts.append(f"({cs})" if " " in cs else cs)
            elif cs == "1":
                parts.append(format_word(w))
            elif cs == "-1":
                parts.append("-" + format_word(w))
            else:
                parts.append(f"({cs})*{format_word(w)}")
        return " + ".join(parts)


class AlgElement(LinComb):
    """Element of the free Q(q)-algebra on C(n)."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        return as_ratfunc(c)

    def bar(self):
        return AlgElement._raw(self.n, {w: c.bar() for w, c in self.terms.items()})

    def to_json(self):
        return {
            "n": self.n,
            "terms": [
                {"coeff": c.to_json(), "word": [letter_name(x) for x in w]}
                for w, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj):
        terms = {}
        for t in obj["terms"]:
            w = canon(tuple(parse_letter(x) for x in t["word"]))
            c = RatFunc.from_json(t["coeff"])
            terms[w] = terms[w] + c if w in terms else c
        return cls(obj.get("n"), terms)

    def is_integral(self):
        """True when every coefficient is a bar-invariant Laurent polynomial."""
        return all(c.is_laurent() and c.num.is_bar_invariant() for c in self.terms.values())


def word_element(w, n=None, coeff=1) -> AlgElement:
    """A single word; ``w`` may be a TraceWord, a code tuple or text like "U1*K2"."""
    if isinstance(w, str):
        w = parse_word(w, n)
    if isinstance(w, TraceWord):
        n = w.n if n is None else n
        w = w.letters
    return AlgElement(n, {canon(tuple(w)): coeff})


def gen(kind: str, index: int, n=None) -> AlgElement:
    return word_element((code(kind, index),), n)


def add(a, b):
    return a + b


def scalar_mul(c, a):
    return a.scale(c)


def mul(a, b):
    return a * b


def support(a):
    return a.support()

