"""Conditional expectations, the Markov trace and idempotents.

The conditional expectation on A(n) is read off from U_n a U_n = eps(a) U_n,
computed by rewriting in A(n+1).  The trace is the normalised iterate
tau_{n+1}(a) = tau_n(eps_{n+1}(a)) / loop, starting from tau_0 = identity on
scalars, so tau(1) = 1 at every level.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .coeffs import RAT_ONE, RatFunc, as_ratfunc, loop_value, qint, quantum_dim
from .elements import AlgElement
from .errors import BoundViolation, NoMatch, StripFailure
from .rewrite import rewriter_for
from .words import code, format_word, shift_word

__all__ = [
    "TowerContext", "epsilon", "trace", "spectral_idempotents",
    "printed_u_idempotent", "identify_weights", "cell_idempotent",
    "EIGENVALUES", "shift_element",
]

_LOOP = as_ratfunc(loop_value())

# H-eigenvalue label -> value
EIGENVALUES = {
    "[7]": as_ratfunc(qint(7)),
    "-[5]": -as_ratfunc(qint(5)),
    "[3]": as_ratfunc(qint(3)),
    "-1": as_ratfunc(-1),
}


@dataclass
class TowerContext:
    """Rule sets for the levels of the tower, fetched on demand."""

    n: int
    _rewriters: dict = field(default_factory=dict, repr=False)

    def rewriter(self, m):
        if m not in self._rewriters:
            from .presentation import algebra_rules

            self._rewriters[m] = rewriter_for(algebra_rules(max(m, 2)))
        return self._rewriters[m]

    def nf(self, a, m):
        return self.rewriter(m).normal_form(a.with_context(max(m, 2)))

    def epsilon(self, a, m=None):
        return epsilon(self.n if m is None else m, a, self)

    def trace(self, a, m=None):
        return trace(self.n if m is None else m, a, self)


_DEFAULT = TowerContext(0)


def _context(ctx):
    return _DEFAULT if ctx is None else ctx


def epsilon(n: int, a: AlgElement, ctx: TowerContext | None = None) -> AlgElement:
    """The conditional expectation A(n) -> A(n-1)."""
    ctx = _context(ctx)
    if n < 1:
        raise ValueError("epsilon needs n >= 1")
    un = code("U", n)
    big = max(n + 1, 2)
    word_u = AlgElement._raw(big, {(un,): RAT_ONE})
    sandwich = ctx.nf(word_u * a.with_context(big) * word_u, n + 1)
    out = {}
    for w, c in sandwich.terms.items():
        top = [x for x in w if x // 3 >= n - 2]
        if top != [un]:
            raise StripFailure(f"{format_word(w)} is not a word of A({n - 1}) times U{n}")
        rest = tuple(x for x in w if x != un)
        out[rest] = c
    return type(a)._raw(max(n - 1, 0), out)


def trace(n: int, a: AlgElement, ctx: TowerContext | None = None) -> RatFunc:
    """The Markov trace on A(n), normalised by tau(1) = 1."""
    ctx = _context(ctx)
    scale = RAT_ONE
    for m in range(n, 0, -1):
        a = epsilon(m, a, ctx)
        scale = scale / _LOOP
    return a.coefficient(()) * scale


def shift_element(a: AlgElement, k: int, n: int) -> AlgElement:
    """Raise every subscript by k, viewing the result in A(n)."""
    return type(a)(n, {shift_word(w, k): c for w, c in a.terms.items()})


def _gen1(kind):
    return AlgElement._raw(2, {(code(kind, 1),): RAT_ONE})


def spectral_idempotents() -> dict:
    """The four idempotents of A(2), keyed by the H1-eigenvalue they carry."""
    q2, q3, q4, q5, q6, q10 = (as_ratfunc(qint(k)) for k in (2, 3, 4, 5, 6, 10))
    one = AlgElement.one(2)
    U, K, H = _gen1("U"), _gen1("K"), _gen1("H")
    pu = U.scale(_LOOP.inverse())
    pk = K.scale(q3 / (q2 * q2 * q6))
    pe = (one.scale(1 / (q2 * q2)) + H.scale(1 / (q2 * q2)) + K.scale(1 / (q2 ** 3))
          - U.scale(q4 * q5 / (q2 ** 3 * q10)))
    rest = one - pu - pk - pe
    return {"[7]": pu, "-[5]": pk, "[3]": pe, "-1": rest}


def printed_u_idempotent() -> AlgElement:
    """U1 / [2]^2, the other candidate for the U-idempotent (not idempotent)."""
    q2 = as_ratfunc(qint(2))
    return _gen1("U").scale(1 / (q2 * q2))


# dominant weights of the summands of the square of the spin representation
_WEIGHTS = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 2))


def identify_weights(ctx: TowerContext | None = None) -> dict:
    """Match each idempotent to a summand using tau(pi) = qdim / qdim(spin)^2."""
    spin2 = as_ratfunc(quantum_dim("spin")) ** 2
    targets = {w: as_ratfunc(quantum_dim(w)) / spin2 for w in _WEIGHTS}
    out = {}
    for label, p in spectral_idempotents().items():
        t = trace(2, p, ctx)
        hits = [w for w, v in targets.items() if v == t]
        if len(hits) != 1:
            raise NoMatch(f"trace {t} of the {label} idempotent matches {hits}")
        out[label] = hits[0]
    return out


def cell_idempotent(a: int, b: int, c: int, n: int,
                    ctx: TowerContext | None = None) -> AlgElement:
    """(u_1 u_3 ... u_{2a-1})(k_{2a+1} ...)(e_{2a+2b+1} ...) in A(n)."""
    if min(a, b, c) < 0 or 2 * (a + b + c) > n:
        raise BoundViolation(f"need 2a + 2b + 2c <= n (got {a}, {b}, {c} with n = {n})")
    ctx = _context(ctx)
    ids = spectral_idempotents()
    factors = ["[7]"] * a + ["-[5]"] * b + ["[3]"] * c
    m = max(n, 2)
    out = AlgElement.one(m)
    for j, label in enumerate(factors):
        out = out * shift_element(ids[label], 2 * j, m)
    return ctx.nf(out, m) if factors else out
