"""The four irreducible representations of A(3) and exact linear algebra.

Only the 4x4 images of U1, K1, H1 and sigma1 are transcribed.  Everything
else is derived at import time: the k-dimensional representation keeps the
last k rows and columns, index-2 images are conjugates by the reversal
permutation (A[i][j] -> A[k-1-i][k-1-j]), and sigma^-1 is the entrywise bar
of sigma.

The index swap A[i][j] -> A[k-1-j][k-1-i] (anti-transpose) is also kept,
because it is the other natural reading of the index-2 rule; it does not
satisfy the braid relation and exists only so that tests can show that.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .coeffs import LaurentPoly, RatFunc, RAT_ONE, RAT_ZERO, as_ratfunc, exact_div, qint, q
from .errors import MismatchedContext, RankDeficient, SingularSystem
from .words import canon, index_of

__all__ = [
    "RepMatrix", "RepSpec", "rep", "evaluate", "pi_evaluate", "pi_vector",
    "braid_from_generators", "char_poly", "rank", "solve", "basis_matrix",
]


class RepMatrix:
    """Dense square or rectangular matrix over Q(q)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = tuple(tuple(as_ratfunc(x) for x in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0

    @classmethod
    def identity(cls, k):
        return cls([[RAT_ONE if i == j else RAT_ZERO for j in range(k)] for i in range(k)])

    @classmethod
    def zeros(cls, r, c=None):
        return cls([[RAT_ZERO] * (r if c is None else c) for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other):
        return RepMatrix([[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return RepMatrix([[a - b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return RepMatrix([[-a for a in r] for r in self.entries])

    def scale(self, c):
        c = as_ratfunc(c)
        return RepMatrix([[a * c for a in r] for r in self.entries])

    def __mul__(self, other):
        if not isinstance(other, RepMatrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise ValueError("matrix shapes do not match")
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out_row = []
            for col in cols:
                acc = RAT_ZERO
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return RepMatrix(out)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        return self.entries == other.entries

    __hash__ = None

    def is_zero(self):
        return not any(x for row in self.entries for x in row)

    def anti_transpose(self):
        k = self.rows
        return RepMatrix([[self.entries[k - 1 - j][k - 1 - i] for j in range(k)]
                          for i in range(k)])

    def reversed(self):
        """Conjugate by the permutation reversing the basis."""
        k = self.rows
        return RepMatrix([[self.entries[k - 1 - i][k - 1 - j] for j in range(k)]
                          for i in range(k)])

    def bar(self):
        return RepMatrix([[x.bar() for x in r] for r in self.entries])

    def corner(self, k):
        """Lower-right k x k block."""
        off = self.rows - k
        return RepMatrix([r[off:] for r in self.entries[off:]])

    def flat(self):
        return [x for row in self.entries for x in row]

    def at(self, q0):
        return [[x(q0) for x in r] for r in self.entries]

    def to_json(self):
        return [[x.to_json() for x in r] for r in self.entries]

    def __repr__(self):
        return "RepMatrix([" + ", ".join(
            "[" + ", ".join(str(x) for x in r) + "]" for r in self.entries) + "])"


def _r(*numer, den=()):
    """Signed ratio of quantum integers; denominators divide exactly."""
    top = LaurentPoly(0, (1,))
    for n in numer:
        top = top * qint(n)
    bottom = LaurentPoly(0, (1,))
    for n in den:
        bottom = bottom * qint(n)
    return exact_div(top, bottom)


def _qs(*terms):
    # sum of signed monomials given as (coefficient, exponent)
    return LaurentPoly.from_dict({e: c for c, e in terms})


_Z = 0
_U1 = [
    [_r(10, 6, 2, den=(5, 3)), -_r(10, 6, den=(5, 3)), -_r(6, 4, den=(3, 2)), 1],
    [_Z, _Z, _Z, _Z],
    [_Z, _Z, _Z, _Z],
    [_Z, _Z, _Z, _Z],
]
_K1 = [
    [_Z, _r(2, 6, den=(3,)), -_r(6, den=(3,)), -1],
    [_Z, _r(2, 2, 6, den=(3,)), -_r(2, 6, den=(3,)), -qint(2)],
    [_Z, _Z, _Z, _Z],
    [_Z, _Z, _Z, _Z],
]
_H1 = [
    [qint(7), -qint(6), _Z, _Z],
    [_Z, -qint(5), qint(4), _Z],
    [_Z, _Z, qint(3), -qint(2)],
    [_Z, _Z, _Z, -1],
]
_SIGMA1 = [
    [_qs((-1, 6)), _qs((1, 1), (-1, 3), (1, 5)), _qs((1, -2), (-1, 0), (1, 2)), _qs((-1, -3))],
    [_Z, 1, _qs((1, -3), (-1, -1)), _qs((-1, -4))],
    [_Z, _Z, _qs((1, -4)), _qs((-1, -5))],
    [_Z, _Z, _Z, _qs((-1, -6))],
]


@dataclass(frozen=True)
class RepSpec:
    """Images of the generators of A(3) in one irreducible representation."""

    dim: int
    images: dict  # letter code -> RepMatrix, for U1 K1 H1 U2 K2 H2
    sigma: dict   # 1, 2 -> RepMatrix
    sigma_inv: dict

    def __getitem__(self, name):
        kind, i = name[0], int(name[1:])
        if kind == "s":
            return self.sigma[i]
        return self.images[3 * (i - 1) + "UKH".index(kind)]

    @property
    def identity(self):
        return RepMatrix.identity(self.dim)


@lru_cache(maxsize=None)
def rep(k: int, involution: str = "reverse") -> RepSpec:
    """The k-dimensional irreducible representation, 1 <= k <= 4.

    ``involution`` selects how index-2 images are produced from index-1
    images: ``"reverse"`` (the working rule) or ``"anti_transpose"``.
    """
    if not 1 <= k <= 4:
        raise ValueError(f"no {k}-dimensional representation in the family")
    u1, k1, h1, s1 = (RepMatrix(m).corner(k) for m in (_U1, _K1, _H1, _SIGMA1))
    flip = {"reverse": RepMatrix.reversed, "anti_transpose": RepMatrix.anti_transpose}[involution]
    images = {0: u1, 1: k1, 2: h1, 3: flip(u1), 4: flip(k1), 5: flip(h1)}
    s2 = flip(s1)
    return RepSpec(k, images, {1: s1, 2: s2}, {1: s1.bar(), 2: s2.bar()})


def _word_matrix(spec, w):
    m = spec.identity
    for c in w:
        if c // 3 > 1:
            raise MismatchedContext(f"generator index {index_of(c)} outside A(3)")
        m = m * spec.images[c]
    return m


def evaluate(a, spec: RepSpec) -> RepMatrix:
    """Image of an element of A(3) (an AlgElement over C(3))."""
    out = RepMatrix.zeros(spec.dim)
    for w, c in a.terms.items():
        out = out + _word_matrix(spec, w).scale(c)
    return out


def pi_evaluate(a):
    """Simultaneous image in the representations of dimension 1, 2, 3, 4."""
    return tuple(evaluate(a, rep(k)) for k in (1, 2, 3, 4))


@lru_cache(maxsize=4096)
def _pi_word(w):
    return tuple(x for k in (1, 2, 3, 4) for x in _word_matrix(rep(k), w).flat())


def pi_vector(a) -> list:
    """Flattened 30-vector of ``pi_evaluate``; the coordinate map used for solving."""
    out = [RAT_ZERO] * 30
    for w, c in a.terms.items():
        for i, x in enumerate(_pi_word(canon(w))):
            if x:
                out[i] = out[i] + c * x
    return out


def braid_from_generators(i: int, spec: RepSpec, inverse=False) -> RepMatrix:
    """sigma_i from (q + 1/q) sigma = -q^-7 - q^-2 U + q^-4 K + q^-5 H."""
    s = -1 if inverse else 1
    U = spec.images[3 * (i - 1)]
    K = spec.images[3 * (i - 1) + 1]
    H = spec.images[3 * (i - 1) + 2]
    total = (spec.identity.scale(-q ** (-7 * s)) - U.scale(q ** (-2 * s))
             + K.scale(q ** (-4 * s)) + H.scale(q ** (-5 * s)))
    return total.scale(RatFunc(1, qint(2)))


def char_poly(m: RepMatrix) -> list:
    """Coefficients (ascending in x) of det(x I - m), by Faddeev-LeVerrier."""
    k = m.rows
    coeffs = [RAT_ZERO] * (k + 1)
    coeffs[k] = RAT_ONE
    M = RepMatrix.zeros(k)
    ident = RepMatrix.identity(k)
    for j in range(1, k + 1):
        M = m * M + ident.scale(coeffs[k - j + 1])
        tr = RAT_ZERO
        for i in range(k):
            tr = tr + (m * M).entries[i][i]
        coeffs[k - j] = tr * RatFunc(-1, j)
    return coeffs


def _to_poly_rows(rows):
    # clear denominators row by row: each row becomes Laurent polynomials
    out = []
    for row in rows:
        den = RAT_ONE
        for x in row:
            if x and not x.is_laurent():
                den = _lcm(den, x.den)
        out.append([(x * den).as_laurent() if x else LaurentPoly() for x in row])
    return out


def _lcm(acc, d):
    # acc: RatFunc holding a Laurent polynomial; returns lcm(acc, d)
    a = acc.num
    g = RatFunc(a, d)  # a/d reduced: a = g.num * t, d = g.den * t
    return RatFunc(a * g.den)


def _bareiss(rows):
    """Fraction-free row echelon form; returns (echelon rows, pivot columns)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = LaurentPoly(0, (1,))
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        best = None
        for i in range(r, nrows):
            x = m[i][c]
            if x:
                size = len(x.c)
                if best is None or size < best:
                    piv, best = i, size
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, ncols):
                v = p * row_i[j] - a * row_r[j]
                row_i[j] = exact_div(v, prev) if v else v
            row_i[c] = LaurentPoly()
        prev = p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(m) -> int:
    rows = m.entries if isinstance(m, RepMatrix) else m
    rows = [[as_ratfunc(x) for x in r] for r in rows]
    if not rows:
        return 0
    _, pivots = _bareiss(_to_poly_rows(rows))
    return len(pivots)


def solve(A, B):
    """Solve A X = B exactly for a square nonsingular A.

    ``A`` is a list of rows; ``B`` is a list of rows (one column per right
    hand side).  Returns X as a list of rows of RatFunc.
    """
    rows = [[as_ratfunc(x) for x in ra] + [as_ratfunc(x) for x in rb] for ra, rb in zip(A, B)]
    n = len(A)
    nrhs = len(B[0])
    ech, pivots = _bareiss(_to_poly_rows(rows))
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        if any(c >= n for c in pivots):
            raise SingularSystem("inconsistent linear system")
        raise RankDeficient(f"matrix has rank {len([c for c in pivots if c < n])} < {n}")
    X = [[RAT_ZERO] * nrhs for _ in range(n)]
    for i in range(n - 1, -1, -1):
        row = ech[i]
        piv = row[i]
        for k in range(nrhs):
            acc = RatFunc(row[n + k])
            for j in range(i + 1, n):
                if row[j]:
                    acc = acc - X[j][k] * row[j]
            X[i][k] = acc / piv if acc else RAT_ZERO
    return X


def basis_matrix(words) -> list:
    """Rows = the 30 pi-coordinates, columns = the given words."""
    cols = [_pi_word(canon(tuple(w))) for w in words]
    return [[as_ratfunc(col[i]) for col in cols] for i in range(30)]
