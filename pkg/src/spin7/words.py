"""Words in the commutation monoid C(n).

Generators U_i, K_i, H_i are encoded as small integers
``3 * (i - 1) + kind`` with kind U=0, K=1, H=2, so that comparing codes
compares letters by (index, kind).  Letters whose indices differ by more
than one commute; every other pair (in particular two letters with the same
index) is dependent.

Internally a word is a plain tuple of codes in canonical form: the
lexicographically least representative of its commutation class.
``TraceWord`` wraps such a tuple for the public API.
"""
from __future__ import annotations

import enum
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from .errors import IndexOutOfRange, MismatchedContext, ParseError

__all__ = [
    "Gen", "TraceWord", "Order", "KINDS",
    "code", "kind_of", "index_of", "letter_name", "parse_letter",
    "canon", "canonicalize", "concat", "reduction_compare", "compare_codes",
    "order_key", "factor_search", "find_factor", "occurrences", "shift_word",
    "parse_word", "format_word", "all_words",
]

KINDS = "UKH"


class Gen(NamedTuple):
    kind: str
    index: int

    def __str__(self):
        return f"{self.kind}{self.index}"


def code(kind: str, index: int) -> int:
    return 3 * (index - 1) + KINDS.index(kind)


def kind_of(c: int) -> str:
    return KINDS[c % 3]


def index_of(c: int) -> int:
    return c // 3 + 1


def letter_name(c: int) -> str:
    return f"{KINDS[c % 3]}{c // 3 + 1}"


def parse_letter(text: str) -> int:
    text = text.strip()
    if len(text) < 2 or text[0] not in KINDS or not text[1:].isdigit():
        raise ParseError(f"bad generator {text!r}")
    index = int(text[1:])
    if index < 1:
        raise IndexOutOfRange(f"generator index must be positive: {text!r}")
    return code(text[0], index)


def _as_code(g) -> int:
    if isinstance(g, int):
        return g
    if isinstance(g, Gen):
        return code(g.kind, g.index)
    if isinstance(g, str):
        return parse_letter(g)
    raise TypeError(f"not a generator: {g!r}")


def _dependent(a: int, b: int) -> bool:
    return abs(a // 3 - b // 3) <= 1


@lru_cache(maxsize=1 << 18)
def canon(seq: tuple) -> tuple:
    """Lexicographically least commutation-equivalent rearrangement."""
    n = len(seq)
    if n < 2:
        return seq
    # greedy: repeatedly emit the smallest letter not blocked by an earlier
    # dependent letter
    idx = [c // 3 for c in seq]
    remaining = list(range(n))
    out = []
    while remaining:
        best = None
        best_pos = -1
        for pos, i in enumerate(remaining):
            ci = idx[i]
            free = True
            for j in remaining[:pos]:
                if -1 <= idx[j] - ci <= 1:
                    free = False
                    break
            if free and (best is None or seq[i] < seq[best]):
                best, best_pos = i, pos
        out.append(seq[best])
        del remaining[best_pos]
    return tuple(out)


def shift_word(w: tuple, k: int) -> tuple:
    """Add k to every index (shifting preserves canonical form)."""
    return tuple(c + 3 * k for c in w)


def max_index(w: tuple) -> int:
    return max((c // 3 + 1 for c in w), default=0)


class TraceWord:
    """An element of C(n) in canonical form."""

    __slots__ = ("letters", "n")

    def __init__(self, letters=(), n=None):
        codes = tuple(_as_code(g) for g in letters)
        if n is not None:
            for c in codes:
                if c // 3 + 1 > n - 1:
                    raise IndexOutOfRange(
                        f"{letter_name(c)} is out of range for n={n}")
        self.letters = canon(codes)
        self.n = n

    @classmethod
    def _raw(cls, letters, n=None):
        obj = object.__new__(cls)
        obj.letters = letters
        obj.n = n
        return obj

    @property
    def gens(self):
        return [Gen(kind_of(c), index_of(c)) for c in self.letters]

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.gens)

    def __eq__(self, other):
        if isinstance(other, TraceWord):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other):
        # structural (lexicographic on canonical codes), for sorting only
        return (len(self.letters), self.letters) < (len(other.letters), other.letters)

    def __mul__(self, other):
        return concat(self, other)

    def __repr__(self):
        return f"TraceWord({format_word(self.letters)!r})"

    def __str__(self):
        return format_word(self.letters)

    def to_json(self):
        return [letter_name(c) for c in self.letters]


def canonicalize(letters, n=None) -> TraceWord:
    return TraceWord(letters, n)


def _context(a, b):
    if a.n is not None and b.n is not None and a.n != b.n:
        raise MismatchedContext(f"words from C({a.n}) and C({b.n})")
    return a.n if a.n is not None else b.n


def concat(a: TraceWord, b: TraceWord) -> TraceWord:
    n = _context(a, b)
    return TraceWord._raw(canon(a.letters + b.letters), n)


class Order(enum.Enum):
    LESS = "LESS"
    GREATER = "GREATER"
    EQUAL = "EQUAL"
    INCOMPARABLE = "INCOMPARABLE"


@lru_cache(maxsize=1 << 18)
def order_key(w: tuple) -> tuple:
    """Rank key for the reduction order.

    Words are compared by total length first.  Ties are broken recursively:
    for each index from the highest present down to 1, the projection onto
    letters of that index contributes (length, kinds read right to left).
    Two words are comparable iff their keys differ, and then the order of
    the keys is the order of the words.
    """
    if not w:
        return (0,)
    top = max(c // 3 for c in w)
    key = [len(w)]
    for level in range(top, -1, -1):
        proj = [c % 3 for c in w if c // 3 == level]
        key.append((len(proj), tuple(reversed(proj))))
    return tuple(key)


def compare_codes(a: tuple, b: tuple, graded: bool = True) -> Order:
    """Compare canonical code tuples.

    With ``graded=False`` the total-length comparison is skipped and only the
    recursive projection order is used; that order alone does not orient
    every rule of A(3) (e.g. U1*U2*K1 -> U1*H2), so it is kept for tests.
    """
    if a == b:
        return Order.EQUAL
    ka, kb = order_key(a), order_key(b)
    if graded and ka[0] != kb[0]:
        return Order.LESS if ka[0] < kb[0] else Order.GREATER
    # same length: left-pad the level keys with empty projections
    ka, kb = ka[1:], kb[1:]
    height = max(len(ka), len(kb))
    ka = ((0, ()),) * (height - len(ka)) + ka
    kb = ((0, ()),) * (height - len(kb)) + kb
    if ka == kb:
        return Order.INCOMPARABLE
    return Order.LESS if ka < kb else Order.GREATER


def reduction_compare(a: TraceWord, b: TraceWord) -> Order:
    _context(a, b)
    return compare_codes(a.letters, b.letters)


def _reach(w: tuple) -> list:
    # reach[i]: bitmask of later positions j with i <=dep j
    n = len(w)
    reach = [0] * n
    for i in range(n - 1, -1, -1):
        ci = w[i] // 3
        r = 0
        for j in range(i + 1, n):
            if -1 <= w[j] // 3 - ci <= 1:
                r |= (1 << j) | reach[j]
        reach[i] = r
    return reach


def _split(w, reach, positions):
    """Return (x, y) if the positions form a convex factor of w, else None."""
    mask = 0
    for p in positions:
        mask |= 1 << p
    below = 0
    for p in positions:
        below |= reach[p]
    # a position outside the factor lying between two of its letters
    between = below & ~mask
    j = 0
    while between >> j:
        if (between >> j) & 1 and reach[j] & mask:
            return None
        j += 1
    x, y = [], []
    for j, c in enumerate(w):
        if (mask >> j) & 1:
            continue
        if reach[j] & mask:
            x.append(c)
        else:
            y.append(c)
    return tuple(x), tuple(y)


def occurrences(w: tuple, size: int):
    """Yield (positions, factor, x, y) for every convex factor of given size.

    Positions are increasing tuples into the canonical word, visited in
    lexicographic order; ``factor`` is the canonical form of the letters.
    """
    reach = _reach(w)
    n = len(w)
    for positions in combinations(range(n), size):
        split = _split(w, reach, positions)
        if split is None:
            continue
        factor = canon(tuple(w[p] for p in positions))
        yield positions, factor, split[0], split[1]


def find_factor(w: tuple, p: tuple):
    """Leftmost (x, y) with x * p * y == w in the trace monoid, or None."""
    if not p:
        return (), w
    if len(p) > len(w):
        return None
    need = sorted(p)
    letters = set(p)
    candidates = [i for i, c in enumerate(w) if c in letters]
    if len(candidates) < len(p):
        return None
    reach = _reach(w)
    for positions in combinations(candidates, len(p)):
        if sorted(w[i] for i in positions) != need:
            continue
        if canon(tuple(w[i] for i in positions)) != p:
            continue
        split = _split(w, reach, positions)
        if split is not None:
            return split
    return None


def factor_search(w: TraceWord, p: TraceWord):
    n = _context(w, p)
    found = find_factor(w.letters, p.letters)
    if found is None:
        return None
    x, y = found
    return TraceWord._raw(canon(x), n), TraceWord._raw(canon(y), n)


def parse_word(text: str, n=None) -> TraceWord:
    text = text.strip()
    if text in ("", "1", "e", "ε"):
        return TraceWord((), n)
    return TraceWord([parse_letter(t) for t in text.split("*")], n)


def format_word(w) -> str:
    if isinstance(w, TraceWord):
        w = w.letters
    if not w:
        return "1"
    return "*".join(letter_name(c) for c in w)


def all_words(n: int, length: int):
    """All canonical words of exactly the given length in C(n)."""
    gens = range(3 * (n - 1))
    level = {()}
    for _ in range(length):
        level = {canon(w + (g,)) for w in level for g in gens}
    return sorted(level)
