"""Defining relations of A(n) and the rewrite rules derived from them.

Relations are written once as templates in two indices ``a`` and ``b``
(adjacent, in either order) and instantiated per window.  The rule set for
A(3) is then obtained by solving, in the faithful representation, for each
reducible word of type (i,i), (1,2,1) or (2,1,2) as a combination of the
thirty basis words.
"""
from __future__ import annotations

import enum
import gzip
import json
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path

from .coeffs import RatFunc, as_ratfunc, loop_value, qint_ratio
from .elements import AlgElement
from .errors import IndexOutOfRange, OrderViolation, Spin7Error
from .words import (
    Order, TraceWord, canon, code, compare_codes, format_word, letter_name,
    parse_letter, shift_word,
)

__all__ = [
    "Family", "Relation", "RuleSet", "relations_at", "all_relations",
    "hexagon_raw", "basis30", "reducible_patterns", "derive_rules3",
    "rules_for", "relation_residual", "completed_rules", "algebra_rules",
    "build_rules_cache",
]

_log = logging.getLogger(__name__)


class Family(enum.Enum):
    TWO_STRING = "TWO_STRING"
    THREE_ISOTOPY = "THREE_ISOTOPY"
    THREE_BASIC = "THREE_BASIC"
    THREE_SQUARE = "THREE_SQUARE"
    PENTAGON = "PENTAGON"
    HEXAGON = "HEXAGON"


@dataclass(frozen=True)
class Relation:
    lhs: TraceWord
    rhs: AlgElement
    family: Family

    def __post_init__(self):
        if self.lhs.letters in self.rhs.terms:
            raise Spin7Error(f"relation for {self.lhs} has its lhs on the right")

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


def _q(*numer, den=()):
    return as_ratfunc(qint_ratio(numer, den))


_LOOP = as_ratfunc(loop_value())
_K2 = _q(2, 2, 6, den=(3,))  # K^2 = _K2 K

# Templates: (lhs, [(coefficient, word), ...]) with letters like "Ua", "Hb".
# An empty word is written "".
_TWO_STRING = [
    ("UaUa", [(_LOOP, "Ua")]),
    ("UaHa", [(_q(7), "Ua")]),
    ("UaKa", []),
    ("HaUa", [(_q(7), "Ua")]),
    ("HaHa", [(_q(3), ""), (_q(4, den=(2,)), "Ha"), (_q(4), "Ua"), (_q(4), "Ka")]),
    ("HaKa", [(-_q(5), "Ka")]),
    ("KaUa", []),
    ("KaHa", [(-_q(5), "Ka")]),
    ("KaKa", [(_K2, "Ka")]),
]

_ISOTOPY = [
    ("UaUbUa", [(1, "Ua")]),
    ("UaHbUa", []),
    ("UaUbHa", [(1, "UaKb")]),
    ("UaUbKa", [(1, "UaHb")]),
    ("HaUbUa", [(1, "KbUa")]),
    ("KaUbUa", [(1, "HbUa")]),
    ("KaUbKa", [(1, "HbUaHb")]),
]

_BASIC = [
    ("UaKbUa", [(_q(7), "Ua")]),
    ("UaKbKa", [(-_q(5), "UaHb")]),
    ("KaKbUa", [(-_q(5), "HbUa")]),
    ("UaHbKa", [(_K2, "UaHb")]),
    ("KaHbUa", [(_K2, "HbUa")]),
    ("UaHbHa", [(-_q(5), "UaHb")]),
    ("HaHbUa", [(-_q(5), "HbUa")]),
    ("KaHbKa", []),
]

_SQUARE = [
    ("UaKbHa", [(_q(4), "Ua"), (_q(3), "UaUb"), (_q(4, den=(2,)), "UaKb"), (_q(4), "UaHb")]),
    ("HaKbUa", [(_q(4), "Ua"), (_q(3), "UbUa"), (_q(4, den=(2,)), "KbUa"), (_q(4), "HbUa")]),
    ("KaKbKa", [(_q(2, 2), "Ka"), (_q(3), "KaUbKa")]),
    ("HaHbKa", [(_q(2, 2), "UaHb"), (_q(3), "HbKa")]),
    ("KaHbHa", [(_q(2, 2), "HbUa"), (_q(3), "KaHb")]),
]

# The same four relations with the coefficients as usually printed.  They are
# inconsistent with the rest of the presentation: multiplying UaKbHa on the
# right by Ua gives 49 Ua at q = 1 from the left side but 42 Ua from this
# right side, and Ua * HaHbKa gives 56 versus 28.
_SQUARE_PRINTED = [
    ("UaKbHa", [(_q(3), "Ua"), (_q(4), "UaUb"), (_q(4, den=(2,)), "UaKb"), (_q(4), "UaHb")]),
    ("HaKbUa", [(_q(3), "Ua"), (_q(4), "UbUa"), (_q(4, den=(2,)), "KbUa"), (_q(4), "HbUa")]),
    ("HaHbKa", [(_q(2, 2), "UbKa"), (_q(3), "HbKa")]),
    ("KaHbHa", [(_q(2, 2), "KaUb"), (_q(3), "KaHb")]),
]

_PENTAGON = [
    ("KaKbHa", [(-1, "KaKb"), (-1, "KaUb"), (-1, "KaUbHa"),
                (-_q(2), "Ka"), (-_q(2), "KaHb"), (-_q(2), "KaUbKa"), (-_q(2), "KaUbUa")]),
    ("HaKbKa", [(-1, "KbKa"), (-1, "UbKa"), (-1, "HaUbKa"),
                (-_q(2), "Ka"), (-_q(2), "HbKa"), (-_q(2), "KaUbKa"), (-_q(2), "UaUbKa")]),
    ("HaHbHa", [(-1, "HaHb"), (-1, "Hb"), (-1, "HbHa"),
                (-_q(2), "UaHb"), (-_q(2), "HbUa"), (-_q(2), "KaHb"), (-_q(2), "HbKa")]),
]

# rewritten hexagon, read as  left(a, b) = left(b, a)  with b = a + 1
_HEXAGON_SIDE = [(1, "HbKaHb"), (1, "HbUaHb"), (-1, "UbHa"), (-1, "HaUb"),
                 (-1, "KbHa"), (-1, "HaKb"), (-1, "Ub"), (-1, "Kb")]


def _word(template: str, a: int, b: int) -> tuple:
    letters = []
    for j in range(0, len(template), 2):
        kind, slot = template[j], template[j + 1]
        letters.append(code(kind, a if slot == "a" else b))
    return canon(tuple(letters))


def _combo(terms, a, b, n) -> AlgElement:
    out = {}
    for c, t in terms:
        w = _word(t, a, b)
        c = as_ratfunc(c)
        out[w] = out[w] + c if w in out else c
    return AlgElement(n, out)


def _instantiate(table, family, a, b, n):
    return [Relation(TraceWord._raw(_word(lhs, a, b), n), _combo(rhs, a, b, n), family)
            for lhs, rhs in table]


def _orient(left: AlgElement, right: AlgElement, family, n) -> Relation:
    # turn an identity between combinations into lhs = rhs with lhs the
    # unique greatest support word
    diff = left - right
    words = list(diff.terms)
    top = [w for w in words
           if all(v == w or compare_codes(v, w) == Order.LESS for v in words)]
    if len(top) != 1:
        raise OrderViolation(f"no greatest word in {diff}")
    w = top[0]
    c = diff.terms[w]
    rest = AlgElement._raw(n, {v: x for v, x in diff.terms.items() if v != w})
    return Relation(TraceWord._raw(w, n), rest.scale(-c.inverse()), family)


def hexagon_raw(i: int, n: int):
    """The hexagon identity before simplification, as (left, right) elements.

    H_{i+1}(1 - [4]U_i - [4]/[2] H_i - [4]K_i)H_{i+1}
      = H_i(1 - [4]U_{i+1} - [4]/[2] H_{i+1} - [4]K_{i+1})H_i
    """
    _check_window(i, n)

    def side(a, b):
        mid = [(1, ""), (-_q(4), "Ua"), (-_q(4, den=(2,)), "Ha"), (-_q(4), "Ka")]
        return _combo([(c, "Hb" + t + "Hb") for c, t in mid], a, b, n)

    return side(i, i + 1), side(i + 1, i)


def _check_window(i, n):
    if not 1 <= i <= n - 2:
        raise IndexOutOfRange(f"three-string window {i} needs 1 <= i <= n-2 (n={n})")


def relations_at(i: int, n: int, printed: bool = False) -> list[Relation]:
    """All relations supported on subscripts i and i+1.

    The two-string relations at i are always included; the three-string
    families (both orders of the two subscripts) need i <= n-2.  With
    ``printed=True`` four square relations take their misprinted form.
    """
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"subscript {i} out of range for n={n}")
    rels = _instantiate(_TWO_STRING, Family.TWO_STRING, i, i, n)
    if i <= n - 2:
        for a, b in ((i, i + 1), (i + 1, i)):
            rels += _instantiate(_ISOTOPY, Family.THREE_ISOTOPY, a, b, n)
            rels += _instantiate(_BASIC, Family.THREE_BASIC, a, b, n)
            square = _SQUARE
            if printed:
                fixed = {t[0] for t in _SQUARE_PRINTED}
                square = _SQUARE_PRINTED + [t for t in _SQUARE if t[0] not in fixed]
            rels += _instantiate(square, Family.THREE_SQUARE, a, b, n)
            rels += _instantiate(_PENTAGON, Family.PENTAGON, a, b, n)
        left = _combo(_HEXAGON_SIDE, i, i + 1, n)
        right = _combo(_HEXAGON_SIDE, i + 1, i, n)
        rels.append(_orient(left, right, Family.HEXAGON, n))
    return rels


def all_relations(n: int, printed: bool = False) -> list[Relation]:
    rels = []
    for i in range(1, n):
        rels += relations_at(i, n, printed)
    return rels


def relation_residual(rel: Relation) -> AlgElement:
    """lhs - rhs, which must vanish in the algebra."""
    return AlgElement._raw(rel.rhs.n, {rel.lhs.letters: RatFunc(1)}) - rel.rhs


@lru_cache(maxsize=None)
def _basis30_codes() -> tuple:
    words = [()] + [(g,) for g in range(6)]
    words += sorted({canon((a, b)) for a in range(6) for b in range(6) if a // 3 != b // 3})
    words += [_word(t, 1, 2) for t in ("HaKbHa", "HaUbHa", "HaUbKa", "KaUbHa", "KaUbKa")]
    return tuple(words)


def basis30() -> list[TraceWord]:
    """The thirty words of A(3) that are linearly independent in the representation."""
    return [TraceWord._raw(w, 3) for w in _basis30_codes()]


def reducible_patterns() -> list[tuple]:
    """All words of type (1,1), (2,2), (1,2,1), (2,1,2) outside the basis."""
    basis = set(_basis30_codes())
    out = []
    for x, y in product(range(3), repeat=2):
        out += [(x, y), (3 + x, 3 + y)]
    for x, y, z in product(range(3), repeat=3):
        for w in ((x, 3 + y, z), (3 + x, y, 3 + z)):
            if w not in basis:
                out.append(w)
    return sorted(out, key=lambda w: (len(w), w))


class RuleSet:
    """Oriented rewrite rules, lhs word -> rhs combination of smaller words."""

    def __init__(self, n: int, rules: dict):
        self.n = n
        self.rules = dict(rules)  # canonical tuple -> AlgElement
        self._by_letter = None

    def __len__(self):
        return len(self.rules)

    def __contains__(self, w):
        if isinstance(w, TraceWord):
            w = w.letters
        return w in self.rules

    def __getitem__(self, w):
        if isinstance(w, TraceWord):
            w = w.letters
        return self.rules[canon(tuple(w))]

    def __eq__(self, other):
        return isinstance(other, RuleSet) and self.n == other.n and self.rules == other.rules

    __hash__ = None

    def lhs_words(self) -> list[TraceWord]:
        return [TraceWord._raw(w, self.n) for w in sorted(self.rules, key=_sort_key)]

    def items(self):
        for w in sorted(self.rules, key=_sort_key):
            yield w, self.rules[w]

    def by_first_letter(self) -> dict:
        """Rules grouped by the letters they start with, for redex search."""
        if self._by_letter is None:
            groups = {}
            for w in sorted(self.rules, key=_sort_key):
                for start in set(w):
                    groups.setdefault(start, []).append(w)
            self._by_letter = groups
        return self._by_letter

    def to_json(self):
        return {
            "n": self.n,
            "rules": [{"lhs": [letter_name(c) for c in w], "rhs": rhs.to_json()}
                      for w, rhs in self.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, obj):
        rules = {}
        for r in obj["rules"]:
            w = canon(tuple(parse_letter(x) for x in r["lhs"]))
            rules[w] = AlgElement.from_json(r["rhs"]).with_context(obj["n"])
        return cls(obj["n"], rules)

    def __repr__(self):
        return f"RuleSet(n={self.n}, {len(self.rules)} rules)"


def _sort_key(w):
    return (len(w), w)


@lru_cache(maxsize=None)
def _derive_rules3() -> RuleSet:
    from .reps import _pi_word, basis_matrix, solve

    basis = _basis30_codes()
    pats = reducible_patterns()
    A = basis_matrix(basis)
    cols = [_pi_word(p) for p in pats]
    B = [[as_ratfunc(col[r]) for col in cols] for r in range(30)]
    X = solve(A, B)
    rules = {}
    for j, p in enumerate(pats):
        terms = {basis[r]: X[r][j] for r in range(30) if X[r][j]}
        for w in terms:
            if compare_codes(w, p) != Order.LESS:
                raise OrderViolation(
                    f"{format_word(w)} is not below {format_word(p)} in the reduction order")
        rules[p] = AlgElement._raw(3, terms)
    rs = RuleSet(3, rules)
    _verify_against_relations(rs)
    return rs


def _verify_against_relations(rs: RuleSet):
    # every listed relation must hold modulo the solved rules
    from .rewrite import Rewriter

    rw = Rewriter(rs)
    for rel in all_relations(3):
        if rw.normal_form(relation_residual(rel)):
            raise Spin7Error(f"derived rules contradict the relation {rel}")


def derive_rules3() -> RuleSet:
    """Rewrite rules for A(3) obtained by exact linear solving (cached)."""
    return _derive_rules3()


@lru_cache(maxsize=None)
def rules_for(n: int) -> RuleSet:
    """R(n): the A(3) rules shifted to every window 1 <= i <= n-2."""
    if n < 2:
        raise IndexOutOfRange(f"rules need n >= 2 (got {n})")
    base = derive_rules3()
    if n == 2:
        return RuleSet(2, {w: AlgElement._raw(2, dict(r.terms))
                           for w, r in base.rules.items() if max(w) < 3})
    rules = {}
    for i in range(n - 2):
        for w, rhs in base.rules.items():
            w2 = shift_word(w, i)
            rules[w2] = AlgElement._raw(
                n, {shift_word(v, i): c for v, c in rhs.terms.items()})
    return RuleSet(n, rules)


def _shifted(rs: RuleSet, k: int, n: int) -> dict:
    return {shift_word(w, k): AlgElement._raw(n, {shift_word(v, k): c for v, c in r.terms.items()})
            for w, r in rs.rules.items()}


@lru_cache(maxsize=None)
def completed_rules(n: int) -> RuleSet:
    """R(n) together with the rules needed to resolve every overlap.

    Built upwards: the completed system of A(n-1) is placed in both windows
    of A(n) next to R(n), and whatever relations remain are added by
    ``rewrite.complete``.  A stored copy in ``spin7/data`` is used when
    present, since A(5) takes minutes; ``build_rules_cache`` regenerates it.
    """
    from .rewrite import complete

    if n <= 3:
        return rules_for(n)
    stored = _load_stored(n)
    if stored is not None:
        return stored
    seed = dict(rules_for(n).rules)
    below = completed_rules(n - 1)
    for k in (0, 1):
        seed.update(_shifted(below, k, n))
    rs, report = complete(RuleSet(n, seed), log=_log.info)
    _log.info("A(%d): %d words before completion, %d added rules, dimension %d",
              n, report.irreducible_before, report.new_rules, report.dimension)
    return rs


_DATA = Path(__file__).parent / "data"


def _stored_path(n):
    return _DATA / f"rules_{n}.json.gz"


def _load_stored(n):
    path = _stored_path(n)
    if not path.exists() or os.environ.get("SPIN7_NO_STORED_RULES"):
        return None
    with gzip.open(path, "rt") as fh:
        rs = RuleSet.from_json(json.load(fh))
    if rs.n != n:
        raise Spin7Error(f"{path.name} holds rules for n={rs.n}")
    return rs


def build_rules_cache(n: int, path=None) -> Path:
    """Compute completed_rules(n) from scratch and write it as gzipped JSON."""
    path = Path(path) if path else _stored_path(n)
    old = os.environ.get("SPIN7_NO_STORED_RULES")
    os.environ["SPIN7_NO_STORED_RULES"] = "1"
    try:
        completed_rules.cache_clear()
        rs = completed_rules(n)
    finally:
        if old is None:
            del os.environ["SPIN7_NO_STORED_RULES"]
        else:
            os.environ["SPIN7_NO_STORED_RULES"] = old
        completed_rules.cache_clear()
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(rs.to_json(), separators=(",", ":"), sort_keys=True)
    path.write_bytes(gzip.compress(text.encode(), mtime=0))
    return path


def algebra_rules(n: int) -> RuleSet:
    """A confluent rule set for A(n)."""
    if n <= 3:
        return rules_for(n)
    return completed_rules(n)
