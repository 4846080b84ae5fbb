"""Rewriting in the free algebra over C(n) and the confluence checks.

A redex is a convex set of positions of a canonical word whose letters form
a rule lhs.  The leftmost redex is the one whose position tuple is
lexicographically least; the rightmost has the greatest reversed tuple.
Word normal forms are memoised per rewriter, so normal forms of elements
cost one dictionary lookup per known support word.
"""
from __future__ import annotations

import os
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import product

from .coeffs import RAT_ONE
from .elements import AlgElement
from .errors import NonTermination, OracleMismatch
from .words import (
    Order, TraceWord, _reach, _split, canon, compare_codes, format_word, letter_name, order_key,
)

__all__ = [
    "Rewriter", "normal_form", "is_irreducible", "enumerate_irreducible",
    "count_irreducible", "check_termination", "check_local_confluence",
    "TerminationReport", "Overlap", "OverlapReport", "rewriter_for", "complete",
    "CompletionReport",
]

STEP_BUDGET = 10 ** 6


def _shapes(rules):
    # letter multisets of all lhs words and of their subwords, as integers
    full, part = set(), set()
    for w in rules:
        full.add(sum(8 ** c for c in w))
        for mask in range(1, 1 << len(w)):
            part.add(sum(8 ** c for i, c in enumerate(w) if (mask >> i) & 1))
    return part, full


def _redexes(w, rules, sizes, width=1, shapes=None):
    """All (positions, lhs, x, y) for convex rule occurrences in w.

    ``width`` is the largest subscript spread of any lhs; ``shapes`` is
    ``_shapes(rules)``, computed here if not given.
    """
    n = len(w)
    if not n or not sizes:
        return []
    part, full = _shapes(rules) if shapes is None else shapes
    weight = [8 ** c for c in w]
    reach = _reach(w)
    anc = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if (reach[i] >> j) & 1:
                anc[j] |= 1 << i
    level = [c // 3 for c in w]
    wanted = set(sizes)
    top = min(max(sizes), n)
    # grow convex position sets one letter at a time: dropping a maximal
    # letter of a convex set leaves it convex, so every one is reached
    layer = {1 << i: (reach[i], anc[i], level[i], level[i], weight[i])
             for i in range(n) if weight[i] in part}
    out = []
    for size in range(1, top + 1):
        if size in wanted:
            for mask, st in layer.items():
                if st[4] not in full:
                    continue
                pos = tuple(p for p in range(n) if (mask >> p) & 1)
                lhs = canon(tuple(w[p] for p in pos))
                if lhs in rules:
                    split = _split(w, reach, pos)
                    out.append((pos, lhs, split[0], split[1]))
        if size == top:
            break
        nxt = {}
        for mask, (down, up, lo, hi, key) in layer.items():
            for i in range(n):
                bit = 1 << i
                if mask & bit:
                    continue
                m = mask | bit
                if m in nxt or key + weight[i] not in part:
                    continue
                li = level[i]
                a = li if li < lo else lo
                b = li if li > hi else hi
                if b - a > width:
                    continue
                d, u = down | reach[i], up | anc[i]
                if d & u & ~m:
                    continue
                nxt[m] = (d, u, a, b, key + weight[i])
        layer = nxt
    out.sort(key=lambda r: (len(r[0]), r[0]))
    return out


class Rewriter:
    """Normal forms modulo a rule set, with a per-word cache."""

    def __init__(self, rules, strategy: str = "leftmost", budget: int = STEP_BUDGET):
        if strategy not in ("leftmost", "rightmost"):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.rules = rules
        self.n = rules.n
        self.strategy = strategy
        self.budget = budget
        self._rules = rules.rules
        self._sizes = sorted({len(w) for w in self._rules})
        self._width = max((max(c // 3 for c in w) - min(c // 3 for c in w)
                           for w in self._rules), default=0)
        self._shapes = _shapes(self._rules)
        self._nf = {}
        self._redex = {}

    def redexes(self, w):
        return _redexes(w, self._rules, self._sizes, self._width, self._shapes)

    def find_redex(self, w):
        """The redex chosen by the strategy, or None if w is irreducible."""
        if w in self._redex:
            return self._redex[w]
        found = self.redexes(w)
        if not found:
            best = None
        elif self.strategy == "leftmost":
            best = min(found, key=lambda r: r[0])
        else:
            best = max(found, key=lambda r: tuple(reversed(r[0])))
        self._redex[w] = best
        return best

    def is_irreducible(self, w):
        if isinstance(w, TraceWord):
            w = w.letters
        return self.find_redex(w) is None

    def step(self, w):
        """One rewrite of the word w: a dict word -> coefficient, or None."""
        r = self.find_redex(w)
        if r is None:
            return None
        _, lhs, x, y = r
        out = {}
        for v, c in self._rules[lhs].terms.items():
            u = canon(x + v + y)
            s = out[u] + c if u in out else c
            if s:
                out[u] = s
            else:
                out.pop(u, None)
        return out

    def word_nf(self, w) -> dict:
        """Normal form of a canonical word as a dict word -> RatFunc."""
        cache = self._nf
        if w in cache:
            return cache[w]
        steps = 0
        # iterative depth-first post-order; a word in ``pending`` is an
        # unfinished ancestor of the stack top, so meeting it again is a cycle
        stack = [w]
        pending = {}
        while stack:
            u = stack[-1]
            if u in cache:
                stack.pop()
                continue
            succ = pending.get(u)
            if succ is None:
                succ = self.step(u)
                if succ is None:
                    cache[u] = {u: RAT_ONE}
                    stack.pop()
                    continue
                steps += 1
                if steps > self.budget:
                    raise NonTermination(
                        f"more than {self.budget} rewrites starting from {format_word(w)}")
                pending[u] = succ
            todo = [v for v in succ if v not in cache]
            if todo:
                if any(v in pending for v in todo):
                    raise NonTermination(f"rewrite cycle through {format_word(u)}")
                stack.extend(todo)
                continue
            acc = {}
            for v, c in succ.items():
                for t, d in cache[v].items():
                    e = c * d
                    s = acc[t] + e if t in acc else e
                    if s:
                        acc[t] = s
                    else:
                        acc.pop(t, None)
            cache[u] = acc
            del pending[u]
            stack.pop()
        return cache[w]

    def normal_form(self, a):
        """Normal form of an element (coefficients may be any ring over Q(q))."""
        acc = {}
        for w, c in a.terms.items():
            for t, d in self.word_nf(w).items():
                e = c * d
                s = acc[t] + e if t in acc else e
                if s:
                    acc[t] = s
                else:
                    acc.pop(t, None)
        return type(a)._raw(a.n if a.n is not None else self.n, acc)

    def nf_word(self, w):
        if isinstance(w, TraceWord):
            w = w.letters
        return AlgElement._raw(self.n, dict(self.word_nf(canon(tuple(w)))))


_SHARED = {}


def rewriter_for(rules, strategy="leftmost") -> Rewriter:
    """A cached rewriter per (rule set, strategy)."""
    key = (id(rules), strategy)
    rw = _SHARED.get(key)
    if rw is None or rw.rules is not rules:
        rw = Rewriter(rules, strategy)
        _SHARED[key] = rw
    return rw


def normal_form(a, rules, strategy="leftmost"):
    return rewriter_for(rules, strategy).normal_form(a)


def is_irreducible(w, rules) -> bool:
    return rewriter_for(rules).is_irreducible(w)


def _oracle_dimension(n):
    from .crystal import count_dominant_walks

    return count_dominant_walks(2 * n)


def enumerate_irreducible(n, rules=None, oracle=None) -> list[TraceWord]:
    """Irreducible words of C(n), breadth first by length.

    Every irreducible word drops to an irreducible word when its last letter
    is removed, so extending level by level finds them all.  The result is
    checked against the dimension oracle and for closure under right
    multiplication by generators.
    """
    from .presentation import rules_for

    if rules is None:
        rules = rules_for(n)
    rw = rewriter_for(rules)
    target = _oracle_dimension(n) if oracle is None else oracle
    gens = range(3 * (n - 1))
    bound = n * (n - 1) // 2 + 2
    found = _irreducible_codes(rw, n, bound)
    if len(found) != target:
        raise OracleMismatch(f"{len(found)} irreducible words in C({n}), oracle says {target}")
    known = set(found)
    for w in found:
        for g in gens:
            for t in rw.word_nf(canon(w + (g,))):
                if t not in known:
                    raise OracleMismatch(f"normal form of {format_word(w + (g,))} leaves the span")
    return [TraceWord._raw(w, n) for w in found]


def _irreducible_codes(rw, n, bound=None):
    gens = range(3 * (n - 1))
    found = [()]
    level = [()]
    length = 0
    while level:
        if bound is not None and length >= bound:
            raise OracleMismatch(f"irreducible words longer than {bound} in C({n})")
        length += 1
        nxt = set()
        for w in level:
            for g in gens:
                v = canon(w + (g,))
                if v not in nxt and rw.is_irreducible(v):
                    nxt.add(v)
        level = sorted(nxt)
        found.extend(level)
    return found


def count_irreducible(n, rules=None) -> int:
    return len(enumerate_irreducible(n, rules))


@dataclass
class TerminationReport:
    ok: bool
    checked: int
    violations: list = field(default_factory=list)  # (lhs, rhs word, relation)

    def to_json(self):
        return {"ok": self.ok, "rules": self.checked,
                "violations": [{"lhs": format_word(a), "word": format_word(b), "order": o}
                               for a, b, o in self.violations]}


def check_termination(rules) -> TerminationReport:
    """Every rhs support word must be strictly below its lhs."""
    bad = []
    for lhs, rhs in rules.items():
        for w in rhs.terms:
            o = compare_codes(w, lhs)
            if o != Order.LESS:
                bad.append((lhs, w, o.value))
    return TerminationReport(not bad, len(rules), bad)


@dataclass
class Overlap:
    u: tuple
    v: tuple
    w: tuple
    rule1: tuple
    rule2: tuple
    joinable: bool
    result: object  # joined normal form, or the pair of disagreeing forms

    def to_json(self):
        out = {"u": format_word(self.u), "v": format_word(self.v), "w": format_word(self.w),
               "rule1": format_word(self.rule1), "rule2": format_word(self.rule2),
               "joinable": self.joinable}
        if self.joinable:
            out["normal_form"] = self.result.to_json()
        else:
            out["left"], out["right"] = (x.to_json() for x in self.result)
        return out


@dataclass
class OverlapReport:
    n: int
    overlaps: list
    words: int
    searched: int = 0  # disagreements that needed the joinability search

    @property
    def all_joinable(self):
        return all(o.joinable for o in self.overlaps)

    def failures(self):
        return [o for o in self.overlaps if not o.joinable]

    def to_json(self, verbose=False):
        out = {"n": self.n, "overlap_words": self.words, "overlaps": len(self.overlaps),
               "joinable": sum(o.joinable for o in self.overlaps),
               "searched": self.searched, "all_joinable": self.all_joinable}
        if verbose:
            out["list"] = [o.to_json() for o in self.overlaps]
        else:
            out["failures"] = [o.to_json() for o in self.failures()]
        return out


def _apply_at(rules, w, redex):
    pos, lhs, x, y = redex
    out = {}
    for v, c in rules.rules[lhs].terms.items():
        u = canon(x + v + y)
        out[u] = out[u] + c if u in out else c
    return AlgElement(rules.n, out)


def _embeddings(part, p1):
    # injective maps of the letters of ``part`` onto equal letters of p1;
    # repeated letters are mapped in increasing order
    choices = [[i for i, c in enumerate(p1) if c == x] for x in part]
    for pick in product(*choices):
        if len(set(pick)) != len(pick):
            continue
        if all(pick[s] < pick[t] for s in range(len(part)) for t in range(s + 1, len(part))
               if part[s] == part[t]):
            yield pick


def _groupings(p):
    # splits of p into letters before, inside and after an overlapping
    # factor, monotone along the dependency order of p
    b = len(p)
    deps = [(i, j) for i in range(b) for j in range(i + 1, b) if abs(p[i] // 3 - p[j] // 3) <= 1]
    out = []
    for g in product(range(3), repeat=b):
        if 1 not in g or all(x == 1 for x in g):
            continue
        if any(g[i] > g[j] for i, j in deps):
            continue
        pick = [tuple(p[j] for j in range(b) if g[j] == k) for k in range(3)]
        out.append((pick[0], pick[1], pick[2], Counter(pick[1])))
    return out


def _overlap_words(rules, radius=1):
    """The overlap words of all rule pairs.

    An overlap of p1 and p2 is a word x*p1*y in which p2 also occurs as a
    factor, sharing at least one letter with p1 and covering x and y.  The
    letters of p2 are split into x, p1 and y compatibly with its dependency
    order; every candidate is then checked directly for an occurrence of p2
    at the intended positions.  Pairs are restricted to rules whose
    subscripts are within ``radius`` of each other.
    """
    lhs = sorted(rules.rules, key=lambda w: (len(w), w))
    span = {p: (min(c // 3 for c in p), max(c // 3 for c in p)) for p in lhs}
    letters = {p: Counter(p) for p in lhs}
    words = set()
    for p2 in lhs:
        splits = _groupings(p2)
        lo2, hi2 = span[p2]
        for p1 in lhs:
            lo1, hi1 = span[p1]
            if lo1 > hi2 + radius or lo2 > hi1 + radius:
                continue
            have = letters[p1]
            for xs, shared, ys, need in splits:
                if any(have[c] < m for c, m in need.items()):
                    continue
                raw = xs + p1 + ys
                off = len(xs)
                tail = tuple(range(off + len(p1), len(raw)))
                reach = None
                for emb in _embeddings(shared, p1):
                    pos = tuple(range(off)) + tuple(sorted(off + i for i in emb)) + tail
                    if canon(tuple(raw[i] for i in pos)) != p2:
                        continue
                    if reach is None:
                        reach = _reach(raw)
                    if _split(raw, reach, pos) is None:
                        continue
                    words.add(canon(raw))
    return sorted(words, key=lambda w: (len(w), w))


def _joinable_search(rules, left, right, limit=20000):
    # explore every one-step reduction from both sides; the normal form of
    # each reachable element is unique under the deterministic strategy, but
    # the search asks whether any common descendant exists
    def key(e):
        return tuple(sorted(e.terms.items(), key=lambda t: t[0]))

    seen_l = {key(left): left}
    seen_r = {key(right): right}
    queue = deque([(left, seen_l, seen_r), (right, seen_r, seen_l)])
    rw = Rewriter(rules)
    explored = 0
    while queue:
        e, mine, other = queue.popleft()
        if key(e) in other:
            return e
        explored += 1
        if explored > limit:
            raise NonTermination("joinability search exceeded its budget")
        for w in e.terms:
            for r in rw.redexes(w):
                c = e.terms[w]
                rest = AlgElement._raw(e.n, {v: x for v, x in e.terms.items() if v != w})
                nxt = rest + _apply_at(rules, w, r).scale(c)
                k = key(nxt)
                if k not in mine:
                    mine[k] = nxt
                    if k in other:
                        return nxt
                    queue.append((nxt, mine, other))
    return None


def _check_words(rules, words):
    rw = Rewriter(rules)
    found = []
    searched = 0
    for word in words:
        reds = rw.redexes(word)
        if len(reds) < 2:
            continue
        full = set(range(len(word)))
        for i, r1 in enumerate(reds):
            for r2 in reds[i + 1:]:
                s1, s2 = set(r1[0]), set(r2[0])
                if not (s1 & s2) or (s1 | s2) != full:
                    continue
                a = rw.normal_form(_apply_at(rules, word, r1))
                b = rw.normal_form(_apply_at(rules, word, r2))
                if a == b:
                    ok, res = True, a
                else:
                    searched += 1
                    joined = _joinable_search(rules, _apply_at(rules, word, r1),
                                              _apply_at(rules, word, r2))
                    ok = joined is not None
                    res = joined if ok else (a, b)
                u = tuple(word[p] for p in sorted(s1 - s2))
                v = tuple(word[p] for p in sorted(s1 & s2))
                w = tuple(word[p] for p in sorted(s2 - s1))
                found.append(Overlap(u, v, w, r1[1], r2[1], ok, res))
    return found, searched


def _threads():
    try:
        return max(1, int(os.environ.get("SPIN7_THREADS", "1")))
    except ValueError:
        return 1


def check_local_confluence(rules, n=None, radius: int = 1) -> OverlapReport:
    """Enumerate all overlaps of rule pairs and test each for joinability.

    An overlap word is the union of two intersecting redexes.  Only letters
    within ``radius`` of a rule's subscripts are used to build candidates;
    with radius 1 this covers every overlap because intersecting redexes
    share a subscript.
    """
    n = rules.n if n is None else n
    words = _overlap_words(rules, radius)
    threads = _threads()
    if threads == 1 or len(words) < 64:
        found, searched = _check_words(rules, words)
    else:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [words[k::threads] for k in range(threads)]
        with ProcessPoolExecutor(threads) as ex:
            parts = list(ex.map(_check_words, [rules] * threads, chunks))
        found = [o for part, _ in parts for o in part]
        searched = sum(s for _, s in parts)
        found.sort(key=lambda o: (len(o.u + o.v + o.w), o.rule1, o.rule2, o.u, o.w))
    return OverlapReport(n, found, len(words), searched)


def describe_word(w) -> list:
    return [letter_name(c) for c in w]


# completion

_PRIME = 2 ** 61 - 1
_Q0 = 1234567891


def _mod_value(c, p=_PRIME, q0=_Q0):
    def ev(poly):
        return sum(x * pow(q0, poly.lo + k, p) for k, x in enumerate(poly.c)) % p
    d = ev(c.den)
    if d == 0:
        raise ZeroDivisionError("denominator vanishes at the evaluation point")
    return ev(c.num) * pow(d, -1, p) % p


def _leading(v):
    return max(v, key=lambda w: (order_key(w), w))


def _eliminate(v, pivots, sub, is_zero):
    # clear leading words that are already pivots; returns (v, lead) or (None, None)
    while v:
        m = _leading(v)
        if m not in pivots:
            return v, m
        c = v[m]
        for w, x in pivots[m].items():
            y = sub(v[w], c * x) if w in v else sub(0, c * x)
            if is_zero(y):
                v.pop(w, None)
            else:
                v[w] = y
    return None, None


def _discrepancies(rules, rw):
    out = []
    for word in _overlap_words(rules):
        reds = rw.redexes(word)
        if len(reds) < 2:
            continue
        full = set(range(len(word)))
        for i, r1 in enumerate(reds):
            for r2 in reds[i + 1:]:
                s1, s2 = set(r1[0]), set(r2[0])
                if not (s1 & s2) or (s1 | s2) != full:
                    continue
                d = rw.normal_form(_apply_at(rules, word, r1) - _apply_at(rules, word, r2))
                if d:
                    out.append(d)
    return out


@dataclass
class CompletionReport:
    n: int
    irreducible_before: int
    discrepancies: int
    new_rules: int
    steps: list = field(default_factory=list, repr=False)

    @property
    def dimension(self):
        return self.irreducible_before - self.new_rules


def complete(rules, p: int = _PRIME, q0: int = _Q0, log=None):
    """Add rules until every overlap resolves.

    The words irreducible for ``rules`` span the algebra; the relations
    among them form the subspace generated by overlap discrepancies under
    multiplication by generators (followed by normal form).  That subspace
    is found modulo a prime first, which tells which discrepancies and
    products are needed; only those are then redone exactly.  Each
    independent relation becomes a rule whose lhs is its leading word.

    Returns (RuleSet, CompletionReport).  The result should still be
    certified with ``check_local_confluence``.
    """
    from .presentation import RuleSet
    from .errors import Spin7Error

    n = rules.n
    rw = Rewriter(rules)
    basis = _irreducible_codes(rw, n)
    diffs = _discrepancies(rules, rw)
    gens = range(3 * (n - 1))

    def mod_vec(terms):
        return {w: x for w, c in terms.items() if (x := _mod_value(c, p, q0))}

    def msub(a, b):
        return (a - b) % p

    mod_nf = {}

    def mod_word_nf(w):
        if w not in mod_nf:
            mod_nf[w] = mod_vec(rw.word_nf(w))
        return mod_nf[w]

    def mod_product(vec, g, side):
        acc = {}
        for w, c in vec.items():
            ww = canon((g,) + w) if side == 0 else canon(w + (g,))
            for t, x in mod_word_nf(ww).items():
                acc[t] = (acc.get(t, 0) + c * x) % p
        return {t: x for t, x in acc.items() if x}

    pivots = {}
    steps = []  # (source, lead); source is ("overlap", k) or ("product", lead, g, side)
    queue = deque()

    def add(v, source):
        v, m = _eliminate(v, pivots, msub, lambda y: y == 0)
        if v is None:
            return
        inv = pow(v[m], -1, p)
        pivots[m] = {w: x * inv % p for w, x in v.items()}
        steps.append((source, m))
        queue.append(m)

    for k, d in enumerate(diffs):
        add(mod_vec(d.terms), ("overlap", k))
    while queue:
        m = queue.popleft()
        for g in gens:
            for side in (0, 1):
                add(mod_product(pivots[m], g, side), ("product", m, g, side))
    if log:
        log(f"modular pass: {len(basis)} words, {len(diffs)} discrepancies, {len(pivots)} relations")

    # exact replay of the productive steps
    exact = {}
    sub = lambda a, b: a - b  # noqa: E731
    for count, (source, lead) in enumerate(steps):
        if source[0] == "overlap":
            v = dict(diffs[source[1]].terms)
        else:
            _, m, g, side = source
            base = AlgElement._raw(n, exact[m])
            gen_el = AlgElement._raw(n, {(g,): RAT_ONE})
            prod = gen_el * base if side == 0 else base * gen_el
            v = dict(rw.normal_form(prod).terms)
        v, m = _eliminate(v, exact, sub, lambda y: not y)
        if m != lead:
            raise Spin7Error(f"exact and modular elimination disagree at step {count}")
        inv = v[m].inverse()
        exact[m] = {w: x * inv for w, x in v.items()}
        if log and count % 20 == 19:
            log(f"exact step {count + 1}/{len(steps)}")

    new = dict(rules.rules)
    for m, vec in exact.items():
        rhs = {w: -x for w, x in vec.items() if w != m}
        for w in rhs:
            if compare_codes(w, m) != Order.LESS:
                from .errors import OrderViolation

                raise OrderViolation(f"{format_word(w)} is not below {format_word(m)}")
        new[m] = AlgElement._raw(n, rhs)
    # inter-reduce so that every rhs is irreducible for the final system
    draft = Rewriter(RuleSet(n, new))
    final = RuleSet(n, {w: draft.normal_form(r) for w, r in new.items()})
    report = CompletionReport(n, len(basis), len(diffs), len(exact), steps)
    return final, report
