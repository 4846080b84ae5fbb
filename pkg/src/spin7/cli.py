"""Command-line front end and the expression parser.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor | '/' coeff)*
    factor := '-' factor | atom ('^' exponent)?
    atom   := integer | 'q' | '[' integer ']' | 'd' | generator | '(' expr ')'

Generators are U<i>, K<i>, H<i>; '1' alone is the identity.  Division is
allowed only by coefficient-valued factors.  Printed elements reparse to
themselves.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field

from .coeffs import RAT_ONE, RatFunc, as_ratfunc, q, qint
from .elements import AlgElement
from .errors import IndexOutOfRange, ParseError, Spin7Error
from .words import code, format_word

__all__ = ["parse", "format_element", "Report", "main", "SUITES"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([UKH])(\d+)|(\[)\s*(-?\d+)\s*(\])|([qd])|(\^)|([-+*/()]))")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("gen", (m.group(2), int(m.group(3))), start))
        elif m.group(4):
            out.append(("qint", int(m.group(5)), start))
        elif m.group(7):
            out.append((m.group(7), None, start))
        elif m.group(8):
            out.append(("^", None, start))
        else:
            out.append((m.group(9), None, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, n):
        self.toks = _tokens(text)
        self.i = 0
        self.n = n

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    # values are RatFunc (coefficients) or AlgElement
    def expr(self):
        acc = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            acc = _add(acc, rhs, op == "-", self.n)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.factor()
            if op == "*":
                acc = _mul(acc, rhs)
            else:
                if not isinstance(rhs, RatFunc):
                    raise ParseError("only coefficients may appear after '/'", pos)
                if not rhs:
                    raise ParseError("division by zero", pos)
                acc = acc * rhs.inverse() if isinstance(acc, RatFunc) else acc.scale(rhs.inverse())
        return acc

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek()[0] == "^":
            pos = self.take()[2]
            e = self.exponent()
            if isinstance(base, RatFunc):
                base = base ** e
            elif e >= 0:
                out = AlgElement.one(self.n)
                for _ in range(e):
                    out = out * base
                base = out
            else:
                raise ParseError("negative powers of algebra elements", pos)
        return base

    def exponent(self):
        tok = self.peek()
        if tok[0] == "(":
            self.take()
            sign = -1 if self.peek()[0] == "-" else 1
            if sign < 0:
                self.take()
            e = self.take("int")[1] * sign
            self.take(")")
            return e
        sign = 1
        if tok[0] == "-":
            self.take()
            sign = -1
        return self.take("int")[1] * sign

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return as_ratfunc(val)
        if kind == "qint":
            return as_ratfunc(qint(val))
        if kind == "q":
            return as_ratfunc(q)
        if kind == "d":
            return as_ratfunc(q + q.bar())
        if kind == "gen":
            letter, i = val
            if i < 1 or (self.n is not None and i > self.n - 1):
                raise IndexOutOfRange(f"{letter}{i} is out of range for n={self.n}")
            return AlgElement._raw(self.n, {(code(letter, i),): RAT_ONE})
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {kind!r}", pos)


def _lift(x, n):
    return x if isinstance(x, AlgElement) else AlgElement._raw(n, {(): x} if x else {})


def _add(a, b, sub, n):
    if isinstance(a, RatFunc) and isinstance(b, RatFunc):
        return a - b if sub else a + b
    a, b = _lift(a, n), _lift(b, n)
    return a - b if sub else a + b


def _mul(a, b):
    if isinstance(a, RatFunc):
        return a * b if isinstance(b, RatFunc) else b.scale(a)
    return a.scale(b) if isinstance(b, RatFunc) else a * b


def parse(text: str, n: int | None = None) -> AlgElement:
    """Parse an expression into an element of A(n) (no relations applied)."""
    p = _Parser(text, n)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0)
    val = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[0]!r}", tok[2])
    return _lift(val, n)


def format_element(a: AlgElement) -> str:
    return str(a)


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)  # (name, ok, witness)
    seconds: float = 0.0
    info: dict = field(default_factory=dict)

    def add(self, name, ok, witness=""):
        self.checks.append((name, bool(ok), str(witness) if witness else ""))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def to_json(self):
        return {
            "suite": self.suite,
            "ok": self.ok,
            "seconds": round(self.seconds, 3),
            "checks": [{"name": n, "ok": ok, "witness": w} for n, ok, w in self.checks],
            **({"info": self.info} if self.info else {}),
        }

    def pretty(self):
        lines = [f"{self.suite}: {'PASS' if self.ok else 'FAIL'} ({self.seconds:.1f}s)"]
        for name, ok, w in self.checks:
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}" + (f"  {w}" if w else ""))
        return "\n".join(lines)


def _timed(suite, fn):
    rep = Report(suite)
    t = time.time()
    fn(rep)
    rep.seconds = time.time() - t
    return rep


# suites

def suite_dim(n, method="all"):
    from .crystal import count_dominant_walks, dyck_formula
    from .rewrite import count_irreducible

    def body(r):
        got = {}
        if method in ("rewrite", "all"):
            from .presentation import algebra_rules

            got["rewrite"] = count_irreducible(n, algebra_rules(n))
        if method in ("walks", "all"):
            got["walks"] = count_dominant_walks(2 * n)
        if method in ("formula", "all"):
            got["formula"] = dyck_formula(n - 1) if n >= 2 else 1
        r.info.update(got)
        r.add(f"counts at n={n}", len(set(got.values())) == 1, "" if len(set(got.values())) == 1 else got)

    return _timed("dim", body)


def suite_confluence(n, literal=False):
    from .presentation import algebra_rules, rules_for
    from .rewrite import check_local_confluence, check_termination

    rules = rules_for(n) if literal else algebra_rules(n)

    def body(r):
        term = check_termination(rules)
        r.add("termination", term.ok,
              f"{len(term.violations)} rules not decreasing" if term.violations else "")
        rep = check_local_confluence(rules, n)
        fails = rep.failures()
        r.add(f"{len(rep.overlaps)} overlaps joinable", not fails,
              f"{len(fails)} not joinable, first {format_word(fails[0].u + fails[0].v + fails[0].w)}"
              if fails else "")
        r.info.update({"rules": len(rules), "overlaps": len(rep.overlaps),
                       "literal": literal})

    return _timed("confluence", body)


def suite_reps():
    from .presentation import all_relations, relation_residual
    from .reps import braid_from_generators, char_poly, evaluate, rep
    from .coeffs import RAT_ZERO

    def body(r):
        rels = all_relations(3)
        bad = []
        for rel in rels:
            res = relation_residual(rel)
            for k in (1, 2, 3, 4):
                if not evaluate(res, rep(k)).is_zero():
                    bad.append(f"{rel} in rep({k})")
        r.add(f"{len(rels)} relations in all four representations", not bad, bad[0] if bad else "")
        spec = rep(4)
        cp = char_poly(spec["H1"])
        roots = [as_ratfunc(-1), as_ratfunc(qint(3)), -as_ratfunc(qint(5)), as_ratfunc(qint(7))]
        want = [RAT_ONE]
        for x in roots:  # multiply by (t - x), ascending coefficients
            nxt = [RAT_ZERO] * (len(want) + 1)
            for i, c in enumerate(want):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * x
            want = nxt
        r.add("char_poly(H1) roots -1, [3], -[5], [7]", cp == want)
        r.add("sigma1 from U1, K1, H1 matches", braid_from_generators(1, spec) == spec.sigma[1])
        s1, s2 = spec.sigma[1], spec.sigma[2]
        r.add("braid relation", s1 * s2 * s1 == s2 * s1 * s2)
        r.add("sigma sigma^-1 = 1", s1 * spec.sigma_inv[1] == spec.identity)
        anti = rep(4, "anti_transpose")
        t1, t2 = anti.sigma[1], anti.sigma[2]
        r.info["anti_transpose_braid"] = t1 * t2 * t1 == t2 * t1 * t2

    return _timed("rep-check", body)


def suite_ybe(which="R", mode="symbolic", seed=0):
    from . import ybe

    builder = {"R": ybe.build_R, "S": ybe.build_S}[which]

    def body(r):
        res = ybe.check_ybe(builder, mode=mode, seed=seed)
        r.add(f"YBE for {which} ({mode})", res.ok, res.witness)
        if mode == "sampled":
            r.info["seed"] = seed
            r.info["points"] = [[str(x) for x in p] for p in res.points]
        if which == "R":
            for k, ok in ybe.check_specializations().items():
                r.add(f"R(u) at u={k}", ok)
            for k, res2 in ybe.check_sandwich().items():
                r.add(k, res2.ok, res2.witness)
            eig = ybe.check_eigenvalues()
            r.add("eigenvalues of -(q-1/q)^3 R(u)", all(eig.values()))
        u = ybe.check_unitarity(builder)
        r.add(f"{which}(u){which}(1/u) is scalar", u.ok, u.witness)

    return _timed("ybe-check", body)


def suite_idempotents():
    from .presentation import algebra_rules
    from .rewrite import normal_form
    from .tower import printed_u_idempotent, spectral_idempotents

    def body(r):
        rules = algebra_rules(2)
        ids = spectral_idempotents()
        one = AlgElement.one(2)
        total = AlgElement.zero(2)
        for a, p in ids.items():
            r.add(f"pi[{a}]^2 = pi[{a}]", normal_form(p * p, rules) == p)
            total = total + p
            for b, p2 in ids.items():
                if a < b:
                    r.add(f"pi[{a}] pi[{b}] = 0", normal_form(p * p2, rules).is_zero())
        r.add("sum = 1", total == one)
        pu = printed_u_idempotent()
        r.info["U1/[2]^2 idempotent"] = normal_form(pu * pu, rules) == pu

    return _timed("idempotents", body)


def suite_crystal():
    from .crystal import count_dominant_walks, crystal_graph, dyck_formula, validate_crystal

    def body(r):
        for name in ("spin", "vector"):
            v = validate_crystal(crystal_graph(name))
            r.add(f"{name} crystal", v["ok"], "; ".join(v["problems"]))
        r.add("odd walks vanish", all(count_dominant_walks(k) == 0 for k in range(1, 13, 2)))
        for m in range(1, 13):
            try:
                dyck_formula(m)
                r.add(f"product formula integral at {m}", True)
            except Spin7Error as exc:
                r.add(f"product formula integral at {m}", False, exc)

    return _timed("crystal", body)


SUITES = {
    "dim": suite_dim, "confluence": suite_confluence, "rep-check": suite_reps,
    "ybe-check": suite_ybe, "idempotents": suite_idempotents, "crystal": suite_crystal,
}


def _rat_json(c, at_one):
    out = c.to_json()
    if at_one:
        try:
            out["at_q=1"] = str(c(1))
        except Spin7Error:
            out["at_q=1"] = None
    return out


def _emit(obj, as_json):
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=False, default=str))
    else:
        print(obj)


def _build_parser():
    p = argparse.ArgumentParser(prog="spin7", description="Exact computations in the spin-7 centraliser algebras.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("nf", help="normal form of an expression")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("expr")

    s = sub.add_parser("rules", help="serialize the rule set")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--emit", metavar="FILE")
    s.add_argument("--literal", action="store_true", help="shifted copies of R(3) only")

    s = sub.add_parser("dim", help="dimension of A(n) three ways")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=["rewrite", "walks", "formula", "all"], default="all")

    s = sub.add_parser("confluence", help="termination and overlap suite")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--literal", action="store_true", help="check the shifted R(3) rules")

    sub.add_parser("rep-check", help="relations in the four representations")

    s = sub.add_parser("ybe-check", help="Yang-Baxter checks")
    s.add_argument("--which", choices=["R", "S"], default="R")
    s.add_argument("--mode", choices=["symbolic", "sampled"], default="symbolic")
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("trace", help="Markov trace of an element")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("expr")

    s = sub.add_parser("idempotents", help="spectral idempotents of A(2)")
    s.add_argument("--check", action="store_true")

    s = sub.add_parser("crystal", help="crystal graphs and walk counts")
    s.add_argument("--validate", action="store_true")
    return p


def _run(args):
    from .presentation import algebra_rules, rules_for
    from .rewrite import normal_form

    if args.cmd == "nf":
        rules = algebra_rules(max(args.n, 2))
        out = normal_form(parse(args.expr, args.n), rules)
        _emit(out.to_json() if args.json else str(out), args.json)
        return 0
    if args.cmd == "rules":
        rs = rules_for(args.n) if args.literal else algebra_rules(args.n)
        text = rs.dumps()
        if args.emit:
            with open(args.emit, "w") as fh:
                fh.write(text)
            print(f"{len(rs)} rules written to {args.emit}")
        else:
            print(text)
        return 0
    if args.cmd == "trace":
        from .tower import trace

        t = trace(args.n, parse(args.expr, args.n))
        _emit(_rat_json(t, True) if args.json else f"{t}   (q=1: {t(1)})", args.json)
        return 0
    if args.cmd == "idempotents" and not args.check:
        from .tower import spectral_idempotents

        ids = spectral_idempotents()
        _emit({k: v.to_json() for k, v in ids.items()} if args.json
              else "\n".join(f"pi[{k}] = {v}" for k, v in ids.items()), args.json)
        return 0
    if args.cmd == "crystal" and not args.validate:
        from .crystal import count_dominant_walks

        _emit({2 * k: count_dominant_walks(2 * k) for k in range(1, 7)}, args.json)
        return 0

    if args.cmd == "dim":
        report = suite_dim(args.n, args.method)
    elif args.cmd == "confluence":
        report = suite_confluence(args.n, args.literal)
    elif args.cmd == "ybe-check":
        report = suite_ybe(args.which, args.mode, args.seed)
    else:
        report = SUITES[args.cmd]()
    if args.json:
        _emit(report.to_json(), True)
    else:
        print(report.pretty())
        if args.cmd == "dim":
            print(" / ".join(str(v) for v in report.info.values()))
        if args.cmd == "confluence" and report.ok:
            print("all overlaps joinable")
    return 0 if report.ok else 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return _run(args)
    except (ParseError, IndexOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Spin7Error as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
