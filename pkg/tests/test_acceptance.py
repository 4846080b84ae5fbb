"""The ten acceptance criteria, one test each, exact with zero tolerance.

Each test collects named checks, including its runtime budget, and fails
with the list of checks that did not hold.
"""
from __future__ import annotations

import random
import subprocess
import sys
import time
from fractions import Fraction

from spin7 import ybe
from spin7.cli import format_element, parse
from spin7.coeffs import RAT_ONE, RAT_ZERO, LaurentPoly, RatFunc, as_ratfunc, qint, quantum_dim
from spin7.crystal import count_dominant_walks, crystal_graph, dyck_formula, validate_crystal
from spin7.elements import AlgElement, gen
from spin7.presentation import (
    Family, algebra_rules, all_relations, basis30, relation_residual, rules_for,
)
from spin7.reps import basis_matrix, braid_from_generators, char_poly, evaluate, rank, rep
from spin7.rewrite import (
    check_local_confluence, check_termination, count_irreducible, enumerate_irreducible,
    normal_form,
)
from spin7.tower import (
    EIGENVALUES, TowerContext, epsilon, identify_weights, printed_u_idempotent,
    spectral_idempotents, trace,
)
from spin7.words import code, format_word


def Q(n):
    return as_ratfunc(qint(n))


class Checks:
    def __init__(self, budget):
        self.budget = budget
        self.start = time.time()
        self.results = {}

    def __setitem__(self, name, ok):
        self.results[name] = bool(ok)

    def verdict(self):
        elapsed = time.time() - self.start
        self.results[f"within {self.budget}s (took {elapsed:.1f}s)"] = elapsed < self.budget
        failed = [k for k, ok in self.results.items() if not ok]
        assert not failed, "failed: " + "; ".join(failed)


def test_criterion_01_dimension_triple():
    c = Checks(60)
    for n, want in ((2, 4), (3, 30), (4, 330)):
        got = (count_irreducible(n, algebra_rules(n)), count_dominant_walks(2 * n), dyck_formula(n - 1))
        c[f"n={n}: {got} == {want} three ways"] = got == (want,) * 3
    small = {format_word(w.letters) for w in enumerate_irreducible(2, algebra_rules(2))}
    c["A(2) basis is 1, U1, K1, H1"] = small == {"1", "U1", "K1", "H1"}
    c.verdict()


def test_criterion_02_basis_faithfulness():
    c = Checks(60)
    words = [w.letters for w in basis30()]
    c["thirty distinct words"] = len(set(words)) == 30
    c["rank under the faithful representation is 30"] = rank(basis_matrix(words)) == 30
    c.verdict()


def test_criterion_03_relation_suite():
    c = Checks(60)
    rels = all_relations(3)
    c["all six relation families instantiated"] = {r.family for r in rels} == set(Family)
    for k in (1, 2, 3, 4):
        bad = [str(r) for r in rels if not evaluate(relation_residual(r), rep(k)).is_zero()]
        c[f"{len(rels)} relations exact in rep({k})" + (f", first failure {bad[0]}" if bad else "")] = not bad
    c.verdict()


def test_criterion_04_representation_facts():
    c = Checks(10)
    s = rep(4)
    want = [RAT_ONE]
    for x in (-RAT_ONE, Q(3), -Q(5), Q(7)):
        nxt = [RAT_ZERO] * (len(want) + 1)
        for i, a in enumerate(want):
            nxt[i + 1] = nxt[i + 1] + a
            nxt[i] = nxt[i] - a * x
        want = nxt
    c["char_poly(H1) has roots -1, [3], -[5], [7]"] = char_poly(s["H1"]) == want
    c["sigma1 from U1, K1, H1 is the printed matrix"] = braid_from_generators(1, s) == s.sigma[1]
    s1, s2 = s.sigma[1], s.sigma[2]
    c["braid relation in rep(4)"] = s1 * s2 * s1 == s2 * s1 * s2
    c["sigma sigma^-1 = 1 in rep(4)"] = s1 * s.sigma_inv[1] == s.identity
    c.verdict()


def test_criterion_05_confluence_certificate():
    c = Checks(600)
    for n in (2, 3, 4, 5):
        c[f"termination of rules_for({n})"] = check_termination(rules_for(n)).ok
    report = check_local_confluence(rules_for(4))
    bad = report.failures()
    c[f"{len(report.overlaps)} overlaps of rules_for(4) joinable ({len(bad)} not)"] = not bad
    c.verdict()


def test_criterion_06_tower():
    c = Checks(300)
    for n in (1, 2, 3, 4):
        ctx = TowerContext(n)
        un = AlgElement._raw(n + 1, {(code("U", n),): RatFunc(1)})
        basis = [()] if n == 1 else [w.letters for w in enumerate_irreducible(n, algebra_rules(n))]
        bad = 0
        for w in basis:
            a = AlgElement._raw(n, {w: RatFunc(1)})
            lhs = ctx.nf(un * a.with_context(n + 1) * un, n + 1)
            rhs = ctx.nf(epsilon(n, a, ctx).with_context(n + 1) * un, n + 1)
            bad += lhs != rhs
        c[f"U{n} a U{n} = eps(a) U{n} on {len(basis)} basis words"] = bad == 0
    rng = random.Random(7)

    def element():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            w = tuple(rng.randrange(6) for _ in range(rng.randint(0, 4)))
            terms[w] = RatFunc(LaurentPoly(rng.randint(-2, 2), (rng.randint(1, 4),)))
        return AlgElement(3, terms)

    pairs = [(element(), element()) for _ in range(200)]
    c["tau(ab) = tau(ba) on 200 pairs in A(3)"] = all(
        trace(3, a * b) == trace(3, b * a) for a, b in pairs)
    weights = identify_weights()
    spin2 = as_ratfunc(quantum_dim("spin")) ** 2
    ids = spectral_idempotents()
    want = {"[7]": Fraction(1, 64), "-[5]": Fraction(7, 64),
            "[3]": Fraction(21, 64), "-1": Fraction(35, 64)}
    for label, p in ids.items():
        t = trace(2, p)
        c[f"tau(pi[{label}]) qdim(spin)^2 = qdim{weights[label]}"] = (
            t * spin2 == as_ratfunc(quantum_dim(weights[label])))
        c[f"tau(pi[{label}]) at q=1 is {want[label]}"] = t(1) == want[label]
    c.verdict()


def test_criterion_07_idempotents():
    c = Checks(60)
    rules = algebra_rules(2)
    ids = spectral_idempotents()
    total = AlgElement.zero(2)
    H = gen("H", 1, 2)
    for a, p in ids.items():
        c[f"pi[{a}]^2 = pi[{a}]"] = normal_form(p * p, rules) == p
        c[f"H1 pi[{a}] = {a} pi[{a}]"] = normal_form(H * p, rules) == p.scale(EIGENVALUES[a])
        for b, p2 in ids.items():
            if a != b:
                c[f"pi[{a}] pi[{b}] = 0"] = normal_form(p * p2, rules).is_zero()
        total = total + p
    c["sum of the four is 1"] = total == AlgElement.one(2)
    k_printed = gen("K", 1, 2).scale(Q(3) / (Q(2) ** 2 * Q(6)))
    e_printed = (AlgElement.one(2).scale(1 / Q(2) ** 2) + H.scale(1 / Q(2) ** 2)
                 + gen("K", 1, 2).scale(1 / Q(2) ** 3)
                 - gen("U", 1, 2).scale(Q(4) * Q(5) / (Q(2) ** 3 * Q(10))))
    c["printed K-idempotent is idempotent"] = normal_form(k_printed * k_printed, rules) == k_printed
    c["printed e-idempotent is idempotent"] = normal_form(e_printed * e_printed, rules) == e_printed
    c["K- and e-idempotents are the spectral ones"] = ids["-[5]"] == k_printed and ids["[3]"] == e_printed
    pu = printed_u_idempotent()
    c["U1/[2]^2 is not idempotent"] = normal_form(pu * pu, rules) != pu
    c["U1/loop is the corrected idempotent"] = ids["[7]"] == gen("U", 1, 2).scale(
        Q(5) * Q(3) / (Q(10) * Q(6) * Q(2)))
    c.verdict()


def test_criterion_08_yang_baxter():
    c = Checks(600)
    for k, ok in ybe.check_specializations().items():
        c[f"R(u) at u={k}"] = ok
    for k, res in ybe.check_sandwich().items():
        c[k] = res.ok
    for name, builder in (("R", ybe.build_R), ("S", ybe.build_S)):
        res = ybe.check_ybe(builder)
        c[f"YBE for {name}" + ("" if res.ok else f" (residual on {res.witness.split(':')[0]})")] = res.ok
        c[f"{name}(u){name}(1/u) is scalar"] = ybe.check_unitarity(builder).ok
    c.verdict()


def test_criterion_09_crystal():
    c = Checks(10)
    for name in ("spin", "vector"):
        report = validate_crystal(crystal_graph(name))
        c[f"{name} graph edges are simple roots"] = report["ok"]
    c["odd walk counts vanish up to 25"] = all(count_dominant_walks(k) == 0 for k in range(1, 26, 2))
    values = [dyck_formula(m) for m in range(1, 13)]
    c["product formula integral through m=12"] = all(
        isinstance(v, int) and v > 0 for v in values)
    c.verdict()


def _cli(*args):
    t = time.time()
    r = subprocess.run([sys.executable, "-m", "spin7", *args], capture_output=True, text=True)
    return r, time.time() - t


def test_criterion_10_parser_and_cli():
    c = Checks(600)
    rng = random.Random(11)
    bad = 0
    for _ in range(500):
        terms = {}
        for _ in range(rng.randint(0, 4)):
            w = tuple(rng.randrange(9) for _ in range(rng.randint(0, 4)))
            num = LaurentPoly(rng.randint(-4, 4), tuple(rng.randint(-5, 5) for _ in range(3)))
            terms[w] = RatFunc(num, qint(rng.randint(1, 4))) if num else RatFunc(1)
        a = AlgElement(4, terms)
        bad += parse(format_element(a), 4) != a
    c["500 printed elements parse back"] = bad == 0
    golden = 0.0
    r, t = _cli("nf", "--n", "3", "H1*H1")
    golden += t
    c["nf H1*H1 exit 0"] = r.returncode == 0
    c["nf H1*H1 value"] = r.returncode == 0 and parse(r.stdout.strip(), 3) == parse(
        "[3] + ([4]/[2])*H1 + [4]*U1 + [4]*K1", 3)
    r, t = _cli("dim", "--n", "4", "--method", "all")
    golden += t
    c["dim --n 4 prints 330 / 330 / 330, exit 0"] = (
        r.returncode == 0 and r.stdout.strip().splitlines()[-1] == "330 / 330 / 330")
    for args, want in ((("nf", "--n", "3", "U1*K9"), 2), (("nf", "--n", "3", "U1 +"), 2),
                       (("frobnicate",), 2), (("ybe-check", "--which", "S", "--mode", "sampled",
                                               "--seed", "0"), 1)):
        r, t = _cli(*args)
        golden += t
        c[f"{' '.join(args)} exits {want} (got {r.returncode})"] = r.returncode == want
    c[f"golden commands within 10s (took {golden:.1f}s)"] = golden < 10
    # the n=4 overlap suite runs under the confluence budget, not the 10s one
    r, t = _cli("confluence", "--n", "4")
    c[f"confluence --n 4 all joinable, exit 0 ({t:.0f}s)"] = (
        r.returncode == 0 and "all overlaps joinable" in r.stdout)
    c.verdict()
