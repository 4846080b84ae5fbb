from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from spin7.cli import ParseError, format_element, main, parse
from spin7.coeffs import LaurentPoly, RatFunc, q, qint
from spin7.elements import AlgElement, gen, word_element
from spin7.errors import IndexOutOfRange

coeff = st.builds(
    lambda lo, cs, d: RatFunc(LaurentPoly(lo, tuple(cs)), qint(d)) if any(cs) else RatFunc(1),
    st.integers(-4, 4), st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.integers(1, 4),
)
word = st.lists(st.integers(0, 8), max_size=4).map(tuple)
element = st.dictionaries(word, coeff, max_size=4).map(lambda d: AlgElement(4, d))


def test_parse_examples():
    assert parse("H1*H1", 3) == word_element("H1*H1", 3)
    want = AlgElement.one(3).scale(qint(3)) + gen("U", 1, 3).scale(qint(4))
    assert parse("[3] + [4]*U1", 3) == want
    with pytest.raises(IndexOutOfRange):
        parse("U1*K9", 3)


def test_parse_coefficients():
    assert parse("d", 3) == AlgElement.one(3).scale(qint(2))
    assert parse("q^-2*U1 - (q^(-1))*K1", 3) == (
        gen("U", 1, 3).scale(q ** -2) - gen("K", 1, 3).scale(q ** -1))
    assert parse("([4]/[2])*H2", 3) == gen("H", 2, 3).scale(RatFunc(qint(4), qint(2)))


@pytest.mark.parametrize("text", ["U1 +", "U1/K1", "(U1", "U1 ** K1", "x"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text, 3)


@given(element)
@settings(max_examples=500, deadline=None)
def test_round_trip(a):
    assert parse(format_element(a), 4) == a


def run(*args):
    return subprocess.run([sys.executable, "-m", "spin7", *args], capture_output=True, text=True)


def test_nf_command():
    r = run("nf", "--n", "3", "H1*H1")
    assert r.returncode == 0
    assert parse(r.stdout.strip(), 3) == parse("[3] + ([4]/[2])*H1 + [4]*U1 + [4]*K1", 3)


def test_json_output():
    r = run("--json", "nf", "--n", "3", "U1*U2*U1")
    assert r.returncode == 0
    assert AlgElement.from_json(json.loads(r.stdout)) == gen("U", 1, 3)


def test_exit_codes_in_process(capsys):
    assert main(["nf", "--n", "3", "U1*K9"]) == 2
    assert main(["nf", "--n", "3", "U1 +"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["dim", "--n", "3"]) == 0
    assert "30 / 30 / 30" in capsys.readouterr().out


def test_rules_emit(tmp_path):
    out = tmp_path / "r3.json"
    assert main(["rules", "--n", "3", "--emit", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["n"] == 3 and len(data["rules"]) == 67


def test_trace_command(capsys):
    assert main(["--json", "trace", "--n", "2", "U1"]) == 0
    assert json.loads(capsys.readouterr().out)["at_q=1"] == "1/8"


def test_suites(capsys):
    assert main(["crystal", "--validate"]) == 0
    assert main(["idempotents", "--check"]) == 0
    assert main(["rep-check"]) == 0


def test_confluence_literal_reports_failure(capsys):
    assert main(["confluence", "--n", "4", "--literal"]) == 1
    assert "not joinable" in capsys.readouterr().out
