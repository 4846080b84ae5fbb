"""Exact computations in the centraliser algebras of tensor powers of the
spin representation of quantum so(7).

The algebra A(n) is presented by generators U_i, K_i, H_i and local
relations; the package rewrites words to normal form, checks the rule
systems, evaluates explicit representations, and verifies the tower
structure and the spectral-parameter solutions of the Yang-Baxter equation.
"""
from __future__ import annotations

from .coeffs import RatFunc, loop_value, q, qint, quantum_dim
from .elements import AlgElement, gen, word_element
from .presentation import algebra_rules, rules_for
from .rewrite import count_irreducible, normal_form
from .words import TraceWord, parse_word

__version__ = "0.1.0"

__all__ = [
    "RatFunc", "loop_value", "q", "qint", "quantum_dim",
    "AlgElement", "gen", "word_element", "algebra_rules", "rules_for",
    "count_irreducible", "normal_form", "TraceWord", "parse_word",
]
