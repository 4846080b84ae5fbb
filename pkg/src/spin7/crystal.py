"""Weight combinatorics for B3 with the spin representation.

Weights are handled in the coordinates s = (2w1 + 2w2 + w3, 2w2 + w3, w3)
where (w1, w2, w3) are fundamental-weight coordinates.  The eight spin
weights become (+-1, +-1, +-1) and the dominant chamber is s1 >= s2 >= s3 >= 0.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .errors import NonIntegral, ParityError

__all__ = [
    "WeightVec", "CrystalGraph", "SPIN_WEIGHTS", "CARTAN", "to_s_coords",
    "from_s_coords", "is_dominant", "simple_roots", "count_dominant_walks",
    "dominant_walk_table", "dyck_formula", "crystal_graph", "validate_crystal",
    "dominant_sequence",
]


class WeightVec(NamedTuple):
    s1: int
    s2: int
    s3: int

    def __add__(self, other):
        return WeightVec(self.s1 + other[0], self.s2 + other[1], self.s3 + other[2])

    def __sub__(self, other):
        return WeightVec(self.s1 - other[0], self.s2 - other[1], self.s3 - other[2])


SPIN_WEIGHTS = tuple(WeightVec(*v) for v in product((1, -1), repeat=3))

# rows: simple roots in fundamental-weight coordinates (alpha3 short)
CARTAN = ((2, -1, 0), (-1, 2, -2), (0, -1, 2))


def to_s_coords(w1: int, w2: int, w3: int) -> WeightVec:
    return WeightVec(2 * w1 + 2 * w2 + w3, 2 * w2 + w3, w3)


def from_s_coords(s) -> tuple:
    s1, s2, s3 = s
    if (s1 - s2) % 2 or (s2 - s3) % 2:
        raise ParityError(f"{tuple(s)} is not in the weight lattice")
    return ((s1 - s2) // 2, (s2 - s3) // 2, s3)


def is_dominant(s) -> bool:
    s1, s2, s3 = s
    return s1 >= s2 >= s3 >= 0


def simple_roots() -> dict:
    """Label -> simple root in s-coordinates."""
    return {k + 1: to_s_coords(*row) for k, row in enumerate(CARTAN)}


def dominant_walk_table(length: int, steps=SPIN_WEIGHTS) -> list[Counter]:
    """Number of dominant walks from the origin, per endpoint, after each step."""
    layer = Counter({WeightVec(0, 0, 0): 1})
    table = [layer]
    for _ in range(length):
        nxt = Counter()
        for s, count in layer.items():
            for st in steps:
                t = s + st
                if is_dominant(t):
                    nxt[t] += count
        layer = nxt
        table.append(layer)
    return table


def count_dominant_walks(length: int, steps=SPIN_WEIGHTS) -> int:
    """Closed walks of the given length staying in the dominant chamber."""
    if length < 0:
        raise ValueError("length must be non-negative")
    return dominant_walk_table(length, steps)[-1][WeightVec(0, 0, 0)]


def dyck_formula(m: int) -> int:
    """prod over 1 <= i <= j <= m of (i + j + 6) / (i + j)."""
    if m < 1:
        raise ValueError("m must be positive")
    acc = Fraction(1)
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            acc *= Fraction(i + j + 6, i + j)
    if acc.denominator != 1:
        raise NonIntegral(f"product formula at {m} gives {acc}")
    return acc.numerator


@dataclass(frozen=True)
class CrystalGraph:
    name: str
    vertices: tuple
    edges: tuple  # (tail index, head index, label)
    meta: dict = field(default_factory=dict, compare=False)


_SPIN_VERTICES = (
    (1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1),
    (1, -1, -1), (-1, 1, -1), (-1, -1, 1), (-1, -1, -1),
)
_SPIN_EDGES = ((0, 1, 3), (1, 2, 2), (2, 3, 1), (2, 4, 3),
               (3, 5, 3), (4, 5, 1), (5, 6, 2), (6, 7, 3))

_VECTOR_VERTICES = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (0, 0, 0),
                    (0, 0, -2), (0, -2, 0), (-2, 0, 0))
_VECTOR_EDGES = ((0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 4, 3), (4, 5, 2), (5, 6, 1))


def crystal_graph(which: str) -> CrystalGraph:
    if which == "spin":
        verts, edges = _SPIN_VERTICES, _SPIN_EDGES
    elif which == "vector":
        verts, edges = _VECTOR_VERTICES, _VECTOR_EDGES
    else:
        raise ValueError(f"unknown crystal {which!r}")
    return CrystalGraph(which, tuple(WeightVec(*v) for v in verts), edges)


def validate_crystal(g: CrystalGraph) -> dict:
    """Check edge weights against simple roots and the source/sink structure."""
    roots = simple_roots()
    problems = []
    for t, h, label in g.edges:
        want = g.vertices[t] - roots[label]
        if g.vertices[h] != want:
            problems.append(f"edge {t}->{h} label {label}: head {tuple(g.vertices[h])}, expected {tuple(want)}")
    indeg = Counter(h for _, h, _ in g.edges)
    outdeg = Counter(t for t, _, _ in g.edges)
    sources = [i for i in range(len(g.vertices)) if indeg[i] == 0]
    sinks = [i for i in range(len(g.vertices)) if outdeg[i] == 0]
    if len(sources) != 1:
        problems.append(f"sources: {sources}")
    if len(sinks) != 1:
        problems.append(f"sinks: {sinks}")
    if sources and not is_dominant(g.vertices[sources[0]]):
        problems.append("highest weight is not dominant")
    if len(set(g.vertices)) != len(g.vertices):
        problems.append("repeated weights")
    return {
        "name": g.name,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "ok": not problems,
        "problems": problems,
    }


def dominant_sequence(word) -> bool:
    """True if every partial sum of the steps is dominant."""
    pos = WeightVec(0, 0, 0)
    for st in word:
        pos = pos + st
        if not is_dominant(pos):
            return False
    return True
