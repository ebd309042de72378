"""Shared fixtures: the two worked example arrangements, random
arrangement generators, and independent oracles (sampling, exact rank
and determinant via sympy) used to cross-check the main code paths."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from troparr import (
    Arrangement,
    CellGraph,
    ProjectivePoint,
    TypeVector,
    apex_type,
    is_generic,
    type_of_point,
)


@pytest.fixture
def e1() -> Arrangement:
    # two hyperplanes on a projective line; both apexes generic
    return Arrangement.from_rows([[0, 0], [-1, 0]])


@pytest.fixture
def e2() -> Arrangement:
    # second apex sits on the {1,2}-ray of the first hyperplane's fan
    return Arrangement.from_rows([[0, 0, 0], [1, 1, 0]])


def random_rational(rng: random.Random, max_den: int = 100, span: int = 3) -> Fraction:
    q = rng.randint(1, max_den)
    p = rng.randint(-span * q, span * q)
    return Fraction(p, q)


def random_arrangement(rng: random.Random, n: int, d: int, max_den: int = 100) -> Arrangement:
    return Arrangement.from_rows(
        [[random_rational(rng, max_den) for _ in range(d)] for _ in range(n)]
    )


def random_generic_arrangement(rng: random.Random, n: int, d: int) -> Arrangement:
    while True:
        arr = random_arrangement(rng, n, d)
        if is_generic(arr):
            return arr


def nongeneric_on_ray(rng: random.Random, n: int, d: int = 3):
    """Arrangement whose last apex lies strictly on a 1-dimensional fan
    face (a ray) of hyperplane 1, all other incidences generic.

    Returns (arrangement, victim_index, host_index, tied_label_pair).
    """
    host = 1
    while True:
        base = [
            [random_rational(rng) for _ in range(d)] for _ in range(n - 1)
        ]
        j, k = sorted(rng.sample(range(1, d + 1), 2))
        t = Fraction(rng.randint(1, 200), rng.randint(1, 50))
        victim = list(base[host - 1])
        victim[j - 1] += t
        victim[k - 1] += t
        arr = Arrangement.from_rows(base + [victim])
        report = is_generic(arr)
        bad = [st for st in report.apexes if not st.generic]
        if len(bad) != 1 or bad[0].index != n:
            continue
        T = apex_type(arr, n)
        if T.entry(host) != frozenset((j, k)):
            continue
        if any(len(T.entry(i)) != 1 for i in range(1, n) if i != host):
            continue
        return arr, n, host, (j, k)


def nongeneric_on_apex(rng: random.Random, n: int, d: int = 3):
    """Arrangement whose last apex coincides with hyperplane 1's apex (a
    0-dimensional fan face).  Returns (arrangement, victim, host)."""
    host = 1
    while True:
        base = [[random_rational(rng) for _ in range(d)] for _ in range(n - 1)]
        arr = Arrangement.from_rows(base + [list(base[host - 1])])
        T = apex_type(arr, n)
        if T.entry(host) != frozenset(range(1, d + 1)):
            continue
        if any(len(T.entry(i)) != 1 for i in range(2, n)):
            continue
        return arr, n, host


def sample_point(rng: random.Random, arr: Arrangement, den: int = 997) -> ProjectivePoint:
    coords = []
    los = [min(p.coords[j] for p in arr.apexes) for j in range(arr.d)]
    his = [max(p.coords[j] for p in arr.apexes) for j in range(arr.d)]
    for j in range(arr.d):
        lo, hi = los[j] - 2, his[j] + 2
        num = rng.randint(int(lo * den), int(hi * den))
        coords.append(Fraction(num, den))
    return ProjectivePoint(tuple(coords))


def sampled_types(rng: random.Random, arr: Arrangement, count: int) -> set[TypeVector]:
    """One-sided oracle: the set of types actually observed at random
    rational points."""
    return {type_of_point(arr, sample_point(rng, arr)) for _ in range(count)}


def chart_vertex(i: int, j: int, n: int, d: int) -> tuple[int, ...]:
    left = tuple(1 if i == t else 0 for t in range(1, n))
    right = tuple(1 if j == t else 0 for t in range(1, d))
    return left + right


def affine_rank_oracle(points) -> int:
    """Affine rank (dimension of the affine hull) via sympy."""
    pts = [tuple(p) for p in points]
    if len(pts) <= 1:
        return 0
    rows = [[sympy.Rational(x) - sympy.Rational(b) for x, b in zip(p, pts[0])] for p in pts[1:]]
    return sympy.Matrix(rows).rank()


def graph_dim_oracle(g: CellGraph) -> int:
    """Cell dimension straight from the product vertices' affine rank."""
    return affine_rank_oracle([chart_vertex(i, j, g.n, g.d) for i, j in g.sorted_edges()])


def tree_volume_oracle(g: CellGraph) -> int:
    """Simplex volume via a sympy determinant."""
    pts = [chart_vertex(i, j, g.n, g.d) for i, j in g.sorted_edges()]
    rows = [[x - b for x, b in zip(p, pts[0])] for p in pts[1:]]
    return abs(sympy.Matrix(rows).det())
