"""Refinements of a degenerate arrangement's subdivision, flip detection,
and the vertex-volume (GKZ) vectors spanning secondary-polytope faces.

A non-generic arrangement sits on a wall between generic ones; nudging
its apexes by less than the safe radius lands on the neighbouring
generic arrangements, whose triangulations refine the coarse
subdivision.  The affine span of their GKZ vectors measures the
dimension of the secondary-polytope face the wall corresponds to.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import Arrangement, CellGraph
from .duality import (
    Subdivision,
    dual_subdivision,
    is_triangulation,
    normalized_volume,
)
from .geometry import is_generic, perturb, safe_radius
from .linalg import rank

#: Parameter pairs (n, d) for which every triangulation of the product
#: of simplices is regular, so secondary-polytope conclusions are
#: unconditional.  Beyond these the checks still run but are
#: informational only.
FULLY_REGULAR_PARAMS = frozenset({(3, 3), (4, 3), (5, 3), (3, 4), (3, 5)})


def all_triangulations_regular(n: int, d: int) -> bool:
    return min(n, d) <= 2 or (n, d) in FULLY_REGULAR_PARAMS


@dataclass(frozen=True)
class GKZVector:
    """Per-vertex volume totals of a triangulation: entry (i, j) is the
    summed normalized volume of the maximal simplices containing the
    product vertex (i, j).  Stored row-major."""

    n: int
    d: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.n * self.d:
            raise ValueError("need one entry per product vertex")
        if any(v < 0 for v in self.values):
            raise ValueError("entries must be nonnegative")

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.n and 1 <= j <= self.d):
            raise IndexError(f"vertex ({i},{j}) outside 1..{self.n} x 1..{self.d}")
        return self.values[(i - 1) * self.d + (j - 1)]

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {
            (i, j): self.entry(i, j)
            for i in range(1, self.n + 1)
            for j in range(1, self.d + 1)
        }

    def total(self) -> int:
        return sum(self.values)


def gkz_vector(t: Subdivision) -> GKZVector:
    """GKZ vector of a triangulation (rejects non-triangulations)."""
    if not is_triangulation(t):
        raise ValueError("GKZ vectors are defined here only for triangulations")
    values = [0] * (t.n * t.d)
    for cell in t.maximal_cells:
        vol = normalized_volume(cell)
        for i, j in cell.edges:
            values[(i - 1) * t.d + (j - 1)] += vol
    return GKZVector(t.n, t.d, tuple(values))


def refines(fine: Subdivision, coarse: Subdivision) -> bool:
    """Every fine cell's edges inside some coarse cell, with volumes
    adding up cell by cell."""
    if (fine.n, fine.d) != (coarse.n, coarse.d):
        return False
    volumes = {g: 0 for g in coarse.maximal_cells}
    for cell in fine.maximal_cells:
        host = next(
            (g for g in coarse.sorted_cells() if cell.edges <= g.edges), None
        )
        if host is None:
            return False
        volumes[host] += normalized_volume(cell)
    return all(volumes[g] == normalized_volume(g) for g in coarse.maximal_cells)


def _random_safe_deltas(rng: random.Random, n: int, d: int, radius: Fraction):
    """One delta per apex; coordinates in radius * [0, 1], so coordinate
    differences stay inside the safe radius."""
    return [
        [radius * Fraction(rng.randint(0, 1000), 1000) for _ in range(d)]
        for _ in range(n)
    ]


def refining_triangulations(
    arr: Arrangement,
    samples: int | None = None,
    seed: int = 0,
    budget: int | None = None,
) -> frozenset[Subdivision]:
    """Distinct triangulations reachable by safe perturbations.

    Each apex is nudged by the safe radius along every signed coordinate
    direction, plus ``samples`` joint random safe perturbations of all
    apexes; non-generic results are skipped.  Every triangulation found
    refines the arrangement's own subdivision.
    """
    if samples is None:
        samples = 2 * arr.n * arr.d
    if samples < 2 * arr.n * arr.d:
        raise ValueError(f"samples must be at least 2*n*d = {2 * arr.n * arr.d}")
    base = dual_subdivision(arr, budget)
    if is_generic(arr):
        return frozenset({base})
    radius = safe_radius(arr)
    rng = random.Random(seed)

    candidates = []
    for i in range(1, arr.n + 1):
        for c in range(arr.d):
            for sign in (1, -1):
                delta = [Fraction(0)] * arr.d
                delta[c] = sign * radius
                candidates.append(perturb(arr, i, delta))
    for _ in range(samples):
        moved = arr
        for i, delta in enumerate(_random_safe_deltas(rng, arr.n, arr.d, radius), 1):
            moved = perturb(moved, i, delta)
        candidates.append(moved)

    found: set[Subdivision] = set()
    for cand in candidates:
        if not is_generic(cand):
            continue
        t = dual_subdivision(cand, budget)
        if t in found:
            continue
        # an apex-generic perturbation can still leave non-apex ray
        # coincidences (a residual wall); those are not triangulations
        # and are skipped like the non-generic ones
        if not is_triangulation(t):
            continue
        if not refines(t, base):
            raise RuntimeError("perturbation crossed a wall; triangulation does not refine")
        found.add(t)
    return frozenset(found)


@dataclass(frozen=True)
class SecondaryFaceVerdict:
    """Outcome of the positive-dimensional-face check on a non-generic
    arrangement."""

    subdivision: Subdivision
    coarse_is_triangulation: bool
    refinements: tuple[Subdivision, ...]
    gkz_vectors: tuple[GKZVector, ...]
    face_dimension: int
    conclusive: bool

    @property
    def refinement_count(self) -> int:
        return len(self.refinements)

    @property
    def passes(self) -> bool:
        return (
            not self.coarse_is_triangulation
            and self.refinement_count >= 2
            and self.face_dimension >= 1
        )


def _affine_dimension(vectors) -> int:
    vecs = [v.values for v in vectors]
    if len(vecs) <= 1:
        return 0
    base = vecs[0]
    rows = [[Fraction(x - b) for x, b in zip(v, base)] for v in vecs[1:]]
    return rank(rows)


def secondary_face_check(
    arr: Arrangement,
    samples: int | None = None,
    seed: int = 0,
    budget: int | None = None,
) -> SecondaryFaceVerdict:
    """For a non-generic arrangement: its subdivision must not be a
    triangulation, at least two refining triangulations must exist, and
    the affine hull of their GKZ vectors must have positive dimension."""
    if is_generic(arr):
        raise ValueError("secondary_face_check requires a non-generic arrangement")
    sub = dual_subdivision(arr, budget)
    tris = sorted(
        refining_triangulations(arr, samples, seed, budget),
        key=lambda t: tuple(g.sorted_edges() for g in t.sorted_cells()),
    )
    gkz = tuple(gkz_vector(t) for t in tris)
    return SecondaryFaceVerdict(
        subdivision=sub,
        coarse_is_triangulation=is_triangulation(sub),
        refinements=tuple(tris),
        gkz_vectors=gkz,
        face_dimension=_affine_dimension(gkz),
        conclusive=all_triangulations_regular(arr.n, arr.d),
    )


def flip_related(t1: Subdivision, t2: Subdivision) -> bool:
    """Whether two triangulations differ by a single flip: some common
    coarsening, obtained by merging a subset of t1's simplices into one
    cell, has exactly one non-simplex maximal cell and is refined by
    both."""
    if (t1.n, t1.d) != (t2.n, t2.d):
        raise ValueError("triangulations live in different products of simplices")
    if not is_triangulation(t1) or not is_triangulation(t2):
        raise ValueError("flip detection requires triangulations")
    if t1 == t2:
        return False
    cells = t1.sorted_cells()
    for mask in range(1, 1 << len(cells)):
        chosen = [cells[b] for b in range(len(cells)) if mask >> b & 1]
        if len(chosen) < 2:
            continue
        merged_edges = frozenset().union(*(g.edges for g in chosen))
        merged = CellGraph(t1.n, t1.d, merged_edges)
        # merged cell must be exactly tiled by the chosen simplices
        if normalized_volume(merged) != len(chosen):
            continue
        rest = [cells[b] for b in range(len(cells)) if not (mask >> b & 1)]
        coarse = Subdivision(t1.n, t1.d, frozenset(rest + [merged]))
        if refines(t2, coarse):
            return True
    return False
