"""Axiom checks for collections of types: boundary, elimination,
comparability, surrounding, plus the single-coordinate local-refinement
probe, aggregated into a verdict with first-counterexample diagnostics.

Surrounding and local refinement are deliberately distinct predicates.
Surrounding quantifies over ordered-partition refinements (a single
infinitesimal move, which may cut several entries at once); local
refinement replaces one non-singleton entry by one of its labels while
freezing everything else.  Only the former enters the final verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection

from .core import ResourceLimitError, TypeVector, enumerate_ordered_partitions
from .geometry import refine

#: Largest d for which surrounding scans all ordered partitions (the
#: Fubini numbers explode past this).
MAX_SURROUNDING_D = 5


@dataclass(frozen=True)
class ComparabilityGraph:
    """Semidirected graph on coordinate labels built from a pair of types.

    A directed edge j -> k records the strict relation "j beats k" forced
    at some hyperplane; an undirected edge records equality.  Any
    coordinate contributing a directed orientation overrides undirected
    contributions for that pair.
    """

    d: int
    undirected_edges: frozenset[frozenset[int]]
    directed_edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for j, k in self.directed_edges:
            if j == k:
                raise ValueError("no self-loops")
        for pair in self.undirected_edges:
            if len(pair) != 2:
                raise ValueError("undirected edges join two distinct labels")
            j, k = sorted(pair)
            if (j, k) in self.directed_edges or (k, j) in self.directed_edges:
                raise ValueError("a pair may appear in only one edge set")


@dataclass(frozen=True)
class CheckResult:
    """Pass/fail plus the first counterexample in canonical order (types
    sorted lexicographically); the payload shape is check-specific."""

    passed: bool
    counterexample: object = None

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class AxiomReport:
    boundary: CheckResult
    elimination: CheckResult
    comparability: CheckResult
    surrounding: CheckResult
    local_refinement: CheckResult
    is_tom: bool


def _sorted_types(types: Collection[TypeVector]) -> list[TypeVector]:
    ordered = sorted(types, key=lambda t: t.key())
    if ordered and any(t.n != ordered[0].n for t in ordered):
        raise ValueError("collection mixes types of different lengths")
    return ordered


def check_boundary(types: Collection[TypeVector], n: int, d: int) -> CheckResult:
    """Every constant type (j, ..., j) must be present."""
    present = set(types)
    missing = tuple(
        j for j in range(1, d + 1)
        if TypeVector(tuple(frozenset((j,)) for _ in range(n))) not in present
    )
    return CheckResult(not missing, missing or None)


def check_elimination(types: Collection[TypeVector]) -> CheckResult:
    """For each pair (A, B) and position j, some C in the collection must
    take the union at j and one of A_k, B_k, A_k u B_k everywhere."""
    ordered = _sorted_types(types)
    if not ordered:
        return CheckResult(True)
    n = ordered[0].n
    pool = [t.entries for t in ordered]
    for ia, A in enumerate(ordered):
        for B in ordered[ia:]:
            a, b = A.entries, B.entries
            union = tuple(x | y for x, y in zip(a, b))
            needed = set(range(n))
            for c in pool:
                if all(ck in (ak, bk, uk) for ck, ak, bk, uk in zip(c, a, b, union)):
                    needed -= {j for j in tuple(needed) if c[j] == union[j]}
                    if not needed:
                        break
            if needed:
                j = min(needed) + 1
                return CheckResult(False, (A, B, j))
    return CheckResult(True)


def comparability_graph(A: TypeVector, B: TypeVector, d: int | None = None) -> ComparabilityGraph:
    """Edges j ~ k for j in A_i, k in B_i (j != k): undirected when both
    labels lie in A_i n B_i, otherwise directed j -> k; a directed
    contribution from any coordinate overrides undirected ones."""
    if A.n != B.n:
        raise ValueError("types must have the same number of entries")
    if d is None:
        d = max(A.max_label(), B.max_label())
    undirected: set[frozenset[int]] = set()
    directed: set[tuple[int, int]] = set()
    for ai, bi in zip(A.entries, B.entries):
        both = ai & bi
        for j in ai:
            for k in bi:
                if j == k:
                    continue
                if j in both and k in both:
                    undirected.add(frozenset((j, k)))
                else:
                    directed.add((j, k))
    undirected -= {frozenset((j, k)) for j, k in directed}
    return ComparabilityGraph(d, frozenset(undirected), frozenset(directed))


def is_acyclic(g: ComparabilityGraph) -> bool:
    """No cycle that traverses at least one directed edge forward
    (undirected edges may be walked either way).

    Undirected edges expand to both orientations; the graph fails exactly
    when some genuinely directed edge has its head reaching back to its
    tail through the expanded reachability.
    """
    nodes = range(1, g.d + 1)
    reach = {a: {b: False for b in nodes} for a in nodes}
    for j, k in g.directed_edges:
        reach[j][k] = True
    for pair in g.undirected_edges:
        j, k = tuple(pair)
        reach[j][k] = True
        reach[k][j] = True
    for mid in nodes:
        for a in nodes:
            if reach[a][mid]:
                row_a, row_m = reach[a], reach[mid]
                for b in nodes:
                    if row_m[b]:
                        row_a[b] = True
    return not any(reach[k][j] for j, k in g.directed_edges)


def check_comparability(types: Collection[TypeVector], d: int | None = None) -> CheckResult:
    """Every pair's comparability graph must be acyclic."""
    ordered = _sorted_types(types)
    for ia, A in enumerate(ordered):
        for B in ordered[ia:]:
            if not is_acyclic(comparability_graph(A, B, d)):
                return CheckResult(False, (A, B))
    return CheckResult(True)


def check_surrounding(types: Collection[TypeVector], d: int | None = None) -> CheckResult:
    """Every ordered-partition refinement of every type must be present."""
    ordered = _sorted_types(types)
    if not ordered:
        return CheckResult(True)
    if d is None:
        d = max(t.max_label() for t in ordered)
    if d > MAX_SURROUNDING_D:
        raise ResourceLimitError(
            f"surrounding scan over ordered partitions of d={d} exceeds budget"
        )
    partitions = enumerate_ordered_partitions(d)
    present = set(ordered)
    for T in ordered:
        for P in partitions:
            if refine(T, P) not in present:
                return CheckResult(False, (T, P))
    return CheckResult(True)


def check_local_refinement(types: Collection[TypeVector]) -> CheckResult:
    """For every type, every non-singleton entry, and every label in it,
    the vector with just that entry collapsed to the single label must be
    present."""
    ordered = _sorted_types(types)
    present = set(ordered)
    for T in ordered:
        for i, entry in enumerate(T.entries, 1):
            if len(entry) < 2:
                continue
            for k in sorted(entry):
                if T.with_entry(i, (k,)) not in present:
                    return CheckResult(False, (T, i, k))
    return CheckResult(True)


def is_tropical_oriented_matroid(
    types: Collection[TypeVector], n: int, d: int
) -> AxiomReport:
    """Run all checks; the verdict is the conjunction of boundary,
    elimination, comparability and surrounding (local refinement is
    reported alongside but does not enter it)."""
    boundary = check_boundary(types, n, d)
    elimination = check_elimination(types)
    comparability = check_comparability(types, d)
    surrounding = check_surrounding(types, d)
    local = check_local_refinement(types)
    is_tom = bool(boundary and elimination and comparability and surrounding)
    return AxiomReport(boundary, elimination, comparability, surrounding, local, is_tom)
