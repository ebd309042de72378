"""Dual subdivisions of the product of simplices.

A type becomes a bipartite cell graph (edge (i,j) for each label j in
entry i); the 0-dimensional cells of an arrangement give the maximal
cells of its dual subdivision.  Independently, the same subdivision
arises as the lower-envelope regular subdivision induced by lifting
product vertex (i,j) to the apex coordinate v_ij; both constructions are
exposed so they can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .core import Arrangement, CellGraph, TypeVector, to_fraction
from .geometry import enumerate_realizations, is_generic, realizable
from .axioms import AxiomReport, is_tropical_oriented_matroid
from .linalg import det_int


def type_to_graph(T: TypeVector, n: int | None = None, d: int | None = None) -> CellGraph:
    """Cell graph of a type: edge (i, j) for every label j in entry i."""
    n = T.n if n is None else n
    d = T.max_label() if d is None else d
    edges = frozenset((i, j) for i, entry in enumerate(T.entries, 1) for j in entry)
    return CellGraph(n, d, edges)


def _components(g: CellGraph) -> dict:
    """Connected components of the support (nodes of degree >= 1); keys are
    ('L', i) / ('R', j) node tags, values are component roots."""
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in g.edges:
        for node in (("L", i), ("R", j)):
            parent.setdefault(node, node)
        a, b = find(("L", i)), find(("R", j))
        if a != b:
            parent[a] = b
    return {node: find(node) for node in parent}


def cell_dim(g: CellGraph) -> int:
    """Affine dimension of the cell spanned by the graph's product
    vertices: (#covered nodes) - (#support components) - 1."""
    if not g.edges:
        raise ValueError("cell graph has no edges")
    comp = _components(g)
    return len(comp) - len(set(comp.values())) - 1


def is_spanning_connected(g: CellGraph) -> bool:
    if not g.edges:
        return False
    comp = _components(g)
    return len(comp) == g.n + g.d and len(set(comp.values())) == 1


def is_spanning_tree(g: CellGraph) -> bool:
    return is_spanning_connected(g) and len(g.edges) == g.n + g.d - 1


def arrangement_cell_dim(arr: Arrangement, T: TypeVector) -> int:
    """Affine dimension (inside projective space) of a type's realization
    set; raises if the type is not a cell of the arrangement."""
    result = realizable(arr, T)
    if not result.realizable:
        raise ValueError(f"type {T.text()} is not a cell of the arrangement")
    return result.dimension


@dataclass(frozen=True)
class Subdivision:
    """A polyhedral subdivision of the product of simplices, recorded by
    its maximal cells' graphs."""

    n: int
    d: int
    maximal_cells: frozenset[CellGraph]

    def __post_init__(self) -> None:
        cells = frozenset(self.maximal_cells)
        if not cells:
            raise ValueError("a subdivision needs at least one maximal cell")
        for g in cells:
            if (g.n, g.d) != (self.n, self.d):
                raise ValueError("cell graph parameters do not match the subdivision")
            if not is_spanning_connected(g):
                raise ValueError(f"maximal cell {g.text()} must span and be connected")
        object.__setattr__(self, "maximal_cells", cells)

    def sorted_cells(self) -> tuple[CellGraph, ...]:
        return tuple(sorted(self.maximal_cells, key=lambda g: g.sorted_edges()))


def dual_subdivision(arr: Arrangement, budget: int | None = None) -> Subdivision:
    """Maximal cells = graphs of the arrangement's 0-dimensional types."""
    realizations = enumerate_realizations(arr, budget)
    cells = frozenset(
        type_to_graph(T, arr.n, arr.d)
        for T, res in realizations.items()
        if res.dimension == 0
    )
    return Subdivision(arr.n, arr.d, cells)


def _coerce_weights(weights) -> tuple[tuple[Fraction, ...], ...]:
    rows = tuple(tuple(to_fraction(x) for x in row) for row in weights)
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("weights must be a rectangular matrix")
    if len(rows[0]) < 1:
        raise ValueError("weights need at least one column")
    return rows


def _envelope_cells(
    n: int, d: int, weights: Sequence[Sequence[Fraction]], support: Iterable[tuple[int, int]]
) -> frozenset[CellGraph]:
    """Maximal cells of the lower envelope over a support edge set.

    A spanning connected subgraph h is a cell exactly when potentials
    u_i, z_j with z_j - u_i = w_ij on h extend consistently over h and
    satisfy z_j - u_i < w_ij strictly on the rest of the support.
    """
    edges = sorted(support)
    m = len(edges)
    all_nodes = n + d
    # bitmask of nodes covered by each edge: left nodes 0..n-1, right n..n+d-1
    node_bits = [(1 << (i - 1)) | (1 << (n + j - 1)) for i, j in edges]
    full = (1 << all_nodes) - 1
    cells = []
    for mask in range(1, 1 << m):
        covered = 0
        sub = mask
        while sub:
            low = sub & -sub
            covered |= node_bits[low.bit_length() - 1]
            sub &= sub - 1
        if covered != full:
            continue
        chosen = [edges[b] for b in range(m) if mask >> b & 1]
        # potentials via traversal; u_i at ('L',i), z_j at ('R',j)
        adj: dict = {}
        for i, j in chosen:
            adj.setdefault(("L", i), []).append((("R", j), weights[i - 1][j - 1]))
            adj.setdefault(("R", j), []).append((("L", i), weights[i - 1][j - 1]))
        pot: dict = {("L", 1): Fraction(0)}
        stack = [("L", 1)]
        ok = True
        while stack and ok:
            node = stack.pop()
            for other, w in adj[node]:
                # z_j = u_i + w_ij along either traversal direction
                value = pot[node] + w if node[0] == "L" else pot[node] - w
                if other in pot:
                    if pot[other] != value:
                        ok = False
                        break
                else:
                    pot[other] = value
                    stack.append(other)
        if not ok or len(pot) != all_nodes:
            continue
        for b in range(m):
            if mask >> b & 1:
                continue
            i, j = edges[b]
            if pot[("R", j)] - pot[("L", i)] >= weights[i - 1][j - 1]:
                ok = False
                break
        if ok:
            cells.append(CellGraph(n, d, frozenset(chosen)))
    return frozenset(cells)


def regular_subdivision(weights) -> Subdivision:
    """Regular subdivision of the product of simplices induced by lifting
    vertex (i, j) to height w_ij (lower envelope).

    With the apex matrix of an arrangement as heights this reproduces the
    arrangement's dual subdivision; the two computations share no code
    path, which makes the agreement a meaningful cross-check.
    """
    rows = _coerce_weights(weights)
    n, d = len(rows), len(rows[0])
    support = [(i, j) for i in range(1, n + 1) for j in range(1, d + 1)]
    return Subdivision(n, d, _envelope_cells(n, d, rows, support))


def arrangement_heights(arr: Arrangement) -> tuple[tuple[Fraction, ...], ...]:
    """Lifting heights matching an arrangement (its apex rows)."""
    return arr.rows()


def _chart_vertex(i: int, j: int, n: int, d: int) -> tuple[int, ...]:
    """Product vertex (i, j) in the integer affine chart that drops the
    last coordinate of each factor."""
    left = tuple(1 if i == t else 0 for t in range(1, n))
    right = tuple(1 if j == t else 0 for t in range(1, d))
    return left + right


def _tree_volume(tree: CellGraph) -> int:
    pts = [_chart_vertex(i, j, tree.n, tree.d) for i, j in tree.sorted_edges()]
    base = pts[0]
    rows = [[x - b for x, b in zip(p, base)] for p in pts[1:]]
    return abs(det_int(rows))


def normalized_volume(g: CellGraph) -> int:
    """Normalized lattice volume of a full-dimensional cell.

    The cell's own vertices are lifted by a lexicographic height (powers
    of 3), whose alternating sums never vanish, so the induced regular
    subdivision of the cell is a triangulation; the volume is the sum of
    the simplex determinants.
    """
    if not g.edges:
        raise ValueError("cell graph has no edges")
    if cell_dim(g) != g.n + g.d - 2:
        raise ValueError("normalized volume needs a full-dimensional cell")
    lex = [
        [Fraction(3) ** ((i - 1) * g.d + (j - 1)) for j in range(1, g.d + 1)]
        for i in range(1, g.n + 1)
    ]
    pieces = _envelope_cells(g.n, g.d, lex, g.edges)
    total = 0
    for piece in pieces:
        if len(piece.edges) != g.n + g.d - 1:
            raise RuntimeError("lexicographic lift failed to triangulate a cell")
        total += _tree_volume(piece)
    return total


def is_triangulation(sub: Subdivision) -> bool:
    """Every maximal cell a spanning tree and the unit volumes summing to
    the full normalized volume of the product of simplices."""
    if not all(is_spanning_tree(g) for g in sub.maximal_cells):
        return False
    total = sum(normalized_volume(g) for g in sub.maximal_cells)
    return total == comb(sub.n + sub.d - 2, sub.n - 1)


@dataclass(frozen=True)
class CorrespondenceVerdict:
    """Joint verdict on an arrangement: genericity, the axiom report of
    its types, and whether its dual subdivision is a triangulation,
    together with the two implications they must satisfy."""

    generic: bool
    axiom_report: AxiomReport
    triangulation: bool
    type_count: int
    cell_count: int
    expected_simplices: int
    generic_consistent: bool
    nongeneric_consistent: bool

    @property
    def consistent(self) -> bool:
        return self.generic_consistent and self.nongeneric_consistent


def check_correspondence(arr: Arrangement, budget: int | None = None) -> CorrespondenceVerdict:
    """Genericity, axiom checks and triangulation status, plus whether
    generic => (matroid and triangulation) and non-generic => not a
    triangulation hold for this arrangement."""
    generic = bool(is_generic(arr))
    realizations = enumerate_realizations(arr, budget)
    types = frozenset(realizations)
    report = is_tropical_oriented_matroid(types, arr.n, arr.d)
    cells = frozenset(
        type_to_graph(T, arr.n, arr.d)
        for T, res in realizations.items()
        if res.dimension == 0
    )
    sub = Subdivision(arr.n, arr.d, cells)
    triangulation = is_triangulation(sub)
    generic_ok = (not generic) or (report.is_tom and triangulation)
    nongeneric_ok = generic or (not triangulation)
    return CorrespondenceVerdict(
        generic=generic,
        axiom_report=report,
        triangulation=triangulation,
        type_count=len(types),
        cell_count=len(sub.maximal_cells),
        expected_simplices=comb(arr.n + arr.d - 2, arr.n - 1),
        generic_consistent=generic_ok,
        nongeneric_consistent=nongeneric_ok,
    )
