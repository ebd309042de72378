import random
from fractions import Fraction

import pytest

from troparr import (
    Arrangement,
    CellGraph,
    Subdivision,
    all_triangulations_regular,
    dual_subdivision,
    flip_related,
    gkz_vector,
    perturb,
    refines,
    refining_triangulations,
    safe_radius,
    secondary_face_check,
)

from conftest import nongeneric_on_ray, random_generic_arrangement


def G(n, d, *edges):
    return CellGraph(n, d, frozenset(edges))


def tri(n, d, *cells):
    return Subdivision(n, d, frozenset(G(n, d, *c) for c in cells))


SIMPLEX = ((1, 1), (1, 2), (1, 3), (2, 3))
PYRAMID = ((1, 1), (1, 2), (2, 1), (2, 2), (2, 3))

# the two triangulations of the pyramid keep opposite diagonal pairs
SPLIT_A = tri(2, 3, SIMPLEX, ((1, 1), (1, 2), (2, 2), (2, 3)), ((1, 1), (2, 1), (2, 2), (2, 3)))
SPLIT_B = tri(2, 3, SIMPLEX, ((1, 1), (1, 2), (2, 1), (2, 3)), ((1, 2), (2, 1), (2, 2), (2, 3)))


def test_refining_triangulations_e2(e2):
    found = refining_triangulations(e2)
    assert found == {SPLIT_A, SPLIT_B}


def test_refining_triangulations_oversampling_is_stable(e2):
    assert refining_triangulations(e2, samples=100) == {SPLIT_A, SPLIT_B}
    assert refining_triangulations(e2, samples=100, seed=5) == {SPLIT_A, SPLIT_B}


def test_refining_triangulations_generic_is_identity():
    arr = random_generic_arrangement(random.Random(3), 3, 3)
    assert refining_triangulations(arr) == {dual_subdivision(arr)}


def test_refining_triangulations_sample_floor(e2):
    with pytest.raises(ValueError):
        refining_triangulations(e2, samples=3)


def test_refinements_match_coordinate_perturbations(e2):
    eps = safe_radius(e2)
    plus_x = dual_subdivision(perturb(e2, 2, (eps, 0, 0)))
    plus_y = dual_subdivision(perturb(e2, 2, (0, eps, 0)))
    assert {plus_x, plus_y} == {SPLIT_A, SPLIT_B}
    assert plus_x != plus_y


def test_every_refinement_refines_the_coarse_subdivision(e2):
    base = dual_subdivision(e2)
    for t in refining_triangulations(e2):
        assert refines(t, base)
    assert not refines(SPLIT_A, SPLIT_B)


def test_gkz_unit_square():
    diag = tri(2, 2, ((1, 1), (2, 1), (2, 2)), ((1, 1), (1, 2), (2, 2)))
    anti = tri(2, 2, ((1, 2), (2, 1), (2, 2)), ((1, 1), (1, 2), (2, 1)))
    g = gkz_vector(diag)
    assert g.as_dict() == {(1, 1): 2, (1, 2): 1, (2, 1): 1, (2, 2): 2}
    h = gkz_vector(anti)
    assert h.as_dict() == {(1, 1): 1, (1, 2): 2, (2, 1): 2, (2, 2): 1}


def test_gkz_sums(e2):
    for t in (SPLIT_A, SPLIT_B):
        assert gkz_vector(t).total() == 4 * 3  # (n+d-1) * volume
    with pytest.raises(ValueError):
        gkz_vector(dual_subdivision(e2))  # not a triangulation


def test_secondary_face_check_e2(e2):
    verdict = secondary_face_check(e2)
    assert not verdict.coarse_is_triangulation
    assert verdict.refinement_count == 2
    assert verdict.gkz_vectors[0] != verdict.gkz_vectors[1]
    assert verdict.face_dimension == 1
    assert verdict.conclusive
    assert verdict.passes


def test_secondary_face_check_rejects_generic():
    arr = random_generic_arrangement(random.Random(9), 2, 3)
    with pytest.raises(ValueError):
        secondary_face_check(arr)


def test_secondary_face_check_doubly_degenerate():
    # third apex at the intersection of a ray of each of the other fans:
    # its type there is ({1,2}, {2,3}, {1,2,3})
    arr = Arrangement.from_rows([[0, 0, 0], [3, 1, 0], [1, 1, 0]])
    from troparr import apex_type, is_generic

    assert not is_generic(arr)
    T3 = apex_type(arr, 3)
    assert T3.entry(1) == {1, 2} and T3.entry(2) == {2, 3}
    verdict = secondary_face_check(arr, samples=40)
    assert verdict.refinement_count >= 2
    assert verdict.face_dimension >= 1
    assert verdict.conclusive
    # two unresolved incidences leave a corank-2 cell (7 vertices in
    # dimension 4); observed: a pentagon of 5 triangulations, face dim 2,
    # stable under oversampling and reseeding
    assert verdict.face_dimension == 2
    assert verdict.refinement_count == 5
    assert secondary_face_check(arr, samples=100, seed=7).refinement_count == 5


def test_secondary_face_check_on_constructed_ray_degeneracies():
    rng = random.Random(15)
    for _ in range(3):
        n = rng.choice([2, 3])
        arr, victim, host, pair = nongeneric_on_ray(rng, n)
        verdict = secondary_face_check(arr)
        assert verdict.passes
        assert all(refines(t, verdict.subdivision) for t in verdict.refinements)


def test_flip_related_squares_and_e2(e2):
    diag = tri(2, 2, ((1, 1), (2, 1), (2, 2)), ((1, 1), (1, 2), (2, 2)))
    anti = tri(2, 2, ((1, 2), (2, 1), (2, 2)), ((1, 1), (1, 2), (2, 1)))
    assert flip_related(diag, anti)
    assert flip_related(anti, diag)
    assert not flip_related(diag, diag)

    assert flip_related(SPLIT_A, SPLIT_B)
    assert flip_related(SPLIT_B, SPLIT_A)

    with pytest.raises(ValueError):
        flip_related(diag, SPLIT_A)
    with pytest.raises(ValueError):
        flip_related(tri(2, 2, ((1, 1), (1, 2), (2, 1), (2, 2))), diag)


def test_flip_related_prism_triangulations():
    # staircase triangulations of the prism; a and b share a simplex and
    # differ by one genuine diagonal swap, c is the reversed staircase
    a = tri(2, 3, ((1, 1), (1, 2), (1, 3), (2, 3)), ((1, 1), (1, 2), (2, 2), (2, 3)),
            ((1, 1), (2, 1), (2, 2), (2, 3)))
    b = tri(2, 3, ((1, 1), (1, 2), (1, 3), (2, 3)), ((1, 1), (1, 2), (2, 1), (2, 3)),
            ((1, 2), (2, 1), (2, 2), (2, 3)))
    c = tri(2, 3, ((1, 1), (1, 2), (1, 3), (2, 1)), ((1, 2), (1, 3), (2, 1), (2, 2)),
            ((1, 3), (2, 1), (2, 2), (2, 3)))
    assert flip_related(a, b) and flip_related(b, a)
    # the single-coarse-cell criterion also accepts (a, c): merging all of
    # a's simplices into the whole prism leaves exactly one non-simplex
    # cell that c trivially refines (coarser than circuit-based flips)
    assert flip_related(a, c) and flip_related(b, c)


def test_all_triangulations_regular_catalogue():
    assert all_triangulations_regular(2, 3)
    assert all_triangulations_regular(5, 2)
    assert all_triangulations_regular(3, 3)
    assert all_triangulations_regular(5, 3)
    assert all_triangulations_regular(3, 5)
    assert not all_triangulations_regular(4, 4)
    assert not all_triangulations_regular(6, 3)
