"""Cohomology rings: wedge model, cup pairing, and both relation routes."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvb3.fpres import G3_NAMES, pv_presentation
from pvb3.grcohom import (
    NEW_DUALS,
    PV3_DUALS,
    WEDGE_BASIS,
    WEDGE_BLOCKS,
    WEDGE_HOMOLOGY_IMAGES,
    Exterior,
    beer_rank,
    dual_restriction,
    free_factor_dual,
    g3_cup,
    g3_cup_matrix,
    g3_relations,
    g3_ring,
    pv3_relations,
    pv3_relations_via_splitting,
    pv3_ring,
    pv3_stability_relations,
    relation_matrix,
    splitting_pullbacks,
    stability_rank,
    substitute,
    surface_cup,
)
from pvb3.intlinalg import IntMatrix, kernel_basis, rank, row_lattices_equal

# duals of the five group generators, restricted to the wedge
RESTRICTION_TABLE = {
    "a1": {"x1": 1, "y21": 1, "z22": 1, "y32": 1},
    "b1": {"x2": 1, "y11": 1, "z12": 1, "y42": 1},
    "a2": {"x3": 1, "y12": 1, "y41": 1, "y42": 1, "z42": 1},
    "b2": {"x4": 1, "y22": 1, "y31": 1, "y32": 1, "z32": 1},
    "c1": {"z11": 1, "z21": 1, "z31": 1, "z41": 1},
}

# nonzero products of generator duals, one fundamental class each
PRODUCT_TABLE = {
    ("a1", "b1"): (1, 0, 0, 0, 0, 0),
    ("a2", "b2"): (0, 1, 0, 0, 0, 0),
    ("b1", "c1"): (0, 0, 1, 0, 0, 0),
    ("a1", "c1"): (0, 0, 0, 1, 0, 0),
    ("b2", "c1"): (0, 0, 0, 0, 1, 0),
    ("a2", "c1"): (0, 0, 0, 0, 0, 1),
}


def small_elements(names, degree):
    E = Exterior(names)
    mono = E.basis(degree)
    return st.lists(st.integers(-3, 3), min_size=len(mono),
                    max_size=len(mono)).map(lambda v: E.from_vector(degree, v))


def test_exterior_generators_anticommute_and_square_to_zero():
    E = Exterior(("u", "v", "w"))
    u, v, w = E.gens()
    assert (u * v + v * u).is_zero()
    assert (u * u).is_zero()
    assert u * v * w == -(v * u * w)
    assert (u * v * w * u).is_zero()


@given(small_elements(("u", "v", "w", "t"), 1),
       small_elements(("u", "v", "w", "t"), 1),
       small_elements(("u", "v", "w", "t"), 1))
@settings(max_examples=50, deadline=None)
def test_exterior_product_is_bilinear_and_associative(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == -(y * x)


def test_exterior_vector_round_trip():
    E = Exterior(("u", "v", "w"))
    u, v, w = E.gens()
    e = 2 * (u * v) - 3 * (v * w)
    assert e.degree() == 2
    assert e.vector(2) == (2, 0, -3)
    assert E.from_vector(2, e.vector(2)) == e
    with pytest.raises(ValueError):
        (u + u * v).degree()
    with pytest.raises(ValueError):
        Exterior(("u", "u"))


def test_wedge_basis_is_consistent():
    assert len(WEDGE_BASIS) == 20
    assert len(WEDGE_BLOCKS) == 6
    assert set(WEDGE_HOMOLOGY_IMAGES) == set(WEDGE_BASIS)


def test_dual_restriction_golden_values():
    for name, expected in RESTRICTION_TABLE.items():
        assert dual_restriction(name) == expected


def test_restriction_is_transpose_of_homology_images():
    for wname in WEDGE_BASIS:
        for gname, coeff in WEDGE_HOMOLOGY_IMAGES[wname].items():
            assert dual_restriction(gname).get(wname, 0) == coeff


def test_cup_products_of_generator_duals():
    for (p, q), expected in PRODUCT_TABLE.items():
        assert g3_cup(p, q) == expected
    assert g3_cup("a1", "a2") == (0,) * 6
    assert g3_cup("b1", "b2") == (0,) * 6
    assert g3_cup("a1", "b2") == (0, 0, 0, -1, 1, 0)
    assert g3_cup("b1", "a2") == (0, 0, -1, 0, 0, 1)


def test_worked_reduction_values():
    assert g3_cup("b2", "a1") == (0, 0, 0, 1, -1, 0)
    assert g3_cup("b2", "b1") == (0,) * 6


@given(st.dictionaries(st.sampled_from(WEDGE_BASIS), st.integers(-3, 3),
                       max_size=6),
       st.dictionaries(st.sampled_from(WEDGE_BASIS), st.integers(-3, 3),
                       max_size=6))
@settings(max_examples=60, deadline=None)
def test_surface_cup_is_antisymmetric(u, v):
    assert surface_cup(u, v) == tuple(-c for c in surface_cup(v, u))
    assert surface_cup(u, u) == (0,) * 6


def test_pairing_matrix_has_full_image():
    m = g3_cup_matrix()
    assert rank(m) == 6


def test_kernel_of_pairing_is_spanned_by_the_four_relations():
    rel = relation_matrix(Exterior(G3_NAMES), g3_relations())
    assert rank(rel) == 4
    kernel = kernel_basis(g3_cup_matrix().transpose())
    assert row_lattices_equal(rel, IntMatrix.from_rows(kernel))


def test_five_generator_ring_ranks():
    ring = g3_ring()
    assert ring.ranks(3) == (1, 5, 6, 0)
    assert ring.torsion(3) == ((), (), (), ())


def test_full_ring_ranks_match_closed_form():
    ring = pv3_ring()
    assert ring.ranks(3) == (1, 6, 6, 0)
    assert ring.torsion(3) == ((), (), (), ())
    assert ring.ranks(3) == tuple(beer_rank(3, r) for r in range(4))


def test_closed_form_rank_values():
    assert [beer_rank(2, r) for r in range(3)] == [1, 2, 0]
    assert [beer_rank(4, r) for r in range(5)] == [1, 12, 36, 24, 0]
    for n in (2, 3, 4, 5):
        assert beer_rank(n, 1) == n * (n - 1)
    assert beer_rank(3, -1) == 0


def test_degree_one_rank_matches_abelianisation():
    for n in (2, 3):
        free, torsion = pv_presentation(n).abelianisation()
        assert (free, torsion) == (beer_rank(n, 1), ())


def test_both_relation_routes_span_the_same_lattice():
    E = Exterior(PV3_DUALS)
    direct = relation_matrix(E, pv3_relations(E))
    transported = relation_matrix(E, pv3_relations_via_splitting())
    assert rank(direct) == 9
    assert rank(transported) == 9
    assert row_lattices_equal(direct, transported)


def test_stability_relations_have_one_dependency():
    assert len(pv3_stability_relations()) == 6
    assert stability_rank() == 5
    sigma = free_factor_dual()
    assert (sigma * sigma).is_zero()


def test_splitting_pullbacks_golden_values():
    new_in_old, old_in_new = splitting_pullbacks()
    E = Exterior(PV3_DUALS)
    l12, l21, l13, l31, l23, l32 = (E.gen(n) for n in PV3_DUALS)
    assert new_in_old["a1"] == l23
    assert new_in_old["b1"] == l12
    assert new_in_old["a2"] == l32
    assert new_in_old["b2"] == l21
    assert new_in_old["c1"] == l31 - l32 - l21
    assert new_in_old["c2"] == free_factor_dual(E)
    En = Exterior(NEW_DUALS)
    a1, b1, a2, b2, c1, c2 = En.gens()
    assert old_in_new["l13"] == a1 + b1 + c1 + c2
    assert old_in_new["l31"] == a2 + b2 + c1
    assert old_in_new["l12"] == b1
    assert old_in_new["l21"] == b2
    assert old_in_new["l23"] == a1
    assert old_in_new["l32"] == a2


def test_splitting_pullbacks_are_mutually_inverse():
    new_in_old, old_in_new = splitting_pullbacks()
    E, En = Exterior(PV3_DUALS), Exterior(NEW_DUALS)
    for n in NEW_DUALS:
        assert substitute(new_in_old[n], old_in_new, En) == En.gen(n)
    for n in PV3_DUALS:
        assert substitute(old_in_new[n], new_in_old, E) == E.gen(n)


@given(small_elements(tuple("pqr"), 1), small_elements(tuple("pqr"), 1))
@settings(max_examples=40, deadline=None)
def test_substitution_is_multiplicative(x, y):
    E, En = Exterior(tuple("pqr")), Exterior(tuple("PQR"))
    images = {"p": En.gen("P") + 2 * En.gen("Q"), "q": En.gen("Q"),
              "r": En.gen("R") - En.gen("P")}
    assert substitute(x * y, images, En) == \
        substitute(x, images, En) * substitute(y, images, En)
