"""Basis-conjugating automorphisms and their defining relations."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvb3.autf import (
    Automorphism,
    composition_order_report,
    epsilon,
    free_alphabet,
    hnn_identities,
    mccool_disjoint_commutators,
    mccool_same_target_commutators,
    mccool_triple_relations,
    pv_relators_in_cb,
    word_automorphism,
)
from pvb3.word import Word

F3 = free_alphabet(3)
x1, x2, x3 = F3.gens()


@st.composite
def f3_words(draw, max_len=8):
    letters = draw(st.lists(
        st.tuples(st.integers(0, 2), st.sampled_from((1, -1))), max_size=max_len))
    return Word(F3, tuple(letters))


def test_epsilon_images():
    e12 = epsilon(3, 1, 2)
    assert e12(x1) == x2.inv() * x1 * x2
    assert e12(x2) == x2
    assert e12(x3) == x3
    assert e12.inv()(x1) == x2 * x1 * x2.inv()


def test_epsilon_rejects_bad_indices():
    with pytest.raises(ValueError):
        epsilon(3, 1, 1)
    with pytest.raises(ValueError):
        epsilon(3, 0, 2)
    with pytest.raises(ValueError):
        epsilon(3, 1, 4)


def test_automorphism_requires_mutually_inverse_maps():
    from pvb3.word import GenMap
    bad = GenMap(F3, F3, (x1 * x2, x2, x3))
    with pytest.raises(ValueError):
        Automorphism(bad, bad)


def test_product_is_application_order():
    e12, e13 = epsilon(3, 1, 2), epsilon(3, 1, 3)
    assert (e12 * e13)(x1) == e13(e12(x1))


def test_powers_and_inverse():
    e12 = epsilon(3, 1, 2)
    assert (e12 ** 3)(x1) == x2 ** -3 * x1 * x2 ** 3
    assert (e12 * e12.inv()).is_identity()
    assert (e12 ** 0).is_identity()


def test_word_automorphism_evaluates_letters_in_order():
    pair = Word(F3.__class__(("u", "v")), ((0, 1), (1, -1)))  # u v^-1
    f = word_automorphism(pair, (epsilon(3, 1, 2), epsilon(3, 1, 3)))
    assert f.forward == (epsilon(3, 1, 2) * epsilon(3, 1, 3).inv()).forward


def test_inner_automorphism_convention():
    f = Automorphism.inner(x1 * x2)
    assert f(x3) == (x1 * x2).inv() * x3 * x1 * x2
    assert f.is_inner_by(x1 * x2)
    assert not f.is_inner_by(x1)


@given(f3_words(), f3_words())
@settings(max_examples=100)
def test_inner_composition_multiplies_conjugators(w, v):
    assert (Automorphism.inner(w) * Automorphism.inner(v)).is_inner_by(w * v)


def test_disjoint_family_is_empty_on_three_letters():
    assert mccool_disjoint_commutators(3) == []


def test_disjoint_family_counts_and_holds_on_four_letters():
    rels = mccool_disjoint_commutators(4)
    assert len(rels) == 12
    assert all(ok for _, ok in rels)


def test_same_target_commutators_hold():
    rels = mccool_same_target_commutators(3)
    assert len(rels) == 3
    assert all(ok for _, ok in rels)
    assert ("[e21, e31]", True) in rels


def test_triple_relations_hold_in_both_composition_orders():
    rels = mccool_triple_relations(3)
    assert len(rels) == 6
    assert all(ok for _, ok in rels)
    report = composition_order_report(3)
    assert report["application_order"] and report["reversed_order"]


def test_triple_relations_on_four_letters():
    rels = mccool_triple_relations(4)
    assert len(rels) == 24
    assert all(ok for _, ok in rels)


def test_hnn_identities_all_hold():
    rels = hnn_identities()
    assert len(rels) == 14
    failures = [label for label, ok in rels if not ok]
    assert failures == []


def test_pv_relators_die_under_the_conjugating_assignment():
    rels = pv_relators_in_cb(3)
    assert len(rels) == 6
    assert all(ok for _, ok in rels)


def test_pv_relators_die_on_four_strands_too():
    rels = pv_relators_in_cb(4)
    assert len(rels) == 36
    assert all(ok for _, ok in rels)
