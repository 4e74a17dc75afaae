"""Nilpotent quotients: layer invariants, images, refutation fallback."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvb3.autf import Automorphism
from pvb3.fpres import (
    REFUTED,
    UNKNOWN,
    MappingTorus,
    Presentation,
    SearchBounds,
    is_consequence,
    mapping_torus_presentation,
    pv_presentation,
)
from pvb3.nq import CollectionBudget, lcs_ranks, nilpotent_quotient
from pvb3.word import Alphabet, GenMap, Word

AB = Alphabet(("a", "b"))
a, b = AB.gens()
F2 = Presentation(AB, ())


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def mobius(n):
    primes = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            primes.append(p)
            m //= p
            if m % p == 0:
                return 0
        else:
            p += 1
    if m > 1:
        primes.append(m)
    return -1 if len(primes) % 2 else 1


def witt(n, d):
    """Independent oracle for ranks of the free Lie ring."""
    total = sum(mobius(e) * n ** (d // e) for e in divisors(d))
    assert total % d == 0
    return total // d


def test_free_group_layers_match_witt_oracle():
    for n, depth in ((2, 4), (3, 3)):
        names = Alphabet(tuple("xyz"[:n]))
        layers = lcs_ranks(Presentation(names, ()), depth)
        assert layers == tuple((witt(n, d), ()) for d in range(1, depth + 1))


def test_abelian_square_kills_everything_above_degree_one():
    assert lcs_ranks(Presentation(AB, (a.comm(b),)), 3) == \
        ((2, ()), (0, ()), (0, ()))


def test_heisenberg_layers():
    pres = Presentation(AB, (a.comm(b).comm(a), a.comm(b).comm(b)))
    assert lcs_ranks(pres, 3) == ((2, ()), (1, ()), (0, ()))


def test_generator_eliminated_by_a_relator_still_counts():
    # x = [z, y] forces x into the derived subgroup; the group is free of rank 2
    names = Alphabet(("x", "y", "z"))
    x, y, z = names.gens()
    pres = Presentation(names, (x * z.comm(y).inv(),))
    assert lcs_ranks(pres, 3) == ((2, ()), (1, ()), (2, ()))


def test_klein_bottle_layers():
    names = Alphabet(("a", "t"))
    ka, kt = names.gens()
    pres = Presentation(names, (kt * ka * kt.inv() * ka,))
    assert lcs_ranks(pres, 4) == ((1, (2,)), (0, (2,)), (0, (2,)), (0, (2,)))


def test_cyclic_two_layers_and_images():
    names = Alphabet(("a",))
    g = names.gen("a")
    pres = Presentation(names, (g ** 2,))
    q = nilpotent_quotient(pres, 2)
    assert q.layers == ((0, (2,)), (0, ()))
    assert q.image(g ** 3) == q.image(g)
    assert q.image_is_trivial(g ** 4)
    assert not q.image_is_trivial(g)


def test_trivial_group_from_coprime_powers():
    names = Alphabet(("a",))
    g = names.gen("a")
    pres = Presentation(names, (g ** 3, g ** 5))
    q = nilpotent_quotient(pres, 2)
    assert q.layers == ((0, ()), (0, ()))
    assert q.image_is_trivial(g)


def test_pv3_layers_are_torsion_free():
    layers = lcs_ranks(pv_presentation(3), 3)
    assert layers == ((6, ()), (9, ()), (34, ()))


def test_relators_die_in_their_quotients():
    for pres, depth in ((pv_presentation(3), 2),
                        (Presentation(AB, (a.comm(b),)), 3)):
        q = nilpotent_quotient(pres, depth)
        for r in pres.relators:
            assert q.image_is_trivial(r)


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_conjugates_of_relators_die(data):
    pres = pv_presentation(3)
    q = nilpotent_quotient(pres, 2)
    r = data.draw(st.sampled_from(pres.relators))
    letters = data.draw(st.lists(
        st.tuples(st.integers(0, 5), st.sampled_from((1, -1))), max_size=5))
    u = Word(pres.alphabet, tuple(letters))
    assert q.image_is_trivial(r.conj(u))


@given(st.lists(st.tuples(st.integers(0, 1), st.sampled_from((1, -1))), max_size=8))
@settings(max_examples=60, deadline=None)
def test_image_of_inverse_cancels(letters):
    q = nilpotent_quotient(Presentation(AB, (a ** 2 * b ** 2,)), 3)
    w = Word(AB, tuple(letters))
    assert q.image_is_trivial(w * w.inv())


def test_final_system_is_consistent():
    for pres, depth in ((pv_presentation(3), 3), (F2, 4)):
        q = nilpotent_quotient(pres, depth)
        assert q.system.is_consistent(depth)


def test_lcs_ranks_property():
    q = nilpotent_quotient(F2, 4)
    assert q.lcs_ranks == (2, 1, 2, 3)


def test_separation_of_commuting_counterexamples():
    pres = pv_presentation(3)
    q = nilpotent_quotient(pres, 3)
    L = {name: pres.alphabet.gen(name) for name in pres.alphabet.names}
    pairs = [
        (L["l12"] * L["l21"], L["l21"] * L["l12"]),
        (L["l13"] * L["l31"], L["l31"] * L["l13"]),
        (L["l23"] * L["l32"], L["l32"] * L["l23"]),
    ]
    for left, right in pairs:
        assert q.image(left) != q.image(right)
    # control: this pair really is equal in the group (a defining relation)
    same = (L["l12"] * L["l13"] * L["l23"], L["l23"] * L["l13"] * L["l12"])
    assert q.image(same[0]) == q.image(same[1])


def test_mapping_torus_fiber_dies_in_class_two():
    fw = GenMap.from_dict(AB, AB, {"a": a ** 2 * b, "b": a * b})
    bw = GenMap.from_dict(AB, AB, {"a": a * b.inv(), "b": b * a.inv() * b})
    phi = Automorphism(fw, bw)
    pres = mapping_torus_presentation(phi)
    q2 = nilpotent_quotient(pres, 2)
    aa, bb, t = pres.alphabet.gens()
    assert q2.image_is_trivial(aa)
    assert q2.image_is_trivial(bb)
    assert not q2.image_is_trivial(t)
    # the worked commutator identity holds in the class-3 quotient as well
    q3 = nilpotent_quotient(pres, 3)
    assert q3.image_is_trivial(t.inv().comm(bb.inv()) * aa.inv())


def test_refutation_by_class_two_quotient():
    pres = Presentation(AB, (a ** 2,))
    res = is_consequence(pres, a.comm(b),
                         SearchBounds(max_steps=3, max_states=500, refute_class=2))
    assert res.status == REFUTED
    assert "class-2" in res.detail


def test_unknown_when_bounds_exhausted_without_refutation():
    # a weight-four commutator is invisible below class 4 and there are no
    # relators to build a certificate from
    w = a.comm(b).comm(a).comm(a)
    res = is_consequence(F2, w,
                         SearchBounds(max_steps=2, max_states=100, refute_class=3))
    assert res.status == UNKNOWN


def test_collection_budget_is_enforced():
    with pytest.raises(CollectionBudget):
        nilpotent_quotient(pv_presentation(3), 3, budget=50)


def test_class_must_be_positive():
    with pytest.raises(ValueError):
        nilpotent_quotient(F2, 0)
