"""Integer cohomology rings for the three-strand pure virtual braid group.

The group splits as a free product of a five-generator factor and an
infinite cyclic factor.  The five-generator factor receives a map from a
wedge of two tori and four genus-two surfaces that identifies first and
second cohomology, so every degree-two product is decided by symplectic
pairings on the wedge summands.  This module builds that model, the
induced restriction of dual classes, the cup pairing, and presentations
of both cohomology rings as quotients of exterior algebras.  Two
independent derivations of the ring relations (direct, and transported
across the free-product splitting) are exposed so tests can compare
their integer spans.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial

from .fpres import G3_NAMES, pv3_new_generators, pv_alphabet
from .intlinalg import IntMatrix, cokernel_invariants, rank
from .word import GenMap


class Exterior:
    """Exterior algebra over the integers on a fixed ordered generator list.

    Elements are kept as dictionaries from strictly increasing index
    tuples to nonzero coefficients, so equality is literal.
    """

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator name")
        self.names = names

    def __len__(self):
        return len(self.names)

    def element(self, terms):
        return ExtElement(self, {k: c for k, c in terms.items() if c})

    def zero(self):
        return self.element({})

    def scalar(self, c):
        return self.element({(): c})

    def gen(self, name):
        return self.element({(self.names.index(name),): 1})

    def gens(self):
        return tuple(self.gen(n) for n in self.names)

    def basis(self, degree):
        """Index tuples of the standard monomial basis in one degree."""
        return tuple(combinations(range(len(self.names)), degree))

    def from_vector(self, degree, vec):
        mono = self.basis(degree)
        if len(vec) != len(mono):
            raise ValueError("vector length does not match the basis")
        return self.element(dict(zip(mono, vec)))


def _merge_sign(left, right):
    # wedge of two increasing tuples: None on repetition, else sorted
    # tuple with the sign of the interleaving permutation
    if set(left) & set(right):
        return None, 0
    inversions = sum(1 for x in right for y in left if y > x)
    return tuple(sorted(left + right)), -1 if inversions % 2 else 1


@dataclass(frozen=True)
class ExtElement:
    algebra: Exterior
    terms: dict

    def __post_init__(self):
        assert all(c for c in self.terms.values())

    def __eq__(self, other):
        return (isinstance(other, ExtElement)
                and self.algebra.names == other.algebra.names
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.algebra.names, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self.algebra.element(out)

    def __neg__(self):
        return self.algebra.element({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.algebra.element(
                {k: c * other for k, c in self.terms.items()})
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key, sign = _merge_sign(k1, k2)
                if key is not None:
                    out[key] = out.get(key, 0) + sign * c1 * c2
        return self.algebra.element(out)

    def __rmul__(self, other):
        if not isinstance(other, int):
            return NotImplemented
        return self * other

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Common degree of all terms; zero elements report -1."""
        degrees = {len(k) for k in self.terms}
        if not degrees:
            return -1
        if len(degrees) > 1:
            raise ValueError("element is not homogeneous")
        return degrees.pop()

    def vector(self, degree):
        return tuple(self.terms.get(k, 0) for k in self.algebra.basis(degree))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            mono = "^".join(self.algebra.names[i] for i in key) or "1"
            if c == 1 and key:
                parts.append(mono)
            elif c == -1 and key:
                parts.append("-" + mono)
            else:
                parts.append("%d*%s" % (c, mono) if key else str(c))
        return " + ".join(parts).replace("+ -", "- ")


def substitute(element, images, target):
    """Apply a degree-one substitution multiplicatively.

    images maps each generator name of the element's algebra to a
    degree-one element of the target algebra.
    """
    out = target.zero()
    for key, c in element.terms.items():
        term = target.scalar(c)
        for i in key:
            term = term * images[element.algebra.names[i]]
        out = out + term
    return out


def relation_matrix(algebra, elements, degree=2):
    rows = [e.vector(degree) for e in elements]
    return IntMatrix.from_rows(rows) if rows else \
        IntMatrix.zero(0, len(algebra.basis(degree)))


@dataclass(frozen=True)
class ExteriorQuotient:
    """Quotient of an exterior algebra by an ideal of degree-two relations."""

    algebra: Exterior
    relations: tuple

    def ideal_matrix(self, degree):
        """Span of relation * monomial inside one graded piece."""
        rows = []
        for r in self.relations:
            for key in self.algebra.basis(degree - 2):
                product = r * self.algebra.element({key: 1})
                rows.append(product.vector(degree))
        cols = len(self.algebra.basis(degree))
        return IntMatrix.from_rows(rows) if rows else IntMatrix.zero(0, cols)

    def invariants(self, degree):
        """(free rank, torsion) of the graded piece of the quotient."""
        if degree < 0:
            return 0, ()
        if degree < 2:
            return len(self.algebra.basis(degree)), ()
        return cokernel_invariants(self.ideal_matrix(degree))

    def ranks(self, top_degree):
        return tuple(self.invariants(d)[0] for d in range(top_degree + 1))

    def torsion(self, top_degree):
        return tuple(self.invariants(d)[1] for d in range(top_degree + 1))


# ---------------------------------------------------------------------------
# The wedge model for the five-generator factor.

WEDGE_BLOCKS = (
    ("x1", "x2"),
    ("x3", "x4"),
    ("y11", "z11", "y12", "z12"),
    ("y21", "z21", "y22", "z22"),
    ("y31", "z31", "y32", "z32"),
    ("y41", "z41", "y42", "z42"),
)

WEDGE_BASIS = tuple(name for block in WEDGE_BLOCKS for name in block)

# first-homology image of each wedge class, in the five-generator basis
WEDGE_HOMOLOGY_IMAGES = {
    "x1": {"a1": 1}, "x2": {"b1": 1}, "x3": {"a2": 1}, "x4": {"b2": 1},
    "y11": {"b1": 1}, "z11": {"c1": 1}, "y12": {"a2": 1}, "z12": {"b1": 1},
    "y21": {"a1": 1}, "z21": {"c1": 1}, "y22": {"b2": 1}, "z22": {"a1": 1},
    "y31": {"b2": 1}, "z31": {"c1": 1}, "y32": {"a1": 1, "b2": 1},
    "z32": {"b2": 1},
    "y41": {"a2": 1}, "z41": {"c1": 1}, "y42": {"a2": 1, "b1": 1},
    "z42": {"a2": 1},
}


def surface_cup(u, v):
    """Cup product of two degree-one classes on the wedge.

    Classes are dictionaries over WEDGE_BASIS; the value is one integer
    per wedge summand, the coefficient on its fundamental class.
    """
    out = []
    for block in WEDGE_BLOCKS:
        total = 0
        for p, q in zip(block[::2], block[1::2]):
            total += u.get(p, 0) * v.get(q, 0) - u.get(q, 0) * v.get(p, 0)
        out.append(total)
    return tuple(out)


def dual_restriction(group_class):
    """Pull a dual class of the five-generator factor back to the wedge.

    Accepts a generator name or a dictionary over G3_NAMES.
    """
    if isinstance(group_class, str):
        group_class = {group_class: 1}
    out = {}
    for name in WEDGE_BASIS:
        c = sum(WEDGE_HOMOLOGY_IMAGES[name].get(g, 0) * m
                for g, m in group_class.items())
        if c:
            out[name] = c
    return out


def g3_cup(u, v):
    """Cup product of two degree-one dual classes, via the wedge model."""
    return surface_cup(dual_restriction(u), dual_restriction(v))


def g3_cup_matrix():
    """Pairing of all lexicographic generator pairs with degree two."""
    pairs = combinations(G3_NAMES, 2)
    return IntMatrix.from_rows([g3_cup(p, q) for p, q in pairs])


def g3_relations(algebra=None):
    """Degree-two relations presenting the five-generator factor's ring."""
    E = algebra or Exterior(G3_NAMES)
    a1, b1, a2, b2, c1 = (E.gen(n) for n in G3_NAMES)
    return (a1 * c1 + a1 * b2 + c1 * b2,
            b1 * c1 + b1 * a2 + c1 * a2,
            a1 * a2,
            b1 * b2)


def g3_ring():
    return ExteriorQuotient(Exterior(G3_NAMES), g3_relations())


# ---------------------------------------------------------------------------
# The full group on three strands.

PV3_DUALS = pv_alphabet(3).names
NEW_DUALS = G3_NAMES + ("c2",)


def free_factor_dual(algebra=None):
    """Degree-one class dual to the infinite cyclic free factor."""
    E = algebra or Exterior(PV3_DUALS)
    l12, l21, l13, l31, l23, l32 = (E.gen(n) for n in PV3_DUALS)
    return l13 - l31 - l12 + l21 - l23 + l32


def pv3_stability_relations(algebra=None):
    """The free-factor dual multiplied against every generator."""
    E = algebra or Exterior(PV3_DUALS)
    sigma = free_factor_dual(E)
    return tuple(sigma * E.gen(n) for n in PV3_DUALS)


def pv3_relations(algebra=None):
    """Degree-two relations presenting the full group's ring."""
    E = algebra or Exterior(PV3_DUALS)
    l12, l21, l13, l31, l23, l32 = (E.gen(n) for n in PV3_DUALS)
    opposite = (l12 * l21, l13 * l31, l23 * l32)
    sparse = l21 * l31 - l21 * l32 - l23 * l31
    return opposite + pv3_stability_relations(E) + (sparse,)


def pv3_ring():
    return ExteriorQuotient(Exterior(PV3_DUALS), pv3_relations())


def degree_one_pullback(genmap: GenMap, source_algebra):
    """Induced substitution on dual classes for a group homomorphism.

    For a map with abelianised matrix M (rows are source generator
    images) the dual of target generator t pulls back to the column-t
    combination of source duals.  Returns a dictionary keyed by target
    generator name.
    """
    m = genmap.abelianisation_matrix()
    gens = source_algebra.gens()
    out = {}
    for t, name in enumerate(genmap.target.names):
        elt = source_algebra.zero()
        for s in range(len(genmap.source)):
            elt = elt + gens[s] * m.entries[s][t]
        out[name] = elt
    return out


def splitting_pullbacks():
    """Mutually inverse dual substitutions induced by the free-product
    identification, as (new duals in the standard basis, standard duals
    in the new basis)."""
    f, g = pv3_new_generators()
    new_in_old = degree_one_pullback(f, Exterior(PV3_DUALS))
    old_in_new = degree_one_pullback(g, Exterior(NEW_DUALS))
    return new_in_old, old_in_new


def pv3_relations_via_splitting():
    """Second derivation of the ring relations, transported across the
    free-product splitting.

    The five-generator factor contributes its four relations; the free
    factor contributes the vanishing of its dual against the other five
    generators.  All nine are rewritten in the standard dual basis.
    """
    E_new = Exterior(NEW_DUALS)
    E_old = Exterior(PV3_DUALS)
    c2 = E_new.gen("c2")
    native = g3_relations(E_new) + tuple(c2 * E_new.gen(n) for n in G3_NAMES)
    new_in_old, _ = splitting_pullbacks()
    return tuple(substitute(r, new_in_old, E_old) for r in native)


def beer_rank(n, r):
    """Closed-form cohomology rank for the group on n strands."""
    if r < 0 or r >= n:
        return 0
    return comb(n - 1, r) * (factorial(n) // factorial(n - r))


def stability_rank():
    """Rank of the span of the free-factor relations alone."""
    return rank(relation_matrix(Exterior(PV3_DUALS), pv3_stability_relations()))
