"""Finite presentations, consequence certificates, and the groups under study.

The distinguished presentations:

``pv_presentation(n)``
    Pure virtual braids on n strands, generators lij for i != j, with the
    commutator relators [lij, lkl] for disjoint index pairs and the
    six-letter relators lki lkj lij lki^-1 lkj^-1 lij^-1.

``g3_presentation()``
    The group generated by a1, b1, a2, b2, c1 in which the two pairs
    (a1, b1), (a2, b2) commute internally and c1 conjugates each of
    b1, a1, b2, a2 the same way a specific word in the other pair does.

``pv3_new_presentation()``
    The same relators with one extra free generator c2; this is the free
    product of the previous group with the integers.

``pv3_new_generators()``
    The mutually inverse substitution maps relating the lij alphabet to the
    a/b/c alphabet.  Both composites are identities on the nose in the free
    groups; that the relators match up is a consequence check.

Consequence checking is certificate-based: a word is exhibited as a product
of conjugated relators, and certificates found by search are re-verified by
free reduction before being returned.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import permutations

from .grammar import parse_presentation_text
from .word import Alphabet, GenMap, Word


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        for r in self.relators:
            if r.alphabet != self.alphabet:
                raise ValueError("relator %s is not over the presentation alphabet" % r)

    @staticmethod
    def from_text(text: str) -> "Presentation":
        alphabet, relators = parse_presentation_text(text)
        return Presentation(alphabet, relators)

    @property
    def num_gens(self) -> int:
        return len(self.alphabet)

    def relator_matrix(self):
        """Exponent vectors of the relators, one row each."""
        from .intlinalg import IntMatrix

        return IntMatrix.from_rows(
            [r.exponent_vector() for r in self.relators] or [[0] * self.num_gens])

    def abelianisation(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion factors) of the abelianised group."""
        from .intlinalg import cokernel_invariants

        return cokernel_invariants(self.relator_matrix())

    def __str__(self) -> str:
        lines = ["gens: " + " ".join(self.alphabet.names)]
        lines += ["rel: " + str(r) for r in self.relators]
        return "\n".join(lines)


def pv_alphabet(n: int) -> Alphabet:
    names = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            names.append("l%d%d" % (i, j))
            names.append("l%d%d" % (j, i))
    return Alphabet(tuple(names))


def pv_presentation(n: int) -> Presentation:
    """Pure virtual braid group on n strands."""
    if n < 2:
        raise ValueError("need at least two strands")
    alphabet = pv_alphabet(n)
    l = {(i, j): alphabet.gen("l%d%d" % (i, j))
         for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    relators = []
    seen = set()
    for i, j, k, m in permutations(range(1, n + 1), 4):
        key = frozenset(((i, j), (k, m)))
        if key in seen:
            continue
        seen.add(key)
        relators.append(l[i, j].comm(l[k, m]))
    for k, i, j in permutations(range(1, n + 1), 3):
        relators.append(l[k, i] * l[k, j] * l[i, j]
                        * l[k, i].inv() * l[k, j].inv() * l[i, j].inv())
    return Presentation(alphabet, tuple(relators))


G3_NAMES = ("a1", "b1", "a2", "b2", "c1")


def _conjugation_relators(alphabet: Alphabet) -> tuple[Word, ...]:
    a1, b1, a2, b2, c1 = (alphabet.gen(n) for n in G3_NAMES)
    pairs = ((b1, a2), (a1, b2), (b2, a1 * b2), (a2, b1 * a2))
    # c1^-1 y c1 = w^-1 y w for each pair (y, w)
    conj = tuple(c1.inv() * y * c1 * w.inv() * y.inv() * w for y, w in pairs)
    return (a1.comm(b1), a2.comm(b2)) + conj


def g3_presentation() -> Presentation:
    alphabet = Alphabet(G3_NAMES)
    return Presentation(alphabet, _conjugation_relators(alphabet))


def pv3_new_presentation() -> Presentation:
    """Free product of the five-generator group with one more free generator."""
    alphabet = Alphabet(G3_NAMES + ("c2",))
    return Presentation(alphabet, _conjugation_relators(alphabet))


def pv3_new_generators() -> tuple[GenMap, GenMap]:
    """Substitutions (old to new, new to old), mutually inverse as free maps."""
    old = pv_alphabet(3)
    new = Alphabet(G3_NAMES + ("c2",))
    a1, b1, a2, b2, c1, c2 = new.gens()
    l = {name: old.gen(name) for name in old.names}
    f = GenMap.from_dict(old, new, {
        "l12": c2.inv() * b1,
        "l21": b2 * c1.inv() * c2,
        "l13": c2,
        "l31": c2.inv() * c1,
        "l23": c2.inv() * a1,
        "l32": a2 * c1.inv() * c2,
    })
    g = GenMap.from_dict(new, old, {
        "a1": l["l13"] * l["l23"],
        "b1": l["l13"] * l["l12"],
        "a2": l["l32"] * l["l31"],
        "b2": l["l21"] * l["l31"],
        "c1": l["l13"] * l["l31"],
        "c2": l["l13"],
    })
    return f, g


@dataclass(frozen=True)
class ConjugatePowerFamily:
    """The infinite relator family w^(c^k), k in Z, materialised on demand."""

    base: Word
    conjugator: Word

    def relator(self, k: int) -> Word:
        return self.base.conj(self.conjugator ** k)

    def materialise(self, bound: int) -> tuple[Word, ...]:
        return tuple(self.relator(k) for k in range(-bound, bound + 1))


def q3_relator_families() -> tuple[ConjugatePowerFamily, ConjugatePowerFamily]:
    alphabet = Alphabet(G3_NAMES)
    a1, b1, a2, b2, c1 = alphabet.gens()
    return (ConjugatePowerFamily(a1.comm(b1), c1),
            ConjugatePowerFamily(a2.comm(b2), c1))


def q3_presentation(bound: int = 3) -> Presentation:
    """Quotient with all c1-power conjugates of the two commutators killed,
    truncated to |k| <= bound."""
    families = q3_relator_families()
    relators = families[0].materialise(bound) + families[1].materialise(bound)
    return Presentation(Alphabet(G3_NAMES), relators)


def extend_embedding(sub: Alphabet, full: Alphabet) -> GenMap:
    """Inclusion of free groups induced by a name-preserving inclusion."""
    return GenMap(sub, full, tuple(full.gen(name) for name in sub.names))


def mapping_torus_presentation(phi, stable_name: str = "t") -> Presentation:
    """Presentation of the mapping torus of an endomorphism phi of a free
    group, with t w t^-1 = phi(w) for fiber words w."""
    fw = phi.forward if hasattr(phi, "forward") else phi
    fiber = fw.source
    if stable_name in fiber:
        raise ValueError("stable letter %r clashes with a fiber generator" % stable_name)
    full = Alphabet(fiber.names + (stable_name,))
    t = full.gen(stable_name)
    inc = extend_embedding(fiber, full)
    relators = tuple(t * inc(x) * t.inv() * inc(fw(x)).inv() for x in fiber.gens())
    return Presentation(full, relators)


@dataclass(frozen=True)
class TorusElement:
    """Normal form w t^k in a mapping torus."""

    torus: "MappingTorus"
    fiber: Word
    shift: int

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        if self.torus is not other.torus and self.torus != other.torus:
            raise ValueError("elements of different mapping tori")
        return TorusElement(self.torus,
                            self.fiber * self.torus.twist(other.fiber, self.shift),
                            self.shift + other.shift)

    def inv(self) -> "TorusElement":
        # (w t^k)^-1 = t^-k w^-1 = phi^-k(w^-1) t^-k
        return TorusElement(self.torus,
                            self.torus.twist(self.fiber.inv(), -self.shift),
                            -self.shift)

    @property
    def is_identity(self) -> bool:
        return self.shift == 0 and self.fiber.is_identity

    def comm(self, other: "TorusElement") -> "TorusElement":
        return self.inv() * other.inv() * self * other

    def __str__(self) -> str:
        if self.shift == 0:
            return str(self.fiber)
        t = "%s^%d" % (self.torus.stable_name, self.shift) if self.shift != 1 \
            else self.torus.stable_name
        return t if self.fiber.is_identity else "%s %s" % (self.fiber, t)


@dataclass(frozen=True)
class MappingTorus:
    """Semidirect product of a free group with Z acting by an automorphism."""

    automorphism: object  # Automorphism; kept loose to avoid an import cycle
    stable_name: str = "t"

    def twist(self, w: Word, k: int) -> Word:
        phi = self.automorphism if k >= 0 else self.automorphism.inv()
        for _ in range(abs(k)):
            w = phi(w)
        return w

    @property
    def fiber_alphabet(self) -> Alphabet:
        return self.automorphism.alphabet

    def identity(self) -> TorusElement:
        return TorusElement(self, self.fiber_alphabet.identity(), 0)

    def element(self, fiber: Word, shift: int = 0) -> TorusElement:
        return TorusElement(self, fiber, shift)

    def from_word(self, w: Word) -> TorusElement:
        """Collect a word over fiber + stable letter into normal form."""
        full = w.alphabet
        t_index = full.index(self.stable_name)
        fiber = self.fiber_alphabet
        out = self.identity()
        for g, s in w.letters:
            if g == t_index:
                out = out * TorusElement(self, fiber.identity(), s)
            else:
                letter = Word(fiber, ((fiber.index(full.names[g]), s),))
                out = out * TorusElement(self, letter, 0)
        return out

    def presentation(self) -> Presentation:
        return mapping_torus_presentation(self.automorphism, self.stable_name)


def residual_nilpotence_criterion(phi) -> tuple[str, int]:
    """Determinant test on the abelianised monodromy.

    Returns (verdict, det(A - E)) where A abelianises phi.  When the
    determinant is a unit the mapping torus has no homology obstruction to
    approximating the fiber by nilpotent quotients and the verdict is
    CRITERION_APPLIES; otherwise the test is INCONCLUSIVE.
    """
    from .intlinalg import IntMatrix, determinant

    fw = phi.forward if hasattr(phi, "forward") else phi
    if fw.source != fw.target:
        raise ValueError("need an endomorphism")
    a = fw.abelianisation_matrix()
    n = a.nrows
    e = IntMatrix.identity(n)
    diff = IntMatrix.from_rows([[a.entries[i][j] - e.entries[i][j] for j in range(n)]
                                for i in range(n)])
    d = determinant(diff)
    return ("CRITERION_APPLIES" if abs(d) == 1 else "INCONCLUSIVE", d)


# -- consequence certificates ------------------------------------------------

VERIFIED = "VERIFIED"
REFUTED = "REFUTED"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SearchBounds:
    max_steps: int = 12
    max_prefix: int = 8
    max_states: int = 200_000
    refute_class: int = 4


@dataclass(frozen=True)
class CertificateStep:
    """One factor u r^sign u^-1 of a consequence certificate."""

    conjugator: Word
    relator_index: int
    sign: int


@dataclass(frozen=True)
class ConsequenceResult:
    status: str
    certificate: tuple[CertificateStep, ...] | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.status == VERIFIED


def certificate_product(pres: Presentation, certificate) -> Word:
    out = pres.alphabet.identity()
    for step in certificate:
        r = pres.relators[step.relator_index]
        out = out * step.conjugator * r ** step.sign * step.conjugator.inv()
    return out


def verify_certificate(pres: Presentation, w: Word, certificate) -> bool:
    """Check that the certificate product freely reduces to w."""
    return certificate_product(pres, certificate) == w


def check_syzygy(pres: Presentation, certificate) -> bool:
    """True iff the certificate product freely reduces to the identity.

    A certificate whose product is trivial is an identity among relations;
    the checker is generic and takes the labelling as explicit input.
    """
    return certificate_product(pres, certificate).is_identity


def is_consequence(pres: Presentation, w: Word,
                   bounds: SearchBounds = SearchBounds()) -> ConsequenceResult:
    """Decide whether w lies in the normal closure of the relators.

    The search inserts conjugated relators; a success is returned only after
    the reconstructed certificate has been re-verified by free reduction.
    Exhausting the bounds falls back to nilpotent-quotient refutation, and
    if that also fails the result is UNKNOWN rather than a guess.
    """
    if w.alphabet != pres.alphabet:
        raise ValueError("word is not over the presentation alphabet")
    if w.is_identity:
        return ConsequenceResult(VERIFIED, ())

    # cheap refutation first: the image in the abelianisation must vanish
    from .intlinalg import in_row_lattice

    if not in_row_lattice(pres.relator_matrix(), w.exponent_vector()):
        return ConsequenceResult(REFUTED, None, "nonzero in the abelianisation")

    # a word and its cyclic core lie in the normal closure together, and
    # the search does much better on the core; shift the certificate back
    core, outer = w.cyclic_reduction()
    if not outer.is_identity:
        inner = is_consequence(pres, core, bounds)
        if inner.status != VERIFIED:
            return inner
        shift = outer.inv()
        certificate = tuple(
            CertificateStep(shift * step.conjugator, step.relator_index, step.sign)
            for step in inner.certificate)
        if not verify_certificate(pres, w, certificate):
            raise AssertionError("conjugation produced an invalid certificate")
        return ConsequenceResult(VERIFIED, certificate)

    inserts = []
    for idx, r in enumerate(pres.relators):
        for s in (1, -1):
            inserts.append((idx, s, (r ** s).letters))

    start = w.letters
    heap = [(0, len(start), start)]
    came_from: dict = {start: None}
    found = None
    while heap and len(came_from) < bounds.max_states:
        steps, _, letters = heapq.heappop(heap)
        if steps >= bounds.max_steps:
            continue
        v = Word(pres.alphabet, letters)
        for p in range(0, min(len(letters), bounds.max_prefix) + 1):
            head, tail = letters[:p], letters[p:]
            for idx, s, rel_letters in inserts:
                child = Word(pres.alphabet, head + rel_letters + tail)
                key = child.letters
                if key in came_from:
                    continue
                came_from[key] = (letters, p, idx, s)
                if not key:
                    found = key
                    break
                heapq.heappush(heap, (steps + 1, len(key), key))
            if found is not None:
                break
        if found is not None:
            break

    if found is not None:
        moves = []
        key = found
        while came_from[key] is not None:
            parent, p, idx, s = came_from[key]
            moves.append((parent, p, idx, s))
            key = parent
        moves.reverse()  # now in application order starting from w
        certificate = tuple(
            CertificateStep(Word(pres.alphabet, parent[:p]), idx, -s)
            for parent, p, idx, s in moves)
        if not verify_certificate(pres, w, certificate):
            raise AssertionError("search produced an invalid certificate")
        return ConsequenceResult(VERIFIED, certificate)

    # search exhausted; try to refute in small nilpotent quotients
    from .nq import nilpotent_quotient

    for c in range(2, bounds.refute_class + 1):
        q = nilpotent_quotient(pres, c)
        if not q.image_is_trivial(w):
            return ConsequenceResult(
                REFUTED, None, "nonzero in the class-%d quotient" % c)
    return ConsequenceResult(UNKNOWN, None,
                             "bounds exhausted without certificate or refutation")


def check_homomorphism_free(pres: Presentation, images: GenMap) -> list[tuple[str, bool]]:
    """Relator-by-relator check that a substitution kills the relators in a
    free group (so the map factors through the presented group)."""
    if images.source != pres.alphabet:
        raise ValueError("substitution source does not match the presentation")
    return [(str(r), images(r).is_identity) for r in pres.relators]


def check_homomorphism_presented(
        pres: Presentation, images: GenMap, target: Presentation,
        bounds: SearchBounds = SearchBounds()) -> list[tuple[str, ConsequenceResult]]:
    """As above, but the relator images only need to die in the target
    presentation; each gets a consequence search."""
    if images.source != pres.alphabet:
        raise ValueError("substitution source does not match the presentation")
    if images.target != target.alphabet:
        raise ValueError("substitution target does not match the target presentation")
    return [(str(r), is_consequence(target, images(r), bounds)) for r in pres.relators]
