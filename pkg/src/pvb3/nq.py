"""Nilpotent quotients of finitely presented groups.

The quotient G/gamma_{c+1} is produced class by class as a weighted
polycyclic presentation.  Each stage appends central "tail" generators of
the next weight to every relation that is not the definition of an existing
generator, enforces associativity and power-overlap consistency together
with the original relators, and then cuts the tail lattice down by the
resulting integral constraints.  Definitions never receive tails, and the
image relation of every eliminated original generator always does; both
points are load-bearing, each failure mode having a small group that
detects it.

Normal forms are exponent vectors over the polycyclic generators, computed
by collection from the left.  Collection is deterministic (leftmost
violation first) and guarded by a step budget so that a runaway input
raises :class:`CollectionBudget` instead of looping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .fpres import Presentation
from .intlinalg import IntMatrix, cokernel_invariants, hermite_normal_form
from .word import Word

DEFAULT_BUDGET = 10_000_000


class CollectionBudget(RuntimeError):
    """Raised when a single collection exceeds its step budget."""


@dataclass
class PcSystem:
    """Weighted polycyclic presentation of a nilpotent group.

    Generator i has ``weights[i]`` and ``orders[i]`` (0 means infinite
    order; otherwise ``powers[i]`` holds the normal form of b_i^orders[i]).
    ``comms[(j, i)]`` for j > i is the normal form of [b_j, b_i]; absent
    pairs commute.  ``images[k]`` expresses original generator k of the
    finitely presented group in the polycyclic generators.
    """

    weights: list[int]
    orders: list[int]
    powers: dict[int, list[int]]
    comms: dict[tuple[int, int], list[int]]
    images: list[list[int]]
    definitions: set = field(default_factory=set)
    budget: int = DEFAULT_BUDGET
    _conj_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def num(self) -> int:
        return len(self.weights)

    def zero(self) -> list[int]:
        return [0] * self.num

    # -- letter expansion ----------------------------------------------------

    def expand(self, vec) -> list[tuple[int, int]]:
        out = []
        for i, e in enumerate(vec):
            if e:
                out.extend([(i, 1 if e > 0 else -1)] * abs(e))
        return out

    def expand_inv(self, vec) -> list[tuple[int, int]]:
        return [(g, -s) for g, s in reversed(self.expand(vec))]

    def _conjugate(self, j, sj, i, si) -> list[tuple[int, int]]:
        """Letters for b_i^-si b_j^sj b_i^si, j > i, with no naked b_i left.

        Inserting the raw commutator identity would wrap the correction in
        b_i^+-1 and the wrapper immediately re-triggers the swap it came
        from; resolving the conjugate recursively (the recursion climbs to
        strictly higher generators) is what makes collection terminate.
        """
        key = (j, sj, i, si)
        hit = self._conj_cache.get(key)
        if hit is not None:
            return hit
        u = self.comms.get((j, i))
        if u is None or not any(u):
            out = [(j, sj)]
        elif sj == -1:
            out = [(g, -s) for g, s in reversed(self._conjugate(j, 1, i, si))]
        elif si == 1:
            out = [(j, 1)] + self.expand(u)
        else:
            # b_i b_j b_i^-1 = b_j (b_i u^-1 b_i^-1), letter by letter
            out = [(j, 1)]
            for g, s in self.expand_inv(u):
                out.extend(self._conjugate(g, s, i, -1))
        self._conj_cache[key] = out
        return out

    # -- collection ----------------------------------------------------------

    def collect(self, letters) -> list[int]:
        """Normal form of a product of unit letters, as an exponent vector."""
        w = list(letters)
        steps = 0
        p = 0
        while p < len(w):
            steps += 1
            if steps > self.budget:
                raise CollectionBudget("collection exceeded %d steps" % self.budget)
            g, s = w[p]
            d = self.orders[g]
            if p + 1 < len(w):
                g2, s2 = w[p + 1]
                if g2 == g and s2 == -s:
                    del w[p:p + 2]
                    p = max(0, p - 1)
                    continue
                if g2 < g:
                    w[p:p + 2] = [(g2, s2)] + self._conjugate(g, s, g2, s2)
                    p = max(0, p - 1)
                    continue
            if d >= 2 and s == -1:
                # b^-1 = b^(d-1) v^-1
                w[p:p + 1] = [(g, 1)] * (d - 1) + self.expand_inv(self.powers[g])
                p = max(0, p - 1)
                continue
            if d >= 2 and s == 1 and w[p:p + d] == [(g, 1)] * d:
                w[p:p + d] = self.expand(self.powers[g])
                p = max(0, p - 1)
                continue
            p += 1
        vec = self.zero()
        for g, s in w:
            vec[g] += s
        for i, e in enumerate(vec):
            if self.orders[i] >= 2 and not 0 <= e < self.orders[i]:
                raise AssertionError("collection left exponent %d at torsion generator %d"
                                     % (e, i))
        return vec

    def word_image(self, w: Word) -> list[int]:
        letters = []
        for g, s in w.letters:
            letters.extend(self.expand(self.images[g]) if s == 1
                           else self.expand_inv(self.images[g]))
        return self.collect(letters)

    # -- consistency ---------------------------------------------------------

    def _overlap_pairs(self, max_weight: int):
        """(way1, way2) letter sequences whose collections must agree."""
        n = self.num
        for i, j, k in combinations(range(n), 3):
            # k > j > i as generator indices
            if self.weights[i] + self.weights[j] + self.weights[k] > max_weight:
                continue
            u_ji = self.comms.get((j, i), self.zero())
            u_kj = self.comms.get((k, j), self.zero())
            way1 = [(k, 1), (i, 1), (j, 1)] + self.expand(u_ji)
            way2 = [(j, 1), (k, 1)] + self.expand(u_kj) + [(i, 1)]
            yield ("triple %d %d %d" % (k, j, i), way1, way2)
        for j in range(n):
            dj = self.orders[j]
            if dj < 2:
                continue
            vj = self.powers[j]
            for i in range(j):
                if self.weights[i] + self.weights[j] > max_weight:
                    continue
                u_ji = self.expand(self.comms.get((j, i), self.zero()))
                yield ("power-left %d %d" % (j, i),
                       self.expand(vj) + [(i, 1)],
                       [(j, 1)] * (dj - 1) + [(i, 1), (j, 1)] + u_ji)
            for k in range(j + 1, n):
                if self.weights[j] + self.weights[k] > max_weight:
                    continue
                u_kj = self.expand(self.comms.get((k, j), self.zero()))
                yield ("power-right %d %d" % (k, j),
                       [(k, 1)] + self.expand(vj),
                       [(j, 1), (k, 1)] + u_kj + [(j, 1)] * (dj - 1))
            yield ("power-self %d" % j,
                   [(j, 1)] + self.expand(vj),
                   self.expand(vj) + [(j, 1)])

    def consistency_discrepancies(self, max_weight: int):
        for label, way1, way2 in self._overlap_pairs(max_weight):
            v1 = self.collect(way1)
            v2 = self.collect(way2)
            yield label, [a - b for a, b in zip(v1, v2)]

    def is_consistent(self, max_weight: int) -> bool:
        return all(not any(d) for _, d in self.consistency_discrepancies(max_weight))


@dataclass(frozen=True)
class NilpotentQuotient:
    presentation: Presentation
    class_: int
    system: PcSystem
    layers: tuple[tuple[int, tuple[int, ...]], ...]

    def image(self, w: Word) -> tuple[int, ...]:
        if w.alphabet != self.presentation.alphabet:
            raise ValueError("word is not over the presentation alphabet")
        return tuple(self.system.word_image(w))

    def image_is_trivial(self, w: Word) -> bool:
        return not any(self.image(w))

    @property
    def lcs_ranks(self) -> tuple[int, ...]:
        """Torsion-free rank of each layer gamma_c / gamma_{c+1}."""
        return tuple(free for free, _ in self.layers)


def _negated_rest(row, col, index_of) -> list[int]:
    """-1 times the entries of an HNF row after its pivot, reindexed."""
    out = [0] * len(index_of)
    for m in range(col + 1, len(row)):
        if row[m]:
            target = index_of[m]
            if target is None:
                raise AssertionError("HNF row references an eliminated column")
            out[target] -= row[m]
    return out


def _stage_one(pres: Presentation, budget: int) -> tuple[PcSystem, tuple[int, tuple[int, ...]]]:
    n = pres.num_gens
    matrix = pres.relator_matrix()
    rows, pivots = hermite_normal_form(matrix)
    pivot_at = {col: (val, row) for row, (col, val) in zip(rows, pivots)}
    eliminated = {col for col, (val, _) in pivot_at.items() if val == 1}
    kept = [col for col in range(n) if col not in eliminated]
    index_of = [None] * n
    for new, col in enumerate(kept):
        index_of[col] = new

    weights = [1] * len(kept)
    orders = [0] * len(kept)
    powers: dict[int, list[int]] = {}
    images: list[list[int]] = []
    definitions = set()
    for col in kept:
        if col in pivot_at:
            val, row = pivot_at[col]
            orders[index_of[col]] = val
            powers[index_of[col]] = _negated_rest(row, col, index_of)[:len(kept)]
    for k in range(n):
        if k in eliminated:
            _, row = pivot_at[k]
            images.append(_negated_rest(row, k, index_of)[:len(kept)])
        else:
            unit = [0] * len(kept)
            unit[index_of[k]] = 1
            images.append(unit)
            definitions.add(("img", k))

    system = PcSystem(weights, orders, powers, {}, images, definitions, budget)
    return system, cokernel_invariants(matrix)


def _advance(system: PcSystem, pres: Presentation, new_weight: int) \
        -> tuple[PcSystem, tuple[int, tuple[int, ...]]]:
    base = system.num

    tails = []
    for j in range(base):
        for i in range(j):
            if system.weights[i] + system.weights[j] <= new_weight \
                    and ("comm", j, i) not in system.definitions:
                tails.append(("comm", (j, i)))
    for i in range(base):
        if system.orders[i] >= 2 and ("pow", i) not in system.definitions:
            tails.append(("pow", i))
    for k in range(pres.num_gens):
        if ("img", k) not in system.definitions:
            tails.append(("img", k))

    s = len(tails)
    total = base + s

    def extended(vec) -> list[int]:
        return list(vec) + [0] * (total - len(vec))

    work = PcSystem(
        weights=system.weights + [new_weight] * s,
        orders=system.orders + [0] * s,
        powers={i: extended(v) for i, v in system.powers.items()},
        comms={pair: extended(v) for pair, v in system.comms.items()},
        images=[extended(v) for v in system.images],
        definitions=set(system.definitions),
        budget=system.budget,
    )
    for m, (kind, key) in enumerate(tails):
        idx = base + m
        if kind == "comm":
            j, i = key
            vec = work.comms.setdefault((j, i), [0] * total)
            vec[idx] += 1
        elif kind == "pow":
            work.powers[key][idx] += 1
        else:
            work.images[key][idx] += 1

    constraint_rows = []
    for label, delta in work.consistency_discrepancies(new_weight):
        if any(delta[:base]):
            raise AssertionError("consistency discrepancy %s touches old generators" % label)
        constraint_rows.append(delta[base:])
    for r in pres.relators:
        value = work.word_image(r)
        if any(value[:base]):
            raise AssertionError("relator %s fails to vanish below the new weight" % r)
        constraint_rows.append(value[base:])
    if s == 0:
        return system, (0, ())

    lattice = IntMatrix.from_rows(constraint_rows or [[0] * s])
    layer = cokernel_invariants(lattice)

    rows, pivots = hermite_normal_form(lattice)
    pivot_at = {col: (val, row) for row, (col, val) in zip(rows, pivots)}
    eliminated = {col for col, (val, _) in pivot_at.items() if val == 1}
    survivors = [m for m in range(s) if m not in eliminated]
    tail_index = [None] * s
    for new, m in enumerate(survivors):
        tail_index[m] = base + new
    new_total = base + len(survivors)

    # expressions for eliminated tails, over surviving tail indices
    expr = {}
    for m in sorted(eliminated):
        _, row = pivot_at[m]
        vec = [0] * new_total
        for mm in range(m + 1, s):
            if row[mm]:
                target = tail_index[mm]
                if target is None:
                    raise AssertionError("eliminated tail depends on an eliminated tail")
                vec[target] -= row[mm]
        expr[base + m] = vec

    def rebuilt(vec) -> list[int]:
        out = [0] * new_total
        for idx in range(base):
            out[idx] = vec[idx]
        for m in range(s):
            e = vec[base + m]
            if not e:
                continue
            if tail_index[m] is not None:
                out[tail_index[m]] += e
            else:
                sub = expr[base + m]
                for t in range(new_total):
                    out[t] += e * sub[t]
        return out

    new_system = PcSystem(
        weights=system.weights + [new_weight] * len(survivors),
        orders=system.orders + [0] * len(survivors),
        powers={i: rebuilt(v) for i, v in work.powers.items()},
        comms={pair: vec for pair, vec in
               ((pair, rebuilt(v)) for pair, v in work.comms.items()) if any(vec)},
        images=[rebuilt(v) for v in work.images],
        definitions=set(system.definitions),
        budget=system.budget,
    )
    for new, m in enumerate(survivors):
        val, row = pivot_at.get(m, (0, None))
        idx = base + new
        if val >= 2:
            new_system.orders[idx] = val
            new_system.powers[idx] = rebuilt([0] * base + [-x if mm > m else 0
                                              for mm, x in enumerate(row)])
        kind, key = tails[m]
        if kind == "comm":
            new_system.definitions.add(("comm", key[0], key[1]))
        elif kind == "pow":
            new_system.definitions.add(("pow", key))
        else:
            new_system.definitions.add(("img", key))
    return new_system, layer


def nilpotent_quotient(pres: Presentation, class_: int,
                       budget: int = DEFAULT_BUDGET) -> NilpotentQuotient:
    """Polycyclic presentation of G/gamma_{class_+1} with layer invariants."""
    if class_ < 1:
        raise ValueError("class must be at least 1")
    system, layer = _stage_one(pres, budget)
    layers = [layer]
    for c in range(2, class_ + 1):
        system, layer = _advance(system, pres, c)
        layers.append(layer)
    return NilpotentQuotient(pres, class_, system, tuple(layers))


def lcs_ranks(pres: Presentation, class_: int,
              budget: int = DEFAULT_BUDGET) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Lower-central layers (free rank, torsion) up to the given class."""
    return nilpotent_quotient(pres, class_, budget).layers
