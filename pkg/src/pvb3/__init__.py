"""Verified desk-scale computations around the pure virtual braid group
on three strands.

The package covers free-group words and substitutions, finitely
presented groups with consequence certificates, basis-conjugating
automorphisms, nilpotent quotients, the cohomology ring with its wedge
model, and the associated graded Lie ring.  ``pvb3 suite`` (or
``run_suite`` here) executes the ten-check verification battery tying
the pieces together.
"""

from .autf import Automorphism, epsilon, free_alphabet
from .fpres import (
    Presentation,
    SearchBounds,
    g3_presentation,
    is_consequence,
    pv3_new_generators,
    pv3_new_presentation,
    pv_presentation,
)
from .grammar import ParseError, parse_word
from .grcohom import beer_rank, g3_ring, pv3_ring
from .lie import pv3_lie_quotient
from .nq import lcs_ranks, nilpotent_quotient
from .suite import SuiteOptions, run_suite
from .word import Alphabet, GenMap, Word

__all__ = [
    "Alphabet",
    "Automorphism",
    "GenMap",
    "ParseError",
    "Presentation",
    "SearchBounds",
    "SuiteOptions",
    "Word",
    "beer_rank",
    "epsilon",
    "free_alphabet",
    "g3_presentation",
    "g3_ring",
    "is_consequence",
    "lcs_ranks",
    "nilpotent_quotient",
    "parse_word",
    "pv3_lie_quotient",
    "pv3_new_generators",
    "pv3_new_presentation",
    "pv3_ring",
    "pv_presentation",
    "run_suite",
]
