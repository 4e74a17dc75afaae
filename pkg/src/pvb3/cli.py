"""Command-line front end for the toolkit.

Words are whitespace- or ``*``-separated atoms ``name`` and ``name^k``
(k a nonzero integer), with commutator brackets ``[u, v]`` for
u^-1 v^-1 u v, parentheses for grouping, and ``1`` for the identity.
Presentation files hold one ``gens:`` line followed by ``rel:`` lines;
``#`` starts a comment.  Wherever a command expects a presentation,
one of the built-in names pv3, pv4, g3, pv3-new or q3 may stand in
for a file path.

Exit status is 0 when everything requested holds, 1 when a comparison
fails or a single question is refuted or left undecided, and 2 for
usage errors such as unparseable input.
"""

from __future__ import annotations

import argparse
import re
import sys
from itertools import combinations
from pathlib import Path

from .autf import (
    Automorphism,
    composition_order_report,
    epsilon,
    free_alphabet,
    hnn_identities,
    mccool_disjoint_commutators,
    mccool_same_target_commutators,
    mccool_triple_relations,
    pv_relators_in_cb,
)
from .fpres import (
    VERIFIED,
    CertificateStep,
    Presentation,
    SearchBounds,
    check_homomorphism_free,
    check_homomorphism_presented,
    check_syzygy,
    g3_presentation,
    is_consequence,
    pv3_new_generators,
    pv3_new_presentation,
    pv_presentation,
    q3_presentation,
    verify_certificate,
)
from .grammar import ParseError, parse_word
from .grcohom import (
    G3_NAMES,
    beer_rank,
    dual_restriction,
    g3_cup,
    g3_ring,
    pv3_ring,
    stability_rank,
)
from .intlinalg import IntMatrix, rank, row_lattices_equal
from .lie import (
    derivation_check,
    enveloping_invariants,
    pbw_coefficients,
    pv3_lie_quotient,
)
from .nq import nilpotent_quotient
from .suite import SuiteOptions, run_suite
from .word import Alphabet, GenMap

BUILTIN_PRESENTATIONS = {
    "pv3": lambda: pv_presentation(3),
    "pv4": lambda: pv_presentation(4),
    "g3": g3_presentation,
    "pv3-new": pv3_new_presentation,
    "q3": q3_presentation,
}

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _load_presentation(spec: str) -> Presentation:
    if spec in BUILTIN_PRESENTATIONS:
        return BUILTIN_PRESENTATIONS[spec]()
    return Presentation.from_text(Path(spec).read_text())


def _inferred_alphabet(*texts: str) -> Alphabet:
    names = []
    for text in texts:
        for name in _NAME.findall(text):
            if name not in names:
                names.append(name)
    if not names:
        raise ParseError("no generator names found", 1, 1)
    return Alphabet(tuple(names))


def _alphabet_from(args_gens: str | None, *texts: str) -> Alphabet:
    if args_gens:
        return Alphabet(tuple(args_gens.split(",")))
    return _inferred_alphabet(*texts)


def _parse_bounds(spec: str) -> SearchBounds:
    try:
        left, right = spec.split(",")
        return SearchBounds(max_prefix=int(left), max_steps=int(right))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected two integers L,K, got %r" % spec) from None


def _parse_steps(pres: Presentation, specs) -> tuple[CertificateStep, ...]:
    steps = []
    for spec in specs:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ParseError("certificate step must be 'CONJ : INDEX : SIGN',"
                             " got %r" % spec, 1, 1)
        conj_text, idx_text, sign_text = (p.strip() for p in parts)
        conj = pres.alphabet.identity() if conj_text in ("", "1") \
            else parse_word(conj_text, pres.alphabet)
        idx = int(idx_text)
        if not 0 <= idx < len(pres.relators):
            raise ParseError("relator index %d out of range 0..%d"
                             % (idx, len(pres.relators) - 1), 1, 1)
        sign = int(sign_text)
        if sign not in (1, -1):
            raise ParseError("sign must be +1 or -1, got %r" % sign_text, 1, 1)
        steps.append(CertificateStep(conj, idx, sign))
    return tuple(steps)


def _print_automorphism(f: Automorphism) -> None:
    for x in f.alphabet.gens():
        print("%s -> %s" % (x, f(x)))


_EPSILON_TOKEN = re.compile(r"^e(\d)(\d)(?:\^(-?\d+))?$")


def _epsilon_product(tokens, rank_override=None):
    parsed = []
    for token in tokens:
        m = _EPSILON_TOKEN.match(token)
        if not m:
            raise ParseError("cannot read %r as eij or eij^k" % token, 1, 1)
        parsed.append((int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)))
    n = rank_override or max(max(i, j) for i, j, _ in parsed)
    out = Automorphism.identity(free_alphabet(n))
    for i, j, k in parsed:
        out = out * epsilon(n, i, j) ** k
    return out


def _layer_line(degree: int, free: int, torsion) -> str:
    out = "degree %d: rank %d" % (degree, free)
    if torsion:
        out += ", torsion " + " x ".join("Z/%d" % t for t in torsion)
    return out


# -- subcommand handlers -----------------------------------------------------


def cmd_reduce(args) -> int:
    alphabet = _alphabet_from(args.gens, args.word)
    print(parse_word(args.word, alphabet))
    return 0


def _substitution_from_args(args) -> tuple[GenMap, Alphabet]:
    if args.rule:
        f, g = pv3_new_generators()
        genmap = f if args.rule == "old-to-new" else g
        return genmap, genmap.source
    if not args.assign:
        raise ParseError("need --rule or at least one --assign", 1, 1)
    names, images = [], []
    for spec in args.assign:
        name, _, image = spec.partition("=")
        if not _:
            raise ParseError("assignment must be NAME=WORD, got %r" % spec, 1, 1)
        names.append(name.strip())
        images.append(image)
    source = Alphabet(tuple(args.gens.split(","))) if args.gens \
        else Alphabet(tuple(names))
    target = Alphabet(tuple(args.target_gens.split(","))) if args.target_gens \
        else _inferred_alphabet(*images)
    mapping = {name: parse_word(image, target)
               for name, image in zip(names, images)}
    return GenMap.from_dict(source, target, mapping), source


def cmd_subst(args) -> int:
    genmap, source = _substitution_from_args(args)
    w = parse_word(args.word, source)
    print(genmap(w))
    return 0


def cmd_check_hom(args) -> int:
    pres = _load_presentation(args.presentation)
    if not args.assign:
        raise ParseError("need one --assign NAME=WORD per generator", 1, 1)
    names, images = [], []
    for spec in args.assign:
        name, sep, image = spec.partition("=")
        if not sep:
            raise ParseError("assignment must be NAME=WORD, got %r" % spec, 1, 1)
        names.append(name.strip())
        images.append(image)
    if tuple(names) != pres.alphabet.names:
        raise ParseError("assignments must cover the generators in order: %s"
                         % " ".join(pres.alphabet.names), 1, 1)
    if args.target:
        target = _load_presentation(args.target)
        target_alphabet = target.alphabet
    else:
        target = None
        target_alphabet = _alphabet_from(args.target_gens, *images)
    mapping = {name: parse_word(image, target_alphabet)
               for name, image in zip(names, images)}
    genmap = GenMap.from_dict(pres.alphabet, target_alphabet, mapping)
    ok = True
    if target is None:
        for label, holds in check_homomorphism_free(pres, genmap):
            print("relator %s: %s" % (label, "dies" if holds else "SURVIVES"))
            ok = ok and holds
    else:
        for label, res in check_homomorphism_presented(
                pres, genmap, target, args.search_bounds or SearchBounds()):
            print("relator %s: %s%s" % (
                label, res.status, " (%s)" % res.detail if res.detail else ""))
            ok = ok and res.status == VERIFIED
    print("homomorphism" if ok else "not a homomorphism (or not certified)")
    return 0 if ok else 1


def cmd_consequence(args) -> int:
    pres = _load_presentation(args.presentation)
    w = parse_word(args.word, pres.alphabet)
    if args.step:
        certificate = _parse_steps(pres, args.step)
        if verify_certificate(pres, w, certificate):
            print("certificate verifies: the product reduces to %s" % w)
            return 0
        print("certificate does not reduce to %s" % w)
        return 1
    res = is_consequence(pres, w, args.search_bounds or SearchBounds())
    print(res.status + (": %s" % res.detail if res.detail else ""))
    if res.certificate:
        for step in res.certificate:
            print("  (%s, %d, %+d)" % (step.conjugator, step.relator_index,
                                       step.sign))
    return 0 if res.status == VERIFIED else 1


def cmd_syzygy(args) -> int:
    pres = _load_presentation(args.presentation)
    certificate = _parse_steps(pres, args.step or ())
    if check_syzygy(pres, certificate):
        print("identity among relations: the product reduces to 1")
        return 0
    print("not an identity among relations")
    return 1


def cmd_aut(args) -> int:
    if args.action == "compose":
        f = _epsilon_product(args.generator, args.rank)
        _print_automorphism(f)
        if args.apply:
            w = parse_word(args.apply, f.alphabet)
            print("%s -> %s" % (w, f(w)))
        return 0
    if args.action == "inner":
        f = _epsilon_product(args.generator, args.rank)
        by = parse_word(args.by, f.alphabet)
        if f.is_inner_by(by):
            print("conjugation by %s" % by)
            return 0
        print("not conjugation by %s" % by)
        return 1
    if args.action == "mccool":
        n = args.rank or 3
        batches = (mccool_disjoint_commutators(n),
                   mccool_same_target_commutators(n),
                   mccool_triple_relations(n),
                   pv_relators_in_cb(n))
        ok = True
        for batch in batches:
            for label, holds in batch:
                print("%s: %s" % (label, "holds" if holds else "FAILS"))
                ok = ok and holds
        report = composition_order_report(n)
        print("composition order pinned: %s" % report["pinned"])
        return 0 if ok else 1
    # hnn
    ok = True
    for label, holds in hnn_identities():
        print("%s: %s" % (label, "holds" if holds else "FAILS"))
        ok = ok and holds
    return 0 if ok else 1


def cmd_nq(args) -> int:
    pres = _load_presentation(args.presentation)
    q = nilpotent_quotient(pres, args.class_)
    for degree, (free, torsion) in enumerate(q.layers, start=1):
        print(_layer_line(degree, free, torsion))
    for text in args.image or ():
        w = parse_word(text, pres.alphabet)
        print("%s -> %s" % (w, q.image(w)))
    return 0


def cmd_cohomology(args) -> int:
    if args.flavour == "beer":
        n = args.strands
        print(" ".join(str(beer_rank(n, r)) for r in range(n + 1)))
        return 0
    if args.flavour == "wedge":
        for name in G3_NAMES:
            support = dual_restriction(name)
            terms = " + ".join(k for k in support if support[k] == 1)
            print("%s* -> %s" % (name, terms))
        for u, v in combinations(G3_NAMES, 2):
            print("%s* %s* -> %s" % (u, v, g3_cup(u, v)))
        return 0
    ring = g3_ring() if args.flavour == "g3" else pv3_ring()
    top = args.max_degree
    for degree in range(top + 1):
        free, torsion = ring.invariants(degree)
        print(_layer_line(degree, free, torsion))
    if args.flavour == "pv3":
        closed = tuple(beer_rank(3, r) for r in range(top + 1))
        match = ring.ranks(top) == closed
        print("matches closed form %s: %s" % (closed, "yes" if match else "NO"))
        print("free-factor relation rank: %d" % stability_rank())
        return 0 if match else 1
    return 0


def cmd_lie(args) -> int:
    quotient = pv3_lie_quotient(include_free_generator=not args.factor_only)
    top = args.max_degree
    if args.action == "dims":
        for degree in range(1, top + 1):
            free, torsion = quotient.invariants(degree)
            print(_layer_line(degree, free, torsion))
        return 0
    if args.action == "env":
        invariants = enveloping_invariants(quotient.ngens, quotient.relations, top)
        for degree, (free, torsion) in enumerate(invariants, start=1):
            print(_layer_line(degree, free, torsion))
        return 0
    if args.action == "pbw":
        dims = quotient.dims(top)
        env = enveloping_invariants(quotient.ngens, quotient.relations, top)
        env_dims = (1,) + tuple(free for free, _ in env)
        predicted = pbw_coefficients(dims, top)
        print("lie dimensions:       %s" % (dims,))
        print("enveloping dimensions: %s" % (env_dims,))
        print("series prediction:     %s" % (predicted,))
        consistent = env_dims == predicted
        print("consistent" if consistent else "INCONSISTENT")
        return 0 if consistent else 1
    # derivation
    if derivation_check():
        print("conjugation rule lands in the relation ideal")
        return 0
    print("conjugation rule left the relation ideal")
    return 1


def cmd_suite(args) -> int:
    options = SuiteOptions(
        class_=args.class_,
        max_degree=args.max_degree,
        max_prefix=(args.search_bounds or SearchBounds()).max_prefix,
        max_steps=(args.search_bounds or SearchBounds()).max_steps,
        timings=args.timings,
    )
    report = run_suite(options)
    if args.json == "-":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.render())
        if args.json:
            Path(args.json).write_text(report.to_json())
    return report.exit_code


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvb3",
        description="Verified computations around a pure virtual braid group "
                    "on three strands: words, presentations, automorphisms, "
                    "nilpotent quotients, cohomology, and the graded Lie ring.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="freely reduce a word")
    p.add_argument("word")
    p.add_argument("--gens", help="comma-separated generator names "
                                  "(default: inferred in order of appearance)")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("subst", help="apply a generator substitution to a word")
    p.add_argument("word")
    p.add_argument("--rule", choices=("old-to-new", "new-to-old"),
                   help="one of the built-in changes of generators")
    p.add_argument("--assign", action="append", metavar="NAME=WORD",
                   help="image of one generator (repeatable)")
    p.add_argument("--gens", help="source generators, comma separated")
    p.add_argument("--target-gens", help="target generators, comma separated")
    p.set_defaults(handler=cmd_subst)

    p = sub.add_parser("check-hom",
                       help="check that generator images kill every relator")
    p.add_argument("presentation", help="file path or built-in name")
    p.add_argument("--assign", action="append", metavar="NAME=WORD")
    p.add_argument("--target", help="target presentation (file or built-in); "
                                    "relator images then get consequence searches")
    p.add_argument("--target-gens", help="free target generators, comma separated")
    p.add_argument("--search-bounds", type=_parse_bounds, metavar="L,K",
                   help="conjugator and certificate length bounds")
    p.set_defaults(handler=cmd_check_hom)

    p = sub.add_parser("consequence",
                       help="search for or verify a consequence certificate")
    p.add_argument("presentation")
    p.add_argument("word")
    p.add_argument("--step", action="append", metavar="CONJ:INDEX:SIGN",
                   help="certificate step to verify instead of searching "
                        "(conjugator word, 0-based relator index, +1 or -1)")
    p.add_argument("--search-bounds", type=_parse_bounds, metavar="L,K")
    p.set_defaults(handler=cmd_consequence)

    p = sub.add_parser("syzygy",
                       help="check a certificate whose product should be 1")
    p.add_argument("presentation")
    p.add_argument("--step", action="append", metavar="CONJ:INDEX:SIGN")
    p.set_defaults(handler=cmd_syzygy)

    p = sub.add_parser("aut", help="basis-conjugating automorphisms")
    auts = p.add_subparsers(dest="action", required=True)
    q = auts.add_parser("compose", help="compose eij generators, print images")
    q.add_argument("generator", nargs="+", metavar="eij[^k]")
    q.add_argument("--rank", type=int, help="ambient free rank (default: largest index)")
    q.add_argument("--apply", metavar="WORD", help="also print the image of WORD")
    q.set_defaults(handler=cmd_aut)
    q = auts.add_parser("inner", help="test a composite for being a conjugation")
    q.add_argument("generator", nargs="+", metavar="eij[^k]")
    q.add_argument("--by", required=True, metavar="WORD")
    q.add_argument("--rank", type=int)
    q.set_defaults(handler=cmd_aut)
    q = auts.add_parser("mccool", help="verify the defining relation families")
    q.add_argument("--rank", type=int, help="number of letters (default 3)")
    q.set_defaults(handler=cmd_aut)
    q = auts.add_parser("hnn", help="verify the stable-letter identities")
    q.set_defaults(handler=cmd_aut)

    p = sub.add_parser("nq", help="nilpotent quotient of a presentation")
    p.add_argument("presentation")
    p.add_argument("--class", dest="class_", type=int, default=2,
                   help="nilpotency class (default 2)")
    p.add_argument("--image", action="append", metavar="WORD",
                   help="also print the normal form of WORD (repeatable)")
    p.set_defaults(handler=cmd_nq)

    p = sub.add_parser("cohomology", help="cohomology rings and the wedge model")
    p.add_argument("flavour", choices=("g3", "pv3", "wedge", "beer"))
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("-n", "--strands", type=int, default=3,
                   help="number of strands for the closed-form row")
    p.set_defaults(handler=cmd_cohomology)

    p = sub.add_parser("lie", help="the quadratic graded Lie presentation")
    p.add_argument("action", choices=("dims", "env", "pbw", "derivation"))
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--factor-only", action="store_true",
                   help="drop the free generator, keeping the five-generator factor")
    p.set_defaults(handler=cmd_lie)

    for name in ("suite", "paper-suite"):
        p = sub.add_parser(name, help="run the ten-check verification battery")
        p.add_argument("--class", dest="class_", type=int, default=3,
                       help="nilpotency class for the main-group checks (default 3)")
        p.add_argument("--max-degree", type=int, default=3,
                       help="top degree for the graded Lie comparison (default 3)")
        p.add_argument("--search-bounds", type=_parse_bounds, metavar="L,K",
                       help="certificate search bounds (default 8,12)")
        p.add_argument("--json", metavar="PATH",
                       help="also write the report as JSON ('-' for stdout only)")
        p.add_argument("--timings", action="store_true",
                       help="include wall-clock times in the output")
        p.set_defaults(handler=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    except (ValueError, OSError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
