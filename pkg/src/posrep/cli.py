"""Command-line surface: construction, tables, verification, transport.

Subcommands
    construct        print one generator action (text or JSON)
    tables           per-generator term counts (optionally the bad word)
    verify           relation suite + chain certificates, JSON report
    transport        move one generator between two explicit words
    commutant        inverse-Cartan K-combination certificate
    normalize-lambda lambda-removing substitution report
    classical        finite-difference rendering of a generator
    badword          report the constructed bad word and its blow-up count

Exit code 0 means every requested check passed.  Variable naming in all
I/O: u<i>.<k>, p<i>.<k> for position data and L<i> for the parameters.
The bad-word experiment is bounded by POSREP_MAX_TERMS (default 5000000).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import moddouble, verify
from .qtorus import QExponent, QOperator, VLaurent, rebracket, sparse, term_count
from .repbuild import (
    Representation,
    build_rep,
    classical_render,
    operator_text,
    position_names,
)
from .rootdata import build_cartan, langlands_b_vectors
from .transport import TermBudgetError, transport
from .words import (
    ReducedWord,
    bad_word,
    braid_path,
    check_longest,
    good_word,
    word_ending_in,
    word_starting_with,
)


# ---------------------------------------------------------------------------
# JSON serialization (labels u<i>.<k> / L<i>).
# ---------------------------------------------------------------------------

def _positions_by_name(word: ReducedWord) -> dict[str, int]:
    return {name: t for t, name in enumerate(position_names(word))}


def operator_to_json(op: QOperator, word: ReducedWord) -> dict:
    names = position_names(word)
    monos = []
    for expo, coeff in op.monomials():
        monos.append(
            {
                "alpha": {names[t]: c for t, c in expo.alpha},
                "gamma": {names[t]: c for t, c in expo.gamma},
                "ell": {str(s): str(c) for s, c in expo.ell},
                "const": expo.const,
                "coeff": [[expo_v, c] for expo_v, c in _laurent_pairs(coeff)],
            }
        )
    out = {"monomials": monos}
    try:
        out["brackets"] = [bracket_to_json(t, word) for t in rebracket(op)]
    except Exception:
        pass
    return out


def bracket_to_json(term, word: ReducedWord) -> dict:
    names = position_names(word)
    return {
        "scalar": [[e, c] for e, c in _laurent_pairs(term.scalar)],
        "L": {
            "u": {names[t]: c for t, c in term.l_alpha},
            "lambda": {str(s): str(c) for s, c in term.l_ell},
            "const": term.l_const,
        },
        "P": {names[t]: c for t, c in term.shift},
    }


def _laurent_pairs(c: VLaurent) -> list[tuple[int, int]]:
    return [(c.val + k, coef) for k, coef in enumerate(c.coeffs) if coef]


def operator_from_json(data: dict, word: ReducedWord) -> QOperator:
    pos = _positions_by_name(word)
    acc = {}
    for m in data["monomials"]:
        expo = QExponent(
            sparse({pos[k]: v for k, v in m["alpha"].items()}),
            sparse({pos[k]: v for k, v in m["gamma"].items()}),
            sparse({int(k): Fraction(v) for k, v in m["ell"].items()}),
            m.get("const", 0),
        )
        coeff = VLaurent.zero()
        for e, c in m["coeff"]:
            coeff = coeff + VLaurent.v_power(e, c)
        acc[expo] = coeff
    return QOperator(acc)


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Shared argument handling.
# ---------------------------------------------------------------------------

def _add_type_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("family", choices=["A", "D", "E"])
    p.add_argument("rank", type=int)


def _resolve_word(datum, spec: str) -> ReducedWord:
    if spec == "good":
        return good_word(datum)
    if spec == "bad":
        return bad_word(datum)
    if spec.startswith("end:"):
        return word_ending_in(datum, int(spec[4:]))
    if spec.startswith("start:"):
        return word_starting_with(datum, int(spec[6:]))
    word = ReducedWord(datum, tuple(int(x) for x in spec.split(",")))
    check_longest(word)
    return word


def _parse_gen(spec: str) -> tuple[str, int]:
    kind, label = spec[0].upper(), int(spec[1:])
    if kind not in "EFK":
        raise ValueError(f"generator must be E/F/K + label, got {spec!r}")
    return kind, label


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def cmd_construct(args) -> int:
    datum = build_cartan(args.family, args.rank)
    word = _resolve_word(datum, args.word)
    rep = build_rep(datum, word, args.lam)
    kind, label = _parse_gen(args.gen)
    op = rep.generator(kind, label)
    if args.format == "json":
        payload = {
            "family": datum.family,
            "rank": datum.rank,
            "word": list(word.letters),
            "generator": args.gen,
            "operator": operator_to_json(op, word),
        }
        print(dump_json(payload))
    else:
        print(operator_text(op, word))
    return 0


def cmd_tables(args) -> int:
    datum = build_cartan(args.family, args.rank)
    if args.badword:
        return _badword_report(datum)
    word = good_word(datum)
    rep = build_rep(datum, word)
    e_counts = {i: term_count(rep.gens[i].E) for i in datum.labels}
    f_counts = {i: term_count(rep.gens[i].F) for i in datum.labels}
    print("generator  E-terms  F-terms")
    for i in datum.labels:
        print(f"{i:<10} {e_counts[i]:<8} {f_counts[i]}")
    print(f"total      {sum(e_counts.values()):<8} {sum(f_counts.values())}")
    return 0


def _badword_report(datum) -> int:
    from .repbuild import build_E

    word = bad_word(datum)
    target = 2 if datum.family == "D" else 3
    print(f"bad word: {word}")
    try:
        op = build_E(word, target)
    except TermBudgetError as exc:
        print(f"aborted: {exc}")
        if exc.trace:
            move, w, n = exc.trace[-1]
            print(f"last step: {move.kind}@{move.pos} with {n} monomials")
        return 1
    print(f"E{target} term count: {term_count(op)}")
    return 0


def cmd_verify(args) -> int:
    datum = build_cartan(args.family, args.rank)
    word = _resolve_word(datum, args.word)
    rep = build_rep(datum, word)
    report = verify.check_relations(rep)
    chains = {}
    for i in datum.labels:
        for kind in ("E", "F"):
            chains[f"{kind}{i}"] = verify.q2_chain_certificate(rep.generator(kind, i))
    ok = report["status"] == "pass" and all(
        c["status"] == "pass" or c["even"] for c in chains.values()
    )
    print(dump_json({"relations": report, "q2_chains": chains}))
    return 0 if ok else 1


def cmd_transport(args) -> int:
    datum = build_cartan(args.family, args.rank)
    src = _resolve_word(datum, args.src)
    dst = _resolve_word(datum, args.dst)
    rep = build_rep(datum, src)
    kind, label = _parse_gen(args.gen)
    path = braid_path(src, dst)
    trace: list = []
    op, word = transport(rep.generator(kind, label), src, path, trace=trace)
    if args.trace:
        from .transport import format_trace

        print(format_trace(trace))
    print(operator_text(op, word))
    return 0


def cmd_commutant(args) -> int:
    datum = build_cartan(args.family, args.rank)
    rep = build_rep(datum, good_word(datum))
    mrep = moddouble.build_modified(rep)
    report = moddouble.commutant_check(datum, mrep)
    bvecs = langlands_b_vectors(datum)
    print(dump_json({"b_vectors": [[str(x) for x in b] for b in bvecs], "report": report}))
    return 0 if report["status"] == "pass" else 1


def cmd_normalize_lambda(args) -> int:
    datum = build_cartan(args.family, args.rank)
    word = _resolve_word(datum, args.word)
    rep = build_rep(datum, word)
    shifts, betas, normalized = moddouble.normalize_lambda(rep)
    names = position_names(word)
    payload = {
        "word": list(word.letters),
        "betas": {names[t]: b for t, b in betas.items()},
        "shifts": {
            names[t]: {str(s): str(c) for s, c in form} for t, form in shifts.items()
        },
        "K": {
            str(i): operator_text(normalized.gens[i].K, word) for i in datum.labels
        },
    }
    print(dump_json(payload))
    return 0


def cmd_classical(args) -> int:
    datum = build_cartan(args.family, args.rank)
    word = _resolve_word(datum, args.word)
    rep = build_rep(datum, word)
    kind, label = _parse_gen(args.gen)
    print(classical_render(rep.generator(kind, label), word))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="posrep", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="print one generator action")
    _add_type_args(p)
    p.add_argument("--word", default="good")
    p.add_argument("--gen", required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--lam", choices=["formal", "normalized"], default="formal")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("tables", help="per-generator term counts")
    _add_type_args(p)
    p.add_argument("--badword", action="store_true")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="relation suite report")
    _add_type_args(p)
    p.add_argument("--word", default="good")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transport", help="move a generator between words")
    _add_type_args(p)
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--gen", required=True)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_transport)

    p = sub.add_parser("commutant", help="Langlands commutant certificate")
    _add_type_args(p)
    p.set_defaults(func=cmd_commutant)

    p = sub.add_parser("normalize-lambda", help="lambda normalization report")
    _add_type_args(p)
    p.add_argument("--word", default="good")
    p.set_defaults(func=cmd_normalize_lambda)

    p = sub.add_parser("classical", help="finite-difference rendering")
    _add_type_args(p)
    p.add_argument("--word", default="good")
    p.add_argument("--gen", required=True)
    p.set_defaults(func=cmd_classical)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
