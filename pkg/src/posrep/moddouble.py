"""Modified generators, parity certificates, commutant, and lambda machinery.

The modified generators twist by K-powers along the bipartition weights
n_i of the Dynkin diagram:

    Ebar_i = q^(n_i) e_i K_i^(n_i)
    Fbar_i = q^(1-n_i) f_i K_i^(n_i - 1)
    Kbar_i = K_i^2 if n_i = 1 else K_i^-2

with Q = q^2 and Q_i = Q if n_i = 1 else Q^-1.  In the rescaled
convention the modified master relation becomes

    Ebar_i Fbar_i - Q_i^-1 Fbar_i Ebar_i = c_i (1 - Kbar_i),
    c_i = 1 - q^-2 if n_i = 1 else 1 - q^2.

The b <-> 1/b cross-copy is never materialized: a monomial of one copy
commutes with a monomial of the other iff their commutation exponent is
even, so parity of the integer exponent data is exactly the checkable
content of the modular-double statements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .qtorus import (
    QExponent,
    QOperator,
    VLaurent,
    commutation_exponent,
    rebracket,
    sparse,
    sparse_add,
    sparse_dot,
    sparse_neg,
    sparse_scale,
)
from .rootdata import CartanDatum, langlands_b_vectors
from .repbuild import GeneratorTriple, Representation


class ModifiedTriple(NamedTuple):
    E: QOperator
    F: QOperator
    K: QOperator


@dataclass(frozen=True)
class ModifiedRep:
    base: Representation
    gens: dict[int, ModifiedTriple]

    @property
    def datum(self) -> CartanDatum:
        return self.base.datum

    def epsilon(self, i: int) -> int:
        """+1 where Q_i = Q, -1 where Q_i = Q^-1."""
        return 2 * self.datum.n_weight(i) - 1


def _k_power(k: QOperator, n: int) -> QOperator:
    expo = k.single_monomial().expo
    return QOperator.monomial(
        QExponent(
            sparse_scale(expo.alpha, n), sparse_scale(expo.gamma, n),
            sparse_scale(expo.ell, n), n * expo.const,
        )
    )


def build_modified(rep: Representation) -> ModifiedRep:
    """Twist the generators along the bipartition and verify the relations."""
    gens = {}
    for i in rep.datum.labels:
        e, f, k = rep.gens[i]
        n = rep.datum.n_weight(i)
        gens[i] = ModifiedTriple(
            (e * _k_power(k, n)).scale_v(2 * n) if n else e,
            (f * _k_power(k, n - 1)).scale_v(2 * (1 - n)),
            _k_power(k, 2 if n else -2),
        )
    mrep = ModifiedRep(rep, gens)
    report = check_modified_relations(mrep)
    if report["status"] != "pass":
        raise ArithmeticError(f"modified relation suite failed: {report['witnesses']}")
    return mrep


def check_modified_relations(mrep: ModifiedRep) -> dict:
    datum = mrep.datum
    failures = []

    def check(name, i, j, residue):
        if not residue.is_zero():
            failures.append({"relation": name, "i": i, "j": j, "monomials": len(residue)})

    for i in datum.labels:
        eb_i, fb_i, kb_i = mrep.gens[i]
        eps = mrep.epsilon(i)
        c_i = VLaurent.one() - VLaurent.q_power(-2 * eps)
        one = QOperator.one()
        check(
            "modified_master", i, i,
            (eb_i * fb_i - (fb_i * eb_i).scale_v(-4 * eps)) - (one - kb_i).scale(c_i),
        )
        for j in datum.labels:
            eb_j, fb_j, kb_j = mrep.gens[j]
            a = datum.a(i, j)
            check("Kb_Eb", i, j, kb_i * eb_j - (eb_j * kb_i).scale_v(4 * eps * a))
            check("Kb_Fb", i, j, kb_i * fb_j - (fb_j * kb_i).scale_v(-4 * eps * a))
            if i != j:
                check("Eb_Fb", i, j, eb_i * fb_j - fb_j * eb_i)
            if datum.adjacent(i, j):
                # the E-chain closes with the inverse twist of the F-chain
                inner_e = eb_j * eb_i - (eb_i * eb_j).scale_v(4 * eps)
                check("modified_serre_e", i, j, inner_e * eb_i - eb_i * inner_e)
                inner_f = fb_j * fb_i - (fb_i * fb_j).scale_v(-4 * eps)
                check("modified_serre_f", i, j, inner_f * fb_i - fb_i * inner_f)
    return {
        "check": "modified_relations",
        "status": "pass" if not failures else "fail",
        "witnesses": failures,
    }


# ---------------------------------------------------------------------------
# Parity and q-tori certificates.
# ---------------------------------------------------------------------------

def _generator_monomials(gens: dict) -> list[tuple[str, QExponent]]:
    out = []
    for i, triple in gens.items():
        for kind, op in zip(("E", "F", "K"), triple):
            for mono in op.monomials():
                out.append((f"{kind}{i}", mono.expo))
    return out


def cross_parity_certificate(mrep: ModifiedRep) -> dict:
    """All pairwise commutation exponents across modified generators are even.

    Evenness is exactly strong commutation against the 1/b copy: the cross
    phase of a pair is (-1)^s.
    """
    monos = _generator_monomials(mrep.gens)
    odd = []
    for a in range(len(monos)):
        for b in range(a + 1, len(monos)):
            s = commutation_exponent(monos[a][1], monos[b][1])
            if s % 2:
                odd.append({"pair": [monos[a][0], monos[b][0]], "exponent": s})
    return {
        "check": "cross_parity",
        "status": "pass" if not odd else "fail",
        "witnesses": odd,
    }


def unmodified_odd_witness(rep: Representation) -> dict | None:
    """A pair of unmodified generator monomials with odd pairing, if any."""
    monos = _generator_monomials(rep.gens)
    for a in range(len(monos)):
        for b in range(a + 1, len(monos)):
            s = commutation_exponent(monos[a][1], monos[b][1])
            if s % 2:
                return {"pair": [monos[a][0], monos[b][0]], "exponent": s}
    return None


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [row[:] for row in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        r += 1
        rank += 1
    return rank


def qtori_certificate(mrep: ModifiedRep) -> dict:
    """Even symplectic Gram matrix + lattice rank bound for modified generators.

    Even pairings mean the exponent lattice sits inside a torus algebra
    with parameter q^2.  The rank of the spanned u/p lattice is at most
    twice the word length (the central lambda slots are scalars, not torus
    directions).
    """
    monos = _generator_monomials(mrep.gens)
    odd = []
    for a in range(len(monos)):
        for b in range(a + 1, len(monos)):
            s = commutation_exponent(monos[a][1], monos[b][1])
            if s % 2:
                odd.append({"pair": [monos[a][0], monos[b][0]], "exponent": s})
    n_pos = len(mrep.base.word.letters)
    rows = []
    for _, expo in monos:
        row = [Fraction(0)] * (2 * n_pos)
        for t, v in expo.alpha:
            row[t] = Fraction(v)
        for t, v in expo.gamma:
            row[n_pos + t] = Fraction(v)
        rows.append(row)
    rank = _rank(rows)
    ok = not odd and rank <= 2 * n_pos
    return {
        "check": "qtori",
        "status": "pass" if ok else "fail",
        "rank": rank,
        "max_rank": 2 * n_pos,
        "witnesses": odd,
    }


# ---------------------------------------------------------------------------
# Langlands commutant.
# ---------------------------------------------------------------------------

def commutant_check(datum: CartanDatum, mrep: ModifiedRep) -> dict:
    """Certify the inverse-Cartan K-combinations against all generators.

    For each column b^k of the inverse Cartan matrix the combination
    prod_j (K_j^2)^(b_j^k)  (equivalently Kbar_j^(eps_j b_j^k)) pairs

        +2 delta_{ik} with every monomial of Ebar_i,
        -2 delta_{ik} with every monomial of Fbar_i,
         0            with every Kbar_i,

    so the pairing is even everywhere and the 1/b-copy combination
    commutes strongly with the whole modified family.  Pairings of each
    plain Kbar_j are reported with a non-commuting witness (no single
    Kbar_j centralizes the family).
    """
    bvecs = langlands_b_vectors(datum)
    labels = datum.labels
    monos = _generator_monomials(mrep.gens)
    results = []
    all_even = True
    pattern_ok = True
    for k_idx, b in enumerate(bvecs):
        alpha = ()
        for j_idx, j in enumerate(labels):
            kbar = mrep.gens[j].K.single_monomial().expo
            coef = b[j_idx] * mrep.epsilon(j)  # Kbar_j^(eps_j b_j) = (K_j^2)^(b_j)
            alpha = sparse_add(alpha, sparse_scale(kbar.alpha, coef))
        pairings = {}
        for name, expo in monos:
            s = sparse_dot(alpha, expo.gamma)
            pairings[name] = pairings.get(name, set()) | {s}
            if s % 2:
                all_even = False
            expected = 0
            target = labels[k_idx]
            if name == f"E{target}":
                expected = 2
            elif name == f"F{target}":
                expected = -2
            if name[0] in "EF" and s != expected:
                pattern_ok = False
        results.append(
            {
                "column": labels[k_idx],
                "b_vector": [str(x) for x in b],
                "pairings": {n: sorted(v) for n, v in sorted(pairings.items())},
            }
        )
    # plain Kbar_j witnesses
    plain = []
    for j in labels:
        kbar = mrep.gens[j].K.single_monomial().expo
        witness = None
        for name, expo in monos:
            s = sparse_dot(kbar.alpha, expo.gamma)
            if s != 0:
                witness = {"against": name, "exponent": s}
                break
        plain.append({"generator": f"K{j}", "witness": witness})
    status = "pass" if (all_even and pattern_ok) else "fail"
    return {
        "check": "commutant",
        "status": status,
        "all_even": all_even,
        "delta_pattern": pattern_ok,
        "columns": results,
        "plain_k_witnesses": plain,
    }


# ---------------------------------------------------------------------------
# Weyl action on the parameters.
# ---------------------------------------------------------------------------

LambdaForm = tuple  # sparse tuple ((label, Fraction), ...)


def weyl_reflect_lambda(datum: CartanDatum, form: LambdaForm, i: int) -> LambdaForm:
    """s_i on a lambda linear form: lam_j -> lam_j - a_ij lam_i, extended
    linearly, so a form f picks up -(sum_j a_ij f_j) lam_i."""
    form = sparse(dict(form))
    c = sum(datum.a(i, j) * coef for j, coef in form)
    if not c:
        return form
    return sparse_add(form, sparse({i: -c}))


def dominant_lambda(datum: CartanDatum, values: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """Map a numeric parameter tuple into the closed dominant chamber by
    repeated simple reflections."""
    vals = {lab: Fraction(v) for lab, v in zip(datum.labels, values)}
    changed = True
    while changed:
        changed = False
        for i in datum.labels:
            if vals[i] < 0:
                old = vals[i]
                for j in datum.labels:
                    vals[j] = vals[j] - datum.a(i, j) * old
                changed = True
    return tuple(vals[lab] for lab in datum.labels)


def substitute_lambda(op: QOperator, subs: dict[int, LambdaForm]) -> QOperator:
    """Apply a substitution lam_i -> linear form to all monomial exponents."""
    acc = {}
    for e, c in op.terms.items():
        ell = ()
        for s_, v in e.ell:
            if s_ in subs:
                ell = sparse_add(ell, sparse_scale(subs[s_], v))
            else:
                ell = sparse_add(ell, ((s_, v),))
        e2 = QExponent(e.alpha, e.gamma, ell, e.const)
        prev = acc.get(e2)
        acc[e2] = c if prev is None else prev + c
    return QOperator(acc)


def reflect_representation(rep: Representation, i: int) -> Representation:
    """The representation with parameters s_i(lambda)."""
    datum = rep.datum
    subs = {i: sparse({i: -1})}
    for j in datum.labels:
        if datum.adjacent(i, j):
            subs[j] = sparse({j: 1, i: 1})
    gens = {
        lab: GeneratorTriple(*(substitute_lambda(op, subs) for op in triple))
        for lab, triple in rep.gens.items()
    }
    return Representation(datum, rep.word, rep.lam_mode, gens)


def verify_weyl_pattern(datum: CartanDatum, i: int) -> dict:
    """Compare Rep(lambda) and Rep(s_i lambda) on a word starting with i.

    The two must differ exactly by: a sign flip of lam_i in every F_i
    weight, lam_j -> lam_j + lam_i in every F_j weight for j adjacent to
    i, no change in any E weight, and the matching substitution in the K
    exponents.  Applying the reflection twice must restore everything.
    """
    from .repbuild import build_rep
    from .words import word_starting_with

    word = word_starting_with(datum, i)
    rep = build_rep(datum, word)
    reflected = reflect_representation(rep, i)
    failures = []
    for j in datum.labels:
        e0, f0, _ = rep.gens[j]
        e1, f1, _ = reflected.gens[j]
        if e1 != e0:
            failures.append({"generator": f"E{j}", "kind": "lambda_dependence"})
        # match brackets by their momentum shift (one per occurrence of j)
        before = {t.shift: t for t in rebracket(f0)}
        after = {t.shift: t for t in rebracket(f1)}
        expected_ell = {j: -2}
        for shift, t0 in before.items():
            t1 = after[shift]
            if dict(t0.l_ell) != expected_ell:
                failures.append({"generator": f"F{j}", "kind": "unexpected_weight",
                                 "ell": [list(x) for x in t0.l_ell]})
                continue
            if j == i:
                want = sparse({i: 2})
            elif datum.adjacent(i, j):
                want = sparse({j: -2, i: -2})
            else:
                want = t0.l_ell
            if t1.l_ell != want or t1.l_alpha != t0.l_alpha:
                failures.append({"generator": f"F{j}", "kind": "pattern_mismatch"})
    twice = reflect_representation(reflected, i)
    if any(twice.gens[j] != rep.gens[j] for j in datum.labels):
        failures.append({"kind": "not_involutive"})
    return {
        "check": "weyl_pattern",
        "node": i,
        "status": "pass" if not failures else "fail",
        "witnesses": failures,
    }


# ---------------------------------------------------------------------------
# Lambda normalization.
# ---------------------------------------------------------------------------

class NormalizationResult(NamedTuple):
    shifts: dict[int, LambdaForm]  # position -> lambda form subtracted from u
    betas: dict[int, int]
    rep: Representation


def normalize_lambda(rep: Representation) -> NormalizationResult:
    """Shift the u-coordinates so every K_i becomes lambda-free.

    Walking the word left to right, position t carries the unique F-weight
    supported on positions <= t with unit coefficient at t.  Its running
    lambda-part lam', with beta = (sum of lam'-coefficients) - 1, dictates
    the shift u_t -> u_t - (beta/(beta+1)) lam'.  Every beta must be a
    positive integer; the final weights draw their lambda-parts from at
    most rank-many distinguished forms.
    """
    if rep.lam_mode != "formal":
        raise ValueError("representation already normalized")
    datum = rep.datum
    word = rep.word
    n = len(word.letters)
    # weight of the F-bracket shifting at position t: W = -L
    weights: dict[int, tuple] = {}
    for i in datum.labels:
        from .repbuild import f_brackets

        for term in f_brackets(word, i):
            ((t, _),) = term.shift
            weights[t] = (sparse_neg(term.l_alpha), sparse_neg(term.l_ell))
    shifts: dict[int, LambdaForm] = {}
    betas: dict[int, int] = {}
    for t in range(n):
        w_alpha, w_ell = weights[t]
        assert dict(w_alpha).get(t) == 1
        assert all(pos <= t for pos, _ in w_alpha)
        ell = w_ell
        for pos, coef in w_alpha:
            if pos in shifts:
                ell = sparse_add(ell, sparse_scale(shifts[pos], -coef))
        beta = sum(c for _, c in ell) - 1
        if not (beta == int(beta) and beta > 0):
            raise ArithmeticError(f"beta at position {t} is {beta}, not a positive integer")
        betas[t] = int(beta)
        shifts[t] = sparse_scale(ell, Fraction(beta, beta + 1))

    def shift_op(op: QOperator) -> QOperator:
        acc = {}
        for e, c in op.terms.items():
            ell = e.ell
            for pos, coef in e.alpha:
                if pos in shifts and shifts[pos]:
                    ell = sparse_add(ell, sparse_scale(shifts[pos], -coef))
            e2 = QExponent(e.alpha, e.gamma, ell, e.const)
            prev = acc.get(e2)
            acc[e2] = c if prev is None else prev + c
        return QOperator(acc)

    gens = {
        lab: GeneratorTriple(*(shift_op(op) for op in triple))
        for lab, triple in rep.gens.items()
    }
    out = Representation(datum, word, "normalized", gens)
    for lab in datum.labels:
        k = out.gens[lab].K.single_monomial()
        if k.expo.ell:
            raise ArithmeticError(f"K{lab} still depends on lambda after normalization")
    return NormalizationResult(shifts, betas, out)


def distinguished_lambda_forms(rep: Representation) -> set:
    """Distinct nonzero lambda-parts over all E/F weights (normalized reps)."""
    forms = set()
    for (kind, _), op in rep.all_operators():
        if kind == "K":
            continue
        for term in rebracket(op):
            if term.l_ell:
                forms.add(sparse_neg(term.l_ell))
    return forms
