from fractions import Fraction

import pytest

from posrep.moddouble import (
    build_modified,
    check_modified_relations,
    commutant_check,
    cross_parity_certificate,
    distinguished_lambda_forms,
    dominant_lambda,
    normalize_lambda,
    qtori_certificate,
    reflect_representation,
    substitute_lambda,
    unmodified_odd_witness,
    verify_weyl_pattern,
    weyl_reflect_lambda,
)
from posrep.qtorus import VLaurent, sparse
from posrep.repbuild import build_rep
from posrep.rootdata import build_cartan
from posrep.words import ReducedWord, good_word


def rep_for(family, rank, flip=False):
    datum = build_cartan(family, rank, flip_bipartition=flip)
    return build_rep(datum, good_word(datum))


def test_modified_a1_shape():
    # with n_1 = 1: Ebar = q e K, Kbar = K^2
    rep = rep_for("A", 1, flip=True)
    assert rep.datum.n_weight(1) == 1
    mrep = build_modified(rep)
    e, _, k = rep.gens[1]
    assert mrep.gens[1].E == (e * k).scale_v(2)
    assert mrep.gens[1].K == k * k


def test_modified_a1_master_by_hand():
    # n_1 = 1: Ebar Fbar - q^-2 Fbar Ebar = (1 - q^-2)(1 - Kbar)
    from posrep.qtorus import QOperator

    mrep = build_modified(rep_for("A", 1, flip=True))
    eb, fb, kb = mrep.gens[1]
    lhs = eb * fb - (fb * eb).scale_v(-4)
    rhs = (QOperator.one() - kb).scale(VLaurent.one() - VLaurent.q_power(-2))
    assert lhs == rhs


@pytest.mark.parametrize(
    "family,rank,flip",
    [("A", 1, False), ("A", 2, False), ("A", 2, True), ("A", 3, False), ("D", 4, False), ("D", 4, True)],
)
def test_modified_relations(family, rank, flip):
    mrep = build_modified(rep_for(family, rank, flip))
    assert check_modified_relations(mrep)["status"] == "pass"


@pytest.mark.parametrize(
    "family,rank,flip",
    [("A", 1, False), ("A", 2, False), ("A", 2, True), ("A", 3, False), ("D", 4, False), ("D", 4, True)],
)
def test_cross_parity(family, rank, flip):
    mrep = build_modified(rep_for(family, rank, flip))
    assert cross_parity_certificate(mrep)["status"] == "pass"


def test_unmodified_odd_witness_a2():
    rep = rep_for("A", 2)
    witness = unmodified_odd_witness(rep)
    assert witness is not None
    assert witness["exponent"] % 2 == 1


def test_unmodified_a1_has_no_odd_witness():
    assert unmodified_odd_witness(rep_for("A", 1)) is None


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 2), ("A", 3), ("D", 4)])
def test_qtori_certificate(family, rank):
    mrep = build_modified(rep_for(family, rank))
    report = qtori_certificate(mrep)
    assert report["status"] == "pass"
    assert report["rank"] <= report["max_rank"]


def test_qtori_rank_a1():
    report = qtori_certificate(build_modified(rep_for("A", 1)))
    assert report["rank"] == 2 and report["max_rank"] == 2


# ---------------------------------------------------------------------------
# commutant
# ---------------------------------------------------------------------------

def test_commutant_a1_pairings():
    datum = build_cartan("A", 1)
    mrep = build_modified(build_rep(datum, good_word(datum)))
    report = commutant_check(datum, mrep)
    assert report["status"] == "pass"
    col = report["columns"][0]
    assert col["b_vector"] == ["1/2"]
    assert col["pairings"]["E1"] == [2]
    assert col["pairings"]["F1"] == [-2]
    assert col["pairings"]["K1"] == [0]


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 3), ("D", 4)])
def test_commutant_delta_pattern(family, rank):
    datum = build_cartan(family, rank)
    mrep = build_modified(build_rep(datum, good_word(datum)))
    report = commutant_check(datum, mrep)
    assert report["status"] == "pass"
    for col in report["columns"]:
        target = col["column"]
        for name, values in col["pairings"].items():
            if name == f"E{target}":
                assert values == [2]
            elif name == f"F{target}":
                assert values == [-2]
            else:
                assert values == [0]
    for entry in report["plain_k_witnesses"]:
        assert entry["witness"] is not None


# ---------------------------------------------------------------------------
# Weyl action on the parameters
# ---------------------------------------------------------------------------

def test_weyl_reflect_lambda():
    datum = build_cartan("A", 2)
    lam1 = sparse({1: 1})
    assert weyl_reflect_lambda(datum, lam1, 1) == sparse({1: -1})
    assert weyl_reflect_lambda(datum, sparse({2: 1}), 1) == sparse({1: 1, 2: 1})
    twice = weyl_reflect_lambda(datum, weyl_reflect_lambda(datum, lam1, 2), 2)
    assert twice == lam1


def test_dominant_lambda():
    datum = build_cartan("A", 2)
    out = dominant_lambda(datum, (Fraction(-1), Fraction(0)))
    assert all(v >= 0 for v in out)


@pytest.mark.parametrize("family,rank,i", [("A", 1, 1), ("A", 2, 1), ("A", 2, 2)])
def test_weyl_pattern(family, rank, i):
    datum = build_cartan(family, rank)
    report = verify_weyl_pattern(datum, i)
    assert report["status"] == "pass", report


def test_reflect_representation_involution():
    rep = rep_for("A", 2)
    assert reflect_representation(reflect_representation(rep, 1), 1).gens == rep.gens


# ---------------------------------------------------------------------------
# lambda normalization
# ---------------------------------------------------------------------------

def test_normalize_a1():
    datum = build_cartan("A", 1)
    rep = build_rep(datum, ReducedWord(datum, (1,)))
    result = normalize_lambda(rep)
    assert result.betas == {0: 1}
    assert result.shifts[0] == sparse({1: 1})  # u -> u - lam
    k = result.rep.gens[1].K.single_monomial()
    assert dict(k.expo.alpha) == {0: -2} and not k.expo.ell


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 3), ("D", 4)])
def test_normalize_good_words(family, rank):
    datum = build_cartan(family, rank)
    rep = build_rep(datum, good_word(datum))
    result = normalize_lambda(rep)
    assert all(b >= 1 for b in result.betas.values())
    for i in datum.labels:
        assert not result.rep.gens[i].K.single_monomial().expo.ell
    forms = distinguished_lambda_forms(result.rep)
    assert 1 <= len(forms) <= datum.rank


def test_normalize_preserves_pairings():
    from posrep.qtorus import commutation_exponent

    datum = build_cartan("A", 2)
    rep = build_rep(datum, good_word(datum))
    result = normalize_lambda(rep)
    for i in datum.labels:
        before = [m.expo for m in rep.gens[i].E.monomials()]
        after = [m.expo for m in result.rep.gens[i].E.monomials()]
        for b, a in zip(before, after):
            assert (b.alpha, b.gamma) == (a.alpha, a.gamma)
