import pytest

from posrep.qtorus import QOperator, VLaurent
from posrep.repbuild import GeneratorTriple, Representation, build_rep
from posrep.rootdata import build_cartan
from posrep.verify import check_relations, path_independence, q2_chain_certificate
from posrep.words import ReducedWord, enumerate_words, good_word

A1 = build_cartan("A", 1)
A2 = build_cartan("A", 2)
A3 = build_cartan("A", 3)


@pytest.mark.parametrize(
    "datum,letters",
    [
        (A1, (1,)),
        (A2, (2, 1, 2)),
        (A2, (1, 2, 1)),
        (A3, (3, 2, 1, 3, 2, 3)),
    ],
)
def test_relations_pass(datum, letters):
    rep = build_rep(datum, ReducedWord(datum, letters))
    assert check_relations(rep)["status"] == "pass"


def test_corrupted_rep_detected():
    rep = build_rep(A2, good_word(A2))
    e1 = rep.gens[1].E
    broken = QOperator(
        {
            expo: (coeff.shift(2) if k == 0 else coeff)
            for k, (expo, coeff) in enumerate(e1.monomials())
        }
    )
    gens = dict(rep.gens)
    gens[1] = GeneratorTriple(broken, rep.gens[1].F, rep.gens[1].K)
    report = check_relations(Representation(rep.datum, rep.word, rep.lam_mode, gens))
    assert report["status"] == "fail"
    assert any(w["relation"] in ("serre_e", "master", "K_e", "e_f") for w in report["witnesses"])


def test_q2_chain_small():
    rep = build_rep(A1, ReducedWord(A1, (1,)))
    cert = q2_chain_certificate(rep.gens[1].E)
    assert cert["status"] == "pass" and len(cert["order"]) == 2
    # K is a single monomial: trivially ordered
    assert q2_chain_certificate(rep.gens[1].K)["status"] == "pass"


def test_q2_chain_a2():
    rep = build_rep(A2, ReducedWord(A2, (2, 1, 2)))
    cert = q2_chain_certificate(rep.gens[1].E)
    assert cert["status"] == "pass"
    assert len(cert["order"]) == 4


def test_q2_chain_reports_failure():
    from posrep.qtorus import exponent

    op = QOperator.monomial(exponent({0: 1})) + QOperator.monomial(exponent({1: 1}))
    cert = q2_chain_certificate(op)
    assert cert["status"] == "no_chain"
    assert cert["exponents"] == [0]
    assert cert["even"]


def test_path_independence_a2():
    report = path_independence(A2, ReducedWord(A2, (2, 1, 2)), ReducedWord(A2, (1, 2, 1)))
    assert report["status"] == "pass"


def test_path_independence_same_word():
    w = good_word(A3)
    assert path_independence(A3, w, w)["status"] == "pass"
