import pytest

from posrep.qtorus import (
    QOperator,
    VLaurent,
    bracket,
    expand_bracket,
    operator_from_brackets,
    rebracket,
    term_count,
)
from posrep.repbuild import (
    build_E,
    build_E_rightmost,
    build_F,
    build_K,
    build_rep,
    classical_render,
    operator_text,
)
from posrep.rootdata import build_cartan
from posrep.words import ReducedWord, good_word

A1 = build_cartan("A", 1)
A2 = build_cartan("A", 2)
A3 = build_cartan("A", 3)
D4 = build_cartan("D", 4)
W1 = ReducedWord(A1, (1,))


def test_e_rightmost():
    assert build_E_rightmost(W1, 1) == expand_bracket(bracket(l_alpha={0: 1}, shift={0: -1}))
    word = ReducedWord(A3, (3, 2, 1, 3, 2, 3))
    assert build_E_rightmost(word, 3) == expand_bracket(
        bracket(l_alpha={5: 1}, shift={5: -1})
    )
    with pytest.raises(ValueError):
        build_E_rightmost(word, 1)


def test_f_a1():
    # [-u - 2 lam] e(p)
    assert build_F(W1, 1) == expand_bracket(
        bracket(l_alpha={0: -1}, l_ell={1: -2}, shift={0: 1})
    )


def test_k_a1():
    k = build_K(W1, 1).single_monomial()
    assert dict(k.expo.alpha) == {0: -2}
    assert dict(k.expo.ell) == {1: -2}
    assert not k.expo.gamma and k.coeff == VLaurent.one()


def test_f_term_counts_match_occurrences():
    for datum in (A2, A3, D4):
        word = good_word(datum)
        for i in datum.labels:
            occ = sum(1 for x in word.letters if x == i)
            assert term_count(build_F(word, i)) == occ


def test_a1_master_relation_by_hand():
    # the four monomial products of the rank-one generators, expanded by hand
    e = build_E(W1, 1)
    f = build_F(W1, 1)
    k = build_K(W1, 1)
    lhs = e * f - f * e
    q_minus = VLaurent.q_power(1) - VLaurent.q_power(-1)
    from posrep.qtorus import exponent

    k_inv = QOperator.monomial(exponent({0: 2}, {}, {1: 2}))
    assert lhs == (k_inv - k).scale(q_minus)


def test_f_conventions_via_closed_pattern_a2():
    # on (2,1,2): F_1 = [-u1.1 + u2.2 - 2 lam_1] e(p1.1)
    word = good_word(A2)
    assert build_F(word, 1) == expand_bracket(
        bracket(l_alpha={1: -1, 0: 1}, l_ell={1: -2}, shift={1: 1})
    )
    # F_2 = [-u2.1 + u1.1 - 2u2.2 - 2 lam_2] e(p2.1) + [-u2.2 - 2 lam_2] e(p2.2)
    assert build_F(word, 2) == operator_from_brackets(
        [
            bracket(l_alpha={2: -1, 1: 1, 0: -2}, l_ell={2: -2}, shift={2: 1}),
            bracket(l_alpha={0: -1}, l_ell={2: -2}, shift={0: 1}),
        ]
    )


def test_build_rep_term_counts():
    rep = build_rep(A2, good_word(A2))
    assert [term_count(rep.gens[i].E) for i in A2.labels] == [2, 1]
    rep4 = build_rep(D4, good_word(D4))
    assert [term_count(rep4.gens[i].E) for i in D4.labels] == [5, 5, 3, 1]


def test_unit_coefficients():
    for datum in (A2, D4):
        rep = build_rep(datum, good_word(datum))
        for _, op in rep.all_operators():
            for mono in op.monomials():
                assert mono.coeff.is_unit_monomial()


def test_rendering():
    word = ReducedWord(A3, (3, 2, 1, 3, 2, 3))
    rep = build_rep(A3, word)
    assert operator_text(rep.gens[3].E, word) == "[u3.1] e(-p3.1)"
    assert operator_text(build_F(W1, 1), W1) == "[-u1.1 - 2L1] e(p1.1)"
    assert operator_text(QOperator.zero(), W1) == "0"


def test_classical_render():
    word = ReducedWord(A3, (3, 2, 1, 3, 2, 3))
    rep = build_rep(A3, word)
    text = classical_render(rep.gens[3].E, word)
    assert text == "(1 + u3.1) f(u3.1 + 1)"
    assert classical_render(QOperator.zero(), word) == ""
    f_text = classical_render(build_F(W1, 1), W1)
    assert f_text == "(1 - u1.1 - 2L1) f(u1.1 - 1)"
