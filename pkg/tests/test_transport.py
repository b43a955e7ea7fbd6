import pytest

from posrep.qtorus import (
    QOperator,
    VLaurent,
    bracket,
    commutation_exponent,
    expand_bracket,
    operator_from_brackets,
)
from posrep.repbuild import build_E, build_F, build_K
from posrep.rootdata import build_cartan
from posrep.transport import (
    MoveFrame,
    NonPolynomialError,
    OddPairingError,
    braid_conjugate,
    commutation_move,
    conjugation_factor,
    transport,
)
from posrep.words import ReducedWord, braid_path, enumerate_words, good_word

TWO_Q = VLaurent.q_power(1) + VLaurent.q_power(-1)
FRAME = MoveFrame(0, 1, 2)


def test_conjugation_factor_table():
    assert conjugation_factor(0, "inner") == ((), ())
    assert conjugation_factor(2, "inner") == ((-1,), ())
    assert conjugation_factor(-2, "inner") == ((), (1,))
    assert conjugation_factor(2, "outer") == ((), (-1,))
    assert conjugation_factor(-2, "outer") == ((1,), ())
    assert conjugation_factor(4, "inner") == ((-1, -3), ())
    assert conjugation_factor(-4, "outer") == ((1, 3), ())
    with pytest.raises(OddPairingError):
        conjugation_factor(3, "inner")


def test_quartic_factor_middle_coefficient():
    # (1 + q^-1 X)(1 + q^-3 X): the X coefficient is [2]_q * q^-2
    mid = VLaurent.q_power(-1) + VLaurent.q_power(-3)
    assert mid == TWO_Q * VLaurent.q_power(-2)


def test_single_braid_rule():
    # [w]e(-p_w) -> [u]e(-p_u - p_v + p_w) + [v - w]e(-p_v)
    op = expand_bracket(bracket(l_alpha={2: 1}, shift={2: -1}))
    out = braid_conjugate(op, FRAME)
    assert out == operator_from_brackets(
        [
            bracket(l_alpha={0: 1}, shift={0: -1, 1: -1, 2: 1}),
            bracket(l_alpha={1: 1, 2: -1}, shift={1: -1}),
        ]
    )


def test_single_braid_involution():
    op = expand_bracket(bracket(l_alpha={2: 1}, shift={2: -1}))
    assert braid_conjugate(braid_conjugate(op, FRAME), FRAME) == op


def test_double_braid_expansion():
    # [w - u]e(p_v - p_w) picks up a [2]_q term through the quartic factors;
    # the naive doubled-variable quantization would miss the middle term.
    op = expand_bracket(bracket(l_alpha={0: -1, 2: 1}, shift={1: 1, 2: -1}))
    out = braid_conjugate(op, FRAME)
    expected = operator_from_brackets(
        [
            bracket(l_alpha={1: 1, 2: -2}, shift={0: 1, 1: -1}),
            bracket(l_alpha={0: 1, 2: -1}, shift={1: -1, 2: 1}, scalar=TWO_Q),
            bracket(l_alpha={0: 2, 1: -1}, shift={0: -1, 1: -1, 2: 2}),
        ]
    )
    assert out == expected
    assert braid_conjugate(out, FRAME) == op


def test_double_braid_output_pairings_even():
    op = expand_bracket(bracket(l_alpha={0: -1, 2: 1}, shift={1: 1, 2: -1}))
    monos = braid_conjugate(op, FRAME).monomials()
    for a in range(len(monos)):
        for b in range(a + 1, len(monos)):
            assert commutation_exponent(monos[a].expo, monos[b].expo) % 2 == 0


def test_frame_relabel_preserves_pairing():
    ops = [
        expand_bracket(bracket(l_alpha={2: 1}, shift={2: -1})),
        expand_bracket(bracket(l_alpha={0: 1, 1: -1}, l_ell={1: -2}, shift={1: 1})),
    ]
    before = [m.expo for op in ops for m in op.monomials()]
    after = [m.expo for op in ops for m in braid_conjugate(op, FRAME).monomials()]
    # conjugation + relabeling is symplectic on these frames
    n = len(before)
    for a in range(n):
        for b in range(n):
            s1 = commutation_exponent(before[a], before[b])
            s2 = commutation_exponent(after[a], after[b])
            assert (s1 - s2) % 2 == 0


def test_odd_pairing_rejected():
    op = QOperator.monomial(
        expand_bracket(bracket(l_alpha={2: 1}, shift={2: -1})).monomials()[0].expo
    )
    bad = QOperator.monomial(op.single_monomial().expo._replace(gamma=(((2, -2)))))
    bad = QOperator.monomial(bad.single_monomial().expo._replace(gamma=((2, -2),)))
    with pytest.raises(OddPairingError):
        braid_conjugate(bad, FRAME)


def test_unbalanced_sum_is_not_transportable():
    # one half of a transformed pair alone leaves a binomial denominator
    full = braid_conjugate(expand_bracket(bracket(l_alpha={2: 1}, shift={2: -1})), FRAME)
    half = QOperator.monomial(full.monomials()[0].expo)
    with pytest.raises(NonPolynomialError):
        braid_conjugate(half, FRAME)


def test_commutation_move_involution():
    op = expand_bracket(bracket(l_alpha={0: 1, 3: -2}, shift={0: -1}))
    swapped = commutation_move(op, 0)
    assert swapped != op
    assert commutation_move(swapped, 0) == op
    # positions not involved are untouched
    assert commutation_move(op, 5) == op


def test_transport_empty_path():
    datum = build_cartan("A", 2)
    word = good_word(datum)
    op = expand_bracket(bracket(l_alpha={2: 1}, shift={2: -1}))
    out, back = transport(op, word, [])
    assert out == op and back.letters == word.letters


def test_transport_e2_across_braid():
    datum = build_cartan("A", 2)
    src = ReducedWord(datum, (2, 1, 2))
    dst = ReducedWord(datum, (1, 2, 1))
    op = build_E(src, 2)
    out, word = transport(op, src, braid_path(src, dst))
    assert word.letters == dst.letters
    assert out == operator_from_brackets(
        [
            bracket(l_alpha={0: 1}, shift={0: -1, 1: -1, 2: 1}),
            bracket(l_alpha={1: 1, 2: -1}, shift={1: -1}),
        ]
    )


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 3)])
def test_transported_f_and_k_match_direct(family, rank):
    datum = build_cartan(family, rank)
    words = enumerate_words(datum) if rank == 2 else enumerate_words(datum)[:6]
    base = good_word(datum)
    for target in words:
        path = braid_path(base, target)
        for i in datum.labels:
            f_out, _ = transport(build_F(base, i), base, path)
            assert f_out == build_F(target, i)
            k_out, _ = transport(build_K(base, i), base, path)
            assert k_out == build_K(target, i)


def test_commutation_move_matches_direct_build():
    datum = build_cartan("A", 3)
    src = ReducedWord(datum, (2, 1, 3, 2, 1, 3))
    dst = ReducedWord(datum, (2, 3, 1, 2, 1, 3))
    assert src.letters[1:3] == (1, 3) and dst.letters[1:3] == (3, 1)
    for i in datum.labels:
        assert commutation_move(build_F(src, i), 1) == build_F(dst, i)
        assert commutation_move(build_E(src, i), 1) == build_E(dst, i)
