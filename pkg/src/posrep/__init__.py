"""Exact symbolic engine for positive principal series representations of
simply-laced split real quantum groups.

Generators act as finite sums of q-commuting exponential monomials on an
integer symplectic exponent lattice indexed by the positions of a reduced
word for the longest Weyl group element; all coefficients live in
Z[v, v^-1] with v^2 = q, so every check in the package is exact.
"""

from .qtorus import (
    BracketTerm,
    QExponent,
    QMonomial,
    QOperator,
    VLaurent,
    bracket,
    commutation_exponent,
    expand_bracket,
    operator_from_brackets,
    q_commutator,
    rebracket,
    term_count,
)
from .rootdata import (
    CartanDatum,
    build_cartan,
    langlands_b_vectors,
    positive_root_count,
)
from .words import (
    BraidMove,
    ReducedWord,
    apply_move,
    bad_word,
    braid_path,
    good_word,
    is_reduced,
    lusztig_labels,
    word_ending_in,
    word_starting_with,
)
from .repbuild import (
    Representation,
    build_E,
    build_E_rightmost,
    build_F,
    build_K,
    build_rep,
    classical_render,
    operator_text,
)
from .transport import (
    MoveFrame,
    braid_conjugate,
    commutation_move,
    conjugation_factor,
    transport,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
