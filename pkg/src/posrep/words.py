"""Reduced words for the longest element, braid moves, and move paths.

A word is a left-to-right sequence of node labels.  Position ``t`` of a
word carries the coordinate pair (u_t, p_t) of the exponent lattice; the
occurrence label ``i.k`` attached to a position counts occurrences of its
letter from the right end of the word.

The catalog words for E_6/E_7/E_8 are stored in ``data/good_words.txt``
(one per line, ``TYPE RANK: i1,i2,...``); A_n and D_n catalog words are
generated.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, NamedTuple

from .rootdata import (
    CartanDatum,
    positive_root_count,
    right_descents,
    simple_root,
    weyl_act,
    weyl_compose,
    weyl_from_word,
    weyl_identity,
    weyl_length,
    weyl_right_mul,
    is_positive,
)


class NotReducedError(ValueError):
    pass


class MoveError(ValueError):
    """A braid/commutation move does not apply at the requested position."""


@dataclass(frozen=True)
class ReducedWord:
    datum: CartanDatum
    letters: tuple[int, ...]

    def __post_init__(self):
        bad = [i for i in self.letters if i not in self.datum.labels]
        if bad:
            raise ValueError(f"letters {bad} are not node labels of {self.datum.family}_{self.datum.rank}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return ",".join(str(i) for i in self.letters)


class BraidMove(NamedTuple):
    pos: int
    kind: Literal["braid", "commute"]


class LusztigLabel(NamedTuple):
    letter: int
    occurrence: int  # 1 at the rightmost occurrence of this letter


def is_reduced(word: ReducedWord) -> bool:
    """True iff no prefix reflection ever sends a simple root negative."""
    datum = word.datum
    w = weyl_identity(datum)
    for i in word.letters:
        if not is_positive(w[datum.index(i)]):
            return False
        w = weyl_right_mul(datum, w, i)
    return True


def check_longest(word: ReducedWord) -> None:
    n = positive_root_count(word.datum)
    if len(word.letters) != n or not is_reduced(word):
        raise NotReducedError(
            f"not a reduced word for the longest element (need length {n})"
        )


def lusztig_labels(word: ReducedWord) -> tuple[LusztigLabel, ...]:
    """Per-position (letter, occurrence-from-the-right) labels."""
    seen: dict[int, int] = {}
    out: list[LusztigLabel] = []
    for i in reversed(word.letters):
        seen[i] = seen.get(i, 0) + 1
        out.append(LusztigLabel(i, seen[i]))
    return tuple(reversed(out))


def occurrence_positions(word: ReducedWord, letter: int) -> list[int]:
    """Positions of ``letter``, indexed by occurrence (entry k-1 is i.k)."""
    return [t for t in range(len(word.letters) - 1, -1, -1) if word.letters[t] == letter]


# ---------------------------------------------------------------------------
# Moves.
# ---------------------------------------------------------------------------

def _check_move(datum: CartanDatum, letters: tuple[int, ...], move: BraidMove) -> None:
    p, kind = move
    if kind == "commute":
        if p < 0 or p + 1 >= len(letters):
            raise MoveError(f"commutation position {p} out of range")
        a, b = letters[p], letters[p + 1]
        if a == b or datum.adjacent(a, b):
            raise MoveError(f"letters {a},{b} at position {p} do not commute")
    elif kind == "braid":
        if p < 0 or p + 2 >= len(letters):
            raise MoveError(f"braid position {p} out of range")
        a, b, c = letters[p : p + 3]
        if a != c or not datum.adjacent(a, b):
            raise MoveError(f"no braid pattern at position {p}: {a},{b},{c}")
    else:
        raise MoveError(f"unknown move kind {kind!r}")


def _apply_move_letters(letters: list[int], move: BraidMove) -> None:
    p, kind = move
    if kind == "commute":
        letters[p], letters[p + 1] = letters[p + 1], letters[p]
    else:
        a, b = letters[p], letters[p + 1]
        letters[p : p + 3] = [b, a, b]


def apply_move(word: ReducedWord, move: BraidMove) -> ReducedWord:
    _check_move(word.datum, word.letters, move)
    letters = list(word.letters)
    _apply_move_letters(letters, move)
    return ReducedWord(word.datum, tuple(letters))


def available_moves(word: ReducedWord) -> list[BraidMove]:
    datum = word.datum
    out = []
    for p in range(len(word.letters) - 1):
        a, b = word.letters[p], word.letters[p + 1]
        if a != b and not datum.adjacent(a, b):
            out.append(BraidMove(p, "commute"))
        if p + 2 < len(word.letters) and word.letters[p + 2] == a and datum.adjacent(a, b):
            out.append(BraidMove(p, "braid"))
    return out


def enumerate_words(datum: CartanDatum) -> list[ReducedWord]:
    """All reduced words of the longest element, by closure under moves.

    Only intended for small ranks (the count explodes quickly).
    """
    start = good_word(datum)
    seen = {start.letters}
    queue = [start]
    while queue:
        w = queue.pop()
        for move in available_moves(w):
            nxt = apply_move(w, move)
            if nxt.letters not in seen:
                seen.add(nxt.letters)
                queue.append(nxt)
    return [ReducedWord(datum, l) for l in sorted(seen)]


def random_longest_words(datum: CartanDatum, count: int, seed: int = 0, walk: int = 60) -> list[ReducedWord]:
    """Distinct reduced words of the longest element via random move walks."""
    import random

    rng = random.Random(seed)
    words = []
    seen = {good_word(datum).letters}
    while len(words) < count:
        w = good_word(datum)
        for _ in range(walk):
            moves = available_moves(w)
            w = apply_move(w, rng.choice(moves))
        if w.letters not in seen:
            seen.add(w.letters)
            words.append(w)
    return words


# ---------------------------------------------------------------------------
# Catalog words.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _e_catalog() -> dict[tuple[str, int], tuple[int, ...]]:
    out: dict[tuple[str, int], tuple[int, ...]] = {}
    text = (
        importlib.resources.files("posrep.data").joinpath("good_words.txt").read_text()
    )
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, _, body = line.partition(":")
        family, rank = head.split()
        out[(family, int(rank))] = tuple(int(x) for x in body.split(","))
    return out


def good_word(datum: CartanDatum) -> ReducedWord:
    """The catalog word: standard for A_n, the symmetric-prefix word for D_n,
    and the stored words for E_6/E_7/E_8."""
    if datum.family == "A":
        n = datum.rank
        letters = [i for k in range(1, n + 1) for i in range(n, k - 1, -1)]
    elif datum.family == "D":
        n = datum.rank
        letters = [2, 1, 2, 0, 1, 2]
        for m in range(3, n):
            letters.extend(range(m, 2, -1))
            letters.extend((2, 0, 1, 2))
            letters.extend(range(3, m + 1))
        # symmetrize the start in the two fork letters
        letters[:6] = [0, 1, 2, 0, 1, 2]
    else:
        letters = list(_e_catalog()[(datum.family, datum.rank)])
    word = ReducedWord(datum, tuple(letters))
    check_longest(word)
    return word


def bad_word(datum: CartanDatum) -> ReducedWord:
    """A deliberately expensive word: any completion of (A-chain longest
    word + fork letter 0) to a reduced word of the longest element.

    The suffix forces every chain generator to act through the trailing
    fork letter; the prefix is completed greedily.  The constructed word is
    returned so callers can report exactly what was used.
    """
    if datum.family == "A":
        raise UnsupportedBadWord("bad words are defined for types D and E only")
    chain = [i for i in datum.labels if i != 0]
    n = len(chain)
    # standard A_n word on the chain, using the chain order as 1..n
    suffix = [chain[i - 1] for k in range(1, n + 1) for i in range(n, k - 1, -1)]
    suffix.append(0)
    w0 = weyl_from_word(datum, good_word(datum).letters)
    suffix_inv = weyl_from_word(datum, reversed(suffix))
    prefix_elem = weyl_compose(datum, w0, suffix_inv)
    prefix = _greedy_word(datum, prefix_elem)
    word = ReducedWord(datum, tuple(prefix + suffix))
    check_longest(word)
    return word


class UnsupportedBadWord(ValueError):
    pass


def _greedy_word(datum: CartanDatum, elem) -> list[int]:
    """A reduced word for ``elem``, built right-to-left from least descents."""
    letters: list[int] = []
    remaining = weyl_length(datum, elem)
    while remaining:
        i = min(right_descents(datum, elem))
        letters.append(i)
        elem = weyl_right_mul(datum, elem, i)
        remaining -= 1
    letters.reverse()
    return letters


def word_ending_in(datum: CartanDatum, i: int) -> ReducedWord:
    """A reduced word for the longest element whose last letter is ``i``."""
    w0 = weyl_from_word(datum, good_word(datum).letters)
    elem = weyl_right_mul(datum, w0, i)
    word = ReducedWord(datum, tuple(_greedy_word(datum, elem) + [i]))
    check_longest(word)
    return word


def word_starting_with(datum: CartanDatum, i: int) -> ReducedWord:
    """A reduced word for the longest element whose first letter is ``i``."""
    w0 = weyl_from_word(datum, good_word(datum).letters)
    rest = weyl_compose(
        datum, weyl_from_word(datum, (i,)), w0
    )  # s_i w0, of length N-1
    # build s_i w0 right-to-left, then prepend i
    word = ReducedWord(datum, tuple([i] + _greedy_word(datum, rest)))
    check_longest(word)
    return word


# ---------------------------------------------------------------------------
# Move paths between reduced words.
# ---------------------------------------------------------------------------

def _force_first(datum, letters: list[int], start: int, target: int, moves: list[BraidMove]) -> None:
    """Emit moves making letters[start] == target.

    Precondition: target is a left descent of the element of
    letters[start:], which holds whenever some reduced word of that
    element begins with target.
    """
    j = letters[start]
    if j == target:
        return
    _force_first(datum, letters, start + 1, target, moves)
    if not datum.adjacent(j, target):
        move = BraidMove(start, "commute")
    else:
        _force_first(datum, letters, start + 2, j, moves)
        move = BraidMove(start, "braid")
    _apply_move_letters(letters, move)
    moves.append(move)


def _force_last(datum, letters: list[int], end: int, target: int, moves: list[BraidMove]) -> None:
    """Mirror of _force_first: make letters[end-1] == target."""
    j = letters[end - 1]
    if j == target:
        return
    _force_last(datum, letters, end - 1, target, moves)
    if not datum.adjacent(j, target):
        move = BraidMove(end - 2, "commute")
    else:
        _force_last(datum, letters, end - 2, j, moves)
        move = BraidMove(end - 3, "braid")
    _apply_move_letters(letters, move)
    moves.append(move)


def braid_path(src: ReducedWord, dst: ReducedWord) -> list[BraidMove]:
    """A move sequence transforming ``src`` into ``dst``.

    Works by aligning prefixes left to right; every intermediate word stays
    reduced because only valid moves are emitted.
    """
    if src.datum != dst.datum:
        raise ValueError("words live over different Cartan data")
    if len(src.letters) != len(dst.letters):
        raise NotReducedError("words have different lengths")
    for w in (src, dst):
        if not is_reduced(w):
            raise NotReducedError(f"word {w} is not reduced")
    if weyl_from_word(src.datum, src.letters) != weyl_from_word(dst.datum, dst.letters):
        raise ValueError("words represent different group elements")
    letters = list(src.letters)
    moves: list[BraidMove] = []
    for t in range(len(letters)):
        _force_first(src.datum, letters, t, dst.letters[t], moves)
    assert tuple(letters) == dst.letters
    return moves


def path_to_word_ending_in(word: ReducedWord, i: int) -> tuple[list[BraidMove], ReducedWord]:
    """Moves from ``word`` to some reduced word ending in ``i``.

    Replaying the returned moves in reverse transforms the end word back
    into ``word`` (every move is its own inverse).
    """
    letters = list(word.letters)
    moves: list[BraidMove] = []
    _force_last(word.datum, letters, len(letters), i, moves)
    return moves, ReducedWord(word.datum, tuple(letters))
