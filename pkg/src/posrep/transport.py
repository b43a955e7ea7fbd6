"""Braid-move transformation of operators.

A braid move at positions (t, t+1, t+2) acts on operators in three exact
steps, all inside the monomial algebra:

1. inner conjugation by the monomial Z with exponent
   pi*b*(2p_w - 2p_u - u + v - w) over the frame coordinates
   (u, v, w) = (t, t+1, t+2);
2. outer conjugation by Y (same exponent with the u-part negated);
3. a lattice relabeling: u-parts transform by T^t and p-parts by T^{-1},
   with T = [[-1,1,0],[1,0,1],[1,0,0]], which preserves every commutation
   exponent.

Conjugating a monomial m that q-commutes with the argument X at an even
exponent s multiplies it on the left by a product of binomials
(1 + q^c X); negative s produces the reciprocal of such a product.  The
reciprocals are never materialized: terms are brought over a common
binomial denominator and the assembled numerator is divided out exactly,
ray by ray, at the end of each conjugation step.  A nonzero remainder
means the input was not transportable and raises NonPolynomialError.

Commutation moves just swap the two position labels in all exponents.
"""

from __future__ import annotations

import os
from bisect import bisect_left
from typing import Iterable, NamedTuple

from .qtorus import (
    QExponent,
    QOperator,
    VLaurent,
    commutation_exponent,
    exponent_product,
    sparse,
)
from .words import BraidMove, MoveError, ReducedWord, apply_move


class OddPairingError(ArithmeticError):
    """A monomial q-commutes with a conjugation argument at an odd exponent."""


class NonPolynomialError(ArithmeticError):
    """A conjugation left a non-cancelling binomial denominator."""


class TermBudgetError(RuntimeError):
    """A transport exceeded the configured monomial budget."""

    def __init__(self, message: str, trace: list | None = None):
        super().__init__(message)
        self.trace = trace or []


DEFAULT_MAX_TERMS = 5_000_000


def term_budget() -> int:
    return int(os.environ.get("POSREP_MAX_TERMS", DEFAULT_MAX_TERMS))


class MoveFrame(NamedTuple):
    """The three positions (u, v, w) of a braid move, left to right."""

    u: int
    v: int
    w: int

    def z_exponent(self) -> QExponent:
        return QExponent(
            sparse({self.u: -1, self.v: 1, self.w: -1}),
            sparse({self.u: -1, self.w: 1}),
            (), 0,
        )

    def y_exponent(self) -> QExponent:
        return QExponent(
            sparse({self.u: 1, self.v: -1, self.w: 1}),
            sparse({self.u: -1, self.w: 1}),
            (), 0,
        )


def conjugation_factor(s: int, direction: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Binomial factors (1 + q^c X) for conjugating at even exponent s.

    Returns (numerator_powers, denominator_powers); each power c stands for
    the factor (1 + q^c X).  ``direction`` is "inner" for g*(X) . g(X) and
    "outer" for g(X) . g*(X); the two directions are reciprocal.
    """
    if direction not in ("inner", "outer"):
        raise ValueError(f"unknown direction {direction!r}")
    if s % 2:
        raise OddPairingError(f"odd commutation exponent {s}")
    k = abs(s) // 2
    if k == 0:
        return (), ()
    falling = tuple(1 - 2 * j for j in range(1, k + 1))   # q^-1, q^-3, ...
    rising = tuple(2 * j - 1 for j in range(1, k + 1))    # q^1, q^3, ...
    if direction == "inner":
        return (falling, ()) if s > 0 else ((), rising)
    return ((), falling) if s > 0 else (rising, ())


def _mul_binomial(terms: dict, x: QExponent, c: int) -> dict:
    """Left-multiply a term dict by (1 + q^c X)."""
    out = dict(terms)
    for e, coef in terms.items():
        e2 = exponent_product(x, e)
        c2 = coef.shift(2 * c + commutation_exponent(x, e))
        prev = out.get(e2)
        out[e2] = c2 if prev is None else prev + c2
    return {e: coef for e, coef in out.items() if coef.coeffs}


def _div_binomial(terms: dict, x: QExponent, c: int) -> dict:
    """Solve (1 + q^c X) * R = terms for R, exactly.

    Terms are grouped into rays {base + k*X}; within a ray, left
    multiplication by X shifts k by one and scales by a fixed power of v,
    so the division is a first-order recurrence per ray.
    """
    # first nonzero coordinate of X identifies the ray parameter
    if x.alpha:
        part, (p0, c0) = "alpha", x.alpha[0]
    else:
        part, (p0, c0) = "gamma", x.gamma[0]

    def x_multiple(k: int) -> QExponent:
        return QExponent(
            tuple((i, k * v) for i, v in x.alpha),
            tuple((i, k * v) for i, v in x.gamma),
            (), 0,
        )

    def ray_split(e: QExponent) -> tuple[QExponent, int]:
        vec = e.alpha if part == "alpha" else e.gamma
        val = 0
        for idx, v in vec:
            if idx == p0:
                val = v
                break
        k = val // c0
        base = exponent_product(e, x_multiple(-k)) if k else e
        return base, k

    rays: dict[QExponent, dict[int, VLaurent]] = {}
    for e, coef in terms.items():
        base, k = ray_split(e)
        rays.setdefault(base, {})[k] = coef
    out: dict[QExponent, VLaurent] = {}
    for base, slots in rays.items():
        s0 = commutation_exponent(x, base)  # constant along the ray
        step = 2 * c + s0
        kmin, kmax = min(slots), max(slots)
        prev = VLaurent.zero()
        cur_exp = exponent_product(base, x_multiple(kmin)) if kmin else base
        for k in range(kmin, kmax + 1):
            if k > kmin:
                cur_exp = exponent_product(x, cur_exp)
            r = slots.get(k, VLaurent.zero()) - prev.shift(step)
            if k == kmax:
                if r.coeffs:
                    raise NonPolynomialError(
                        f"residue v^({r.val})... survives division by (1 + q^{c} X)"
                    )
                break
            if r.coeffs:
                out[cur_exp] = r
            prev = r
    return out


def _conjugate(terms: dict, x: QExponent, direction: str) -> dict:
    """Conjugate a term dict by g(X) in the given direction."""
    groups: dict[int, dict[QExponent, VLaurent]] = {}
    for e, coef in terms.items():
        s = commutation_exponent(x, e)
        groups.setdefault(s, {})[e] = coef
    # global denominator: the longest binomial chain over all groups
    denom: tuple[int, ...] = ()
    for s in groups:
        _, d = conjugation_factor(s, direction)
        if len(d) > len(denom):
            denom = d
    acc: dict[QExponent, VLaurent] = {}
    for s, sub in groups.items():
        numer, d = conjugation_factor(s, direction)
        for c in numer:
            sub = _mul_binomial(sub, x, c)
        for c in denom[len(d):]:  # denominator chains are nested prefixes
            sub = _mul_binomial(sub, x, c)
        for e, coef in sub.items():
            prev = acc.get(e)
            acc[e] = coef if prev is None else prev + coef
    acc = {e: coef for e, coef in acc.items() if coef.coeffs}
    for c in denom:
        acc = _div_binomial(acc, x, c)
    return acc


def _relabel(terms: dict, frame: MoveFrame) -> dict:
    """Apply the determinant-one frame relabeling to all exponents."""
    u, v, w = frame
    out: dict[QExponent, VLaurent] = {}
    for e, coef in terms.items():
        am = dict(e.alpha)
        gm = dict(e.gamma)
        au, av, aw = am.pop(u, 0), am.pop(v, 0), am.pop(w, 0)
        gu, gv, gw = gm.pop(u, 0), gm.pop(v, 0), gm.pop(w, 0)
        # u-parts by T^t, p-parts by T^{-1}
        am[u], am[v], am[w] = -au + av + aw, au, av
        gm[u], gm[v], gm[w] = gw, gu + gw, gv - gw
        e2 = QExponent(sparse(am), sparse(gm), e.ell, e.const)
        prev = out.get(e2)
        out[e2] = coef if prev is None else prev + coef
    return out


# ---------------------------------------------------------------------------
# Local (three-coordinate) form of one braid move.
#
# A braid move only reads and writes the frame positions, so each monomial
# splits into an inert remainder and a 6-tuple of local u/p entries.  The
# whole conjugate-divide-relabel pipeline runs on those 6-tuples, grouped
# by remainder; identical local groups are served from a cache.
# ---------------------------------------------------------------------------

_Z_LOC = ((-1, 1, -1), (-1, 0, 1))
_Y_LOC = ((1, -1, 1), (-1, 0, 1))

LocalKey = tuple  # (au, av, aw, gu, gv, gw)


def _pair_loc(a1, g1, a2, g2) -> int:
    return (
        a1[0] * g2[0] + a1[1] * g2[1] + a1[2] * g2[2]
        - g1[0] * a2[0] - g1[1] * a2[1] - g1[2] * a2[2]
    )


def _mul_binomial_loc(terms: dict, x, c: int) -> dict:
    (xa, xg) = x
    out = dict(terms)
    for loc, coef in terms.items():
        a = (loc[0], loc[1], loc[2])
        g = (loc[3], loc[4], loc[5])
        s = _pair_loc(xa, xg, a, g)
        loc2 = (a[0] + xa[0], a[1] + xa[1], a[2] + xa[2],
                g[0] + xg[0], g[1] + xg[1], g[2] + xg[2])
        c2 = coef.shift(2 * c + s)
        prev = out.get(loc2)
        out[loc2] = c2 if prev is None else prev + c2
    return {l: cf for l, cf in out.items() if cf.coeffs}


def _div_binomial_loc(terms: dict, x, c: int) -> dict:
    (xa, xg) = x
    c0 = xa[0]  # first coordinate of both frame arguments is nonzero
    rays: dict[tuple, dict[int, VLaurent]] = {}
    for loc, coef in terms.items():
        k = loc[0] // c0
        base = (loc[0] - k * xa[0], loc[1] - k * xa[1], loc[2] - k * xa[2],
                loc[3] - k * xg[0], loc[4] - k * xg[1], loc[5] - k * xg[2])
        rays.setdefault(base, {})[k] = coef
    out: dict[tuple, VLaurent] = {}
    for base, slots in rays.items():
        s0 = _pair_loc(xa, xg, base[:3], base[3:])
        step = 2 * c + s0
        kmin, kmax = min(slots), max(slots)
        prev = None
        for k in range(kmin, kmax + 1):
            r = slots.get(k, VLaurent.zero())
            if prev is not None and prev.coeffs:
                r = r - prev.shift(step)
            if k == kmax:
                if r.coeffs:
                    raise NonPolynomialError(
                        f"residue survives division by (1 + q^{c} X)"
                    )
                break
            if r.coeffs:
                out[(base[0] + k * xa[0], base[1] + k * xa[1], base[2] + k * xa[2],
                     base[3] + k * xg[0], base[4] + k * xg[1], base[5] + k * xg[2])] = r
            prev = r
    return out


def _conjugate_loc(terms: dict, x, direction: str) -> dict:
    (xa, xg) = x
    groups: dict[int, dict] = {}
    for loc, coef in terms.items():
        s = _pair_loc(xa, xg, loc[:3], loc[3:])
        groups.setdefault(s, {})[loc] = coef
    denom: tuple[int, ...] = ()
    for s in groups:
        _, d = conjugation_factor(s, direction)
        if len(d) > len(denom):
            denom = d
    acc: dict[tuple, VLaurent] = {}
    for s, sub in groups.items():
        numer, d = conjugation_factor(s, direction)
        for c in numer:
            sub = _mul_binomial_loc(sub, x, c)
        for c in denom[len(d):]:
            sub = _mul_binomial_loc(sub, x, c)
        for loc, coef in sub.items():
            prev = acc.get(loc)
            acc[loc] = coef if prev is None else prev + coef
    acc = {l: cf for l, cf in acc.items() if cf.coeffs}
    for c in denom:
        acc = _div_binomial_loc(acc, x, c)
    return acc


def _braid_pipeline_loc(group: tuple) -> tuple:
    """Conjugate + relabel a group of (local key, coeff) pairs."""
    terms = dict(group)
    terms = _conjugate_loc(terms, _Z_LOC, "inner")
    terms = _conjugate_loc(terms, _Y_LOC, "outer")
    out = []
    for (au, av, aw, gu, gv, gw), coef in terms.items():
        out.append(((-au + av + aw, au, av, gw, gu + gw, gv - gw), coef))
    return tuple(out)


_PIPELINE_CACHE: dict[tuple, tuple] = {}
_PIPELINE_CACHE_MAX = 200_000


def _split_entries(vec: SparseVec, u: int) -> tuple[tuple, int, int, int]:
    """Remove entries at positions u, u+1, u+2, returning (rest, e_u, e_v, e_w)."""
    lo = bisect_left(vec, (u,))
    hi = lo
    vals = [0, 0, 0]
    n = len(vec)
    while hi < n and vec[hi][0] <= u + 2:
        vals[vec[hi][0] - u] = vec[hi][1]
        hi += 1
    if lo == hi:
        return vec, 0, 0, 0
    return vec[:lo] + vec[hi:], vals[0], vals[1], vals[2]


def _merge_entries(rest: tuple, u: int, vals: tuple) -> tuple:
    entries = tuple((u + k, val) for k, val in enumerate(vals) if val)
    if not entries:
        return rest
    lo = bisect_left(rest, (u,))
    return rest[:lo] + entries + rest[lo:]


def _braid_inplace(terms: dict, u: int) -> None:
    """Apply one braid move at positions (u, u+1, u+2) to a term dict.

    Monomials with no entries at the frame positions are fixed by the whole
    pipeline and are left untouched.
    """
    groups: dict[tuple, list] = {}
    stale: list[QExponent] = []
    for e, coef in terms.items():
        a_rest, au, av, aw = _split_entries(e.alpha, u)
        g_rest, gu, gv, gw = _split_entries(e.gamma, u)
        if not (au or av or aw or gu or gv or gw):
            continue
        rem = (a_rest, g_rest, e.ell, e.const)
        groups.setdefault(rem, []).append(((au, av, aw, gu, gv, gw), coef))
        stale.append(e)
    for e in stale:
        del terms[e]
    for (a_rest, g_rest, ell, const), pairs in groups.items():
        key = tuple(sorted(pairs))
        result = _PIPELINE_CACHE.get(key)
        if result is None:
            result = _braid_pipeline_loc(key)
            if len(_PIPELINE_CACHE) < _PIPELINE_CACHE_MAX:
                _PIPELINE_CACHE[key] = result
        for (au, av, aw, gu, gv, gw), coef in result:
            expo = QExponent(
                _merge_entries(a_rest, u, (au, av, aw)),
                _merge_entries(g_rest, u, (gu, gv, gw)),
                ell, const,
            )
            prev = terms.get(expo)
            if prev is None:
                terms[expo] = coef
            else:
                total = prev + coef
                if total.coeffs:
                    terms[expo] = total
                else:
                    del terms[expo]


def braid_conjugate(op: QOperator, frame: MoveFrame) -> QOperator:
    """Transform an operator across one braid move."""
    u = frame.u
    if frame.v != u + 1 or frame.w != u + 2:
        # non-contiguous frames take the generic path
        terms = _conjugate(op.terms, frame.z_exponent(), "inner")
        terms = _conjugate(terms, frame.y_exponent(), "outer")
        return QOperator(_relabel(terms, frame))
    terms = dict(op.terms)
    _braid_inplace(terms, u)
    return QOperator(terms)


def _swap_entries(vec: SparseVec, p: int) -> SparseVec:
    """Exchange the values at positions p and p+1 in a sorted sparse tuple."""
    lo = bisect_left(vec, (p,))
    hi = lo
    n = len(vec)
    a = b = 0
    while hi < n and vec[hi][0] <= p + 1:
        if vec[hi][0] == p:
            a = vec[hi][1]
        else:
            b = vec[hi][1]
        hi += 1
    if lo == hi or a == b:
        return vec
    entries = tuple(e for e in (((p, b) if b else None), ((p + 1, a) if a else None)) if e)
    return vec[:lo] + entries + vec[hi:]


def _commute_inplace(terms: dict, pos: int) -> None:
    # swapping positions is a bijection on exponents, so images of changed
    # keys never collide with unchanged keys
    changes = []
    for e, coef in terms.items():
        a2 = _swap_entries(e.alpha, pos)
        g2 = _swap_entries(e.gamma, pos)
        if a2 is e.alpha and g2 is e.gamma:
            continue
        changes.append((e, QExponent(a2, g2, e.ell, e.const), coef))
    for e, _, _ in changes:
        del terms[e]
    for _, e2, coef in changes:
        terms[e2] = coef


def commutation_move(op: QOperator, pos: int) -> QOperator:
    """Swap the position labels pos and pos+1 in all exponents."""
    terms = dict(op.terms)
    _commute_inplace(terms, pos)
    return QOperator(terms)


def transport(
    op: QOperator,
    word: ReducedWord,
    path: Iterable[BraidMove],
    max_terms: int | None = None,
    trace: list | None = None,
) -> tuple[QOperator, ReducedWord]:
    """Fold a move path over an operator, tracking the word as it changes.

    ``trace``, when given, receives one (move, word, n_monomials) triple per
    step.  Raises TermBudgetError when the monomial count exceeds the
    budget (default from POSREP_MAX_TERMS).
    """
    budget = term_budget() if max_terms is None else max_terms
    terms = dict(op.terms)
    for move in path:
        word = apply_move(word, move)  # validates the pattern
        if move.kind == "commute":
            _commute_inplace(terms, move.pos)
        else:
            _braid_inplace(terms, move.pos)
        if trace is not None:
            trace.append((move, word, len(terms)))
        if len(terms) > budget:
            raise TermBudgetError(
                f"operator grew to {len(terms)} monomials (budget {budget})",
                trace,
            )
    return QOperator(terms), word


def format_trace(trace: list) -> str:
    """Render a transport trace: word, move, monomial count per step."""
    lines = []
    for move, word, n in trace:
        lines.append(f"{move.kind}@{move.pos}\t{n}\t{word}")
    return "\n".join(lines)
