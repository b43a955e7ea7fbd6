"""Simply-laced Cartan data, positive roots, and Weyl group elements.

Node labels follow the diagram conventions used throughout the package:

    A_n:  1 - 2 - ... - n
    D_n:  1 - 2 - 3 - ... - (n-1)   with node 0 attached below node 2
    E_n:  1 - 2 - 3 - ... - (n-1)   with node 0 attached below node 3

Roots are integer coordinate vectors over the simple roots (ordered by
label).  Weyl group elements are stored as the tuple of images of the
simple roots, which makes descent tests and length computations cheap at
rank <= 8.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class UnsupportedTypeError(ValueError):
    """Requested (family, rank) outside A_n (n>=1), D_n (n>=4), E_6/E_7/E_8."""


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    labels: tuple[int, ...]
    edges: frozenset[frozenset[int]]
    bipartition: tuple[tuple[int, int], ...]  # (label, n_weight) pairs

    def index(self, label: int) -> int:
        return self.labels.index(label)

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def a(self, i: int, j: int) -> int:
        """Cartan matrix entry, indexed by node labels."""
        if i == j:
            return 2
        return -1 if self.adjacent(i, j) else 0

    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(self.a(i, j) for j in self.labels) for i in self.labels
        )

    def n_weight(self, label: int) -> int:
        return dict(self.bipartition)[label]

    def neighbors(self, label: int) -> tuple[int, ...]:
        return tuple(j for j in self.labels if self.adjacent(label, j))


def _edges(family: str, rank: int) -> list[tuple[int, int]]:
    if family == "A":
        return [(i, i + 1) for i in range(1, rank)]
    if family == "D":
        return [(i, i + 1) for i in range(1, rank - 1)] + [(0, 2)]
    return [(i, i + 1) for i in range(1, rank - 1)] + [(0, 3)]


def build_cartan(family: str, rank: int, flip_bipartition: bool = False) -> CartanDatum:
    """Construct the Cartan datum for a simply-laced type.

    The bipartition weights alternate along edges; by default the smallest
    label gets weight 0, and ``flip_bipartition`` selects the other
    orientation.
    """
    family = family.upper()
    ok = (
        (family == "A" and rank >= 1)
        or (family == "D" and rank >= 4)
        or (family == "E" and rank in (6, 7, 8))
    )
    if not ok:
        raise UnsupportedTypeError(f"unsupported type {family}_{rank}")
    labels = tuple(range(1, rank + 1)) if family == "A" else tuple(range(rank))
    edges = _edges(family, rank)
    adj = {i: set() for i in labels}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    # Proper 2-coloring by BFS from the smallest label (the diagram is a tree).
    color = {labels[0]: 1 if flip_bipartition else 0}
    queue = [labels[0]]
    while queue:
        i = queue.pop()
        for j in adj[i]:
            if j not in color:
                color[j] = 1 - color[i]
                queue.append(j)
    datum = CartanDatum(
        family, rank, labels,
        frozenset(frozenset(e) for e in edges),
        tuple((i, color[i]) for i in labels),
    )
    for i, j in edges:
        assert abs(color[i] - color[j]) == 1
    return datum


# ---------------------------------------------------------------------------
# Roots.
# ---------------------------------------------------------------------------

def simple_root(datum: CartanDatum, label: int) -> tuple[int, ...]:
    return tuple(1 if l == label else 0 for l in datum.labels)


def reflect(datum: CartanDatum, label: int, vec: tuple[int, ...]) -> tuple[int, ...]:
    """Apply the simple reflection for ``label`` to a root vector."""
    c = sum(datum.a(label, j) * vec[k] for k, j in enumerate(datum.labels))
    i = datum.index(label)
    return tuple(v - c if k == i else v for k, v in enumerate(vec))


def is_positive(vec: tuple[int, ...]) -> bool:
    return any(v > 0 for v in vec)


@lru_cache(maxsize=None)
def positive_roots(datum: CartanDatum) -> tuple[tuple[int, ...], ...]:
    """All positive roots, generated by reflection closure from the simple ones."""
    roots = {simple_root(datum, i) for i in datum.labels}
    frontier = set(roots)
    while frontier:
        new = set()
        for vec in frontier:
            for i in datum.labels:
                img = reflect(datum, i, vec)
                if is_positive(img) and img not in roots:
                    new.add(img)
        roots |= new
        frontier = new
    return tuple(sorted(roots))


def positive_root_count(datum: CartanDatum) -> int:
    return len(positive_roots(datum))


def langlands_b_vectors(datum: CartanDatum) -> list[tuple[Fraction, ...]]:
    """Columns b^k of the inverse Cartan matrix, as exact rationals.

    Each b^k solves A b = e_k; the defining equation is re-verified before
    returning.
    """
    n = datum.rank
    a = [[Fraction(x) for x in row] for row in datum.cartan_matrix()]
    aug = [a[i] + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pivval = aug[col][col]
        aug[col] = [x / pivval for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    out = []
    for k in range(n):
        b = tuple(inv[i][k] for i in range(n))
        for i in range(n):
            check = sum(Fraction(datum.cartan_matrix()[i][j]) * b[j] for j in range(n))
            assert check == (1 if i == k else 0)
        out.append(b)
    return out


# ---------------------------------------------------------------------------
# Weyl group elements.
# ---------------------------------------------------------------------------

WeylElement = tuple  # tuple of image vectors of the simple roots, by label order


def weyl_identity(datum: CartanDatum) -> WeylElement:
    return tuple(simple_root(datum, i) for i in datum.labels)


def weyl_act(datum: CartanDatum, w: WeylElement, vec: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * datum.rank
    for k, coef in enumerate(vec):
        if coef:
            img = w[k]
            for t in range(datum.rank):
                out[t] += coef * img[t]
    return tuple(out)


def weyl_right_mul(datum: CartanDatum, w: WeylElement, label: int) -> WeylElement:
    """w * s_label."""
    i = datum.index(label)
    return tuple(
        tuple(x - datum.a(label, j) * y for x, y in zip(w[k], w[i]))
        for k, j in enumerate(datum.labels)
    )


def weyl_left_mul(datum: CartanDatum, label: int, w: WeylElement) -> WeylElement:
    """s_label * w."""
    return tuple(reflect(datum, label, img) for img in w)


def weyl_compose(datum: CartanDatum, w: WeylElement, v: WeylElement) -> WeylElement:
    """The element w v (first apply v, then w)."""
    return tuple(weyl_act(datum, w, img) for img in v)


def weyl_from_word(datum: CartanDatum, letters) -> WeylElement:
    w = weyl_identity(datum)
    for i in letters:
        w = weyl_right_mul(datum, w, i)
    return w


def weyl_length(datum: CartanDatum, w: WeylElement) -> int:
    count = 0
    for beta in positive_roots(datum):
        if not is_positive(weyl_act(datum, w, beta)):
            count += 1
    return count


def right_descents(datum: CartanDatum, w: WeylElement) -> list[int]:
    """Labels i with l(w s_i) < l(w), i.e. w(alpha_i) negative."""
    return [i for i in datum.labels if not is_positive(w[datum.index(i)])]
