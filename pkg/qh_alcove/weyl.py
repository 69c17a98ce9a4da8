"""Weyl groups, minimal coset representatives of W/W_P and the long element.

An element is stored as the integer matrix whose column j is the image of the
simple root alpha_j in simple-root coordinates. Equality and hashing use the
matrix only; the stored word is one reduced expression.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from qh_alcove.errors import DimensionMismatch, GroupTooLarge, InternalAssertion
from qh_alcove.rootsys import RootSystem, Vector, dim_of_parabolic, weyl_group_order

logger = logging.getLogger(__name__)

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_GROUP_LIMIT = 10**7


@dataclass(frozen=True)
class WeylElement:
    action: Matrix
    word: tuple[int, ...] = field(default=(), compare=False)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def rank(self) -> int:
        return len(self.action)

    def matrix(self) -> np.ndarray:
        return np.array(self.action, dtype=np.int64)

    def image_of_simple(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.action)

    def word_label(self) -> str:
        """1-based word such as ``s1 s2``; ``e`` for the identity."""
        if not self.word:
            return "e"
        return " ".join(f"s{i + 1}" for i in self.word)


@dataclass(frozen=True)
class CosetRep:
    """Minimal-length representative of a coset in W/W_P."""

    element: WeylElement
    length: int
    index: int


class CosetBasis(Sequence[CosetRep]):
    """Ordered minimal coset representatives of W/W_P for a maximal parabolic.

    The order (length, word) is frozen here and indexes every class downstream.
    """

    def __init__(self, rs: RootSystem, node: int, reps: list[CosetRep]) -> None:
        self.rs = rs
        self.node = node
        self._reps = tuple(reps)
        self._by_action = {r.element.action: r for r in reps}
        self.dim = dim_of_parabolic(rs, node)
        self.w_o = longest_element(rs)
        self._duals = tuple(dual_index(r, self, self.w_o).index for r in reps)

    def __len__(self) -> int:
        return len(self._reps)

    def __getitem__(self, index):  # type: ignore[override]
        return self._reps[index]

    def __iter__(self) -> Iterator[CosetRep]:
        return iter(self._reps)

    @property
    def omega(self) -> Vector:
        return self.rs.fundamental_weights[self.node]

    def lookup(self, action: Matrix) -> CosetRep:
        try:
            return self._by_action[action]
        except KeyError:
            raise InternalAssertion(f"{action} is not a minimal coset representative") from None

    def dual(self, index: int) -> int:
        return self._duals[index]

    def weight(self, index: int) -> Vector:
        """u omega_P in simple-root coordinates."""
        return apply(self._reps[index].element, self.omega)

    def labels(self) -> list[str]:
        return [f"y_{r.index}" for r in self._reps]


# ── Elements ─────────────────────────────────────────────────────────────────


@lru_cache(maxsize=None)
def _simple_matrices(rs: RootSystem) -> tuple[np.ndarray, ...]:
    mats = []
    for i in range(rs.rank):
        s = np.eye(rs.rank, dtype=np.int64)
        s[i, :] -= np.array(rs.cartan_matrix[i], dtype=np.int64)
        mats.append(s)
    return tuple(mats)


def _freeze(mat: np.ndarray) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in mat)


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(_freeze(np.eye(rs.rank, dtype=np.int64)), ())


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    return WeylElement(_freeze(_simple_matrices(rs)[i]), (i,))


def reflection(rs: RootSystem, root_index: int) -> WeylElement:
    """s_beta: alpha_j -> alpha_j - <alpha_j, h_beta> beta."""
    beta = np.array(rs.positive_roots[root_index], dtype=np.int64)
    coroot = rs.coroot_coordinates(root_index)
    mat = np.eye(rs.rank, dtype=np.int64)
    for j in range(rs.rank):
        k = sum(coroot[i] * rs.cartan_matrix[i][j] for i in range(rs.rank))
        if k.denominator != 1:
            raise InternalAssertion(f"non-integral pairing <alpha_{j + 1}, h_beta>")
        mat[:, j] -= int(k) * beta
    return from_matrix(rs, mat)


def from_matrix(rs: RootSystem, mat: np.ndarray) -> WeylElement:
    return WeylElement(_freeze(mat), reduced_word(rs, mat))


def multiply(rs: RootSystem, a: WeylElement, b: WeylElement) -> WeylElement:
    return from_matrix(rs, a.matrix() @ b.matrix())


def reduced_word(rs: RootSystem, mat: np.ndarray) -> tuple[int, ...]:
    """Reduced word by right descent: w s_i is shorter whenever w(alpha_i) < 0."""
    simple = _simple_matrices(rs)
    current = np.array(mat, dtype=np.int64)
    word: list[int] = []
    while True:
        descent = _first_negative_column(current, range(rs.rank))
        if descent is None:
            break
        current = current @ simple[descent]
        word.append(descent)
    if not np.array_equal(current, np.eye(rs.rank, dtype=np.int64)):
        raise InternalAssertion("matrix is not a Weyl group element")
    return tuple(reversed(word))


def apply(w: WeylElement, weight: Sequence[Fraction | int]) -> Vector:
    """Linear action on a weight in simple-root coordinates."""
    if len(weight) != w.rank:
        raise DimensionMismatch(w.rank, len(weight), "weight")
    return tuple(
        sum((row[j] * Fraction(weight[j]) for j in range(w.rank)), Fraction(0))
        for row in w.action
    )


def inversions(rs: RootSystem, w: WeylElement) -> int:
    """Number of positive roots sent to negative roots."""
    mat = w.matrix()
    count = 0
    for root in rs.positive_roots:
        image = mat @ np.array(root, dtype=np.int64)
        if image.min() < 0:
            count += 1
    return count


def longest_element(rs: RootSystem) -> WeylElement:
    """w_o: extend w by s_i while some simple root still maps to a positive root."""
    simple = _simple_matrices(rs)
    current = np.eye(rs.rank, dtype=np.int64)
    word: list[int] = []
    while True:
        ascent = next(
            (i for i in range(rs.rank) if current[:, i].min() >= 0),
            None,
        )
        if ascent is None:
            break
        current = current @ simple[ascent]
        word.append(ascent)
    return WeylElement(_freeze(current), tuple(word))


def enumerate_weyl(rs: RootSystem, limit: int = DEFAULT_GROUP_LIMIT) -> list[WeylElement]:
    """All elements by breadth-first closure under right multiplication."""
    order = weyl_group_order(rs)
    if order > limit:
        raise GroupTooLarge(rs.type_label, order, limit)
    simple = _simple_matrices(rs)
    start = identity(rs)
    seen = {start.action}
    elements = [start]
    queue = deque([(start.matrix(), start.word)])
    while queue:
        mat, word = queue.popleft()
        for i, s in enumerate(simple):
            nxt = mat @ s
            key = _freeze(nxt)
            if key not in seen:
                seen.add(key)
                elements.append(WeylElement(key, word + (i,)))
                queue.append((nxt, word + (i,)))
    if len(elements) != order:
        raise InternalAssertion(f"{rs.type_label}: enumerated {len(elements)} != {order}")
    logger.debug("Enumerated %d elements of W(%s)", order, rs.type_label)
    return elements


# ── Cosets ───────────────────────────────────────────────────────────────────


def min_coset_reps(rs: RootSystem, node: int, limit: int = DEFAULT_GROUP_LIMIT) -> CosetBasis:
    """Minimal representatives of W/W_P, sorted by (length, word).

    Walks the orbit of omega_P: ``s_i u`` is a new minimal representative exactly
    when ``<u omega_P, h_{alpha_i}> > 0``.
    """
    order = weyl_group_order(rs)
    if order > limit:
        raise GroupTooLarge(rs.type_label, order, limit)
    simple = _simple_matrices(rs)
    omega = rs.fundamental_weights[node]
    start = identity(rs)
    found: dict[Vector, WeylElement] = {omega: start}
    level = [(omega, start.matrix(), start.word)]
    while level:
        nxt_level = []
        for weight, mat, word in level:
            for i in range(rs.rank):
                k = sum((rs.cartan_matrix[i][j] * weight[j] for j in range(rs.rank)), Fraction(0))
                if k <= 0:
                    continue
                image = tuple(weight[j] - (k if j == i else 0) for j in range(rs.rank))
                if image in found:
                    continue
                new_mat = simple[i] @ mat
                elem = WeylElement(_freeze(new_mat), (i,) + word)
                found[image] = elem
                nxt_level.append((image, new_mat, elem.word))
        level = nxt_level
    elements = sorted(found.values(), key=lambda e: (e.length, e.word))
    reps = [CosetRep(e, e.length, idx) for idx, e in enumerate(elements)]
    logger.debug("W/W_P for %s node %d has %d cosets", rs.type_label, node + 1, len(reps))
    return CosetBasis(rs, node, reps)


def coset_of(w: WeylElement | np.ndarray, reps: CosetBasis) -> CosetRep:
    """Minimal representative of w W_P by greedy descent through Levi reflections."""
    rs = reps.rs
    simple = _simple_matrices(rs)
    levi = [j for j in range(rs.rank) if j != reps.node]
    current = w.matrix() if isinstance(w, WeylElement) else np.array(w, dtype=np.int64)
    while True:
        j = _first_negative_column(current, levi)
        if j is None:
            break
        current = current @ simple[j]
    return reps.lookup(_freeze(current))


def dual_index(u: CosetRep, reps: CosetBasis, w_o: WeylElement) -> CosetRep:
    """Coset of w_o u; an involution with length dim(G/P) - l_P(u)."""
    dual = coset_of(w_o.matrix() @ u.element.matrix(), reps)
    if dual.length != reps.dim - u.length:
        raise InternalAssertion(f"dual of {u.element.word_label()} has wrong length")
    return dual


def poincare_polynomial(reps: Sequence[CosetRep]) -> list[int]:
    """Coefficients of sum_u t^{l_P(u)}, lowest degree first."""
    top = max(r.length for r in reps)
    counts = [0] * (top + 1)
    for r in reps:
        counts[r.length] += 1
    return counts


def _first_negative_column(mat: np.ndarray, columns: Sequence[int] | range) -> int | None:
    for j in columns:
        if mat[:, j].min() < 0:
            return j
    return None
