"""Exact root-system data for the simple types A through G.

Conventions:
    - Weights live in simple-root coordinates, coweights in simple-coroot
      coordinates. Alcove points use a_j = alpha_j(mu).
    - ``cartan_matrix[i][j] = <alpha_j, h_{alpha_i}> = 2(alpha_i, alpha_j)/(alpha_i, alpha_i)``.
    - The basic inner product gives the highest root squared length 2.
    - G2 has alpha_1 short, so ``h_{alpha_1} = 3 alpha_1``.
    - Node indices are 0-based in the library; the CLI uses 1-based labels.
"""

from __future__ import annotations

import logging
import re
from math import factorial
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from qh_alcove.errors import DimensionMismatch, InternalAssertion, InvalidType

logger = logging.getLogger(__name__)

Vector = tuple[Fraction, ...]
IntVector = tuple[int, ...]
Scalars = Sequence[Fraction | int]

_LABEL_RE = re.compile(r"^\s*(su|[a-g])\s*(\d+)\s*$", re.IGNORECASE)
_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_EXCEPTIONAL_ORDERS = {
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
    ("F", 4): 1152,
    ("G", 2): 12,
}


@dataclass(frozen=True)
class RootSystem:
    """Immutable root data for one simple type."""

    family: str
    rank: int
    cartan_matrix: tuple[IntVector, ...]
    gram: tuple[Vector, ...]
    positive_roots: tuple[IntVector, ...]
    highest_root: int
    root_norms: tuple[Fraction, ...]
    coroots: tuple[Vector, ...]
    fundamental_weights: tuple[Vector, ...]
    highest_root_marks: IntVector

    @property
    def type_label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def simple_norms(self) -> Vector:
        return tuple(self.gram[i][i] for i in range(self.rank))

    def coroot_coordinates(self, root_index: int) -> Vector:
        """h_beta in simple-coroot coordinates: k_j = beta_j (alpha_j, alpha_j) / (beta, beta)."""
        beta = self.positive_roots[root_index]
        norm = self.root_norms[root_index]
        return tuple(beta[j] * self.gram[j][j] / norm for j in range(self.rank))

    def simple_root(self, i: int) -> IntVector:
        return tuple(1 if j == i else 0 for j in range(self.rank))


def parse_type_label(text: str) -> tuple[str, int]:
    """Parse ``"G2"``, ``"a3"`` or ``"su3"`` (SU(n) is type A_{n-1})."""
    match = _LABEL_RE.match(text)
    if not match:
        raise InvalidType(text, "expected a label such as G2, A3 or su3")
    family, rank = match.group(1).upper(), int(match.group(2))
    if family == "SU":
        return "A", rank - 1
    return family, rank


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Build the root system of the given simple type.

    Positive roots are generated by reflection closure from the simple roots and
    sorted by height, ties broken so that alpha_1 precedes alpha_2 and so on.
    """
    family = type_label.upper()
    _check_type(family, rank)
    norms = _simple_norms(family, rank)
    edges = _dynkin_edges(family, rank)

    gram = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        gram[i][i] = norms[i]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -max(norms[i], norms[j]) / 2

    cartan = tuple(
        tuple(_as_int(2 * gram[i][j] / gram[i][i]) for j in range(rank)) for i in range(rank)
    )
    roots = _reflection_closure(cartan, rank)
    roots.sort(key=lambda r: (sum(r), tuple(-c for c in r)))

    root_norms = tuple(_quadratic(gram, r, r) for r in roots)
    coroots = tuple(tuple(Fraction(2 * c) / n for c in r) for r, n in zip(roots, root_norms))

    inverse = sympy.Matrix(cartan).inv()
    weights = tuple(
        tuple(_to_fraction(inverse[j, i]) for j in range(rank)) for i in range(rank)
    )

    highest = len(roots) - 1
    rs = RootSystem(
        family=family,
        rank=rank,
        cartan_matrix=cartan,
        gram=tuple(tuple(row) for row in gram),
        positive_roots=tuple(roots),
        highest_root=highest,
        root_norms=root_norms,
        coroots=coroots,
        fundamental_weights=weights,
        highest_root_marks=roots[highest],
    )
    if rs.root_norms[highest] != 2:
        raise InternalAssertion(f"{rs.type_label}: highest root has squared length != 2")
    logger.debug("Built %s with %d positive roots", rs.type_label, len(roots))
    return rs


def root_system_from_label(text: str) -> RootSystem:
    family, rank = parse_type_label(text)
    return build_root_system(family, rank)


def pairing(rs: RootSystem, weight: Scalars, coweight: Scalars) -> Fraction:
    """<weight, coweight> with the weight in root and the coweight in coroot coordinates."""
    _check_dim(rs, weight, "weight")
    _check_dim(rs, coweight, "coweight")
    total = Fraction(0)
    for i, h in enumerate(coweight):
        if h:
            row = rs.cartan_matrix[i]
            total += Fraction(h) * sum(
                (row[j] * Fraction(weight[j]) for j in range(rs.rank)), Fraction(0)
            )
    return total


def inner_product(rs: RootSystem, lam: Scalars, nu: Scalars) -> Fraction:
    """Basic inner product of two weights in simple-root coordinates."""
    _check_dim(rs, lam, "weight")
    _check_dim(rs, nu, "weight")
    return _quadratic(rs.gram, lam, nu)


def coweight_of(rs: RootSystem, weight: Scalars) -> Vector:
    """Image of a weight in coroot coordinates under the basic identification."""
    _check_dim(rs, weight, "weight")
    # (lam, nu) = <lam, nu_sharp> forces nu_sharp_i = nu_i (alpha_i, alpha_i) / 2
    return tuple(Fraction(weight[i]) * rs.gram[i][i] / 2 for i in range(rs.rank))


def c1_of_parabolic(rs: RootSystem, node: int) -> int:
    """First Chern number of G/P for the maximal parabolic omitting ``node``."""
    _check_node(rs, node)
    total = [0] * rs.rank
    for root in rs.positive_roots:
        if root[node]:
            for j, c in enumerate(root):
                total[j] += c
    # sum of off-Levi roots = c1 * omega_node, read off via the Cartan pairing
    values = [
        sum(rs.cartan_matrix[i][j] * total[j] for j in range(rs.rank)) for i in range(rs.rank)
    ]
    if any(v for i, v in enumerate(values) if i != node) or values[node] <= 0:
        raise InternalAssertion(f"{rs.type_label}: off-Levi root sum is not a multiple of omega")
    return values[node]


def dim_of_parabolic(rs: RootSystem, node: int) -> int:
    """Complex dimension of G/P: number of positive roots outside the Levi."""
    _check_node(rs, node)
    return sum(1 for root in rs.positive_roots if root[node])


def omega_pairing(rs: RootSystem, node: int, root_index: int) -> Fraction:
    """<omega_node, h_beta>, the node coefficient of the coroot."""
    return rs.coroot_coordinates(root_index)[node]


def weyl_group_order(rs: RootSystem) -> int:
    n = rs.rank
    family = rs.family
    if family == "A":
        return factorial(n + 1)
    if family in ("B", "C"):
        return 2**n * factorial(n)
    if family == "D":
        return 2 ** (n - 1) * factorial(n)
    return _EXCEPTIONAL_ORDERS[(family, n)]


# ── Internals ────────────────────────────────────────────────────────────────


def _check_type(family: str, rank: int) -> None:
    label = f"{family}{rank}"
    if family in _MIN_RANK:
        if rank < _MIN_RANK[family]:
            raise InvalidType(label, f"type {family} needs rank >= {_MIN_RANK[family]}")
        return
    valid = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
    if family not in valid or rank not in valid[family]:
        raise InvalidType(label)


def _simple_norms(family: str, rank: int) -> list[Fraction]:
    two, one = Fraction(2), Fraction(1)
    if family == "B":
        return [two] * (rank - 1) + [one]
    if family == "C":
        return [one] * (rank - 1) + [two]
    if family == "F":
        return [two, two, one, one]
    if family == "G":
        return [Fraction(2, 3), two]
    return [two] * rank


def _dynkin_edges(family: str, rank: int) -> list[tuple[int, int]]:
    """Bourbaki numbering, 0-based."""
    if family in ("A", "B", "C", "F", "G"):
        return [(i, i + 1) for i in range(rank - 1)]
    if family == "D":
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    # E_n: chain 1-3-4-5-...-n plus the branch 2-4
    chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
    return list(zip(chain, chain[1:])) + [(1, 3)]


def _reflection_closure(cartan: tuple[IntVector, ...], rank: int) -> list[IntVector]:
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                k = sum(cartan[i][j] * beta[j] for j in range(rank))
                image = tuple(beta[j] - (k if j == i else 0) for j in range(rank))
                if all(c >= 0 for c in image) and any(image) and image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return list(seen)


def _quadratic(gram: Sequence[Sequence[Fraction]], u: Scalars, v: Scalars) -> Fraction:
    n = len(gram)
    return sum(
        (
            gram[i][j] * Fraction(u[i]) * Fraction(v[j])
            for i in range(n)
            for j in range(n)
            if u[i] and v[j]
        ),
        Fraction(0),
    )


def _as_int(value: Fraction) -> int:
    if value.denominator != 1:
        raise InternalAssertion(f"Non-integral Cartan entry {value}")
    return int(value)


def _to_fraction(value: sympy.Basic) -> Fraction:
    rat = sympy.Rational(value)
    return Fraction(int(rat.p), int(rat.q))


def _check_dim(rs: RootSystem, vec: Sequence[object], what: str) -> None:
    if len(vec) != rs.rank:
        raise DimensionMismatch(rs.rank, len(vec), what)


def _check_node(rs: RootSystem, node: int) -> None:
    if not 0 <= node < rs.rank:
        raise InvalidType(rs.type_label, f"node {node + 1} out of range 1..{rs.rank}")
