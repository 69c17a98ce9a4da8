"""Alcove coordinates, membership in Delta_b, exact LP and redundancy pruning.

A marking mu is stored by its alcove coordinates a_j = alpha_j(mu). The pairing
(lambda, mu) of a weight in simple-root coordinates is then sum_j lambda_j a_j.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from qh_alcove.errors import AlcoveViolation, DimensionMismatch, InputError
from qh_alcove.rational import format_rational, format_vector, vector_from_json
from qh_alcove.rootsys import RootSystem, Vector
from qh_alcove.simplex import maximize
from qh_alcove.weyl import longest_element

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlcovePoint:
    coords: Vector

    @classmethod
    def of(cls, *values: Fraction | int | str) -> AlcovePoint:
        return cls(tuple(Fraction(v) for v in values))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def scaled(self, t: Fraction) -> AlcovePoint:
        return AlcovePoint(tuple(t * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class Inequality:
    """sum_i <coeffs[i], a^(i)> <= d, the constraint of one GW invariant equal to 1."""

    node: int
    d: int
    indices: tuple[int, ...]
    coeffs: tuple[Vector, ...]
    words: tuple[str, ...] = field(default=(), compare=False)
    group: str = field(default="", compare=False)

    @property
    def points(self) -> int:
        return len(self.coeffs)

    @property
    def sort_key(self) -> tuple[int, int, tuple[int, ...]]:
        return (self.d, self.node, self.indices)

    def lhs(self, points: Sequence[AlcovePoint]) -> Fraction:
        return sum(
            (
                c * a
                for vec, pt in zip(self.coeffs, points)
                for c, a in zip(vec, pt.coords)
                if c and a
            ),
            Fraction(0),
        )

    def stacked(self) -> list[Fraction]:
        return [c for vec in self.coeffs for c in vec]

    def pretty(self) -> str:
        terms: list[str] = []
        for i, vec in enumerate(self.coeffs):
            for j, c in enumerate(vec):
                if not c:
                    continue
                mag = abs(c)
                body = f"a{j + 1}(mu{i + 1})"
                text = body if mag == 1 else f"{format_rational(mag)}*{body}"
                if not terms:
                    terms.append(text if c > 0 else f"-{text}")
                else:
                    terms.append(("+ " if c > 0 else "- ") + text)
        return f"{' '.join(terms) or '0'} <= {self.d}"

    def to_json(self) -> dict[str, Any]:
        return {
            "group": self.group,
            "node": self.node + 1,
            "d": self.d,
            "tuple": list(self.words),
            "indices": list(self.indices),
            "coeffs": [format_vector(v) for v in self.coeffs],
            "pretty": self.pretty(),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Inequality:
        try:
            return cls(
                node=int(data["node"]) - 1,
                d=int(data["d"]),
                indices=tuple(int(i) for i in data.get("indices", [])),
                coeffs=tuple(vector_from_json(v) for v in data["coeffs"]),
                words=tuple(str(w) for w in data.get("tuple", [])),
                group=str(data.get("group", "")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"Malformed inequality record: {exc}") from exc


@dataclass(frozen=True)
class MembershipVerdict:
    semistable: bool
    stable: bool
    strict: bool
    violated: tuple[Inequality, ...]
    tight: tuple[Inequality, ...]

    @property
    def member(self) -> bool:
        return self.stable if self.strict else self.semistable


@dataclass(frozen=True)
class LpResult:
    value: Fraction
    witness: tuple[AlcovePoint, ...]
    pivots: int


@dataclass(frozen=True)
class PruneResult:
    kept: tuple[Inequality, ...]
    removed: tuple[tuple[Inequality, Fraction], ...]


# ── Alcove ───────────────────────────────────────────────────────────────────


def alcove_point(rs: RootSystem, coords: Iterable[Fraction | int], index: int = 0) -> AlcovePoint:
    point = AlcovePoint(tuple(Fraction(c) for c in coords))
    validate_point(rs, point, index)
    return point


def validate_point(rs: RootSystem, point: AlcovePoint, index: int = 0) -> None:
    """a_j >= 0 and sum_j c_j a_j <= 1, with c_j the highest-root marks."""
    if point.rank != rs.rank:
        raise DimensionMismatch(rs.rank, point.rank, f"point {index + 1}")
    for j, a in enumerate(point.coords):
        if a < 0:
            raise AlcoveViolation(index, f"a{j + 1} >= 0")
    if highest_root_value(rs, point) > 1:
        raise AlcoveViolation(index, "alpha_0(mu) <= 1")


def highest_root_value(rs: RootSystem, point: AlcovePoint) -> Fraction:
    return sum((c * a for c, a in zip(rs.highest_root_marks, point.coords)), Fraction(0))


def inverse_marking(rs: RootSystem, point: AlcovePoint) -> AlcovePoint:
    """Alcove point of the inverse class C_mu^{-1} = C_{-w_o mu}."""
    validate_point(rs, point)
    w_o = longest_element(rs)
    coords = []
    for j in range(rs.rank):
        image = w_o.image_of_simple(j)
        # -w_o alpha_j is the simple root alpha_sigma(j)
        target = next(i for i, c in enumerate(image) if c)
        coords.append(point.coords[target])
    return AlcovePoint(tuple(coords))


# ── Membership ───────────────────────────────────────────────────────────────


def membership(
    rs: RootSystem,
    points: Sequence[AlcovePoint],
    system: Sequence[Inequality],
    strict: bool = False,
) -> MembershipVerdict:
    """Exact test of a marking tuple against an inequality system.

    ``strict`` tests the stable variant (every inequality strict).
    """
    for i, pt in enumerate(points):
        validate_point(rs, pt, i)
    violated: list[Inequality] = []
    tight: list[Inequality] = []
    for ineq in system:
        if ineq.points != len(points):
            raise DimensionMismatch(ineq.points, len(points), "marked points")
        value = ineq.lhs(points)
        if value > ineq.d:
            violated.append(ineq)
        elif value == ineq.d:
            tight.append(ineq)
    return MembershipVerdict(
        semistable=not violated,
        stable=not violated and not tight,
        strict=strict,
        violated=tuple(violated),
        tight=tuple(tight),
    )


def product_contains(
    rs: RootSystem,
    factors: Sequence[AlcovePoint],
    target: AlcovePoint,
    system: Sequence[Inequality],
) -> MembershipVerdict:
    """Whether C_target meets C_{mu_1} ... C_{mu_{b-1}}."""
    return membership(rs, [*factors, inverse_marking(rs, target)], system)


# ── LP ───────────────────────────────────────────────────────────────────────


def lp_maximize(
    rs: RootSystem,
    points: int,
    objective: Sequence[Fraction | int],
    system: Sequence[Inequality] = (),
) -> LpResult:
    """Maximize a stacked objective over the alcove box of every point and ``system``."""
    width = points * rs.rank
    if len(objective) != width:
        raise DimensionMismatch(width, len(objective), "objective")
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(points):
        row = [Fraction(0)] * width
        for j, c in enumerate(rs.highest_root_marks):
            row[i * rs.rank + j] = Fraction(c)
        rows.append(row)
        rhs.append(Fraction(1))
    for ineq in system:
        if ineq.points != points:
            raise DimensionMismatch(points, ineq.points, "marked points")
        rows.append(ineq.stacked())
        rhs.append(Fraction(ineq.d))
    solution = maximize(objective, rows, rhs)
    witness = tuple(
        AlcovePoint(solution.x[i * rs.rank : (i + 1) * rs.rank]) for i in range(points)
    )
    return LpResult(value=solution.value, witness=witness, pivots=solution.pivots)


def prune_redundant(rs: RootSystem, system: Sequence[Inequality]) -> PruneResult:
    """Drop inequalities implied by the alcove and the other kept inequalities.

    Processed in (d, node, tuple) order against the currently kept set. Each
    removal records the LP optimum of its left side, which is <= d.
    """
    ordered = sorted(system, key=lambda ineq: ineq.sort_key)
    if not ordered:
        return PruneResult(kept=(), removed=())
    points = ordered[0].points
    alive = [True] * len(ordered)
    removed: list[tuple[Inequality, Fraction]] = []
    for idx, ineq in enumerate(ordered):
        others = [o for k, o in enumerate(ordered) if alive[k] and k != idx]
        best = lp_maximize(rs, points, ineq.stacked(), others).value
        if best - ineq.d <= 0:
            alive[idx] = False
            removed.append((ineq, best))
            logger.debug("Removed %s (max %s)", ineq.pretty(), best)
    kept = tuple(o for k, o in enumerate(ordered) if alive[k])
    logger.info("Pruned %d of %d inequalities", len(removed), len(ordered))
    return PruneResult(kept=kept, removed=tuple(removed))
