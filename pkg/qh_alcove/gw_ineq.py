"""Gromov-Witten invariants n_d(w_1, ..., w_b) and the inequality system of Delta_b.

The homology class [Y_w] equals the basis class of the dual coset, so
[Y_{w_1}] * ... * [Y_{w_{b-1}}] = sum n_d(w_1, ..., w_b) q^d [Y^{w_b}].
For every maximal parabolic, ordered tuple and degree with n_d = 1 the
inequality sum_i (w_i omega_P, mu_i) <= d is emitted.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from qh_alcove.errors import BudgetExceeded, InputError, InternalAssertion
from qh_alcove.polytope import AlcovePoint, Inequality
from qh_alcove.qclass import QClass, SchubertRing
from qh_alcove.qh import build_engine
from qh_alcove.rootsys import RootSystem
from qh_alcove.spec import Budget

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GwQuery:
    node: int
    reps: tuple[int, ...]
    degree: int


def gw_invariant(engine: SchubertRing, query: GwQuery) -> int:
    """n_d(w_1, ..., w_b); 0 outside the grading."""
    if len(query.reps) < 2:
        raise InputError("A Gromov-Witten invariant needs at least two points")
    if query.node != engine.node:
        raise InputError(f"Query node {query.node + 1} does not match {engine.label}")
    product = homology_product(engine, query.reps[:-1])
    value = product.coefficient(query.reps[-1], query.degree)
    if value.denominator != 1 or value < 0:
        raise InternalAssertion(f"{engine.label}: non-integral GW count {value}")
    return int(value)


def homology_product(engine: SchubertRing, tuple_: Sequence[int]) -> QClass:
    result = QClass.basis(engine.dual(tuple_[0]))
    for index in tuple_[1:]:
        result = engine.star(result, QClass.basis(engine.dual(index)))
    return result


def enumerate_inequalities(
    rs: RootSystem,
    b: int,
    *,
    dedup: bool = False,
    classical_only: bool = False,
    budget: Budget | None = None,
    threads: int = 1,
) -> list[Inequality]:
    """All inequalities with n_d(w_1, ..., w_b) = 1, over every maximal parabolic.

    Ordered tuples by default; ``dedup`` keeps one inequality per orbit of
    simultaneous permutations of the points.
    """
    budget = budget or Budget()
    if b < 2:
        raise InputError("At least two marked points are needed")
    if b > budget.max_points:
        raise BudgetExceeded("points", b, budget.max_points)

    out: list[Inequality] = []
    for node in range(rs.rank):
        engine = build_engine(rs, node, budget.max_group_order)
        products = engine.size ** (b - 1)
        if products > budget.max_products:
            raise BudgetExceeded(f"products at node {node + 1}", products, budget.max_products)
        out.extend(_node_inequalities(engine, b, classical_only, threads))

    if dedup:
        seen: set[tuple[int, int, tuple[int, ...]]] = set()
        unique = []
        for ineq in out:
            key = (ineq.node, ineq.d, tuple(sorted(ineq.indices)))
            if key not in seen:
                seen.add(key)
                unique.append(ineq)
        out = unique
    logger.info("%s, b = %d: %d inequalities", rs.type_label, b, len(out))
    return out


def _node_inequalities(
    engine: SchubertRing, b: int, classical_only: bool, threads: int
) -> list[Inequality]:
    basis = engine.basis
    weights = [basis.weight(i) for i in range(engine.size)]
    words = [rep.element.word_label() for rep in basis]

    def for_first(first: int) -> list[Inequality]:
        found = []
        for rest in itertools.product(range(engine.size), repeat=b - 2):
            head = (first, *rest)
            for (last, d), coeff in homology_product(engine, head):
                if coeff != 1 or (classical_only and d):
                    continue
                tup = (*head, last)
                _check_degree(engine, tup, d)
                found.append(
                    Inequality(
                        node=engine.node,
                        d=d,
                        indices=tup,
                        coeffs=tuple(weights[i] for i in tup),
                        words=tuple(words[i] for i in tup),
                        group=engine.rs.type_label,
                    )
                )
        return found

    firsts = range(engine.size)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(for_first, firsts))
    else:
        chunks = [for_first(i) for i in firsts]
    found = [ineq for chunk in chunks for ineq in chunk]
    found.sort(key=lambda ineq: (ineq.indices, ineq.d))
    return found


def _check_degree(engine: SchubertRing, tup: tuple[int, ...], d: int) -> None:
    codim = sum(engine.dim - engine.length(i) for i in tup)
    if d < 0 or codim != engine.dim + d * engine.c1:
        raise InternalAssertion(f"{engine.label}: tuple {tup} at degree {d} breaks grading")


def classical_regime(rs: RootSystem, points: Sequence[AlcovePoint]) -> bool:
    """sum_i (omega_P, mu_i) < 1 for every maximal parabolic.

    In this regime every inequality with d >= 1 holds automatically, since
    (w omega_P, mu) <= (omega_P, mu) for dominant mu.
    """
    for node in range(rs.rank):
        omega = rs.fundamental_weights[node]
        total = sum(
            (w * a for pt in points for w, a in zip(omega, pt.coords)),
            Fraction(0),
        )
        if total >= 1:
            return False
    return True
