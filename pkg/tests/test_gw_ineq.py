"""Tests for qh_alcove.gw_ineq."""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import pytest

from qh_alcove.errors import BudgetExceeded, InputError
from qh_alcove.gw_ineq import (
    GwQuery,
    classical_regime,
    enumerate_inequalities,
    gw_invariant,
    homology_product,
)
from qh_alcove.polytope import AlcovePoint, membership
from qh_alcove.qclass import QClass
from qh_alcove.spec import Budget


@pytest.fixture(scope="module")
def g2_system(g2):
    return enumerate_inequalities(g2, 3)


class TestInvariants:
    def test_point_class_three_times(self, g2_p1):
        # [Y_e]^2 = y_5 * y_5 = q^2 [Y^e]
        assert gw_invariant(g2_p1, GwQuery(node=0, reps=(0, 0, 0), degree=2)) == 1
        assert gw_invariant(g2_p1, GwQuery(node=0, reps=(0, 0, 0), degree=1)) == 0

    def test_coefficient_two(self, g2_p2):
        # [Y_{w_2}] = y_3 and y_3 * y_3 = 2qy_3 + 2q^2
        assert gw_invariant(g2_p2, GwQuery(node=1, reps=(2, 2, 3), degree=1)) == 2
        assert gw_invariant(g2_p2, GwQuery(node=1, reps=(2, 2, 0), degree=2)) == 2

    def test_homology_product_uses_duals(self, g2_p1):
        assert homology_product(g2_p1, (5,)) == QClass.basis(0)

    def test_query_checks(self, g2_p1):
        with pytest.raises(InputError):
            gw_invariant(g2_p1, GwQuery(node=0, reps=(0,), degree=0))
        with pytest.raises(InputError, match="does not match"):
            gw_invariant(g2_p1, GwQuery(node=1, reps=(0, 0), degree=0))


class TestEnumeration:
    def test_g2_counts(self, g2_system):
        classical = [i for i in g2_system if i.d == 0]
        quantum = [i for i in g2_system if i.d > 0]
        assert (len(classical), len(quantum)) == (33, 40)

    def test_g2_counts_per_node(self, g2_system):
        by_node = {
            node: (
                sum(1 for i in g2_system if i.node == node and i.d == 0),
                sum(1 for i in g2_system if i.node == node and i.d > 0),
            )
            for node in (0, 1)
        }
        assert by_node == {0: (18, 16), 1: (15, 24)}

    def test_g2_non_facet_present(self, g2, g2_system):
        omega1 = g2.fundamental_weights[0]
        matches = [i for i in g2_system if i.coeffs == (omega1,) * 3]
        assert [(i.node, i.d) for i in matches] == [(0, 2)]

    def test_su2(self, a1):
        system = enumerate_inequalities(a1, 3)
        assert [(i.indices, i.d) for i in system] == [
            ((0, 0, 0), 1),
            ((0, 1, 1), 0),
            ((1, 0, 1), 0),
            ((1, 1, 0), 0),
        ]
        assert system[0].coeffs == ((Fraction(1, 2),),) * 3

    def test_classical_only(self, g2):
        system = enumerate_inequalities(g2, 3, classical_only=True)
        assert len(system) == 33

    def test_dedup(self, a1):
        system = enumerate_inequalities(a1, 3, dedup=True)
        assert [(i.indices, i.d) for i in system] == [((0, 0, 0), 1), ((0, 1, 1), 0)]

    def test_threads_same_result(self, g2, g2_system):
        assert enumerate_inequalities(g2, 3, threads=3) == g2_system

    def test_budget_points(self, a1):
        with pytest.raises(BudgetExceeded):
            enumerate_inequalities(a1, 4, budget=Budget(max_points=3))

    def test_budget_products(self, g2):
        with pytest.raises(BudgetExceeded):
            enumerate_inequalities(g2, 3, budget=Budget(max_products=10))

    def test_needs_two_points(self, a1):
        with pytest.raises(InputError):
            enumerate_inequalities(a1, 1)

    def test_group_and_words(self, g2_system):
        first = g2_system[0]
        assert first.group == "G2"
        assert first.words[0] == "e"


class TestClassicalRegime:
    def test_small_markings(self, g2):
        points = [AlcovePoint.of("1/30", "1/30")] * 3
        assert classical_regime(g2, points)

    def test_large_markings(self, g2):
        points = [AlcovePoint.of("1/3", "0")] * 3
        assert not classical_regime(g2, points)

    def test_scaled_markings_satisfy_quantum_inequalities(self, g2, g2_system):
        points = [
            AlcovePoint.of("1/3", "0"),
            AlcovePoint.of("0", "1/2"),
            AlcovePoint.of("1/6", "1/4"),
        ]
        scaled = [p.scaled(Fraction(1, 4)) for p in points]
        assert scaled[0] == AlcovePoint.of("1/12", "0")
        assert not classical_regime(g2, points)
        assert classical_regime(g2, scaled)
        for ineq in g2_system:
            if ineq.d > 0:
                assert ineq.lhs(scaled) <= ineq.d, ineq.pretty()


class TestSymmetry:
    def test_origin_is_member(self, g2, g2_system):
        assert membership(g2, [AlcovePoint.of("0", "0")] * 3, g2_system).member

    @pytest.mark.parametrize("perm", list(itertools.permutations(range(3))))
    def test_positions_permute(self, g2_system, perm):
        def key(ineq, order):
            return (ineq.node, ineq.d, tuple(ineq.coeffs[k] for k in order))

        assert Counter(key(i, perm) for i in g2_system) == Counter(
            key(i, (0, 1, 2)) for i in g2_system
        )
