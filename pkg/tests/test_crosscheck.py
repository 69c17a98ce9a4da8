"""Tests for qh_alcove.crosscheck."""

from __future__ import annotations

import os
import time
from fractions import Fraction

import pytest

from qh_alcove.crosscheck import clear_of_walls, crosscheck, grid_points, residual_floor
from qh_alcove.errors import BudgetExceeded, InputError
from qh_alcove.gw_ineq import enumerate_inequalities
from qh_alcove.oracle import OracleConfig
from qh_alcove.polytope import AlcovePoint
from qh_alcove.rootsys import build_root_system
from qh_alcove.spec import Budget

QUICK = OracleConfig(restarts=8, max_iterations=500)


class TestGrid:
    def test_closed_su3(self, a2):
        points = grid_points(a2, 3)
        assert len(points) == 6
        assert AlcovePoint.of("1/2", "1/2") in points

    def test_interior_su3(self, a2):
        assert grid_points(a2, 2, interior=True) == [AlcovePoint.of("1/3", "1/3")]

    def test_su2_axis(self, a1):
        assert len(grid_points(a1, 21)) == 21

    def test_density_too_small(self, a1):
        with pytest.raises(InputError):
            grid_points(a1, 1)


class TestWalls:
    def test_on_wall(self, a1):
        system = enumerate_inequalities(a1, 3)
        points = [AlcovePoint.of("1/2"), AlcovePoint.of("1/2"), AlcovePoint.of("0")]
        assert not clear_of_walls(system, points, Fraction(1, 40))

    def test_clear(self, a1):
        system = enumerate_inequalities(a1, 3)
        points = [AlcovePoint.of("1/2")] * 3
        assert clear_of_walls(system, points, Fraction(1, 40))


class TestCampaign:
    def test_su2_small_grid(self, a1):
        report = crosscheck(a1, 3, 3, cfg=QUICK)
        assert len(report.records) == 27
        assert report.ok
        assert not report.unsound
        assert all(r.closed_form is not None for r in report.records)

    def test_su2_soundness_only(self, a1):
        cheap = OracleConfig(restarts=2, max_iterations=200)
        report = crosscheck(a1, 3, 3, cfg=cheap, soundness_only=True)
        assert report.closed_form_mismatches == []
        assert not report.unsound
        assert all(r.oracle == "skipped" for r in report.records if r.system_member)
        assert residual_floor(report) > QUICK.tolerance

    def test_single_point(self, a1):
        report = crosscheck(a1, 1, 3, cfg=QUICK)
        assert [r.system_member for r in report.records] == [True, False, False]
        assert report.ok

    def test_json(self, a1):
        data = crosscheck(a1, 3, 3, cfg=QUICK).to_json()
        assert data["total"] == 27
        assert data["margin"] == "1/40"
        assert data["ok"] is True
        assert sum(row["count"] for row in data["matrix"]) == 27

    def test_not_su_n(self, g2):
        with pytest.raises(InputError):
            crosscheck(g2, 3, 3)

    def test_su5_rejected(self):
        with pytest.raises(InputError):
            crosscheck(build_root_system("A", 4), 3, 3)

    def test_budget(self, a1):
        with pytest.raises(BudgetExceeded):
            crosscheck(a1, 3, 21, budget=Budget(max_products=100))

    def test_workers_do_not_change_report(self, a1):
        serial = crosscheck(a1, 3, 3, cfg=QUICK)
        pooled = crosscheck(a1, 3, 3, cfg=QUICK, workers=2)
        assert pooled.records == serial.records

    def test_bad_workers(self, a1):
        with pytest.raises(InputError, match="workers"):
            crosscheck(a1, 3, 3, cfg=QUICK, workers=0)


@pytest.mark.slow
class TestCampaignSlow:
    @pytest.mark.skipif((os.cpu_count() or 1) < 4, reason="needs at least 4 CPUs")
    def test_su2_full_grid_default_config(self, a1):
        start = time.perf_counter()
        report = crosscheck(a1, 3, 21, workers=os.cpu_count() or 1)
        elapsed = time.perf_counter() - start
        assert report.ok
        assert not report.unsound
        assert elapsed < 60, f"SU(2) 21^3 campaign took {elapsed:.1f}s"

    def test_su3_soundness(self, a2):
        report = crosscheck(
            a2, 3, 6, interior=True, soundness_only=True, workers=os.cpu_count() or 1
        )
        assert len(report.records) == len(grid_points(a2, 6, interior=True)) ** 3
        assert not report.unsound
