"""Cross-validation of the exact inequality system against the numeric oracle.

Rational grid tuples are tested by ``polytope.membership`` and ``oracle.decide``.
Points closer than ``margin`` to a hyperplane of the system are recorded but
excluded from the disagreement list; the oracle's conditioning near walls is
not characterized.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Sequence

from qh_alcove.errors import BudgetExceeded, InputError
from qh_alcove.gw_ineq import enumerate_inequalities
from qh_alcove.oracle import OracleConfig, decide, su2_closed_form
from qh_alcove.polytope import AlcovePoint, Inequality, membership
from qh_alcove.rational import format_vector
from qh_alcove.rootsys import RootSystem
from qh_alcove.spec import Budget

logger = logging.getLogger(__name__)

DEFAULT_MARGIN = Fraction(1, 40)
EXCLUDED_SETTLE = 3

OracleJob = tuple[int, tuple[AlcovePoint, ...], OracleConfig]


@dataclass(frozen=True)
class GridRecord:
    points: tuple[AlcovePoint, ...]
    system_member: bool
    oracle: str
    residual: float | None
    clear_of_walls: bool
    closed_form: bool | None = None

    @property
    def oracle_member(self) -> bool:
        return self.oracle == "member"

    @property
    def disagrees(self) -> bool:
        return (
            self.clear_of_walls
            and self.oracle != "skipped"
            and self.system_member != self.oracle_member
        )

    @property
    def unsound(self) -> bool:
        """Oracle witness at a point the system excludes."""
        return self.clear_of_walls and self.oracle_member and not self.system_member

    def to_json(self) -> dict[str, Any]:
        return {
            "mu": [format_vector(p.coords) for p in self.points],
            "system": "member" if self.system_member else "non-member",
            "oracle": self.oracle,
            "residual": self.residual,
            "clear_of_walls": self.clear_of_walls,
            "closed_form": self.closed_form,
        }


@dataclass(frozen=True)
class CrosscheckReport:
    label: str
    b: int
    density: int
    margin: Fraction
    records: tuple[GridRecord, ...] = field(repr=False)

    @property
    def matrix(self) -> dict[tuple[str, str], int]:
        """Counts keyed by (system verdict, oracle verdict)."""
        counts = Counter(
            ("member" if r.system_member else "non-member", r.oracle) for r in self.records
        )
        return dict(sorted(counts.items()))

    @property
    def disagreements(self) -> list[GridRecord]:
        return [r for r in self.records if r.disagrees]

    @property
    def unsound(self) -> list[GridRecord]:
        return [r for r in self.records if r.unsound]

    @property
    def closed_form_mismatches(self) -> list[GridRecord]:
        return [
            r
            for r in self.records
            if r.closed_form is not None and r.closed_form != r.system_member
        ]

    @property
    def ok(self) -> bool:
        return not self.disagreements and not self.closed_form_mismatches

    def to_json(self) -> dict[str, Any]:
        return {
            "group": self.label,
            "points": self.b,
            "density": self.density,
            "margin": str(self.margin),
            "total": len(self.records),
            "matrix": [
                {"system": s, "oracle": o, "count": c} for (s, o), c in self.matrix.items()
            ],
            "disagreements": [r.to_json() for r in self.disagreements],
            "unsound": len(self.unsound),
            "closed_form_mismatches": [r.to_json() for r in self.closed_form_mismatches],
            "ok": self.ok,
        }


# ── Grid ─────────────────────────────────────────────────────────────────────


def grid_points(rs: RootSystem, density: int, interior: bool = False) -> list[AlcovePoint]:
    """Rational alcove points with coordinates on a ``density``-per-axis lattice.

    The closed grid uses k/(density-1), k = 0..density-1; the interior grid
    uses k/(density+1), k = 1..density, and keeps only points off every wall.
    """
    if density < 2:
        raise InputError("Grid density must be at least 2")
    if interior:
        axis = [Fraction(k, density + 1) for k in range(1, density + 1)]
    else:
        axis = [Fraction(k, density - 1) for k in range(density)]
    out = []
    for coords in itertools.product(axis, repeat=rs.rank):
        top = sum((c * a for c, a in zip(rs.highest_root_marks, coords)), Fraction(0))
        if top < 1 or (top == 1 and not interior):
            out.append(AlcovePoint(coords))
    return out


def clear_of_walls(
    system: Sequence[Inequality], points: Sequence[AlcovePoint], margin: Fraction
) -> bool:
    """Euclidean distance in stacked alcove coordinates to every hyperplane is >= margin."""
    for ineq in system:
        gap = ineq.d - ineq.lhs(points)
        norm2 = sum((c * c for c in ineq.stacked()), Fraction(0))
        if norm2 and gap * gap < margin * margin * norm2:
            return False
    return True


# ── Campaign ─────────────────────────────────────────────────────────────────


def crosscheck(
    rs: RootSystem,
    b: int,
    density: int,
    *,
    margin: Fraction = DEFAULT_MARGIN,
    interior: bool = False,
    cfg: OracleConfig | None = None,
    soundness_only: bool = False,
    budget: Budget | None = None,
    workers: int = 1,
) -> CrosscheckReport:
    """Sample every grid tuple, compare the exact verdict with the oracle.

    ``soundness_only`` runs the oracle only where the system excludes the
    tuple; included tuples are recorded as ``skipped``. Excluded tuples stop
    their restarts after ``EXCLUDED_SETTLE`` agree on a positive minimum.
    Oracle runs are spread over ``workers`` processes; every tuple is seeded
    alike, so the report does not depend on the worker count.
    """
    if rs.family != "A" or rs.rank + 1 not in (2, 3, 4):
        raise InputError(f"Oracle comparison needs SU(n), n <= 4; got {rs.type_label}")
    if b < 1:
        raise InputError("At least one marked point is needed")
    if workers < 1:
        raise InputError("workers must be >= 1")
    cfg = cfg or OracleConfig()
    excluded_cfg = replace(cfg, settle=cfg.settle or EXCLUDED_SETTLE)
    budget = budget or Budget()
    n = rs.rank + 1
    axis = grid_points(rs, density, interior)
    total = len(axis) ** b
    if total > budget.max_products:
        raise BudgetExceeded("grid tuples", total, budget.max_products)

    system = enumerate_inequalities(rs, b, budget=budget) if b >= 2 else []
    su2_triples = n == 2 and b == 3
    rows = []
    jobs: list[OracleJob] = []
    for tup in itertools.product(axis, repeat=b):
        if b == 1:
            system_member = tup[0].is_zero()
            clear = True
        else:
            system_member = membership(rs, tup, system).member
            clear = clear_of_walls(system, tup, margin)
        closed = su2_closed_form(*(p.coords[0] for p in tup)) if su2_triples else None
        run = clear and not (soundness_only and system_member)
        if run:
            jobs.append((n, tup, cfg if system_member else excluded_cfg))
        rows.append((tup, system_member, clear, closed, run))

    verdicts = iter(_run_oracle(jobs, workers))
    records = []
    for tup, system_member, clear, closed, run in rows:
        oracle, value = next(verdicts) if run else ("skipped", None)
        records.append(GridRecord(tup, system_member, oracle, value, clear, closed))
    report = CrosscheckReport(rs.type_label, b, density, margin, tuple(records))
    logger.info(
        "Crosscheck %s b=%d: %d tuples, %d oracle runs, %d disagreements, %d unsound",
        rs.type_label,
        b,
        len(records),
        len(jobs),
        len(report.disagreements),
        len(report.unsound),
    )
    return report


def _oracle_job(job: OracleJob) -> tuple[str, float]:
    n, tup, cfg = job
    verdict = decide(n, tup, cfg)
    return verdict.status, verdict.residual


def _run_oracle(jobs: list[OracleJob], workers: int) -> list[tuple[str, float]]:
    if workers == 1 or len(jobs) < 2:
        return [_oracle_job(job) for job in jobs]
    chunk = max(1, len(jobs) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_oracle_job, jobs, chunksize=chunk))


def residual_floor(report: CrosscheckReport) -> float:
    """Smallest oracle residual over tuples the system excludes (inf if none)."""
    values = [
        r.residual for r in report.records if not r.system_member and r.residual is not None
    ]
    return min(values, default=math.inf)
