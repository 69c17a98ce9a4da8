"""Numeric oracle commands: ``oracle`` and ``crosscheck``."""

from __future__ import annotations

import json as jsonlib
import os
from pathlib import Path

import typer

from qh_alcove import output
from qh_alcove.commands._common import (
    alcove_points,
    budget_option,
    current_settings,
    guarded,
    json_option,
    root_system,
    run_config,
    seed_option,
    threads_option,
)
from qh_alcove.crosscheck import DEFAULT_MARGIN, crosscheck
from qh_alcove.errors import InputError
from qh_alcove.oracle import decide
from qh_alcove.rational import format_rational, format_vector, parse_rational
from qh_alcove.registry import CommandRegistry
from qh_alcove.rootsys import RootSystem
from qh_alcove.spec import CliSpec


def _su_n(rs: RootSystem) -> int:
    if rs.family != "A":
        raise InputError(f"The oracle works in SU(n); {rs.type_label} is not of type A")
    return rs.rank + 1


def register(registry: CommandRegistry, spec: CliSpec) -> None:
    """Register ``oracle`` and ``crosscheck``."""

    @guarded
    def oracle(
        group: str = typer.Argument(..., help="su2, su3 or su4."),
        mu: str = typer.Option(
            ..., "--mu", help='Alcove coordinates, ";" between points: "1/2;1/2;1/2".'
        ),
        restarts: int | None = typer.Option(None, "--restarts", min=1, help="Random restarts."),
        tol: float | None = typer.Option(None, "--tol", help="Residual tolerance."),
        witness: Path | None = typer.Option(
            None, "--witness", help="Write the unitaries of the best restart as JSON."
        ),
        seed: int | None = seed_option(),
        threads: int | None = threads_option(),
        json: bool = json_option(),
    ) -> None:
        cfg = run_config(spec, json=json, seed=seed, threads=threads)
        rs = root_system(group)
        n = _su_n(rs)
        marks = alcove_points(rs, mu)
        try:
            ocfg = current_settings(spec).oracle_config(
                restarts=restarts, tolerance=tol, seed=cfg.seed, threads=cfg.threads
            )
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        verdict = decide(n, marks, ocfg)
        record = {
            "group": f"SU({n})",
            "mu": [format_vector(p.coords) for p in marks],
            **verdict.to_json(),
        }
        if witness is not None:
            witness.write_text(jsonlib.dumps(record, indent=2, sort_keys=True) + "\n")
        if json:
            output.emit_json(record)
        elif verdict.member:
            output.success(f"Member: residual {verdict.residual:.3e}")
            output.detail(f"Witness found after {verdict.restarts_used} restarts")
        else:
            output.warning(f"Unresolved: best residual {verdict.residual:.3e}")
            output.detail(f"{verdict.restarts_used} restarts")
        if not verdict.member:
            raise typer.Exit(1)

    @guarded
    def crosscheck_cmd(
        group: str = typer.Argument(..., help="su2, su3 or su4."),
        points: int = typer.Option(3, "--points", "-b", help="Number of marked points b."),
        density: int = typer.Option(6, "--density", help="Grid points per axis."),
        margin: str = typer.Option(
            format_rational(DEFAULT_MARGIN), "--margin", help="Distance kept from walls."
        ),
        interior: bool = typer.Option(False, "--interior", help="Open grid off the walls."),
        soundness_only: bool = typer.Option(
            False, "--soundness-only", help="Run the oracle only where the system excludes."
        ),
        restarts: int | None = typer.Option(None, "--restarts", min=1, help="Random restarts."),
        tol: float | None = typer.Option(None, "--tol", help="Residual tolerance."),
        seed: int | None = seed_option(),
        threads: int | None = threads_option(),
        workers: int | None = typer.Option(
            None, "--workers", min=1, help="Processes for grid tuples (default: CPU count)."
        ),
        budget: str | None = budget_option(),
        json: bool = json_option(),
    ) -> None:
        cfg = run_config(spec, json=json, seed=seed, threads=threads, budget=budget)
        rs = root_system(group)
        _su_n(rs)
        try:
            ocfg = current_settings(spec).oracle_config(
                restarts=restarts, tolerance=tol, seed=cfg.seed, threads=cfg.threads
            )
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        report = crosscheck(
            rs,
            points,
            density,
            margin=parse_rational(margin),
            interior=interior,
            cfg=ocfg,
            soundness_only=soundness_only,
            budget=cfg.budget,
            workers=workers or os.cpu_count() or 1,
        )
        if json:
            output.emit_json(report.to_json())
        else:
            output.heading(f"Crosscheck {rs.type_label}, b = {points}, density {density}")
            output.print_table(
                ["system", "oracle", "count"],
                [[s, o, str(c)] for (s, o), c in report.matrix.items()],
            )
            for rec in report.disagreements:
                mu = "; ".join(",".join(format_vector(p.coords)) for p in rec.points)
                output.bullet(f"disagreement at {mu}: system {rec.system_member}, {rec.oracle}")
            if report.closed_form_mismatches:
                output.error(f"{len(report.closed_form_mismatches)} closed-form mismatches")
            if report.ok:
                output.success(f"{len(report.records)} tuples, no disagreements")
        if not report.ok:
            raise typer.Exit(1)

    registry.add_command(None, "oracle", oracle, help_text="Numeric unitary witness search.")
    registry.add_command(
        None, "crosscheck", crosscheck_cmd, help_text="Compare the inequalities with the oracle."
    )
