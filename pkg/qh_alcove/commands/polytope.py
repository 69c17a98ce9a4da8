"""Inequality commands: ``inequalities``, ``check``, ``prune``."""

from __future__ import annotations

import json as jsonlib
from pathlib import Path
from typing import Any

import typer
from rich.markup import escape

from qh_alcove import output
from qh_alcove.commands._common import (
    alcove_points,
    budget_option,
    csv_option,
    guarded,
    json_option,
    root_system,
    run_config,
    threads_option,
)
from qh_alcove.errors import DimensionMismatch, InputError
from qh_alcove.gw_ineq import enumerate_inequalities
from qh_alcove.polytope import (
    Inequality,
    MembershipVerdict,
    inverse_marking,
    membership,
    prune_redundant,
)
from qh_alcove.rational import format_rational
from qh_alcove.registry import CommandRegistry
from qh_alcove.rootsys import RootSystem
from qh_alcove.spec import CliSpec, RunConfig

CSV_HEADER = ["group", "node", "d", "tuple", "indices", "coeffs", "pretty"]


def read_system(path: Path) -> list[Inequality]:
    """Inequalities from a JSON file: a list of records or ``{"inequalities": [...]}``."""
    try:
        data = jsonlib.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"Cannot read {path}: {exc.strerror}") from exc
    except jsonlib.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg}") from exc
    if isinstance(data, dict):
        data = data.get("kept", data.get("inequalities"))
    if not isinstance(data, list):
        raise InputError(f"{path}: expected a list of inequality records")
    return [Inequality.from_json(rec) for rec in data]


def write_system(path: Path, system: list[Inequality]) -> None:
    text = jsonlib.dumps([i.to_json() for i in system], indent=2, sort_keys=True)
    path.write_text(text + "\n", encoding="utf-8")


def _system(rs: RootSystem, b: int, path: Path | None, cfg: RunConfig) -> list[Inequality]:
    if path is None:
        return enumerate_inequalities(rs, b, budget=cfg.budget, threads=cfg.threads)
    system = read_system(path)
    for ineq in system:
        if ineq.points != b:
            raise DimensionMismatch(b, ineq.points, f"marked points in {path}")
        if any(len(v) != rs.rank for v in ineq.coeffs):
            raise DimensionMismatch(rs.rank, len(ineq.coeffs[0]), f"coefficients in {path}")
    return system


def verdict_json(verdict: MembershipVerdict) -> dict[str, Any]:
    return {
        "member": verdict.member,
        "semistable": verdict.semistable,
        "stable": verdict.stable,
        "violated": [i.to_json() for i in verdict.violated],
        "tight": len(verdict.tight),
    }


def register(registry: CommandRegistry, spec: CliSpec) -> None:
    """Register ``inequalities``, ``check`` and ``prune``."""

    @guarded
    def inequalities(
        group: str = typer.Argument(..., help="Simple type, e.g. G2 or su3."),
        points: int = typer.Option(3, "--points", "-b", help="Number of marked points b."),
        dedup: bool = typer.Option(
            False, "--dedup", help="One inequality per permutation orbit of the tuple."
        ),
        classical_only: bool = typer.Option(
            False, "--classical-only", help="Only degree-zero inequalities."
        ),
        out: Path | None = typer.Option(None, "--output", "-o", help="Also write JSON here."),
        json: bool = json_option(),
        csv: bool = csv_option(),
        threads: int | None = threads_option(),
        budget: str | None = budget_option(),
    ) -> None:
        cfg = run_config(spec, json=json, csv=csv, threads=threads, budget=budget)
        rs = root_system(group)
        system = enumerate_inequalities(
            rs,
            points,
            dedup=dedup,
            classical_only=classical_only,
            budget=cfg.budget,
            threads=cfg.threads,
        )
        if out is not None:
            write_system(out, system)
        if cfg.json:
            output.emit_json([i.to_json() for i in system])
            return
        if csv:
            output.emit_csv(
                CSV_HEADER,
                (
                    [
                        i.group,
                        i.node + 1,
                        i.d,
                        " | ".join(i.words),
                        " ".join(str(x) for x in i.indices),
                        " | ".join(",".join(v) for v in i.to_json()["coeffs"]),
                        i.pretty(),
                    ]
                    for i in system
                ),
            )
            return
        classical = sum(1 for i in system if i.d == 0)
        output.heading(f"Inequalities of Δ_{points} for {rs.type_label}")
        for node in range(rs.rank):
            subset = [i for i in system if i.node == node]
            if not subset:
                continue
            output.action(f"P_{node + 1}: {len(subset)} inequalities")
            for ineq in subset:
                output.detail(escape(f"{ineq.pretty()}    [{' | '.join(ineq.words)}]"))
        output.success(f"{classical} classical and {len(system) - classical} quantum inequalities")

    @guarded
    def check(
        group: str = typer.Argument(..., help="Simple type, e.g. G2 or su2."),
        mu: str = typer.Option(
            ..., "--mu", help='Alcove coordinates, ";" between points: "1/2;1/2;1/2".'
        ),
        points: int | None = typer.Option(None, "--points", "-b", help="Expected b."),
        strict: bool = typer.Option(
            False, "--strict", help="Stable variant: every inequality strict."
        ),
        product: bool = typer.Option(
            False,
            "--product",
            help="Treat the last point as a target class: does it occur in the product?",
        ),
        system_path: Path | None = typer.Option(
            None, "--system", help="Inequality JSON file (default: enumerate)."
        ),
        json: bool = json_option(),
        budget: str | None = budget_option(),
    ) -> None:
        cfg = run_config(spec, json=json, budget=budget)
        rs = root_system(group)
        marks = alcove_points(rs, mu, points)
        if len(marks) < 2:
            raise InputError("At least two markings are needed")
        if product:
            marks = [*marks[:-1], inverse_marking(rs, marks[-1])]
        system = _system(rs, len(marks), system_path, cfg)
        verdict = membership(rs, marks, system, strict=strict)
        if json:
            output.emit_json({"group": rs.type_label, **verdict_json(verdict)})
        elif verdict.member:
            output.success("Member" + (" (stable)" if strict else ""))
            if verdict.tight and not strict:
                output.detail(f"{len(verdict.tight)} inequalities are tight")
        else:
            output.error("Not a member")
            for ineq in verdict.violated:
                output.bullet(f"violates {ineq.pretty()}")
            if strict and not verdict.violated:
                output.detail(f"{len(verdict.tight)} inequalities are tight")
        if not verdict.member:
            raise typer.Exit(1)

    @guarded
    def prune(
        group: str = typer.Argument(..., help="Simple type, e.g. G2."),
        input_path: Path | None = typer.Option(
            None, "--input", "-i", help="Inequality JSON file (default: enumerate)."
        ),
        points: int = typer.Option(3, "--points", "-b", help="b when enumerating."),
        out: Path | None = typer.Option(
            None, "--output", "-o", help="Write the kept inequalities here."
        ),
        json: bool = json_option(),
        budget: str | None = budget_option(),
    ) -> None:
        cfg = run_config(spec, json=json, budget=budget)
        rs = root_system(group)
        if input_path is not None:
            system = read_system(input_path)
        else:
            system = enumerate_inequalities(rs, points, budget=cfg.budget)
        result = prune_redundant(rs, system)
        if out is not None:
            write_system(out, list(result.kept))
        if json:
            output.emit_json(
                {
                    "group": rs.type_label,
                    "kept": [i.to_json() for i in result.kept],
                    "removed": [
                        {"inequality": i.to_json(), "lp_max": format_rational(v)}
                        for i, v in result.removed
                    ],
                }
            )
            return
        output.heading(f"Redundancy pruning for {rs.type_label}")
        for ineq, value in result.removed:
            output.bullet(f"{ineq.pretty()}  (max of left side {format_rational(value)})")
        output.success(f"Kept {len(result.kept)}, removed {len(result.removed)}")

    registry.add_command(
        None, "inequalities", inequalities, help_text="Inequalities with GW invariant 1."
    )
    registry.add_command(None, "check", check, help_text="Exact membership in Δ_b.")
    registry.add_command(None, "prune", prune, help_text="Drop LP-implied inequalities.")
