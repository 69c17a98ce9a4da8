"""Shared plumbing for command registrars: options, settings layering, error mapping."""

from __future__ import annotations

import functools
import sys
import traceback
from typing import Any, Callable, TypeVar

import typer

from qh_alcove import output, runtime
from qh_alcove.errors import InputError, QhAlcoveError
from qh_alcove.polytope import AlcovePoint, alcove_point
from qh_alcove.rational import parse_points
from qh_alcove.rootsys import RootSystem, root_system_from_label
from qh_alcove.settings import CONFIG_FILENAME, Settings, load_settings
from qh_alcove.spec import Budget, CliSpec, OutputFormat, RunConfig
from qh_alcove.xdg import resolve_paths

F = TypeVar("F", bound=Callable[..., Any])

_BUDGET_KEYS = {
    "group": "max_group_order",
    "products": "max_products",
    "points": "max_points",
}


# ── Options ──────────────────────────────────────────────────────────────────


def json_option() -> Any:
    return typer.Option(False, "--json", "-j", help="Output as JSON.")


def csv_option() -> Any:
    return typer.Option(False, "--csv", help="Output as CSV.")


def seed_option() -> Any:
    return typer.Option(None, "--seed", help="Random seed (default from config).", min=0)


def threads_option() -> Any:
    return typer.Option(None, "--threads", help="Worker threads (default from config).", min=1)


def budget_option() -> Any:
    return typer.Option(
        None,
        "--budget",
        help="Guards as KEY=N pairs, keys group, products, points (e.g. products=50000).",
    )


# ── Settings layering ────────────────────────────────────────────────────────


def current_settings(spec: CliSpec) -> Settings:
    """Settings of the running invocation, or read from the config file."""
    if runtime.is_initialized():
        return runtime.get_context().settings
    filename = spec.config.primary_filename if spec.config else CONFIG_FILENAME
    return load_settings(resolve_paths(spec.xdg).config / filename)


def parse_budget(text: str | None, base: Budget) -> Budget:
    if not text:
        return base
    values = dict(vars(base))
    for item in text.split(","):
        key, sep, raw = item.partition("=")
        key = key.strip().lower()
        if not sep or key not in _BUDGET_KEYS:
            raise InputError(f"Bad budget item '{item}': expected group=N, products=N or points=N")
        try:
            values[_BUDGET_KEYS[key]] = int(raw)
        except ValueError as exc:
            raise InputError(f"Bad budget value '{raw}'") from exc
    try:
        return Budget(**values)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def run_config(
    spec: CliSpec,
    *,
    json: bool = False,
    csv: bool = False,
    seed: int | None = None,
    threads: int | None = None,
    budget: str | None = None,
) -> RunConfig:
    """Flags over config file over defaults; validated before any computation."""
    if json and csv:
        raise InputError("--json and --csv are mutually exclusive")
    settings = current_settings(spec)
    fmt = OutputFormat.JSON if json else OutputFormat.CSV if csv else OutputFormat.TEXT
    try:
        return RunConfig(
            output=fmt,
            seed=settings.seed if seed is None else seed,
            threads=settings.threads if threads is None else threads,
            budget=parse_budget(budget, settings.budget),
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# ── Inputs ───────────────────────────────────────────────────────────────────


def root_system(label: str) -> RootSystem:
    return root_system_from_label(label)


def node_index(rs: RootSystem, node: int) -> int:
    """1-based node on the command line, 0-based internally."""
    if not 1 <= node <= rs.rank:
        raise InputError(f"Node must be between 1 and {rs.rank} for {rs.type_label}, got {node}")
    return node - 1


def alcove_points(rs: RootSystem, text: str, expected: int | None = None) -> list[AlcovePoint]:
    vectors = parse_points(text)
    if expected is not None and len(vectors) != expected:
        raise InputError(f"Expected {expected} markings, got {len(vectors)}")
    return [alcove_point(rs, vec, i) for i, vec in enumerate(vectors)]


# ── Error mapping ────────────────────────────────────────────────────────────


def guarded(func: F) -> F:
    """Map domain errors to ``typer.Exit`` with the error's exit code."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except QhAlcoveError as exc:
            _report(exc)
            raise typer.Exit(exc.exit_code) from exc
        except AssertionError as exc:
            _report(exc)
            raise typer.Exit(3) from exc

    return wrapper  # type: ignore[return-value]


def _report(exc: BaseException) -> None:
    if runtime.is_initialized() and runtime.get_context().debug:
        traceback.print_exc(file=sys.stderr)
    output.error(str(exc) or type(exc).__name__)
