"""Human output primitives, tables, JSON/CSV emitters and log setup.

Human output goes through a shared Rich Console and is suppressed in JSON
mode. Machine output (JSON, CSV) bypasses Rich entirely.
"""

from __future__ import annotations

import csv
import json
import logging
import os
import sys
from typing import Any, Iterable, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.measure import Measurement
from rich.table import Table

_console: Console | None = None

LOG_FORMAT = "%(name)s: %(message)s"
MAX_TABLE_WIDTH = 10_000


def _get_console() -> Console:
    """Return a shared Console instance, respecting NO_COLOR."""
    global _console
    if _console is None:
        _console = Console(highlight=False, no_color="NO_COLOR" in os.environ, stderr=False)
    return _console


def _reset_console() -> None:
    """Reset the console (test-only)."""
    global _console
    _console = None


def _is_json_mode() -> bool:
    try:
        from qh_alcove.runtime import get_context

        return get_context().json_mode
    except Exception:
        return False


# ── Human output primitives ──────────────────────────────────────────────────


def heading(title: str) -> None:
    """Blank line, bold cyan title, blank line."""
    if _is_json_mode():
        return
    con = _get_console()
    con.print()
    con.print(f"[bold cyan]{title}[/bold cyan]")
    con.print()


def success(msg: str) -> None:
    if _is_json_mode():
        return
    _get_console().print(f"[green]✓[/green] {msg}")


def warning(msg: str) -> None:
    if _is_json_mode():
        return
    _get_console().print(f"[yellow]⚠[/yellow] {msg}")


def error(msg: str) -> None:
    if _is_json_mode():
        return
    _get_console().print(f"[red]✗[/red] {msg}")


def action(msg: str) -> None:
    if _is_json_mode():
        return
    _get_console().print(f"[cyan]→[/cyan] {msg}")


def detail(msg: str) -> None:
    """Indented detail line (3 spaces)."""
    if _is_json_mode():
        return
    _get_console().print(f"   {msg}")


def bullet(msg: str) -> None:
    if _is_json_mode():
        return
    _get_console().print(f"   • {msg}")


def print_text(msg: str) -> None:
    """Arbitrary text through the console. Markup is not interpreted."""
    if _is_json_mode():
        return
    _get_console().print(msg, markup=False)


def print_table(
    columns: Sequence[str],
    rows: Iterable[Sequence[str]],
    title: str | None = None,
    first_column_style: str = "bold",
) -> None:
    """Aligned table at its natural width; cells are never cut to the terminal."""
    if _is_json_mode():
        return
    table = Table(title=title, show_lines=False, header_style="bold cyan")
    for i, col in enumerate(columns):
        table.add_column(col, style=first_column_style if i == 0 else None, no_wrap=True)
    for row in rows:
        table.add_row(*row)
    con = _get_console()
    natural = Measurement.get(con, con.options.update(width=MAX_TABLE_WIDTH), table).maximum
    Console(
        file=con.file,
        width=max(natural, 1),
        highlight=False,
        no_color=con.no_color,
        color_system=con.color_system,
        force_terminal=con.is_terminal,
    ).print(table)


# ── Machine output ───────────────────────────────────────────────────────────


def emit_json(data: Any) -> None:
    """Deterministic JSON on stdout: indent 2, sorted keys, trailing newline, no ANSI."""
    text = json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)
    sys.stdout.write(text + "\n")
    sys.stdout.flush()


def emit_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.flush()


# ── Logging ──────────────────────────────────────────────────────────────────


def configure_logging(verbose: bool) -> None:
    """Route ``qh_alcove`` loggers to a RichHandler on stderr when verbose."""
    logger = logging.getLogger("qh_alcove")
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    if not verbose:
        logger.setLevel(logging.WARNING)
        return
    handler = RichHandler(
        console=Console(stderr=True, no_color="NO_COLOR" in os.environ),
        show_path=False,
        show_time=False,
    )
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)
