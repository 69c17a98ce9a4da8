"""Immutable configuration dataclasses for qh-alcove.

All spec objects are frozen dataclasses; validation happens in ``__post_init__``
and never performs I/O.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

# Regex for valid command/group names
NAME_RE = re.compile(r"^[a-z][a-z0-9-]*$")


@dataclass(frozen=True)
class XdgSpec:
    """XDG Base Directory configuration."""

    app_dir_name: str


@dataclass(frozen=True)
class ConfigSpec:
    """Built-in config group configuration."""

    primary_filename: str
    template_bytes: bytes | None = None
    template_resource: tuple[str, str] | None = None
    validator: Callable[[str], list[str]] | None = None

    def __post_init__(self) -> None:
        has_bytes = self.template_bytes is not None
        has_resource = self.template_resource is not None
        if has_bytes == has_resource:
            raise ValueError(
                "Exactly one of template_bytes or template_resource must be non-null."
            )


@dataclass(frozen=True)
class PluginSpec:
    """Command registrars loaded by import path, in list order."""

    explicit: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class CliSpec:
    """Top-level immutable specification of the command-line application."""

    prog_name: str
    app_display_name: str
    dist_name: str
    root_help: str
    xdg: XdgSpec
    config: ConfigSpec | None = None
    plugins: PluginSpec = field(default_factory=PluginSpec)
    info_hooks: list[Callable[[], list[tuple[str, str]]]] = field(default_factory=list)


@dataclass(frozen=True)
class Budget:
    """Desk-scale guards on enumeration sizes."""

    max_group_order: int = 10**7
    max_products: int = 10**6
    max_points: int = 5

    def __post_init__(self) -> None:
        for name in ("max_group_order", "max_products", "max_points"):
            if getattr(self, name) < 1:
                raise ValueError(f"Budget.{name} must be positive.")


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class RunConfig:
    """Effective settings of one command invocation (flags over config file over defaults)."""

    output: OutputFormat = OutputFormat.TEXT
    seed: int = 0
    threads: int = 1
    budget: Budget = field(default_factory=Budget)
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.threads < 1:
            raise ValueError("threads must be >= 1.")
        if self.seed < 0:
            raise ValueError("seed must be non-negative.")

    @property
    def json(self) -> bool:
        return self.output is OutputFormat.JSON
