"""Command registry: the only way commands reach the Typer tree.

Enforces naming rules, conflicts, deterministic ordering and freeze semantics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, auto
from typing import Any, Callable

import typer

from qh_alcove.errors import RegistryConflictError, RegistryFrozenError
from qh_alcove.spec import NAME_RE

_ALWAYS_RESERVED = frozenset({"version", "info"})


class _NodeKind(Enum):
    GROUP = auto()
    COMMAND = auto()


@dataclass
class _Node:
    kind: _NodeKind
    name: str
    help_text: str
    order: int
    callback: Callable[..., Any] | None = None
    children: dict[str, _Node] = field(default_factory=dict)


class CommandRegistry:
    """Collects groups and commands, then materializes them on a Typer app."""

    def __init__(self, *, reserved_names: frozenset[str] | None = None) -> None:
        self._roots: dict[str, _Node] = {}
        self._frozen = False
        self._counter = 0
        self._reserved: set[str] = set(_ALWAYS_RESERVED | (reserved_names or frozenset()))

    # ── Registration ─────────────────────────────────────────────────────

    def add_group(self, name: str, help_text: str = "", order: int | None = None) -> None:
        """Register a root-level group; re-registering an existing group merges help."""
        self._check_frozen()
        self._validate_name(name)
        ord_val = self._next_order(order)

        existing = self._roots.get(name)
        if existing is None:
            self._roots[name] = _Node(_NodeKind.GROUP, name, help_text, ord_val)
            return
        if existing.kind != _NodeKind.GROUP:
            raise RegistryConflictError(name, "exists as a command, cannot re-register as group")
        if help_text and existing.help_text and help_text != existing.help_text:
            raise RegistryConflictError(
                name, f"group help mismatch: '{existing.help_text}' vs '{help_text}'"
            )
        if help_text and not existing.help_text:
            existing.help_text = help_text

    def add_command(
        self,
        group_path: str | None,
        name: str,
        callback: Callable[..., Any],
        help_text: str = "",
        order: int | None = None,
    ) -> None:
        """Register a leaf command at root or under a '/'-separated group path."""
        self._check_frozen()
        self._validate_name(name)
        ord_val = self._next_order(order)

        parent = self._resolve_parent(group_path)
        siblings = parent.children if parent is not None else self._roots
        if name in siblings:
            prefix = f"{group_path}/" if group_path else ""
            raise RegistryConflictError(
                f"{prefix}{name}", f"already registered as {siblings[name].kind.name.lower()}"
            )
        siblings[name] = _Node(_NodeKind.COMMAND, name, help_text, ord_val, callback=callback)

    def freeze(self) -> None:
        self._frozen = True

    @property
    def is_frozen(self) -> bool:
        return self._frozen

    def paths(self) -> list[str]:
        """Registered command paths in apply order, e.g. ``qh/table``."""
        out: list[str] = []

        def walk(nodes: dict[str, _Node], prefix: str) -> None:
            for node in sorted(nodes.values(), key=lambda n: n.order):
                path = f"{prefix}{node.name}"
                if node.kind == _NodeKind.GROUP:
                    walk(node.children, f"{path}/")
                else:
                    out.append(path)

        walk(self._roots, "")
        return out

    # ── Apply ────────────────────────────────────────────────────────────

    def apply(self, app: typer.Typer) -> None:
        for node in sorted(self._roots.values(), key=lambda n: n.order):
            self._apply_node(app, node)

    def _apply_node(self, parent: typer.Typer, node: _Node) -> None:
        if node.kind == _NodeKind.COMMAND:
            assert node.callback is not None
            parent.command(name=node.name, help=node.help_text)(node.callback)
            return
        sub = typer.Typer(name=node.name, help=node.help_text, no_args_is_help=True)
        for child in sorted(node.children.values(), key=lambda n: n.order):
            self._apply_node(sub, child)
        parent.add_typer(sub, name=node.name, help=node.help_text)

    # ── Internals ────────────────────────────────────────────────────────

    def _check_frozen(self) -> None:
        if self._frozen:
            raise RegistryFrozenError()

    def _validate_name(self, name: str) -> None:
        if not NAME_RE.match(name):
            raise ValueError(f"Invalid command name '{name}': must match {NAME_RE.pattern}")
        if name in self._reserved:
            raise RegistryConflictError(name, "is a reserved name")

    def _next_order(self, explicit: int | None) -> int:
        if explicit is not None:
            return explicit
        self._counter += 1
        return self._counter

    def _resolve_parent(self, group_path: str | None) -> _Node | None:
        """Walk ``group_path``, auto-creating missing groups; None means root."""
        if group_path is None:
            return None
        parts = group_path.split("/")
        current = self._roots
        node: _Node | None = None
        for i, part in enumerate(parts):
            if part not in current:
                current[part] = _Node(_NodeKind.GROUP, part, "", self._next_order(None))
            node = current[part]
            if node.kind != _NodeKind.GROUP:
                raise RegistryConflictError(
                    "/".join(parts[: i + 1]), f"expected group but found {node.kind.name.lower()}"
                )
            current = node.children
        return node
