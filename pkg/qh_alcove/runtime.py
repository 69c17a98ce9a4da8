"""Runtime context, initialized once per CLI invocation."""

from __future__ import annotations

from dataclasses import dataclass, field

from qh_alcove.errors import ContextNotInitializedError
from qh_alcove.settings import Settings
from qh_alcove.spec import CliSpec
from qh_alcove.xdg import XdgPaths

_context: RuntimeContext | None = None


@dataclass(frozen=True)
class RuntimeContext:
    """Immutable context shared by the commands of one invocation."""

    spec: CliSpec
    xdg_paths: XdgPaths
    json_mode: bool = False
    debug: bool = False
    settings: Settings = field(default_factory=Settings)


def initialize(
    spec: CliSpec,
    xdg_paths: XdgPaths,
    json_mode: bool = False,
    debug: bool = False,
    settings: Settings | None = None,
) -> RuntimeContext:
    """Initialize the runtime context. Must be called exactly once per invocation."""
    global _context
    if _context is not None:
        raise RuntimeError("RuntimeContext is already initialized.")
    _context = RuntimeContext(
        spec=spec,
        xdg_paths=xdg_paths,
        json_mode=json_mode,
        debug=debug,
        settings=settings or Settings(),
    )
    return _context


def get_context() -> RuntimeContext:
    """Return the current invocation's context.

    Raises ContextNotInitializedError if called before initialize().
    """
    if _context is None:
        raise ContextNotInitializedError()
    return _context


def is_initialized() -> bool:
    return _context is not None


def _reset() -> None:
    """Reset the context (test-only)."""
    global _context
    _context = None
