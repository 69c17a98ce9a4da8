"""XDG Base Directory resolution for the qh-alcove config, data, state and cache dirs."""

from __future__ import annotations

import os
import platform
from dataclasses import dataclass
from pathlib import Path

from qh_alcove.spec import XdgSpec


@dataclass(frozen=True)
class XdgPaths:
    """Resolved XDG directory paths."""

    config: Path
    data: Path
    state: Path
    cache: Path


def _is_macos() -> bool:
    return platform.system() == "Darwin"


def _base(env_var: str, linux: tuple[str, ...], macos: tuple[str, ...]) -> Path:
    value = os.environ.get(env_var, "").strip()
    if value:
        return Path(value)
    return Path.home().joinpath(*(macos if _is_macos() else linux))


def resolve_paths(xdg_spec: XdgSpec) -> XdgPaths:
    """Resolve and create the four directories for ``xdg_spec.app_dir_name``.

    Config always falls back to ~/.config; data, state and cache use the
    ~/Library locations on macOS.
    """
    name = xdg_spec.app_dir_name
    paths = XdgPaths(
        config=_base("XDG_CONFIG_HOME", (".config",), (".config",)) / name,
        data=_base("XDG_DATA_HOME", (".local", "share"), ("Library", "Application Support"))
        / name,
        state=_base("XDG_STATE_HOME", (".local", "state"), ("Library", "Logs")) / name,
        cache=_base("XDG_CACHE_HOME", (".cache",), ("Library", "Caches")) / name,
    )
    for d in (paths.config, paths.data, paths.state, paths.cache):
        d.mkdir(parents=True, exist_ok=True)
    return paths
