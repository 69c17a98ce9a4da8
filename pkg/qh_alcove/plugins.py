"""Loading of command registrars by import path.

A registrar is ``register(registry: CommandRegistry, spec: CliSpec) -> None``.
Registrars listed in ``spec.plugins.explicit`` are imported and invoked in
list order; any failure aborts app construction with PluginLoadError.
"""

from __future__ import annotations

import importlib
import logging
from typing import TYPE_CHECKING, Any, Callable

from qh_alcove.errors import PluginLoadError

if TYPE_CHECKING:
    from qh_alcove.registry import CommandRegistry
    from qh_alcove.spec import CliSpec

logger = logging.getLogger(__name__)


def load_plugins(registry: CommandRegistry, spec: CliSpec) -> None:
    for import_path in spec.plugins.explicit:
        registrar = _resolve(import_path)
        try:
            registrar(registry, spec)
        except PluginLoadError:
            raise
        except Exception as exc:
            raise PluginLoadError(import_path, f"registration raised {exc}") from exc
        logger.debug("Loaded command registrar %s", import_path)


def _resolve(import_path: str) -> Callable[..., Any]:
    module_path, _, attr_name = import_path.rpartition(".")
    if not module_path:
        raise PluginLoadError(import_path, "no module component")
    try:
        module = importlib.import_module(module_path)
        registrar = getattr(module, attr_name)
    except Exception as exc:
        raise PluginLoadError(import_path, str(exc)) from exc
    if not callable(registrar):
        raise PluginLoadError(import_path, "not callable")
    return registrar
