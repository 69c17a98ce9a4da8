"""Tests for qh_alcove.plugins."""

from __future__ import annotations

from unittest.mock import MagicMock, patch

import pytest

from qh_alcove.cli import SPEC
from qh_alcove.errors import PluginLoadError
from qh_alcove.plugins import load_plugins
from qh_alcove.registry import CommandRegistry
from qh_alcove.spec import CliSpec, PluginSpec, XdgSpec


def _spec(*paths: str) -> CliSpec:
    return CliSpec(
        prog_name="test",
        app_display_name="Test",
        dist_name="test-app",
        root_help="Help.",
        xdg=XdgSpec(app_dir_name="test"),
        plugins=PluginSpec(explicit=list(paths)),
    )


@pytest.fixture()
def registry():
    return CommandRegistry()


class TestExplicitPlugins:
    def test_loads_in_order(self, registry):
        calls = []
        module = MagicMock()
        module.first = lambda reg, spec: calls.append("first")
        module.second = lambda reg, spec: calls.append("second")
        with patch("qh_alcove.plugins.importlib") as mock_importlib:
            mock_importlib.import_module.return_value = module
            load_plugins(registry, _spec("fake.first", "fake.second"))
        assert calls == ["first", "second"]

    def test_passes_registry_and_spec(self, registry):
        seen = []
        module = MagicMock()
        module.register = lambda reg, spec: seen.append((reg, spec))
        spec = _spec("fake.register")
        with patch("qh_alcove.plugins.importlib") as mock_importlib:
            mock_importlib.import_module.return_value = module
            load_plugins(registry, spec)
        assert seen == [(registry, spec)]

    def test_import_error(self, registry):
        with pytest.raises(PluginLoadError, match="nonexistent.module"):
            load_plugins(registry, _spec("nonexistent.module.register"))

    def test_no_module_component(self, registry):
        with pytest.raises(PluginLoadError, match="no module component"):
            load_plugins(registry, _spec("register"))

    def test_registration_raises(self, registry):
        module = MagicMock()
        module.bad = MagicMock(side_effect=RuntimeError("kaboom"))
        with patch("qh_alcove.plugins.importlib") as mock_importlib:
            mock_importlib.import_module.return_value = module
            with pytest.raises(PluginLoadError, match="kaboom"):
                load_plugins(registry, _spec("fake.bad"))


class TestApplicationRegistrars:
    def test_all_commands_registered(self, registry):
        load_plugins(registry, SPEC)
        assert registry.paths() == [
            "roots",
            "cosets",
            "qh/table",
            "qh/giambelli",
            "qh/presentation",
            "inequalities",
            "check",
            "prune",
            "oracle",
            "crosscheck",
        ]
