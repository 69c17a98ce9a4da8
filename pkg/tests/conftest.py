"""Shared test fixtures for qh-alcove."""

from __future__ import annotations

import pytest

from qh_alcove.qh import build_engine
from qh_alcove.rootsys import build_root_system


@pytest.fixture(autouse=True)
def _reset_runtime():
    """Reset the runtime context between tests."""
    yield
    from qh_alcove import runtime

    runtime._reset()


@pytest.fixture(autouse=True)
def _reset_logging():
    """Drop logging handlers a verbose/debug invocation left on the package logger."""
    yield
    from qh_alcove import output

    output.configure_logging(False)


@pytest.fixture(autouse=True)
def _isolated_xdg(tmp_path, monkeypatch):
    """Keep every test away from the real ~/.config."""
    for var, sub in (
        ("XDG_CONFIG_HOME", "config"),
        ("XDG_DATA_HOME", "data"),
        ("XDG_STATE_HOME", "state"),
        ("XDG_CACHE_HOME", "cache"),
    ):
        monkeypatch.setenv(var, str(tmp_path / sub))
    monkeypatch.delenv("QH_ALCOVE_DEBUG", raising=False)


@pytest.fixture(scope="session")
def g2():
    return build_root_system("G", 2)


@pytest.fixture(scope="session")
def a1():
    return build_root_system("A", 1)


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A", 2)


@pytest.fixture(scope="session")
def g2_p1(g2):
    return build_engine(g2, 0)


@pytest.fixture(scope="session")
def g2_p2(g2):
    return build_engine(g2, 1)
