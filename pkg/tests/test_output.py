"""Tests for qh_alcove.output."""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from unittest.mock import patch

import pytest
from rich.logging import RichHandler

from qh_alcove import output
from qh_alcove.runtime import initialize
from qh_alcove.spec import CliSpec, XdgSpec
from qh_alcove.xdg import XdgPaths


@pytest.fixture(autouse=True)
def _clean_console():
    output._reset_console()
    yield
    output._reset_console()
    output.configure_logging(False)


def _init(tmp_path: Path, json_mode: bool) -> None:
    spec = CliSpec(
        prog_name="test",
        app_display_name="Test",
        dist_name="test-app",
        root_help="Help.",
        xdg=XdgSpec(app_dir_name="test"),
    )
    paths = XdgPaths(
        config=tmp_path / "c", data=tmp_path / "d", state=tmp_path / "s", cache=tmp_path / "k"
    )
    initialize(spec, paths, json_mode=json_mode)


@pytest.fixture()
def _init_context(tmp_path: Path):
    _init(tmp_path, json_mode=False)


@pytest.fixture()
def _init_json_context(tmp_path: Path):
    _init(tmp_path, json_mode=True)


class TestHumanPrimitives:
    @pytest.mark.usefixtures("_init_context")
    def test_success_contains_checkmark(self, capsys):
        output.success("done")
        out = capsys.readouterr().out
        assert "✓" in out and "done" in out

    @pytest.mark.usefixtures("_init_context")
    def test_error_contains_symbol(self, capsys):
        output.error("failed")
        assert "✗" in capsys.readouterr().out

    @pytest.mark.usefixtures("_init_context")
    def test_detail_indented(self, capsys):
        output.detail("info")
        assert capsys.readouterr().out.startswith("   ")

    @pytest.mark.usefixtures("_init_context")
    def test_print_text_keeps_brackets(self, capsys):
        output.print_text("[y_1] and [bold]")
        assert "[y_1] and [bold]" in capsys.readouterr().out

    @pytest.mark.usefixtures("_init_context")
    def test_print_table(self, capsys):
        output.print_table(["⋆", "y_0", "y_1"], [["y_0", "1", "y_1"], ["y_1", "", "y_2"]])
        out = capsys.readouterr().out
        assert "y_2" in out
        assert "⋆" in out

    @pytest.mark.usefixtures("_init_context")
    def test_print_table_ignores_terminal_width(self, capsys, monkeypatch):
        cell = "qy_4 + q^2y_1 + 2q^2y_3 + 5q^3"
        rendered = []
        for columns in ("20", "200"):
            monkeypatch.setenv("COLUMNS", columns)
            output._reset_console()
            output.print_table(["⋆", "y_5"], [["y_2", cell]])
            rendered.append(capsys.readouterr().out)
        assert cell in rendered[0]
        assert "…" not in rendered[0]
        assert rendered[0] == rendered[1]


class TestJsonModeSuppression:
    @pytest.mark.usefixtures("_init_json_context")
    def test_success_suppressed(self, capsys):
        output.success("done")
        assert capsys.readouterr().out == ""

    @pytest.mark.usefixtures("_init_json_context")
    def test_table_suppressed(self, capsys):
        output.print_table(["a"], [["1"]])
        assert capsys.readouterr().out == ""


class TestEmitters:
    def test_json_sorted_indented(self, capsys):
        output.emit_json({"z": 1, "a": "1/2"})
        raw = capsys.readouterr().out
        assert raw.index('"a"') < raw.index('"z"')
        assert '  "a": "1/2"' in raw
        assert raw.endswith("\n")
        assert json.loads(raw) == {"a": "1/2", "z": 1}

    def test_json_utf8(self, capsys):
        output.emit_json({"name": "Δ_3"})
        assert "Δ_3" in capsys.readouterr().out

    def test_csv(self, capsys):
        output.emit_csv(["node", "pretty"], [[1, "a1(mu1) <= a2(mu2), x"]])
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "node,pretty"
        assert lines[1] == '1,"a1(mu1) <= a2(mu2), x"'


class TestNoColor:
    @pytest.mark.usefixtures("_init_context")
    def test_no_color_env(self, capsys):
        output._reset_console()
        with patch.dict(os.environ, {"NO_COLOR": "1"}):
            output.success("done")
        assert "\x1b[" not in capsys.readouterr().out


class TestLogging:
    def test_verbose_installs_rich_handler(self):
        output.configure_logging(True)
        logger = logging.getLogger("qh_alcove")
        assert any(isinstance(h, RichHandler) for h in logger.handlers)
        assert logger.level == logging.DEBUG

    def test_quiet_removes_handler(self):
        output.configure_logging(True)
        output.configure_logging(False)
        logger = logging.getLogger("qh_alcove")
        assert not any(isinstance(h, RichHandler) for h in logger.handlers)
        assert logger.level == logging.WARNING
