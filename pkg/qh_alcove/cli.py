"""The qh-alcove application spec and console entry point."""

from __future__ import annotations

import sys

from qh_alcove.app import run
from qh_alcove.settings import CONFIG_FILENAME, DEFAULT_TEMPLATE, validate_settings_text
from qh_alcove.spec import CliSpec, ConfigSpec, PluginSpec, XdgSpec

SPEC = CliSpec(
    prog_name="qh-alcove",
    app_display_name="qh-alcove",
    dist_name="qh-alcove",
    root_help=(
        "Quantum cohomology of G/P, Gromov-Witten inequalities for products of "
        "conjugacy classes, and a numeric SU(n) oracle."
    ),
    xdg=XdgSpec(app_dir_name="qh-alcove"),
    config=ConfigSpec(
        primary_filename=CONFIG_FILENAME,
        template_bytes=DEFAULT_TEMPLATE,
        validator=validate_settings_text,
    ),
    plugins=PluginSpec(
        explicit=[
            "qh_alcove.commands.algebra.register",
            "qh_alcove.commands.polytope.register",
            "qh_alcove.commands.oracle.register",
        ]
    ),
)


def main() -> None:
    sys.exit(run(SPEC))
