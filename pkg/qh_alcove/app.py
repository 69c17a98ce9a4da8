"""App factory, invocation wrapper and the built-in commands.

Public API:
    create_app(spec) -> typer.Typer
    run(spec, argv) -> int
"""

from __future__ import annotations

import importlib.resources
import os
import sys
import traceback

import click
import typer

from qh_alcove import output
from qh_alcove.errors import QhAlcoveError, SpecValidationError
from qh_alcove.plugins import load_plugins
from qh_alcove.registry import CommandRegistry
from qh_alcove.runtime import _reset, initialize
from qh_alcove.settings import load_settings
from qh_alcove.spec import NAME_RE, CliSpec, ConfigSpec
from qh_alcove.xdg import XdgPaths, resolve_paths

DEBUG_ENV = "QH_ALCOVE_DEBUG"


def create_app(spec: CliSpec) -> typer.Typer:
    """Build the Typer app: validate, register built-ins, load registrars, freeze, apply."""
    _validate_spec(spec)

    app = typer.Typer(
        name=spec.prog_name,
        help=spec.root_help,
        add_completion=False,
        no_args_is_help=True,
        rich_markup_mode="rich",
        context_settings={"help_option_names": ["--help", "-h"]},
    )

    @app.callback()
    def _root(
        verbose: bool = typer.Option(
            False, "--verbose", "-v", help="Log progress to stderr.", is_eager=True
        ),
    ) -> None:
        if verbose or os.environ.get(DEBUG_ENV) == "1":
            output.configure_logging(True)

    xdg_paths = resolve_paths(spec.xdg)
    reserved = frozenset({"config"}) if spec.config is not None else frozenset()
    registry = CommandRegistry(reserved_names=reserved)

    _register_version(registry, spec)
    _register_info(registry, spec, xdg_paths)
    if spec.config is not None:
        _register_config_group(registry, spec.config, xdg_paths)

    load_plugins(registry, spec)
    registry.freeze()
    registry.apply(app)

    app._qh_alcove_registry = registry  # type: ignore[attr-defined]
    app._qh_alcove_xdg_paths = xdg_paths  # type: ignore[attr-defined]
    return app


def run(spec: CliSpec, argv: list[str] | None = None) -> int:
    """Execute the CLI and return an exit code. Never calls sys.exit()."""
    _reset()
    debug = os.environ.get(DEBUG_ENV) == "1"
    output.configure_logging(debug)

    try:
        app = create_app(spec)
        xdg_paths = app._qh_alcove_xdg_paths  # type: ignore[attr-defined]
        args = argv if argv is not None else sys.argv[1:]
        json_mode = "--json" in args or "-j" in args
        settings = None
        # config commands must still run when the file itself is broken
        if spec.config is not None and args[:1] != ["config"]:
            settings = load_settings(xdg_paths.config / spec.config.primary_filename)
        initialize(spec, xdg_paths, json_mode=json_mode, debug=debug, settings=settings)

        result = app(args, standalone_mode=False)
        return result if isinstance(result, int) else 0
    except click.exceptions.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        output.error("Aborted.")
        return 1
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    except QhAlcoveError as exc:
        if debug:
            traceback.print_exc(file=sys.stderr)
        output.error(str(exc))
        return exc.exit_code
    except AssertionError as exc:
        if debug:
            traceback.print_exc(file=sys.stderr)
        output.error(f"Internal assertion failed: {exc}")
        return 3
    except Exception as exc:
        if debug:
            traceback.print_exc(file=sys.stderr)
        output.error(f"Unexpected error: {exc}")
        return 1


# ── Validation ───────────────────────────────────────────────────────────────


def _validate_spec(spec: CliSpec) -> None:
    if not spec.prog_name:
        raise SpecValidationError("prog_name must not be empty")
    if not NAME_RE.match(spec.prog_name):
        raise SpecValidationError(f"prog_name '{spec.prog_name}' is not a valid name")
    if not spec.app_display_name:
        raise SpecValidationError("app_display_name must not be empty")
    if not spec.dist_name:
        raise SpecValidationError("dist_name must not be empty")
    if not spec.root_help:
        raise SpecValidationError("root_help must not be empty")


# ── Built-in: version, info ──────────────────────────────────────────────────


def _register_version(registry: CommandRegistry, spec: CliSpec) -> None:
    def _version_callback(
        json: bool = typer.Option(False, "--json", "-j", help="Output as JSON."),
    ) -> None:
        version = _get_dist_version(spec.dist_name)
        if json:
            output.emit_json({"app": spec.app_display_name, "version": version})
        else:
            output.print_text(f"{spec.app_display_name} {version}")

    registry._reserved.discard("version")
    registry.add_command(None, "version", _version_callback, help_text="Show version.", order=0)
    registry._reserved.add("version")


def _register_info(registry: CommandRegistry, spec: CliSpec, xdg_paths: XdgPaths) -> None:
    def _info_callback(
        json: bool = typer.Option(False, "--json", "-j", help="Output as JSON."),
    ) -> None:
        rows: list[tuple[str, str]] = [
            ("Version", _get_dist_version(spec.dist_name)),
            ("Python", sys.version.split()[0]),
            ("NumPy", _get_dist_version("numpy")),
            ("SciPy", _get_dist_version("scipy")),
            ("SymPy", _get_dist_version("sympy")),
            ("Config Dir", str(xdg_paths.config)),
            ("Data Dir", str(xdg_paths.data)),
            ("State Dir", str(xdg_paths.state)),
            ("Cache Dir", str(xdg_paths.cache)),
        ]
        for hook in spec.info_hooks:
            rows.extend(hook())

        if json:
            output.emit_json(dict(rows))
        else:
            output.heading(f"{spec.app_display_name} Info")
            width = max(len(k) for k, _ in rows)
            for key, val in rows:
                output.print_text(f"  {key:<{width}}  {val}")

    registry._reserved.discard("info")
    registry.add_command(None, "info", _info_callback, help_text="Show system info.", order=1)
    registry._reserved.add("info")


# ── Built-in: config group ───────────────────────────────────────────────────


def _register_config_group(
    registry: CommandRegistry, config_spec: ConfigSpec, xdg_paths: XdgPaths
) -> None:
    config_path = xdg_paths.config / config_spec.primary_filename

    registry._reserved.discard("config")
    registry.add_group("config", help_text="Default seed, threads, budget and oracle settings.")
    registry._reserved.add("config")

    def _path() -> None:
        output.print_text(str(config_path))

    def _init(
        force: bool = typer.Option(False, "--force", help="Overwrite existing file."),
    ) -> None:
        if config_path.exists() and not force:
            output.error(f"Config file already exists: {config_path}")
            output.detail("Use --force to overwrite.")
            raise typer.Exit(1)
        config_path.parent.mkdir(parents=True, exist_ok=True)
        config_path.write_bytes(_resolve_template(config_spec))
        output.success(f"Config file created: {config_path}")

    def _show() -> None:
        if not config_path.exists():
            output.error(f"Config file not found: {config_path}")
            raise typer.Exit(1)
        sys.stdout.write(config_path.read_text(encoding="utf-8"))

    def _validate() -> None:
        if not config_path.exists():
            output.error(f"Config file not found: {config_path}")
            raise typer.Exit(1)
        if config_spec.validator is None:
            output.success("No validator configured, config is accepted.")
            return
        problems = config_spec.validator(config_path.read_text(encoding="utf-8"))
        if problems:
            output.error("Config validation failed:")
            for problem in problems:
                output.bullet(problem)
            raise typer.Exit(1)
        output.success("Config is valid.")

    registry.add_command("config", "path", _path, help_text="Show config file path.")
    registry.add_command("config", "init", _init, help_text="Create config from template.")
    registry.add_command("config", "show", _show, help_text="Show config file contents.")
    registry.add_command("config", "validate", _validate, help_text="Validate config file.")


# ── Helpers ──────────────────────────────────────────────────────────────────


def _get_dist_version(dist_name: str) -> str:
    try:
        from importlib.metadata import version

        return version(dist_name)
    except Exception:
        return "unknown"


def _resolve_template(config_spec: ConfigSpec) -> bytes:
    if config_spec.template_bytes is not None:
        return config_spec.template_bytes
    if config_spec.template_resource is not None:
        pkg, resource_name = config_spec.template_resource
        return importlib.resources.files(pkg).joinpath(resource_name).read_bytes()
    raise ValueError("ConfigSpec has no template source")
