"""User defaults read from ``config.json`` in the XDG config directory.

Layering: command-line flags override file values, which override the
built-in defaults below.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from qh_alcove.errors import InputError
from qh_alcove.oracle import OracleConfig
from qh_alcove.spec import Budget

CONFIG_FILENAME = "config.json"

_SCHEMA: dict[str, Any] = {
    "seed": int,
    "threads": int,
    "budget": {"max_group_order": int, "max_products": int, "max_points": int},
    "oracle": {"restarts": int, "max_iterations": int, "tolerance": (int, float)},
}

DEFAULT_TEMPLATE = (
    json.dumps(
        {
            "seed": 0,
            "threads": 1,
            "budget": {"max_group_order": 10**7, "max_products": 10**6, "max_points": 5},
            "oracle": {"restarts": 64, "max_iterations": 2000, "tolerance": 1e-8},
        },
        indent=2,
    )
    + "\n"
).encode("utf-8")


@dataclass(frozen=True)
class Settings:
    seed: int = 0
    threads: int = 1
    budget: Budget = field(default_factory=Budget)
    oracle: OracleConfig = field(default_factory=OracleConfig)

    def oracle_config(
        self,
        *,
        restarts: int | None = None,
        tolerance: float | None = None,
        seed: int | None = None,
        threads: int | None = None,
    ) -> OracleConfig:
        return OracleConfig(
            restarts=restarts if restarts is not None else self.oracle.restarts,
            max_iterations=self.oracle.max_iterations,
            tolerance=tolerance if tolerance is not None else self.oracle.tolerance,
            rng_seed=seed if seed is not None else self.seed,
            threads=threads if threads is not None else self.threads,
        )


def validate_settings_text(content: str) -> list[str]:
    """Return human-readable problems with a config file body (empty when valid)."""
    try:
        data = json.loads(content)
    except json.JSONDecodeError as exc:
        return [f"Not valid JSON: {exc.msg} (line {exc.lineno})"]
    if not isinstance(data, dict):
        return ["Top level must be a JSON object"]
    return _check(data, _SCHEMA, "")


def _check(data: dict[str, Any], schema: dict[str, Any], prefix: str) -> list[str]:
    problems = []
    for key, value in data.items():
        path = f"{prefix}{key}"
        if key not in schema:
            problems.append(f"Unknown key '{path}'")
            continue
        expected = schema[key]
        if isinstance(expected, dict):
            if not isinstance(value, dict):
                problems.append(f"'{path}' must be an object")
            else:
                problems.extend(_check(value, expected, f"{path}."))
        elif isinstance(value, bool) or not isinstance(value, expected):
            problems.append(f"'{path}' has the wrong type ({type(value).__name__})")
    return problems


def load_settings(path: Path) -> Settings:
    """Settings from ``path``; built-in defaults when the file does not exist."""
    if not path.exists():
        return Settings()
    content = path.read_text(encoding="utf-8")
    problems = validate_settings_text(content)
    if problems:
        raise InputError(f"Invalid config file {path}: " + "; ".join(problems))
    data = json.loads(content)
    defaults = Settings()
    try:
        budget = Budget(**{**_fields(defaults.budget), **data.get("budget", {})})
        oracle = OracleConfig(**{**_fields(defaults.oracle), **data.get("oracle", {})})
        return Settings(
            seed=data.get("seed", defaults.seed),
            threads=data.get("threads", defaults.threads),
            budget=budget,
            oracle=oracle,
        )
    except ValueError as exc:
        raise InputError(f"Invalid config file {path}: {exc}") from exc


def _fields(obj: Budget | OracleConfig) -> dict[str, Any]:
    return dict(vars(obj))
