"""Exceptions and exit-code mapping for qh-alcove.

Exit codes: 0 success/member, 1 negative verdict or domain failure,
2 usage or input error, 3 internal assertion.
"""

from __future__ import annotations


class QhAlcoveError(Exception):
    """Base exception for all qh-alcove errors."""

    exit_code: int = 1


# ── Framework errors ─────────────────────────────────────────────────────────


class ContextNotInitializedError(QhAlcoveError):
    """Raised when get_context() is called before runtime initialization."""

    def __init__(self) -> None:
        super().__init__("RuntimeContext has not been initialized.")


class RegistryFrozenError(QhAlcoveError):
    """Raised when a registration is attempted after the registry is frozen."""

    def __init__(self, action: str = "register") -> None:
        super().__init__(f"Cannot {action}: command registry is frozen.")


class RegistryConflictError(QhAlcoveError):
    """Raised when a command name collision is detected."""

    def __init__(self, path: str, detail: str = "") -> None:
        msg = f"Registration conflict at '{path}'"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class PluginLoadError(QhAlcoveError):
    """Raised when a command registrar fails to import or raises during registration."""

    def __init__(self, plugin_name: str, reason: str = "") -> None:
        msg = f"Failed to load plugin '{plugin_name}'"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.plugin_name = plugin_name


class SpecValidationError(QhAlcoveError):
    """Raised when CliSpec validation fails."""

    def __init__(self, detail: str) -> None:
        super().__init__(f"Invalid CliSpec: {detail}")


# ── Input errors (exit 2) ────────────────────────────────────────────────────


class InputError(QhAlcoveError):
    """Malformed rational, vector, type label or inequality file."""

    exit_code: int = 2


class InvalidType(InputError):
    """Unsupported (type, rank) pair."""

    def __init__(self, label: str, detail: str = "") -> None:
        msg = f"Unsupported root system '{label}'"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.label = label


class DimensionMismatch(InputError):
    """Vector lengths do not match the rank or the number of marked points."""

    def __init__(self, expected: int, got: int, what: str = "vector") -> None:
        super().__init__(f"Dimension mismatch for {what}: expected {expected}, got {got}")
        self.expected = expected
        self.got = got


class AlcoveViolation(InputError):
    """A marking lies outside the fundamental alcove."""

    def __init__(self, point_index: int, constraint: str) -> None:
        super().__init__(f"Point {point_index + 1} is outside the alcove: violates {constraint}")
        self.point_index = point_index
        self.constraint = constraint


# ── Domain failures (exit 1) ─────────────────────────────────────────────────


class GroupTooLarge(QhAlcoveError):
    """Weyl group order exceeds the enumeration guard."""

    def __init__(self, label: str, order: int, limit: int) -> None:
        super().__init__(f"Weyl group of {label} has order {order}, above the limit {limit}")
        self.order = order
        self.limit = limit


class BudgetExceeded(QhAlcoveError):
    """A product or point count exceeds the configured budget."""

    def __init__(self, what: str, value: int, limit: int) -> None:
        super().__init__(f"{what} = {value} exceeds the budget limit {limit}")
        self.value = value
        self.limit = limit


class NotDivisorGenerated(QhAlcoveError):
    """The degree-2 class does not generate the quantum ring at some codegree."""

    def __init__(self, label: str, codegree: int) -> None:
        super().__init__(
            f"QH*({label}) is not generated by the divisor class: "
            f"cover matrix at codegree {codegree} has deficient column rank"
        )
        self.codegree = codegree


class Infeasible(QhAlcoveError):
    """The linear program has no feasible point."""

    def __init__(self, detail: str = "") -> None:
        super().__init__("Linear program is infeasible" + (f": {detail}" if detail else ""))


class Unbounded(QhAlcoveError):
    """The linear program objective is unbounded above."""

    def __init__(self, detail: str = "") -> None:
        super().__init__("Linear program is unbounded" + (f": {detail}" if detail else ""))


class NonUnitaryInput(QhAlcoveError):
    """A matrix handed to the oracle drifted away from the unitary group."""

    def __init__(self, index: int, drift: float) -> None:
        super().__init__(f"Matrix {index + 1} is not unitary (drift {drift:.3e})")
        self.drift = drift


# ── Internal (exit 3) ────────────────────────────────────────────────────────


class InternalAssertion(QhAlcoveError):
    """An internal consistency check failed."""

    exit_code: int = 3
