"""Exact rational parsing and "p/q" serialization."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from qh_alcove.errors import InputError

Vector = tuple[Fraction, ...]


def parse_rational(text: str) -> Fraction:
    """Parse ``"3"``, ``"-1/2"`` or ``"0.25"`` into an exact Fraction."""
    raw = text.strip()
    if not raw:
        raise InputError("Empty rational literal")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"Malformed rational '{text}'") from exc


def parse_vector(text: str) -> Vector:
    """Parse a comma-separated rational vector, e.g. ``"1/2,1/4"``."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise InputError(f"Empty vector '{text}'")
    return tuple(parse_rational(p) for p in parts)


def parse_points(text: str) -> list[Vector]:
    """Parse semicolon-separated vectors: ``"1/2;1/2;1/2"`` or ``"1/3,0;0,1/3"``."""
    chunks = [c for c in text.split(";") if c.strip()]
    if not chunks:
        raise InputError("No marking vectors given")
    return [parse_vector(c) for c in chunks]


def format_rational(value: Fraction | int) -> str:
    frac = Fraction(value)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def format_vector(values: Iterable[Fraction | int]) -> list[str]:
    return [format_rational(v) for v in values]


def vector_from_json(items: Sequence[str | int]) -> Vector:
    return tuple(parse_rational(str(item)) for item in items)
