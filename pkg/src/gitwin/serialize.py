"""Exact-arithmetic JSON conventions shared by the file formats and the CLI.

Every number that can be non-integral is carried as a fraction string
("p/q", or just "p" when the denominator is 1) so that output never
contains floating point and digests are reproducible byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import InputError

__all__ = [
    "fraction_repr",
    "parse_fraction",
    "canonical_json",
    "payload_digest",
]


def fraction_repr(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text, where: str = "value") -> Fraction:
    """Parse "p/q", "p", or a plain integer; anything else is an input error
    named by its field path."""
    if isinstance(text, bool):
        raise InputError(f"{where}: expected a rational number, got a boolean")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: not a rational number: {text!r}")
    raise InputError(
        f"{where}: expected an integer or a 'p/q' string, got {type(text).__name__}"
    )


def canonical_json(payload) -> str:
    """Deterministic rendering: sorted keys, two-space indent, one trailing
    newline, no floats anywhere (floats are rejected to keep byte stability)."""

    def reject_floats(obj):
        if isinstance(obj, float):
            raise InputError("canonical JSON carries no floating point values")
        if isinstance(obj, dict):
            return {k: reject_floats(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [reject_floats(v) for v in obj]
        return obj

    return json.dumps(reject_floats(payload), sort_keys=True, indent=2) + "\n"


def payload_digest(payload) -> str:
    """SHA-256 of the canonical rendering; used to stamp reports with the
    exact input they were computed from."""
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()
