"""Exact rational parsing and formatting.

Every probability, discount factor and payoff handled by coopkit is a
``fractions.Fraction``. Threshold functions additionally take the extended
values ``POS_INF`` and ``NEG_INF``; Python compares float infinities with
``Fraction`` exactly, so they mix freely in comparisons.
"""

import json
import math
from fractions import Fraction
from typing import Any, Union

from coopkit import exceptions

POS_INF = math.inf
NEG_INF = -math.inf

Extended = Union[Fraction, float]


def parse_rational(value: Any) -> Fraction:
    """Parse an exact rational.

    Accepts integers, ``Fraction`` objects, ``"p/q"`` strings, exact decimal
    strings such as ``"0.25"`` and ``[num, den]`` pairs.

    Args:
        value: Value to parse.

    Returns:
        The parsed Fraction.

    Raises:
        ParseError: For floats, booleans, zero denominators or garbage.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise exceptions.ParseError(
            "Expected an exact rational, got %s %r" % (type(value).__name__, value),
            "NOT_RATIONAL",
        )
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise exceptions.ParseError("Invalid rational %r: %s" % (value, e), "NOT_RATIONAL") from e
    if isinstance(value, (list, tuple)) and len(value) == 2:
        num, den = (parse_rational(part) for part in value)
        if den == 0:
            raise exceptions.ParseError("Zero denominator in %r" % (value,), "NOT_RATIONAL")
        return num / den
    raise exceptions.ParseError("Cannot read %r as a rational" % (value,), "NOT_RATIONAL")


def parse_extended(value: Any) -> Extended:
    """Parse a rational that may also be ``"inf"``, ``"-inf"`` or an infinity."""
    if isinstance(value, float) and math.isinf(value):
        return value
    if isinstance(value, str):
        token = value.strip().lower()
        if token in ("inf", "+inf"):
            return POS_INF
        if token == "-inf":
            return NEG_INF
    return parse_rational(value)


def format_rational(value: Extended) -> str:
    """Render a rational canonically as ``"p/q"`` (always with the denominator).

    Infinite values render as ``"inf"`` and ``"-inf"``.
    """
    if isinstance(value, float):
        if value == POS_INF:
            return "inf"
        if value == NEG_INF:
            return "-inf"
        raise TypeError("Refusing to format inexact value %r" % value)
    value = Fraction(value)
    return "%d/%d" % (value.numerator, value.denominator)


def is_finite(value: Extended) -> bool:
    return not (isinstance(value, float) and math.isinf(value))


def _reject_float(token: str) -> None:
    raise exceptions.ParseError(
        "Floating-point literal %s is not allowed; use a \"p/q\" string" % token,
        "FLOAT_REJECTED",
    )


def _reject_constant(token: str) -> None:
    raise exceptions.ParseError("Constant %s is not allowed" % token, "FLOAT_REJECTED")


def loads_exact(text: str) -> Any:
    """Decode JSON, rejecting floating-point literals.

    Raises:
        ParseError: If the document is not valid JSON or contains floats.
    """
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise exceptions.ParseError("Malformed JSON: %s" % e, "MALFORMED_JSON") from e
