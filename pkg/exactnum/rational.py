"""Exact rational scalars and their "p/q" text form."""
from fractions import Fraction
from numbers import Integral, Rational
from typing import Any, Iterable, Sequence

import numpy as np

from utils.exceptions import DimensionMismatchError

_MINUS_SIGNS = ('−', '–', '‒')


def parse_rational(value: Any) -> Fraction:
    """Parse an int, Fraction, float or string ("p/q", "p", "0.25", "−1/2") into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"Boolean is not a rational: {value!r}")
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, (float, np.floating)):
        # Floats are read through their shortest repr, e.g. 0.1 -> 1/10.
        return Fraction(repr(float(value)))
    if isinstance(value, str):
        text = value.strip()
        for sign in _MINUS_SIGNS:
            text = text.replace(sign, '-')
        if not text:
            raise ValueError("Empty rational string")
        return Fraction(text)
    raise ValueError(f"Cannot parse rational from {value!r}")


def format_rational(value: Any) -> str:
    """Format a rational as "p/q" (the denominator is always written)."""
    q = parse_rational(value)
    return f"{q.numerator}/{q.denominator}"


def is_exact_scalar(value: Any) -> bool:
    return isinstance(value, (Fraction, Integral)) and not isinstance(value, bool)


def is_exact(values: Any) -> bool:
    """True when every entry of a scalar, sequence or array is an exact rational."""
    arr = np.asarray(values, dtype=object)
    return all(is_exact_scalar(v) for v in arr.flat)


def to_fraction_vector(values: Iterable[Any]) -> np.ndarray:
    vec = np.array([parse_rational(v) for v in values], dtype=object)
    return vec


def to_fraction_matrix(rows: Sequence[Sequence[Any]]) -> np.ndarray:
    """Convert nested sequences into a 2-D object array of Fractions."""
    rows = [list(r) for r in rows]
    if not rows:
        return np.empty((0, 0), dtype=object)
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise DimensionMismatchError(width, len(r), "ragged matrix rows")
    out = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = parse_rational(v)
    return out


def format_matrix(m: Any) -> list:
    arr = np.asarray(m, dtype=object)
    if arr.ndim == 1:
        return [format_rational(v) for v in arr]
    return [[format_rational(v) for v in row] for row in arr]


def parse_matrix(rows: Sequence[Sequence[Any]]) -> np.ndarray:
    return to_fraction_matrix(rows)
