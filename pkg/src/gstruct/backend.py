"""Scalar backends: exact rationals and tolerance-based floats.

All tensor coefficients in the library are plain Python numbers
(`fractions.Fraction` or `float`); a backend only decides how zero tests
and equality are performed.  The exact backend is the default; the float
backend exists for phase angles that are not rational circle points.
"""

from __future__ import annotations

import os
from fractions import Fraction

DEFAULT_EPS = 1e-9


class ExactBackend:
    """Arbitrary-precision rational arithmetic with exact comparisons."""

    name = "exact"

    def scalar(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, float):
            raise TypeError("exact backend does not accept floats; use Fraction or str")
        raise TypeError(f"cannot convert {value!r} to an exact scalar")

    def is_zero(self, x) -> bool:
        return x == 0

    def eq(self, x, y) -> bool:
        return x == y

    def __repr__(self):
        return "ExactBackend()"


class FloatBackend:
    """Binary floating point with a global comparison tolerance."""

    name = "float"

    def __init__(self, eps: float = DEFAULT_EPS):
        self.eps = float(eps)

    def scalar(self, value):
        if isinstance(value, (int, float, Fraction)):
            return float(value)
        if isinstance(value, str):
            return float(Fraction(value))
        raise TypeError(f"cannot convert {value!r} to a float scalar")

    def is_zero(self, x) -> bool:
        return abs(x) <= self.eps

    def eq(self, x, y) -> bool:
        return abs(x - y) <= self.eps

    def __repr__(self):
        return f"FloatBackend(eps={self.eps})"


EXACT = ExactBackend()


def default_eps() -> float:
    """Comparison tolerance, overridable through the GSTRUCT_EPS variable."""
    raw = os.environ.get("GSTRUCT_EPS")
    return float(raw) if raw else DEFAULT_EPS


def parse_rational(token: str) -> Fraction:
    """Parse 'p', '-p' or 'p/q' into a Fraction."""
    return Fraction(token)
