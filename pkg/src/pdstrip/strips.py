"""Horizontal and vertical strips with extended-real bounds.

Extended reals are plain Python floats; ``-math.inf`` and ``math.inf``
already carry the required total order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import MalformedDescriptor, ParseError

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


def parse_ext_real(value) -> float:
    """Accept a number or one of the strings ``-inf``/``+inf``/``inf``."""
    if isinstance(value, bool):
        raise ParseError(f"not an extended real: {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("-inf", "-infinity"):
            return -math.inf
        if text in ("+inf", "inf", "+infinity", "infinity"):
            return math.inf
        try:
            return float(text)
        except ValueError:
            pass
    raise ParseError(f"not an extended real: {value!r}")


def format_ext_real(x: float):
    """Inverse of :func:`parse_ext_real` for JSON output."""
    if x == math.inf:
        return "+inf"
    if x == -math.inf:
        return "-inf"
    return x


@dataclass(frozen=True)
class Strip:
    orientation: str
    lo: float
    hi: float

    def __post_init__(self):
        if self.orientation not in (HORIZONTAL, VERTICAL):
            raise MalformedDescriptor(f"bad orientation {self.orientation!r}")
        if not self.lo < self.hi:
            raise MalformedDescriptor(f"strip needs lo < hi, got ({self.lo}, {self.hi})")

    @classmethod
    def horizontal(cls, lo, hi):
        return cls(HORIZONTAL, parse_ext_real(lo), parse_ext_real(hi))

    @classmethod
    def vertical(cls, lo, hi):
        return cls(VERTICAL, parse_ext_real(lo), parse_ext_real(hi))

    def coordinate(self, z: complex) -> float:
        z = complex(z)
        return z.imag if self.orientation == HORIZONTAL else z.real

    def contains(self, z: complex) -> bool:
        return self.lo < self.coordinate(z) < self.hi

    def rotated(self) -> "Strip":
        """Image under ``z -> -i z`` for horizontal strips (and its inverse)."""
        other = VERTICAL if self.orientation == HORIZONTAL else HORIZONTAL
        return Strip(other, self.lo, self.hi)

    def finite_window(self, span: float = 8.0) -> tuple[float, float]:
        """Finite sub-interval used when sampling points in an unbounded strip."""
        lo, hi = self.lo, self.hi
        if math.isinf(lo) and math.isinf(hi):
            return -span / 2, span / 2
        if math.isinf(lo):
            return hi - span, hi
        if math.isinf(hi):
            return lo, lo + span
        return lo, hi

    def label(self) -> str:
        letter = "S" if self.orientation == HORIZONTAL else "T"
        return f"{letter}({_fmt(self.lo)},{_fmt(self.hi)})"

    def to_json(self) -> dict:
        return {
            "orientation": self.orientation,
            "lo": format_ext_real(self.lo),
            "hi": format_ext_real(self.hi),
        }


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "-inf" if x < 0 else "+inf"
    return f"{x:g}"
