"""Closed real intervals with exact rational endpoints.

Endpoints are Fractions, so sums and products of intervals are exact and
containment is never lost to rounding.  Only the places that start from a
floating point computation (the Artin constant, ``li``) need to round, and
they round outward before building an interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction]


def float_down(x: Fraction) -> float:
    """Largest float <= x."""
    f = float(x)
    if Fraction(f) > x:
        f = math.nextafter(f, -math.inf)
    return f


def float_up(x: Fraction) -> float:
    """Smallest float >= x."""
    f = float(x)
    if Fraction(f) < x:
        f = math.nextafter(f, math.inf)
    return f


@dataclass(frozen=True)
class IntervalReal:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> "IntervalReal":
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Union[Number, "IntervalReal"]) -> bool:
        if isinstance(x, IntervalReal):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other: "IntervalReal") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other: Union[Number, "IntervalReal"]) -> "IntervalReal":
        if isinstance(other, IntervalReal):
            return IntervalReal(self.lo + other.lo, self.hi + other.hi)
        return IntervalReal(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self) -> "IntervalReal":
        return IntervalReal(-self.hi, -self.lo)

    def __sub__(self, other: Union[Number, "IntervalReal"]) -> "IntervalReal":
        return self + (-other)

    def __rsub__(self, other: Number) -> "IntervalReal":
        return (-self) + other

    def __mul__(self, other: Union[Number, "IntervalReal"]) -> "IntervalReal":
        if not isinstance(other, IntervalReal):
            other = IntervalReal.point(other)
        ends = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return IntervalReal(min(ends), max(ends))

    __rmul__ = __mul__

    def rounded(self, bits: int = 96) -> "IntervalReal":
        """Outward-round both endpoints to multiples of 2**-bits.

        Keeps Fraction sizes bounded after long chains of products.
        """
        scale = 1 << bits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        return IntervalReal(lo, hi)

    def as_floats(self) -> tuple[float, float]:
        """Outward-rounded float endpoints."""
        return float_down(self.lo), float_up(self.hi)

    def __repr__(self) -> str:
        lo, hi = self.as_floats()
        return f"IntervalReal[{lo!r}, {hi!r}]"
