"""Division points on E = C/(Z + Z T) and the nome of the lattice."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable


def _frac_part(v: Fraction) -> Fraction:
    return v - (v.numerator // v.denominator)


@dataclass(frozen=True)
class DivisionPoint:
    """The point ``x + y T`` of ``C/(Z + Z T)``.

    Coordinates are kept as given so that points can serve as lifts to the
    covering ``k^x`` (the multiplicative coordinate is ``e^(2 pi i x) Q^y``).
    Use :meth:`reduced` for the canonical representative with both
    coordinates in ``[0, 1)``.
    """

    x: Fraction
    y: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def reduced(self) -> "DivisionPoint":
        return DivisionPoint(_frac_part(self.x), _frac_part(self.y))

    def __add__(self, other: "DivisionPoint") -> "DivisionPoint":
        return DivisionPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "DivisionPoint") -> "DivisionPoint":
        return DivisionPoint(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "DivisionPoint":
        return DivisionPoint(-self.x, -self.y)

    def __mul__(self, k) -> "DivisionPoint":
        return DivisionPoint(self.x * k, self.y * k)

    __rmul__ = __mul__

    def equivalent(self, other: "DivisionPoint") -> bool:
        return (self - other).is_lattice_point()

    def is_lattice_point(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def order(self) -> int:
        r = self.reduced()
        a, b = r.x.denominator, r.y.denominator
        return a * b // gcd(a, b)

    def denominators(self) -> tuple[int, int]:
        return self.x.denominator, self.y.denominator

    def __repr__(self) -> str:
        return f"DivisionPoint({self.x}, {self.y})"


ORIGIN = DivisionPoint(0, 0)


@dataclass(frozen=True)
class NomeSpec:
    """The lattice nome is ``Q = q^e`` with ``q`` the global nome."""

    e: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "e", Fraction(self.e))
        if self.e <= 0:
            raise ValueError("nome exponent multiplier must be positive")


def x_denominator_lcm(points: Iterable[DivisionPoint]) -> int:
    D = 1
    for p in points:
        d = p.x.denominator
        D = D * d // gcd(D, d)
    return D


def lift_sum(points: Iterable[DivisionPoint]) -> DivisionPoint:
    total = DivisionPoint(0, 0)
    for p in points:
        total = total + p
    return total
