"""Evaluation contexts: where the coefficients of theta products live.

An :class:`ExactContext` produces :class:`QSeries` over ``Q(zeta_D)`` known
to ``O(q^prec)``; a :class:`NumericContext` plugs in a concrete ``tau`` and
works with complex floats.  Theta-product code is written once against this
small interface.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from ..algebra.cyclotomic import CyclotomicField
from ..algebra.qseries import QSeries
from ..algebra.wseries import WSeries


class ExactContext:
    kind = "exact"

    def __init__(self, prec, field: CyclotomicField | int = 1):
        self.prec = Fraction(prec)
        self.field = field if isinstance(field, CyclotomicField) else CyclotomicField(int(field))

    def __repr__(self) -> str:
        return f"ExactContext(prec={self.prec}, D={self.field.D})"

    def key(self):
        return ("exact", self.prec, self.field.D)

    def with_prec(self, prec) -> "ExactContext":
        return ExactContext(prec, self.field)

    def one(self):
        return QSeries.one()

    def zero(self):
        return QSeries.zero()

    def constant(self, c):
        return QSeries.constant(self.field.coerce(c) if not isinstance(c, Fraction) else c)

    def mono(self, x, a) -> QSeries:
        """``e^(2 pi i x) q^a`` as an exact monomial."""
        return QSeries.monomial(self.field.exp2pi(Fraction(x)), Fraction(a))

    def bound(self, head_valuation) -> Fraction:
        """Exclusive bound on factor exponents needed for ``O(q^prec)``."""
        return self.prec - head_valuation

    def trunc(self, v):
        if isinstance(v, WSeries):
            return v.map(lambda c: c.truncate(self.prec))
        return v.truncate(self.prec)

    def is_zero(self, v) -> bool:
        return v.is_zero()

    def agree(self, a, b) -> bool:
        return a.agrees_with(b)

    def to_complex(self, v, tau) -> complex:
        return v.evaluate(tau)


class NumericContext:
    kind = "numeric"

    def __init__(self, tau: complex, tol: float = 1e-9, eps: float = 1e-22):
        tau = complex(tau)
        if tau.imag <= 0:
            raise ValueError("tau must lie in the upper half-plane")
        self.tau = tau
        self.tol = tol
        self._amax = math.log(1 / eps) / (2 * math.pi * tau.imag)

    def __repr__(self) -> str:
        return f"NumericContext(tau={self.tau}, tol={self.tol})"

    def key(self):
        return ("numeric", self.tau, self.tol)

    def one(self):
        return 1 + 0j

    def zero(self):
        return 0j

    def constant(self, c):
        return complex(c)

    def mono(self, x, a) -> complex:
        return cmath.exp(2j * cmath.pi * (float(x) + self.tau * float(a)))

    def bound(self, head_valuation) -> float:
        return self._amax - float(head_valuation)

    def trunc(self, v):
        return v

    def is_zero(self, v) -> bool:
        return abs(v) <= self.tol

    def agree(self, a, b) -> bool:
        scale = max(1.0, abs(a), abs(b))
        return abs(a - b) <= self.tol * scale

    def to_complex(self, v, tau=None) -> complex:
        return complex(v)
