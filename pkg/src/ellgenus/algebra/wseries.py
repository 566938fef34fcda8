"""Truncated Laurent series in the formal coordinate w.

``w = 2 pi i z``, so that ``u = e^(2 pi i z) = e^w`` has rational Taylor
coefficients.  Coefficients live in any commutative ring whose elements
support ``+ - *`` and multiplication by :class:`Fraction`: exact
:class:`QSeries`, plain rationals, or complex numbers for numeric work.

A :class:`WSeries` is dense: ``coeffs[k]`` is the coefficient of
``w^(val + k)`` and everything from ``w^prec`` on is unknown.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from .cyclotomic import CycElt, scalar_inverse
from .qseries import QSeries


class PoleInComposition(ValueError):
    pass


def _czero(c) -> bool:
    if isinstance(c, QSeries):
        return c.is_zero()
    if isinstance(c, CycElt):
        return c.is_zero()
    return c == 0


def _one_like(c):
    if isinstance(c, QSeries):
        return QSeries.one()
    if isinstance(c, complex):
        return 1 + 0j
    return Fraction(1)


def _zero_like(c):
    if isinstance(c, QSeries):
        return QSeries.zero()
    if isinstance(c, complex):
        return 0j
    return Fraction(0)


def _cinv(c):
    if isinstance(c, QSeries):
        return c.inverse()
    return scalar_inverse(c)


class WSeries:
    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, coeffs: Sequence, val: int = 0, prec: int | None = None):
        coeffs = list(coeffs)
        if prec is None:
            prec = val + len(coeffs)
        coeffs = coeffs[: max(prec - val, 0)]
        # strip leading exact zeros
        while coeffs and _czero(coeffs[0]):
            coeffs.pop(0)
            val += 1
        self.val = val
        self.coeffs = coeffs
        self.prec = prec
        if not coeffs:
            self.val = prec

    @classmethod
    def from_dict(cls, d: dict, prec: int, zero) -> "WSeries":
        lo = min(d) if d else prec
        return cls([d.get(k, zero) for k in range(lo, prec)], lo, prec)

    # -- inspection -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        if k >= self.prec:
            raise IndexError(f"coefficient of w^{k} is beyond precision O(w^{self.prec})")
        i = k - self.val
        if i < 0 or i >= len(self.coeffs):
            return _zero_like(self.coeffs[0]) if self.coeffs else Fraction(0)
        return self.coeffs[i]

    def coefficient(self, k: int):
        return self[k]

    def leading(self):
        return self.coeffs[0]

    def map(self, fn) -> "WSeries":
        return WSeries([fn(c) for c in self.coeffs], self.val, self.prec)

    def truncate(self, prec: int) -> "WSeries":
        return WSeries(self.coeffs, self.val, min(prec, self.prec))

    # -- arithmetic --------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, WSeries):
            if _czero(other):
                return self
            other = WSeries([other], 0, self.prec)
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        out = []
        for k in range(lo, prec):
            a = self._get(k)
            b = other._get(k)
            if a is None:
                out.append(b if b is not None else _zero_like(self._sample(other)))
            elif b is None:
                out.append(a)
            else:
                out.append(a + b)
        return WSeries(out, lo, prec)

    __radd__ = __add__

    def _get(self, k):
        i = k - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return None

    def _sample(self, other=None):
        if self.coeffs:
            return self.coeffs[0]
        if other is not None and other.coeffs:
            return other.coeffs[0]
        return Fraction(0)

    def __neg__(self):
        return WSeries([-c for c in self.coeffs], self.val, self.prec)

    def __sub__(self, other):
        if not isinstance(other, WSeries):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "WSeries":
        return WSeries([x * c for x in self.coeffs], self.val, self.prec)

    def __mul__(self, other):
        if not isinstance(other, WSeries):
            return self.scale(other)
        return self.mul(other)

    def __rmul__(self, other):
        return self.scale(other)

    def mul(self, other: "WSeries") -> "WSeries":
        if self.is_zero() or other.is_zero():
            return WSeries([], 0, min(self.prec + other.val, other.prec + self.val))
        val = self.val + other.val
        prec = min(self.prec + other.val, other.prec + self.val)
        n = prec - val
        out = [None] * n
        a, b = self.coeffs, other.coeffs
        for i, x in enumerate(a):
            if i >= n:
                break
            if _czero(x):
                continue
            for j in range(min(len(b), n - i)):
                y = b[j]
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        z = _zero_like(a[0])
        return WSeries([c if c is not None else z for c in out], val, prec)

    def inverse(self) -> "WSeries":
        if self.is_zero():
            raise ZeroDivisionError("cannot invert a series that vanishes to its precision")
        c0inv = _cinv(self.coeffs[0])
        n = self.prec - self.val  # relative precision
        a = [c * c0inv for c in self.coeffs]
        b = [_one_like(self.coeffs[0])]
        for k in range(1, n):
            acc = None
            for j in range(1, min(k, len(a) - 1) + 1):
                t = a[j] * b[k - j]
                acc = t if acc is None else acc + t
            b.append(-acc if acc is not None else _zero_like(self.coeffs[0]))
        return WSeries([x * c0inv for x in b], -self.val, self.prec - 2 * self.val)

    def __truediv__(self, other):
        if isinstance(other, WSeries):
            return self.mul(other.inverse())
        return self.scale(_cinv(other))

    def __pow__(self, k: int) -> "WSeries":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            one = _one_like(self._sample())
            return WSeries([one], 0, self.prec - self.val)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result.mul(base)
            k >>= 1
            if k:
                base = base.mul(base)
        return result

    def shift(self, k: int) -> "WSeries":
        """Multiply by ``w^k``."""
        return WSeries(self.coeffs, self.val + k, self.prec + k)

    def derivative(self) -> "WSeries":
        out = [c * (self.val + i) for i, c in enumerate(self.coeffs)]
        return WSeries(out, self.val - 1, self.prec - 1)

    def scale_variable(self, lam) -> "WSeries":
        """Substitute ``w -> lam * w``."""
        lam = Fraction(lam)
        return WSeries(
            [c * (lam ** (self.val + i)) for i, c in enumerate(self.coeffs)], self.val, self.prec
        )

    def mul_one_minus_exp(self, m, sigma: int) -> "WSeries":
        """Multiply by ``1 - m * e^(sigma w)`` where ``m`` is a coefficient-ring element."""
        if self.is_zero():
            return self
        n = self.prec - self.val
        # A * e^(sigma w): convolution with the rational sequence sigma^k / k!
        conv = []
        for k in range(n):
            acc = None
            for j in range(k + 1):
                if j >= len(self.coeffs):
                    continue
                r = Fraction(sigma ** (k - j), factorial(k - j))
                t = self.coeffs[j] * r
                acc = t if acc is None else acc + t
            conv.append(acc)
        out = []
        for k in range(n):
            a = self.coeffs[k] if k < len(self.coeffs) else None
            t = conv[k] * m if conv[k] is not None else None
            if a is None:
                out.append(-t)
            else:
                out.append(a - t)
        return WSeries(out, self.val, self.prec)

    def agrees_with(self, other: "WSeries", prec: int | None = None) -> bool:
        p = min(self.prec, other.prec) if prec is None else min(prec, self.prec, other.prec)
        lo = min(self.val, other.val)
        for k in range(lo, p):
            d = self._get(k), other._get(k)
            if d[0] is None and d[1] is None:
                continue
            if d[0] is None:
                diff = d[1]
            elif d[1] is None:
                diff = d[0]
            else:
                diff = d[0] - d[1]
            if isinstance(diff, QSeries):
                if not diff.is_zero():
                    return False
            elif diff != 0:
                return False
        return True

    def is_even(self) -> bool:
        return all(_czero(c) for i, c in enumerate(self.coeffs) if (self.val + i) % 2)

    def __repr__(self) -> str:
        parts = [f"[{c}]*w^{self.val + i}" for i, c in enumerate(self.coeffs) if not _czero(c)]
        return (" + ".join(parts) or "0") + f" + O(w^{self.prec})"


def exp_series(c, Z: int) -> WSeries:
    """Taylor series of ``e^(c w)`` through ``w^Z`` with exact rational coefficients."""
    c = Fraction(c)
    return WSeries([c**k / factorial(k) for k in range(Z + 1)], 0, Z + 1)
