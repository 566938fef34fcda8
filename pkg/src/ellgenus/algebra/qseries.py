"""Truncated Puiseux series in the nome q.

A :class:`QSeries` stores a sparse map from integer numerators ``e`` to
coefficients, meaning ``sum c_e q^(e/denom)``, together with a precision
``prec``: every coefficient with exponent ``< prec`` is exact and everything
from ``prec`` on is unknown (``O(q^prec)``).  ``prec=None`` marks an exact
Laurent polynomial.

The precision bookkeeping follows the usual valuation rules::

    prec(A*B)  = min(prec(A) + val(B), prec(B) + val(A))
    prec(1/A)  = prec(A) - 2*val(A)

so series with poles in q lose or gain precision correctly.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator

from .cyclotomic import CycElt, InversionOfZero, scalar_inverse


class NonUnitInversion(ZeroDivisionError):
    pass


INF = None  # exact (infinite) precision marker


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _is_zero(c) -> bool:
    if isinstance(c, CycElt):
        return c.is_zero()
    return c == 0


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _padd(p, v):
    # precision plus valuation; v is None for the zero series (infinite valuation)
    if p is None or v is None:
        return None
    return p + v


class QSeries:
    __slots__ = ("denom", "terms", "prec")

    def __init__(self, terms: dict | None = None, denom: int = 1, prec=None):
        """``terms`` maps integer numerators to coefficients (exponent = num/denom)."""
        self.denom = int(denom)
        p = None if prec is None else Fraction(prec)
        self.prec = p
        clean = {}
        if terms:
            for e, c in terms.items():
                if _is_zero(c):
                    continue
                if p is not None and Fraction(e, self.denom) >= p:
                    continue
                clean[int(e)] = c
        self.terms = clean
        self._normalize_denom()

    # -- constructors -------------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict, denom: int, prec) -> "QSeries":
        obj = object.__new__(cls)
        obj.terms = terms
        obj.denom = denom
        obj.prec = prec
        return obj

    @classmethod
    def monomial(cls, coeff, exponent=0, prec=None) -> "QSeries":
        exponent = Fraction(exponent)
        return cls({exponent.numerator: coeff}, exponent.denominator, prec)

    @classmethod
    def constant(cls, coeff, prec=None) -> "QSeries":
        return cls.monomial(coeff, 0, prec)

    @classmethod
    def zero(cls, prec=None) -> "QSeries":
        return cls({}, 1, prec)

    @classmethod
    def one(cls) -> "QSeries":
        return cls.monomial(Fraction(1))

    @classmethod
    def from_exponents(cls, items: Iterable[tuple], prec=None) -> "QSeries":
        """Build from ``(exponent, coeff)`` pairs with rational exponents."""
        items = [(Fraction(e), c) for e, c in items]
        D = 1
        for e, _ in items:
            D = _lcm(D, e.denominator)
        terms: dict = {}
        for e, c in items:
            k = int(e * D)
            terms[k] = terms[k] + c if k in terms else c
        return cls(terms, D, prec)

    def _normalize_denom(self) -> None:
        g = self.denom
        for e in self.terms:
            g = gcd(g, e)
            if g == 1:
                return
        if g > 1:
            self.terms = {e // g: c for e, c in self.terms.items()}
            self.denom //= g

    def rebase(self, denom: int) -> dict:
        if denom % self.denom:
            raise ValueError("new denominator must be a multiple")
        f = denom // self.denom
        if f == 1:
            return self.terms
        return {e * f: c for e, c in self.terms.items()}

    # -- inspection ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self):
        """Lowest exponent with nonzero coefficient (None for the zero series)."""
        if not self.terms:
            return None
        return Fraction(min(self.terms), self.denom)

    def leading(self):
        k = min(self.terms)
        return Fraction(k, self.denom), self.terms[k]

    def exponents(self) -> list[Fraction]:
        return [Fraction(e, self.denom) for e in sorted(self.terms)]

    def items(self) -> Iterator[tuple[Fraction, object]]:
        for e in sorted(self.terms):
            yield Fraction(e, self.denom), self.terms[e]

    def __getitem__(self, exponent) -> object:
        exponent = Fraction(exponent)
        if self.prec is not None and exponent >= self.prec:
            raise IndexError(f"coefficient of q^{exponent} is beyond precision O(q^{self.prec})")
        k = exponent * self.denom
        if k.denominator != 1:
            return Fraction(0)
        return self.terms.get(int(k), Fraction(0))

    def coefficient(self, exponent):
        return self[exponent]

    def is_rational(self) -> bool:
        return all(not isinstance(c, CycElt) or c.is_rational() for c in self.terms.values())

    def map_coefficients(self, fn: Callable) -> "QSeries":
        return QSeries({e: fn(c) for e, c in self.terms.items()}, self.denom, self.prec)

    def truncate(self, prec) -> "QSeries":
        prec = Fraction(prec)
        if self.prec is not None and self.prec < prec:
            prec = self.prec
        return QSeries(self.terms, self.denom, prec)

    # -- arithmetic ------------------------------------------------------------------
    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries.constant(other)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            if _is_zero(other):
                return self
            other = QSeries.constant(other)
        D = _lcm(self.denom, other.denom)
        a = self.rebase(D)
        b = other.rebase(D)
        out = dict(a)
        for e, c in b.items():
            if e in out:
                s = out[e] + c
                if _is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return QSeries(out, D, _pmin(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw({e: -c for e, c in self.terms.items()}, self.denom, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        """Multiply every coefficient by the scalar ``c``."""
        if _is_zero(c):
            return QSeries.zero(self.prec)
        return QSeries({e: v * c for e, v in self.terms.items()}, self.denom, self.prec)

    def shift(self, exponent) -> "QSeries":
        """Multiply by ``q^exponent``."""
        exponent = Fraction(exponent)
        D = _lcm(self.denom, exponent.denominator)
        s = int(exponent * D)
        terms = {e + s: c for e, c in self.rebase(D).items()}
        prec = None if self.prec is None else self.prec + exponent
        return QSeries._raw(terms, D, prec)

    def mul_monomial(self, coeff, exponent) -> "QSeries":
        out = self.shift(exponent)
        if coeff == 1:
            return out
        return QSeries._raw({e: c * coeff for e, c in out.terms.items()}, out.denom, out.prec)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        return self.mul(other)

    def __rmul__(self, other):
        return self.scale(other)

    def mul(self, other: "QSeries", prec=None) -> "QSeries":
        """Product, optionally truncated further to ``O(q^prec)``."""
        va, vb = self.valuation(), other.valuation()
        p = _pmin(_padd(self.prec, vb), _padd(other.prec, va))
        if self.prec is not None and va is None:
            p = _pmin(p, self.prec + (vb if vb is not None else 0))
        if other.prec is not None and vb is None:
            p = _pmin(p, other.prec + (va if va is not None else 0))
        if prec is not None:
            p = _pmin(p, Fraction(prec))
        if not self.terms or not other.terms:
            return QSeries.zero(p)
        D = _lcm(self.denom, other.denom)
        a = sorted(self.rebase(D).items())
        b = sorted(other.rebase(D).items())
        bound = None if p is None else p * D
        out: dict = {}
        for ea, ca in a:
            for eb, cb in b:
                e = ea + eb
                if bound is not None and e >= bound:
                    break
                v = ca * cb
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        return QSeries(out, D, p)

    def inverse(self) -> "QSeries":
        """Inverse of ``q^v * (unit)``; precision drops to ``prec - 2v``."""
        if not self.terms:
            raise NonUnitInversion("cannot invert the zero series")
        v, lead = self.leading()
        try:
            lead_inv = scalar_inverse(lead)
        except InversionOfZero as exc:
            raise NonUnitInversion(str(exc)) from exc
        if self.prec is None and len(self.terms) == 1:
            return QSeries.monomial(lead_inv, -v)
        if self.prec is None:
            raise NonUnitInversion("inverse of an exact non-monomial needs a precision; truncate first")
        # unit part u = q^-v * self / lead, known to O(q^(prec - v))
        D = self.denom
        kv = int(v * D)
        rel_prec = self.prec - v
        nmax = -((-rel_prec.numerator * D) // rel_prec.denominator)  # ceil(rel_prec * D)
        u = {e - kv: c * lead_inv for e, c in self.terms.items()}
        # b_0 = 1, b_k = -sum_{j>=1} u_j b_{k-j}
        coeffs: dict = {0: Fraction(1)}
        ukeys = sorted(k for k in u if k > 0)
        for k in range(1, nmax):
            acc = None
            for j in ukeys:
                if j > k:
                    break
                bk = coeffs.get(k - j)
                if bk is None:
                    continue
                t = u[j] * bk
                acc = t if acc is None else acc + t
            if acc is not None and not _is_zero(acc):
                coeffs[k] = -acc
        terms = {k - kv: c * lead_inv for k, c in coeffs.items()}
        return QSeries(terms, D, self.prec - 2 * v)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self.mul(other.inverse())
        return self.scale(scalar_inverse(other))

    def __rtruediv__(self, other):
        return self.inverse().scale(other)

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = QSeries.one()
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            k >>= 1
            if k:
                base = base.mul(base)
        return result

    # -- comparison ------------------------------------------------------------------
    def common_prec(self, other: "QSeries"):
        return _pmin(self.prec, other.prec)

    def agrees_with(self, other: "QSeries", prec=None) -> bool:
        """Exact coefficientwise equality below the common precision (or ``prec``)."""
        p = _pmin(self.common_prec(other), None if prec is None else Fraction(prec))
        diff = self - other
        if p is None:
            return diff.is_zero()
        return all(e >= p for e in diff.exponents())

    def first_difference(self, other: "QSeries", prec=None):
        p = _pmin(self.common_prec(other), None if prec is None else Fraction(prec))
        for e, c in (self - other).items():
            if p is None or e < p:
                return e
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            other = QSeries.constant(other)
        return self.prec == other.prec and (self - other).is_zero()

    def __hash__(self):
        return hash((self.prec, tuple(sorted((e, hash(c)) for e, c in self.items()))))

    # -- numerics -------------------------------------------------------------------
    def evaluate(self, tau: complex) -> complex:
        """Sum the stored terms at ``q = exp(2 pi i tau)`` (principal branch for q^(a/b))."""
        total = 0j
        for e, c in self.items():
            total += complex(c) * cmath.exp(2j * cmath.pi * tau * float(e))
        return total

    def __repr__(self) -> str:
        parts = []
        for e, c in self.items():
            mono = "" if e == 0 else (f"q^{e}" if e != 1 else "q")
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        body = " + ".join(parts) if parts else "0"
        tail = "" if self.prec is None else f" + O(q^{self.prec})"
        return body + tail
