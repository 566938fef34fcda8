"""Multivariate polynomials truncated to per-variable degree caps."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .wseries import PoleInComposition, WSeries, _czero


class MultiPoly:
    """Sparse polynomial in ``w_1..w_t`` keeping only exponents within ``caps``."""

    __slots__ = ("caps", "terms")

    def __init__(self, caps: Sequence[int], terms: dict | None = None):
        self.caps = tuple(int(c) for c in caps)
        self.terms = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.caps):
                raise ValueError("exponent length does not match variable count")
            if any(k > cap or k < 0 for k, cap in zip(e, self.caps)):
                continue
            if not _czero(c):
                self.terms[e] = c

    @property
    def nvars(self) -> int:
        return len(self.caps)

    @classmethod
    def constant(cls, caps, c) -> "MultiPoly":
        return cls(caps, {(0,) * len(caps): c})

    @classmethod
    def linear(cls, caps, m: Sequence[int]) -> "MultiPoly":
        terms = {}
        for j, mj in enumerate(m):
            if mj:
                e = [0] * len(caps)
                e[j] = 1
                terms[tuple(e)] = Fraction(mj)
        return cls(caps, terms)

    @classmethod
    def univariate(cls, caps, j: int, series: WSeries) -> "MultiPoly":
        """Embed a power series in ``w_j``."""
        if series.val < 0:
            raise PoleInComposition("series has a pole at w = 0")
        terms = {}
        for k in range(series.val, min(series.prec, caps[j] + 1)):
            e = [0] * len(caps)
            e[j] = k
            terms[tuple(e)] = series[k]
        if series.prec <= caps[j]:
            raise ValueError(f"series precision O(w^{series.prec}) below cap {caps[j]}")
        return cls(caps, terms)

    def __getitem__(self, e):
        return self.terms.get(tuple(e), Fraction(0))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(self.caps, out)

    def scale(self, c) -> "MultiPoly":
        return MultiPoly(self.caps, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        if other.caps != self.caps:
            raise ValueError("degree caps differ")
        out: dict = {}
        caps = self.caps
        for ea, ca in sorted(self.terms.items()):
            for eb, cb in sorted(other.terms.items()):
                e = tuple(x + y for x, y in zip(ea, eb))
                if any(k > cap for k, cap in zip(e, caps)):
                    continue
                t = ca * cb
                out[e] = out[e] + t if e in out else t
        return MultiPoly(caps, out)

    def __pow__(self, k: int) -> "MultiPoly":
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        if result is None:
            return MultiPoly.constant(self.caps, Fraction(1))
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.caps != other.caps:
            return False
        keys = set(self.terms) | set(other.terms)
        for e in keys:
            d = self[e] - other[e]
            if not _czero(d):
                return False
        return True

    def __repr__(self) -> str:
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"w{j + 1}^{k}" for j, k in enumerate(e) if k)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"


def compose_linear(S: WSeries, m: Sequence[int], caps: Sequence[int]) -> MultiPoly:
    """``S(m_1 w_1 + ... + m_t w_t)`` truncated to ``caps``.

    ``S`` must be a power series (no pole) known at least to total degree
    ``sum(caps)``.
    """
    caps = tuple(caps)
    if S.val < 0:
        raise PoleInComposition("cannot compose a series with a pole at w = 0")
    top = sum(caps)
    if S.prec <= top and any(m):
        raise ValueError(f"series known only to O(w^{S.prec}); need degree {top}")
    lin = MultiPoly.linear(caps, m)
    power = MultiPoly.constant(caps, Fraction(1))
    out = MultiPoly(caps)
    for k in range(0, top + 1):
        if k > 0:
            power = power * lin
            if not power.terms:
                break
        if k < S.val:
            continue
        if k >= S.prec:
            break
        c = S[k]
        if _czero(c):
            continue
        out = out + MultiPoly(caps, {e: c * v for e, v in power.terms.items()})
    return out


def all_exponents(caps: Sequence[int]):
    return product(*(range(c + 1) for c in caps))
