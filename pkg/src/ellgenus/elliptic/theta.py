"""Theta products on the Tate curve.

Every theta function used here is a product of factors ``1 - m e^(sigma w)``
where ``m = e^(2 pi i x) q^a`` is a monomial.  Infinite products come in
arithmetic *families* ``a = a0, a0 + step, a0 + 2 step, ...``; a context
decides how many members are needed.  The same factor list serves point
evaluation (``w = 0``) and Laurent expansion in ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..algebra.wseries import WSeries
from .context import ExactContext, NumericContext
from .points import DivisionPoint, NomeSpec


class PoleError(ZeroDivisionError):
    """A theta factor in a denominator vanishes identically."""


@dataclass(frozen=True)
class Family:
    x: Fraction
    a0: Fraction
    step: Fraction | None
    sigma: int

    def members(self, bound) -> Iterable[Fraction]:
        if self.step is None:
            if self.a0 < bound:
                yield self.a0
            return
        a = self.a0
        while a < bound:
            yield a
            a += self.step

    def negatives(self) -> list[Fraction]:
        return list(self.members(0))


def _exact_zero(x: Fraction, a: Fraction) -> bool:
    return a == 0 and x.denominator == 1


def basic_families(P: DivisionPoint, e: Fraction, sigma: int = 1) -> list[Family]:
    """``Theta(u) = (1 - u^-1) prod_k (1 - Q^k u)(1 - Q^k u^-1)`` at ``u = P e^(sigma w)``."""
    e = Fraction(e)
    return [
        Family(-P.x, -e * P.y, None, -sigma),
        Family(P.x, e * (1 + P.y), e, sigma),
        Family(-P.x, e * (1 - P.y), e, -sigma),
    ]


def n_a_families(P: DivisionPoint, n: int, a: int, e: Fraction = Fraction(1)) -> list[Family]:
    """``theta^n_a(u)`` at ``u = P e^w``; the factors involve ``u^n``."""
    if n < 1:
        raise ValueError("n must be positive")
    e = Fraction(e)
    l_pos = (a - 1) % n + 1  # smallest l >= 1 with l = a mod n
    l_neg = -((-a) % n)  # largest l <= 0 with l = a mod n
    return [
        Family(n * P.x, l_pos + n * e * P.y, Fraction(n), n),
        Family(-n * P.x, -l_neg - n * e * P.y, Fraction(n), -n),
    ]


def collect_factors(families: Sequence[Family], ctx) -> list[tuple[Fraction, Fraction, int]]:
    """Factors needed by ``ctx``, sorted so that negative exponents come first."""
    head = sum((a for fam in families for a in fam.negatives()), Fraction(0))
    bound = ctx.bound(head)
    out = []
    for fam in families:
        for a in fam.members(bound):
            out.append((fam.x, a, fam.sigma))
    out.sort(key=lambda t: t[1])
    return out


def product_value(families: Sequence[Family], ctx):
    """Value of the product at ``w = 0``; exactly zero if a factor vanishes."""
    factors = collect_factors(families, ctx)
    if isinstance(ctx, ExactContext):
        val = ctx.one()
        for x, a, _ in factors:
            if _exact_zero(x, a):
                return ctx.zero()
            val = val - val.mul_monomial(ctx.field.exp2pi(x), a)
            if a >= 0:
                val = val.truncate(ctx.prec)
        return val.truncate(ctx.prec)
    val = ctx.one()
    for x, a, _ in factors:
        if _exact_zero(x, a):
            return ctx.zero()
        val = val * (1 - ctx.mono(x, a))
    return val


def count_vanishing(families: Sequence[Family]) -> int:
    """Number of factors that vanish at ``w = 0`` (each contributes one order in ``w``)."""
    return sum(1 for fam in families for a in fam.members(Fraction(1)) if _exact_zero(fam.x, a))


def product_wseries(families: Sequence[Family], ctx, wprec: int) -> WSeries:
    """Laurent expansion in ``w`` known to ``O(w^wprec)``."""
    ws = WSeries([ctx.one()], 0, wprec)
    for x, a, sigma in collect_factors(families, ctx):
        ws = ws.mul_one_minus_exp(ctx.mono(x, a), sigma)
        if a >= 0:
            ws = ctx.trunc(ws)
    return ctx.trunc(ws)


def default_context(points: Iterable[DivisionPoint], T) -> ExactContext:
    from .points import x_denominator_lcm

    return ExactContext(Fraction(T) + 1, x_denominator_lcm(points))


def theta_basic(u: DivisionPoint, nome: NomeSpec = NomeSpec(), T=None, ctx=None):
    """``Theta(u)``; with an order ``T`` the coefficients of ``q^a``, ``a <= T`` are exact."""
    if ctx is None:
        ctx = default_context([u], 5 if T is None else T)
    return product_value(basic_families(u, nome.e), ctx)


def theta_shifted(u: DivisionPoint, alpha: DivisionPoint, nome: NomeSpec = NomeSpec(), T=None, ctx=None):
    """``Theta_alpha(u) = Theta(alpha^-1 u)``."""
    return theta_basic(u - alpha, nome, T, ctx if ctx is not None else default_context([u, alpha], 5 if T is None else T))


def theta_n_a(u: DivisionPoint, n: int, a: int, T=None, ctx=None, nome: NomeSpec = NomeSpec()):
    if ctx is None:
        ctx = default_context([u * n], 5 if T is None else T)
    return product_value(n_a_families(u, n, a, nome.e), ctx)


__all__ = [
    "Family",
    "PoleError",
    "basic_families",
    "collect_factors",
    "count_vanishing",
    "n_a_families",
    "product_value",
    "product_wseries",
    "theta_basic",
    "theta_n_a",
    "theta_shifted",
    "NumericContext",
]
