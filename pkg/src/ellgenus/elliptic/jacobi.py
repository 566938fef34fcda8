"""Jacobi functions built as theta quotients, plus their invariants."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from ..algebra.cyclotomic import CycElt
from ..algebra.qseries import QSeries
from ..algebra.wseries import WSeries
from .context import ExactContext, NumericContext
from .points import ORIGIN, DivisionPoint, NomeSpec, lift_sum, x_denominator_lcm
from .theta import (
    Family,
    PoleError,
    basic_families,
    count_vanishing,
    n_a_families,
    product_value,
    product_wseries,
)


class TrivialCoset(ValueError):
    pass


class NoPoleAtOrigin(ValueError):
    pass


class ModulusNotConstant(ArithmeticError):
    pass


class CharacterNotConstant(ArithmeticError):
    pass


class ODEMismatch(ArithmeticError):
    pass


class TruncationInsufficient(ArithmeticError):
    """Working precision could not be raised enough to reach the requested order."""


@dataclass(frozen=True)
class ThetaSpec:
    """One theta factor: ``Theta_alpha`` in the function's nome, or ``theta^n_a`` in ``q``."""

    kind: str  # "basic" or "n_a"
    alpha: DivisionPoint = ORIGIN
    n: int = 1
    a: int = 0

    def families(self, P: DivisionPoint, e: Fraction) -> list[Family]:
        if self.kind == "basic":
            return basic_families(P - self.alpha, e)
        return n_a_families(P, self.n, self.a)

    def x_denominators(self, P: DivisionPoint) -> int:
        if self.kind == "basic":
            return (P - self.alpha).x.denominator
        return (P * self.n).x.denominator


# -- precision handling --------------------------------------------------------------


def min_prec(v):
    if isinstance(v, QSeries):
        return v.prec
    if isinstance(v, WSeries):
        ps = [c.prec for c in v.coeffs if isinstance(c, QSeries) and c.prec is not None]
        return min(ps) if ps else None
    if isinstance(v, (tuple, list)):
        ps = [p for p in (min_prec(x) for x in v) if p is not None]
        return min(ps) if ps else None
    return None


def truncate_to(v, prec):
    if isinstance(v, QSeries):
        return v.truncate(prec)
    if isinstance(v, WSeries):
        return v.map(lambda c: c.truncate(prec) if isinstance(c, QSeries) else c)
    if isinstance(v, tuple):
        return tuple(truncate_to(x, prec) for x in v)
    if isinstance(v, list):
        return [truncate_to(x, prec) for x in v]
    return v


MAX_RETRIES = 8


def with_retry(ctx, compute: Callable, retries: int = MAX_RETRIES):
    """Run ``compute(working_ctx)`` raising the working precision until the result
    is known to ``ctx.prec``; numeric contexts run once."""
    if not isinstance(ctx, ExactContext):
        return compute(ctx)
    target = ctx.prec
    work = target
    last = None
    for _ in range(retries):
        res = compute(ctx.with_prec(work))
        p = min_prec(res)
        if p is None or p >= target:
            return truncate_to(res, target)
        last = p
        work = work + (target - p) + 1
    raise TruncationInsufficient(
        f"result known only to O(q^{last}) after {retries} attempts; requested O(q^{target})"
    )


# -- the function object -------------------------------------------------------------


@dataclass
class JacobiFunction:
    level: int
    nome: NomeSpec
    group_reps: tuple
    zero_reps: tuple
    num: tuple
    den: tuple
    ctx: object
    u_power: int = 0
    normalized: bool = False
    periodic: bool = True
    label: str = ""
    _scale_cache: dict = field(default_factory=dict, repr=False, compare=False)
    characters: dict = field(default_factory=dict, repr=False, compare=False)
    moduli: dict = field(default_factory=dict, repr=False, compare=False)

    # -- bookkeeping -------------------------------------------------------------
    def with_context(self, ctx) -> "JacobiFunction":
        return replace(self, ctx=ctx, _scale_cache={}, characters={}, moduli={})

    def structural_points(self) -> list[DivisionPoint]:
        pts = list(self.group_reps) + list(self.zero_reps)
        pts += [s.alpha for s in self.num + self.den if s.kind == "basic"]
        return pts

    def structural_x_denominator(self) -> int:
        D = x_denominator_lcm(self.structural_points())
        return D * self.level // gcd(D, self.level)

    def field_for(self, points: Sequence[DivisionPoint]) -> int:
        D = self.structural_x_denominator()
        for P in points:
            for s in self.num + self.den:
                d = s.x_denominators(P)
                D = D * d // gcd(D, d)
            d = (P * self.u_power).x.denominator if self.u_power else 1
            D = D * d // gcd(D, d)
        return D

    def structural_denominators(self) -> set[int]:
        out = {self.level, self.nome.e.numerator, self.nome.e.denominator}
        for P in self.structural_points():
            out |= {P.x.denominator, P.y.denominator}
        return out

    # -- raw evaluation at a fixed working context ---------------------------------
    def _families(self, specs, P):
        return [fam for s in specs for fam in s.families(P, self.nome.e)]

    def _raw_value(self, P: DivisionPoint, ctx):
        den = ctx.one()
        for s in self.den:
            v = product_value(s.families(P, self.nome.e), ctx)
            if (v == 0) if isinstance(ctx, NumericContext) else (v.is_zero() and v.prec is None):
                raise PoleError(f"{P} is a pole")
            den = den * v
        num = ctx.one()
        for s in self.num:
            num = num * product_value(s.families(P, self.nome.e), ctx)
        val = num / den
        if self.u_power:
            val = val * ctx.mono(P.x * self.u_power, self.nome.e * P.y * self.u_power)
        return val

    def _raw_expand(self, P: DivisionPoint, ctx, wprec: int) -> WSeries:
        den_fams = self._families(self.den, P)
        num_fams = self._families(self.num, P)
        dv = count_vanishing(den_fams)
        p0 = wprec + 2 * dv + 1
        num = product_wseries(num_fams, ctx, p0)
        den = product_wseries(den_fams, ctx, p0)
        f = num / den
        if self.u_power:
            k = self.u_power
            m = ctx.mono(P.x * k, self.nome.e * P.y * k)
            from ..algebra.wseries import exp_series

            f = f.mul(exp_series(k, p0).map(lambda c: m * c))
        return f.truncate(wprec)

    def _scale(self, ctx):
        key = ctx.key()
        if key not in self._scale_cache:
            A = self._raw_expand(ORIGIN, ctx, 0)
            if A.val != -1:
                raise NoPoleAtOrigin(f"expansion at the origin starts at w^{A.val}")
            a = A[-1]
            self._scale_cache[key] = a.inverse() if isinstance(a, QSeries) else 1 / a
        return self._scale_cache[key]

    def value_at(self, P: DivisionPoint, ctx):
        v = self._raw_value(P, ctx)
        return v * self._scale(ctx) if self.normalized else v

    def expand_at(self, P: DivisionPoint, ctx, wprec: int) -> WSeries:
        f = self._raw_expand(P, ctx, wprec)
        if self.normalized:
            s = self._scale(ctx)
            f = f.map(lambda c: c * s)
        return f

    # -- public evaluation ---------------------------------------------------------------
    def value(self, P: DivisionPoint):
        return with_retry(self.ctx, lambda c: self.value_at(P, c))

    def expand(self, P: DivisionPoint = ORIGIN, wprec: int = 6) -> WSeries:
        return with_retry(self.ctx, lambda c: self.expand_at(P, c, wprec))

    def normalization(self):
        """The constant ``A`` with ``f_normalized = f_raw / A``."""
        return with_retry(self.ctx, lambda c: self._raw_expand(ORIGIN, c, 0)[-1])

    def generic_points(self, count: int = 2) -> list[DivisionPoint]:
        bad = self.structural_denominators()
        out = []
        p = 5
        while len(out) < count:
            if all(d % p for d in bad) and _is_prime(p):
                out.append(DivisionPoint(0, Fraction(1, p)))
            p += 1
        return out


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % d for d in range(2, int(p**0.5) + 1))


def ensure_field(f: JacobiFunction, points: Sequence[DivisionPoint]) -> JacobiFunction:
    """Rebind ``f`` to a field containing every root of unity needed at ``points``."""
    if not isinstance(f.ctx, ExactContext):
        return f
    D0 = f.ctx.field.D
    D = f.field_for(points)
    D = D * D0 // gcd(D, D0)
    if D == D0:
        return f
    return f.with_context(ExactContext(f.ctx.prec, D))


# -- builders ---------------------------------------------------------------------------


def _in_group(p: DivisionPoint, group: Sequence[DivisionPoint]) -> bool:
    return any(p.equivalent(g) for g in group)


def build_group_quotient(
    nome: NomeSpec, group_reps: Sequence[DivisionPoint], gamma_rep: DivisionPoint, ctx, label: str = ""
) -> JacobiFunction:
    """``f(u) = prod Theta_{r_i}(u) / Theta_{g_i}(u)`` with the zero reps adjusted so
    that their product matches that of the group reps."""
    group = [DivisionPoint(g.x, g.y) for g in group_reps]
    n = len(group)
    if n == 0:
        raise ValueError("group must be non-empty")
    idx = [i for i, g in enumerate(group) if g.is_lattice_point()]
    if not idx:
        raise ValueError("group reps must contain the identity")
    group.insert(0, group.pop(idx[0]))
    gamma = DivisionPoint(gamma_rep.x, gamma_rep.y).reduced()
    if _in_group(gamma, group):
        raise TrivialCoset(f"{gamma_rep} lies in the group")
    r = gamma
    torsion = (r * n).is_lattice_point()
    zeros = [r + g for g in group]
    if torsion:
        # r^n = e^(2 pi i n x) Q^(n y) = Q^s; move r_1 down by Q^-s
        s = (r * n).y
        zeros[0] = zeros[0] - DivisionPoint(0, s)
    # sum condition in covering coordinates
    diff = lift_sum(zeros) - lift_sum(group)
    periodic = torsion and diff.y == 0 and diff.x.denominator == 1
    num = tuple(ThetaSpec("basic", z) for z in zeros)
    den = tuple(ThetaSpec("basic", g) for g in group)
    return JacobiFunction(
        level=n,
        nome=nome,
        group_reps=tuple(group),
        zero_reps=tuple(zeros),
        num=num,
        den=den,
        ctx=ctx,
        periodic=periodic,
        label=label or "theta-quotient",
    )


# name used by the operation contract
build_theorem6 = build_group_quotient


def build_special(n: int, ctx) -> JacobiFunction:
    """``f(u) = theta^n_{-1}(u) / (u theta^n_0(u))`` on ``k^x / q^Z``; poles at the
    ``n``-th roots of unity, zeros at the ``n``-th roots of ``q``."""
    if n < 1:
        raise ValueError("n must be positive")
    group = tuple(DivisionPoint(Fraction(j, n), 0) for j in range(n))
    zeros = (DivisionPoint(0, Fraction(1, n) - 1),) + tuple(
        DivisionPoint(Fraction(j, n), Fraction(1, n)) for j in range(1, n)
    )
    return JacobiFunction(
        level=n,
        nome=NomeSpec(1),
        group_reps=group,
        zero_reps=zeros,
        num=(ThetaSpec("n_a", n=n, a=-1),),
        den=(ThetaSpec("n_a", n=n, a=0),),
        ctx=ctx,
        u_power=-1,
        label=f"special level {n}",
    )


def build_genus_function(n: int, ctx, k: int = 1, normalized: bool = True) -> JacobiFunction:
    """Level-``n`` genus function on ``C/(Z + Z n tau)``: poles at the multiples of
    ``tau``, zeros on the coset of ``k/n``."""
    if n < 2:
        raise ValueError("level must be at least 2")
    if gcd(k, n) != 1 and k % n == 0:
        raise TrivialCoset("character index must be non-zero mod n")
    group = [DivisionPoint(0, Fraction(j, n)) for j in range(n)]
    f = build_group_quotient(NomeSpec(n), group, DivisionPoint(Fraction(k, n), 0), ctx, label=f"level {n}")
    f.normalized = normalized
    return f


def build_level2(ctx) -> JacobiFunction:
    return build_genus_function(2, ctx)


def normalize(f: JacobiFunction) -> JacobiFunction:
    g = replace(f, normalized=True, _scale_cache=dict(f._scale_cache), characters={}, moduli={})
    with_retry(g.ctx, lambda c: g._scale(c))
    return g


def w_expansion(f: JacobiFunction, wprec: int = 8, point: DivisionPoint = ORIGIN) -> WSeries:
    return f.expand(point, wprec)


# -- invariants computed by direct evaluation ------------------------------------------


def _agree(ctx, a, b) -> bool:
    if isinstance(ctx, ExactContext):
        return a.agrees_with(b)
    return ctx.agree(a, b)


def modulus(f: JacobiFunction, r: DivisionPoint, points: Sequence[DivisionPoint] | None = None):
    """Constant value of ``f(u) f(r - u)``."""
    key = (r.reduced(),)
    if key in f.moduli:
        return f.moduli[key]
    pts = list(points) if points is not None else f.generic_points(2)
    g = ensure_field(f, pts + [r - p for p in pts])

    def compute(c):
        return tuple(g.value_at(u, c) * g.value_at(r - u, c) for u in pts)

    vals = with_retry(g.ctx, compute)
    for v in vals[1:]:
        if not _agree(f.ctx, vals[0], v):
            raise ModulusNotConstant(f"f(u)f(r-u) varies with u for r={r}")
    f.moduli[key] = vals[0]
    return vals[0]


def _as_scalar(v):
    if isinstance(v, QSeries):
        bad = [e for e in v.exponents() if e != 0]
        if bad:
            raise CharacterNotConstant(f"ratio has q-dependence {v}")
        return v[0]
    return v


def character_of(f: JacobiFunction, g: DivisionPoint, points: Sequence[DivisionPoint] | None = None):
    """``chi(g) = f(u + g) / f(u)``, checked at two points."""
    key = g.reduced()
    if key in f.characters:
        return f.characters[key]
    pts = list(points) if points is not None else f.generic_points(2)
    h = ensure_field(f, pts + [p + g for p in pts])

    def compute(c):
        return tuple(h.value_at(u + g, c) / h.value_at(u, c) for u in pts)

    vals = with_retry(h.ctx, compute)
    for v in vals[1:]:
        if not _agree(f.ctx, vals[0], v):
            raise CharacterNotConstant(f"f(u+g)/f(u) varies with u for g={g}")
    chi = _as_scalar(vals[0])
    f.characters[key] = chi
    return chi


@dataclass(frozen=True)
class Level2Data:
    delta: object
    epsilon: object
    c_half: object


def ode_residual(f_ser: WSeries, delta, eps) -> WSeries:
    fp = f_ser.derivative()
    f2 = f_ser * f_ser
    return fp * fp - f2 * f2 + f2.scale(delta * 2) - eps


def level2_data(f: JacobiFunction, wprec: int = 8) -> Level2Data:
    """Solve ``(f')^2 = f^4 - 2 delta f^2 + eps`` for ``delta, eps`` and verify it."""
    F = f.expand(ORIGIN, wprec)
    if F.val != -1:
        raise NoPoleAtOrigin("level-2 function must have a simple pole at 0")
    fp = F.derivative()
    f2 = F * F
    R = fp * fp - f2 * f2
    delta = R[-2] * Fraction(-1, 2)
    eps = R[0] + f2[0] * delta * 2
    resid = ode_residual(F, delta, eps)
    for k in range(resid.val, resid.prec):
        c = resid._get(k)
        if c is None:
            continue
        if not (c.is_zero() if isinstance(c, QSeries) else f.ctx.is_zero(c)):
            raise ODEMismatch(f"ODE fails at w^{k}: {c}")
    r = f.zero_reps[0]
    c_half = modulus(f, r)
    return Level2Data(delta, eps, c_half)


__all__ = [
    "CharacterNotConstant",
    "JacobiFunction",
    "Level2Data",
    "ModulusNotConstant",
    "NoPoleAtOrigin",
    "ODEMismatch",
    "PoleError",
    "ThetaSpec",
    "TrivialCoset",
    "TruncationInsufficient",
    "build_genus_function",
    "build_level2",
    "build_special",
    "build_group_quotient",
    "build_theorem6",
    "character_of",
    "level2_data",
    "min_prec",
    "modulus",
    "normalize",
    "ode_residual",
    "w_expansion",
    "with_retry",
]
