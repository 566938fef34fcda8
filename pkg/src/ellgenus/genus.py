"""Elliptic genera of complete intersections in products of projective spaces.

All routes work in the coordinate ``w = 2 pi i z`` with the Jacobi function
normalized so that ``w f(w) = 1 + O(w)``.  The genus produced this way is
``(2 pi i)^(-dim)`` times the genus in ``z``; the routes agree with each
other and with the characteristic series ``(w/2)/tanh(w/2)`` at ``q = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .algebra.cyclotomic import CycElt, scalar_inverse
from .algebra.multipoly import MultiPoly, compose_linear
from .algebra.qseries import QSeries
from .elliptic.context import ExactContext, NumericContext
from .elliptic.jacobi import (
    JacobiFunction,
    PoleError,
    build_genus_function,
    character_of,
    modulus,
    with_retry,
)
from .elliptic.points import ORIGIN, DivisionPoint, x_denominator_lcm
from .intlat import (
    DegreeMatrix,
    SingularMatrix,
    coset_reps,
    cy_condition,
    full_h_reps,
    snf,
    solve_division,
)


class ConditionViolated(ValueError):
    """The column-sum congruence needed for the division-point formula fails."""


class ParityMismatch(ValueError):
    pass


class ResidueSumNonzero(ArithmeticError):
    pass


class IdentityFailed(ArithmeticError):
    pass


class NonRationalGenus(ArithmeticError):
    pass


@dataclass(frozen=True)
class CIModel:
    """``X(M)`` in ``CP^(N_1 - 1) x ... x CP^(N_t - 1)`` cut out by the rows of ``M``."""

    dims: tuple
    rows: tuple = ()

    def __init__(self, dims: Sequence[int], matrix=()):
        dims = tuple(int(d) for d in dims)
        if not dims or any(d <= 0 for d in dims):
            raise ValueError("dimensions must be positive integers")
        if isinstance(matrix, DegreeMatrix):
            rows = matrix.rows
        else:
            rows = tuple(tuple(int(v) for v in r) for r in matrix)
        for i, r in enumerate(rows):
            if len(r) != len(dims):
                raise ValueError(f"row {i} has {len(r)} entries, expected {len(dims)}")
            if not any(r):
                raise ValueError(f"row {i} is zero")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "rows", rows)

    @property
    def t(self) -> int:
        return len(self.dims)

    @property
    def l(self) -> int:
        return len(self.rows)

    @property
    def matrix(self) -> DegreeMatrix:
        return DegreeMatrix(self.rows)

    @property
    def dimension(self) -> int:
        return sum(self.dims) - self.t - self.l

    @classmethod
    def hypersurface(cls, N: int, m: int) -> "CIModel":
        return cls((N,), ((m,),))


@dataclass(frozen=True)
class GenusSpec:
    level: int = 2
    character: int = 1
    order: int = 3
    wdepth: int = 8
    backend: str = "exact"
    tau: complex = 1j
    tol: float = 1e-8

    def __post_init__(self):
        if self.level < 2:
            raise ValueError("level must be at least 2")
        if self.character % self.level == 0:
            raise ValueError("character index must be non-zero mod the level")
        if self.backend not in ("exact", "numeric"):
            raise ValueError(f"unknown backend {self.backend!r}")

    @property
    def exact(self) -> bool:
        return self.backend == "exact"

    def context(self, D: int = 1):
        if self.exact:
            return ExactContext(Fraction(self.order) + 1, D)
        return NumericContext(self.tau, self.tol)

    def function(self, D: int = 1) -> JacobiFunction:
        n = self.level
        D = D * n // gcd(D, n)
        return build_genus_function(n, self.context(D), self.character)

    def zero_rep(self) -> DivisionPoint:
        return DivisionPoint(Fraction(self.character, self.level), 0)

    def generator(self) -> DivisionPoint:
        return DivisionPoint(0, Fraction(1, self.level))


def _finish(value, spec: GenusSpec, check_rational: bool):
    if spec.exact and check_rational and spec.level == 2:
        if not value.is_rational():
            raise NonRationalGenus(f"genus has irrational coefficients: {value}")
    if spec.exact and value.is_rational():
        value = value.map_coefficients(lambda c: c.rational() if isinstance(c, CycElt) else c)
    return value


def _rebind(f: JacobiFunction, ctx) -> JacobiFunction:
    return f if f.ctx is ctx else f.with_context(ctx)


# -- residue route --------------------------------------------------------------------


def residue_genus(ci: CIModel, spec: GenusSpec = GenusSpec()):
    """Coefficient of ``w_1^-1 ... w_t^-1`` in ``prod f(w_j)^N_j / prod f(mu_i w)``."""
    caps = tuple(N - 1 for N in ci.dims)
    top = sum(caps)
    f0 = spec.function()

    def compute(ctx):
        f = _rebind(f0, ctx)
        F = f.expand_at(ORIGIN, ctx, top + 1)
        S = F.shift(1)
        P = MultiPoly.constant(caps, ctx.one())
        for j, N in enumerate(ci.dims):
            P = P * MultiPoly.univariate(caps, j, S**N)
        if ci.rows:
            U = S.inverse()
            for row in ci.rows:
                P = P * MultiPoly.linear(caps, row)
                P = P * compose_linear(U, row, caps)
        out = P.terms.get(caps)
        if out is None:
            out = QSeries.zero(ctx.prec) if isinstance(ctx, ExactContext) else 0j
        return out

    value = with_retry(f0.ctx, compute)
    if spec.exact:
        return _finish(value, spec, True)
    return complex(value)


# -- division-point routes ---------------------------------------------------------------


def _mu_character_index(col_sums: Sequence[int], h: Sequence[DivisionPoint], n: int) -> int:
    """``[mu]h`` lies in ``G``; return ``j`` with ``[mu]h = j (0, 1/n)`` mod the lattice."""
    total = DivisionPoint(0, 0)
    for c, p in zip(col_sums, h):
        total = total + p * c
    if total.x.denominator != 1 or (total.y * n).denominator != 1:
        raise ArithmeticError(f"[mu]h = {total} is not in G")
    return int(total.y * n) % n


@dataclass
class DivisionData:
    """Structural data shared by the division-point sums."""

    M: DegreeMatrix
    det: int
    s: tuple
    reps: list
    col_sums: list
    snf_diag: list


def division_data(ci: CIModel, n: int, r: DivisionPoint, full: bool = False) -> DivisionData:
    if ci.l != ci.t:
        raise SingularMatrix("division-point formula needs a square degree matrix")
    M = ci.matrix
    d = M.det()
    if d == 0:
        raise SingularMatrix("degree matrix is singular")
    s = solve_division(M, [r] * ci.t)
    reps = full_h_reps(M, n) if full else coset_reps(M, n)
    return DivisionData(M, d, s, reps, M.column_sums(), snf(M).diagonal)


def _on_pole(P: DivisionPoint, f: JacobiFunction) -> bool:
    return any(P.equivalent(g) for g in f.group_reps)


def _power(v, k: int, one):
    out = one
    for _ in range(k):
        out = out * v
    return out


def _sum_over_reps(f0: JacobiFunction, spec: GenusSpec, data: DivisionData, dims, sign_t: int, info=None):
    """``sign / (det M c(r)^t) * sum_h chi(-[mu]h) prod f(s_j + h_j)^N_j``.

    Terms where some ``s_j + h_j`` is a pole of ``f`` are not transversal
    intersections and the Jacobian formula does not apply; they are left out
    and listed in ``info["skipped"]``.
    """
    n = spec.level
    r = spec.zero_rep()
    points = [(sj + hj).reduced() for h in data.reps for sj, hj in zip(data.s, h)]
    D = f0.field_for(points + [r, spec.generator()])
    D = D * f0.ctx.field.D // gcd(D, f0.ctx.field.D) if isinstance(f0.ctx, ExactContext) else D
    base = spec.context(D)
    f = f0.with_context(base)
    t = len(dims)
    skipped: list = []

    def compute(ctx):
        g = _rebind(f, ctx)
        chi = character_of(g, spec.generator())
        chi_pows = [ctx.one()]
        inv = scalar_inverse(chi) if isinstance(chi, (Fraction, CycElt)) else 1 / chi
        for _ in range(1, n):
            chi_pows.append(chi_pows[-1] * inv)
        c = modulus(g, r)
        cache = {}
        total = None
        skipped.clear()
        for h in data.reps:
            pts = [(sj + hj).reduced() for sj, hj in zip(data.s, h)]
            if any(_on_pole(P, g) for P in pts):
                skipped.append(tuple(h))
                continue
            term = chi_pows[_mu_character_index(data.col_sums, h, n)]
            for P, N in zip(pts, dims):
                if P not in cache:
                    cache[P] = g.value_at(P, ctx)
                term = term * _power(cache[P], N, ctx.one())
            total = term if total is None else total + term
        if total is None:
            total = ctx.zero()
        pref = _power(c, t, ctx.one()) * data.det
        out = total / pref
        return out if sign_t % 2 == 0 else -out

    value = with_retry(base, compute)
    if info is not None:
        info["skipped"] = list(skipped)
        info["terms"] = len(data.reps)
        info["field"] = D
    return value


def division_sum_genus(ci: CIModel, spec: GenusSpec = GenusSpec(), info: dict | None = None):
    """Sum over coset representatives of ``H / G^t``."""
    n = spec.level
    if ci.l != ci.t:
        raise SingularMatrix("division-point formula needs a square degree matrix")
    if not cy_condition(ci.matrix, ci.dims, n):
        raise ConditionViolated(
            f"column sums {ci.matrix.column_sums()} not congruent to dims {list(ci.dims)} mod {n}"
        )
    data = division_data(ci, n, spec.zero_rep())
    value = _sum_over_reps(spec.function(), spec, data, ci.dims, ci.t + 1, info)
    return _finish(value, spec, True) if spec.exact else complex(value)


def hypersurface_level2(N: int, m: int, spec: GenusSpec = GenusSpec(), info: dict | None = None):
    """``1/(m c(1/2)) sum_{a,b<m} (-1)^a f(1/(2m) + b/m + a tau/m)^N``."""
    if spec.level != 2:
        raise ValueError("closed form is for level 2")
    if (N - m) % 2:
        raise ParityMismatch(f"N={N} and m={m} differ in parity")
    pts = [
        (DivisionPoint(Fraction(1, 2 * m) + Fraction(b, m), Fraction(a, 2 * m)), (-1) ** a)
        for a in range(m)
        for b in range(m)
    ]
    return _weighted_sum(spec, [(w, [(P, N)]) for P, w in pts], Fraction(1, m), 1, info)


def ci_example_level2(spec: GenusSpec = GenusSpec(), info: dict | None = None):
    """The 144-term sum for ``dims (4,3,2)``, ``M = [[3,0,0],[1,2,0],[0,1,2]]``."""
    if spec.level != 2:
        raise ValueError("worked example is for level 2")
    terms = []
    for a in range(12):
        for b in range(12):
            P1 = DivisionPoint(Fraction(1, 6) + Fraction(a, 3), Fraction(b, 6))
            P2 = DivisionPoint(Fraction(1, 6) - Fraction(a, 6), Fraction(-b, 12))
            P3 = DivisionPoint(Fraction(1, 6) + Fraction(a, 12), Fraction(b, 24))
            terms.append(((-1) ** b, [(P1, 4), (P2, 3), (P3, 2)]))
    return _weighted_sum(spec, terms, Fraction(1, 12), 3, info)


def _weighted_sum(spec: GenusSpec, terms, pref: Fraction, cpow: int, info=None):
    r = spec.zero_rep()
    f0 = spec.function()
    D = f0.field_for([P for _, fs in terms for P, _ in fs] + [r])
    f = f0.with_context(spec.context(D))
    skipped: list = []

    def compute(ctx):
        g = _rebind(f, ctx)
        c = modulus(g, r)
        cache = {}
        total = None
        skipped.clear()
        for k, (w, fs) in enumerate(terms):
            if any(_on_pole(P.reduced(), g) for P, _ in fs):
                skipped.append(k)
                continue
            term = ctx.one() * w
            for P, N in fs:
                P = P.reduced()
                if P not in cache:
                    cache[P] = g.value_at(P, ctx)
                term = term * _power(cache[P], N, ctx.one())
            total = term if total is None else total + term
        if total is None:
            total = ctx.zero()
        return total * pref / _power(c, cpow, ctx.one())

    value = with_retry(f.ctx, compute)
    if info is not None:
        info["skipped"] = list(skipped)
        info["terms"] = len(terms)
        info["field"] = D
    return _finish(value, spec, True) if spec.exact else complex(value)


# -- internal identity checks -----------------------------------------------------------


@dataclass
class ResidueReport:
    total: object
    origin_part: object
    second_kind: object
    count: int
    passed: bool
    details: dict = field(default_factory=dict)


def _is_zero(v, spec: GenusSpec, scale: float = 1.0) -> bool:
    if isinstance(v, QSeries):
        return v.is_zero()
    return abs(v) <= spec.tol * max(1.0, scale)


def verify_residue_sum(ci: CIModel, spec: GenusSpec = GenusSpec(), raise_on_fail: bool = True) -> ResidueReport:
    """Global residue theorem: ``n^t Res_O + sum over H of the second-kind residues = 0``."""
    n = spec.level
    if not cy_condition(ci.matrix, ci.dims, n):
        raise ConditionViolated("congruence condition fails")
    origin = residue_genus(ci, spec)
    data = division_data(ci, n, spec.zero_rep(), full=True)
    info: dict = {}
    second = _sum_over_reps(spec.function(), spec, data, ci.dims, ci.t, info)
    if spec.exact:
        second = second if isinstance(second, QSeries) else QSeries.constant(second)
        total = origin.scale(Fraction(n**ci.t)) + second
        scale = 1.0
    else:
        total = origin * n**ci.t + complex(second)
        scale = abs(origin) * n**ci.t
    ok = _is_zero(total, spec, scale)
    rep = ResidueReport(total, origin, second, len(data.reps), ok, {"skipped": len(info["skipped"])})
    if raise_on_fail and not ok:
        raise ResidueSumNonzero(f"residue sum is {total}")
    return rep


@dataclass
class PartialFractionReport:
    lhs: object
    rhs: object
    residues: dict
    symmetric: bool
    passed: bool
    half_range_holds: bool = False


def omega(m: int, a: int, b: int) -> DivisionPoint:
    """``1/(2m) + b/m + a tau/m`` in period coordinates (``T = 2 tau``)."""
    return DivisionPoint(Fraction(1, 2 * m) + Fraction(b, m), Fraction(a, 2 * m))


def verify_partial_fraction(
    m: int, spec: GenusSpec = GenusSpec(), wprec: int = 6, base: DivisionPoint | None = None,
    raise_on_fail: bool = True,
) -> PartialFractionReport:
    """Check ``1/f(mz) = -1/(2m c(1/2)) sum_{a<2m, b<m} (-1)^a f'(z)/(f(z) - f(omega_ab))``
    as series around a base point, the residues of ``1/f(mz)`` and the pairing
    ``f(omega_ab) = f(omega_{m-a,-b-1})``.

    The same sum restricted to ``a < m`` with ``1/(m c(1/2))`` is evaluated as
    well; whether it matches is reported in ``half_range_holds``.  It does not
    in general, because ``f(omega + tau) = -f(omega)`` makes the two halves of
    the ``a`` range different.
    """
    if spec.level != 2:
        raise ValueError("partial-fraction identity is for level 2")
    if m % 2:
        raise ValueError("m must be even")
    P0 = base if base is not None else DivisionPoint(0, Fraction(1, 5))
    r = spec.zero_rep()
    oms = {(a, b): omega(m, a, b) for a in range(2 * m) for b in range(m)}
    f0 = spec.function()
    pts = list(oms.values()) + [P * m for P in oms.values()] + [P0, P0 * m, r]
    f = f0.with_context(spec.context(f0.field_for(pts)))

    def compute(ctx):
        g = _rebind(f, ctx)
        c = modulus(g, r)
        lhs = g.expand_at(P0 * m, ctx, wprec + 2).scale_variable(m).inverse().truncate(wprec)
        F = g.expand_at(P0, ctx, wprec + 2)
        Fp = F.derivative()
        vals = {k: g.value_at(P, ctx) for k, P in oms.items()}
        def partial_sum(arange, denom):
            acc = None
            for a in range(arange):
                for b in range(m):
                    term = Fp / (F - vals[(a, b)])
                    term = term if a % 2 == 0 else -term
                    acc = term if acc is None else acc + term
            k = -(c.scale(Fraction(denom)).inverse()) if isinstance(c, QSeries) else -1 / (c * denom)
            return acc.scale(k).truncate(wprec)

        rhs = partial_sum(2 * m, 2 * m)
        printed = partial_sum(m, m)
        residues = {}
        for (a, b), P in oms.items():
            # simple zero of f at m*omega: the residue is 1/(m f'(m omega))
            ser = g.expand_at(P * m, ctx, 2)
            d1 = ser[1] * m
            got = d1.inverse() if isinstance(d1, QSeries) else 1 / d1
            want = (c.scale(Fraction(m)).inverse() if isinstance(c, QSeries) else 1 / (c * m))
            want = -want if a % 2 == 0 else want
            residues[(a, b)] = (got, want)
        sym = all(
            _agree(vals[(a, b)], vals[((m - a) % (2 * m), (-b - 1) % m)], spec)
            for (a, b) in oms
        )
        return lhs, (rhs, printed), residues, sym

    lhs, (rhs, printed), residues, sym = _retry_tuple(f.ctx, compute)
    ok_series = _series_agree(lhs, rhs, spec)
    printed_ok = _series_agree(lhs, printed, spec)
    ok_res = all(_agree(g_, w_, spec) for g_, w_ in residues.values())
    ok = ok_series and ok_res and sym
    rep = PartialFractionReport(lhs, rhs, residues, sym, ok, printed_ok)
    if raise_on_fail and not ok:
        raise IdentityFailed(
            f"partial fractions: series={ok_series} residues={ok_res} symmetry={sym}"
        )
    return rep


def _retry_tuple(ctx, compute):
    """Retry wrapper for results mixing series, dicts and flags."""
    from .elliptic.jacobi import min_prec, truncate_to, MAX_RETRIES, TruncationInsufficient

    if not isinstance(ctx, ExactContext):
        return compute(ctx)
    target = ctx.prec
    work = target
    for _ in range(MAX_RETRIES):
        lhs, rhs, residues, sym = compute(ctx.with_prec(work))
        flat = [lhs, *rhs] + [v for pair in residues.values() for v in pair]
        p = min_prec(flat)
        if p is None or p >= target:
            residues = {k: truncate_to(v, target) for k, v in residues.items()}
            return truncate_to(lhs, target), tuple(truncate_to(x, target) for x in rhs), residues, sym
        work = work + (target - p) + 1
    raise TruncationInsufficient("partial-fraction check could not reach the requested order")


def _agree(a, b, spec: GenusSpec) -> bool:
    if isinstance(a, QSeries) or isinstance(b, QSeries):
        a = a if isinstance(a, QSeries) else QSeries.constant(a)
        b = b if isinstance(b, QSeries) else QSeries.constant(b)
        return a.agrees_with(b)
    return abs(complex(a) - complex(b)) <= spec.tol * max(1.0, abs(complex(a)))


def _series_agree(A, B, spec: GenusSpec) -> bool:
    if spec.exact:
        return A.agrees_with(B)
    lo = min(A.val, B.val)
    hi = min(A.prec, B.prec)
    for k in range(lo, hi):
        a = A._get(k) or 0
        b = B._get(k) or 0
        if abs(a - b) > spec.tol * max(1.0, abs(a)):
            return False
    return True


__all__ = [
    "CIModel",
    "ConditionViolated",
    "GenusSpec",
    "IdentityFailed",
    "NonRationalGenus",
    "ParityMismatch",
    "ResidueSumNonzero",
    "ci_example_level2",
    "division_data",
    "division_sum_genus",
    "hypersurface_level2",
    "omega",
    "residue_genus",
    "verify_partial_fraction",
    "verify_residue_sum",
]
