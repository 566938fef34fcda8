"""Elliptic genus of Landau-Ginzburg orbifolds as a two-variable series.

``Ell(q, y)`` is a normalized double sum over the symmetry group of products
of ``Theta_1`` ratios.  Only ratios occur, so ``Theta_1(v)`` is used in the
reduced form

    (y_v^(1/2) - y_v^(-1/2)) prod_k (1 - q^k y_v)(1 - q^k / y_v),

with ``y_v = y^alpha e^(2 pi i x) q^b`` for ``v = alpha z + x + b tau``.

The exact backend writes each sector as a monomial times binomials
``1 - c y^b`` (factors with no ``q``) times a power series in ``q`` whose
coefficients are Laurent polynomials in fractional powers of ``y``.  Sectors
are grouped by their binomial denominators.
"""

from __future__ import annotations

import cmath
import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial, gcd
from typing import Iterable, Sequence

from .algebra.cyclotomic import CycElt, CyclotomicField, scalar_inverse
from .algebra.qseries import QSeries
from .algebra.wseries import WSeries, exp_series
from .elliptic.context import ExactContext
from .elliptic.theta import Family, count_vanishing, product_wseries


class InvalidModel(ValueError):
    pass


class UnbalancedRatio(ValueError):
    pass


class NonIntegralExponents(ArithmeticError):
    """The assembled series has ``y``-exponents off the expected lattice."""


class DenominatorVanishes(ZeroDivisionError):
    """A ``Theta_1`` denominator vanishes at the requested point."""


def _frac(v) -> Fraction:
    return Fraction(v) if not isinstance(v, str) else Fraction(v)


def _mod1(v: Fraction) -> Fraction:
    return v - (v.numerator // v.denominator)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# -- the model ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LGModel:
    """Charges ``q_i`` and the group as a list of rotation vectors ``R_i(g)`` mod 1."""

    charges: tuple
    elements: tuple

    def __init__(self, charges: Sequence, elements: Sequence[Sequence]):
        ch = tuple(_frac(c) for c in charges)
        if not ch:
            raise InvalidModel("at least one variable is required")
        for i, c in enumerate(ch):
            if not 0 < c < 1:
                raise InvalidModel(f"charge {i} = {c} is not in (0, 1)")
        els = []
        for k, g in enumerate(elements):
            g = tuple(_mod1(_frac(v)) for v in g)
            if len(g) != len(ch):
                raise InvalidModel(f"group element {k} has {len(g)} entries, expected {len(ch)}")
            els.append(g)
        if not els:
            raise InvalidModel("group must be non-empty")
        if len(set(els)) != len(els):
            raise InvalidModel("group elements repeat")
        zero = tuple(Fraction(0) for _ in ch)
        if zero not in els:
            raise InvalidModel("group must contain the identity")
        have = set(els)
        for a in els:
            for b in els:
                s = tuple(_mod1(x + y) for x, y in zip(a, b))
                if s not in have:
                    raise InvalidModel(f"group not closed: {a} + {b} = {s}")
        object.__setattr__(self, "charges", ch)
        object.__setattr__(self, "elements", tuple(els))

    @classmethod
    def cyclic(cls, charges: Sequence, generator: Sequence, order: int | None = None) -> "LGModel":
        """Group generated by one rotation vector; ``order`` defaults to the exact order."""
        gen = tuple(_frac(v) for v in generator)
        exact = 1
        for v in gen:
            exact = _lcm(exact, _mod1(v).denominator)
        if order is None:
            order = exact
        if order % exact:
            raise InvalidModel(f"generator has order {exact}, not dividing {order}")
        if order != exact:
            raise InvalidModel(f"generator has order {exact}, expected {order}")
        return cls(charges, [tuple(k * v for v in gen) for k in range(order)])

    @classmethod
    def from_generators(cls, charges: Sequence, generators: Sequence[Sequence]) -> "LGModel":
        els = {tuple(Fraction(0) for _ in charges)}
        frontier = list(els)
        gens = [tuple(_mod1(_frac(v)) for v in g) for g in generators]
        while frontier:
            new = []
            for e in frontier:
                for g in gens:
                    s = tuple(_mod1(x + y) for x, y in zip(e, g))
                    if s not in els:
                        els.add(s)
                        new.append(s)
            frontier = new
        return cls(charges, sorted(els))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def nvars(self) -> int:
        return len(self.charges)

    def relabeled(self, perm: Sequence[int]) -> "LGModel":
        return LGModel([self.charges[p] for p in perm], [[g[p] for p in perm] for g in self.elements])

    def central_charge(self) -> Fraction:
        """``c/3 = sum (1 - 2 q_i)``."""
        return sum((1 - 2 * c for c in self.charges), Fraction(0))

    def field_order(self) -> int:
        """Roots of unity needed: half-angles of every rotation number."""
        D = 2
        for g in self.elements:
            for v in g:
                D = _lcm(D, 2 * v.denominator)
        return D


def fermat_quintic() -> LGModel:
    return LGModel.cyclic([Fraction(1, 5)] * 5, [Fraction(1, 5)] * 5)


def c9_example() -> LGModel:
    """Nine variables of charge 1/3 with the order-12 rotation (1/3)^4 (-1/6)^3 (1/12)^2."""
    gen = [Fraction(1, 3)] * 4 + [Fraction(-1, 6)] * 3 + [Fraction(1, 12)] * 2
    return LGModel.cyclic([Fraction(1, 3)] * 9, gen, 12)


# -- Theta_1 arguments --------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaArg:
    """``v = alpha z + x + b tau``."""

    alpha: Fraction
    x: Fraction
    b: Fraction

    def __post_init__(self):
        for k in ("alpha", "x", "b"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))


CONVENTIONS = ("example", "display")


def sector_args(model: LGModel, g1, g2, convention: str = "example"):
    """Per-variable ``(prefactor y-exponent, numerator arg, denominator arg)``.

    ``display``: ``y^(-R(g1)) Theta_1((1-q)z + R(g1) + R(g2) tau)/Theta_1(qz + R(g1) + R(g2) tau)``.
    ``example``: ``y^(-R(g2)) Theta_1((1-q)z - R(g1) - R(g2) tau)/Theta_1(qz + R(g1) + R(g2) tau)``,
    the arrangement of the worked nine-variable example; it is unchanged when
    any ``R`` is moved by an integer.
    """
    out = []
    for qi, r1, r2 in zip(model.charges, g1, g2):
        den = ThetaArg(qi, r1, r2)
        if convention == "display":
            out.append((-r1, ThetaArg(1 - qi, r1, r2), den))
        elif convention == "example":
            out.append((-r2, ThetaArg(1 - qi, -r1, -r2), den))
        else:
            raise ValueError(f"unknown convention {convention!r}")
    return out


# -- exact two-variable series ------------------------------------------------------------


class QYSeries:
    """Truncated series ``sum c_{a,b} q^a y^b``; exponents ``a < prec`` are exact."""

    __slots__ = ("rows", "prec")

    def __init__(self, rows: dict | None = None, prec=None):
        self.rows = {}
        self.prec = None if prec is None else Fraction(prec)
        for a, row in (rows or {}).items():
            a = Fraction(a)
            if self.prec is not None and a >= self.prec:
                continue
            clean = {Fraction(b): c for b, c in row.items() if not _zero(c)}
            if clean:
                self.rows[a] = clean

    @classmethod
    def from_terms(cls, terms: dict, prec=None) -> "QYSeries":
        rows: dict = {}
        for (a, b), c in terms.items():
            r = rows.setdefault(Fraction(a), {})
            r[Fraction(b)] = r[Fraction(b)] + c if Fraction(b) in r else c
        return cls(rows, prec)

    @classmethod
    def one(cls, prec=None) -> "QYSeries":
        return cls({Fraction(0): {Fraction(0): Fraction(1)}}, prec)

    def terms(self) -> dict:
        return {(a, b): c for a, row in self.rows.items() for b, c in row.items()}

    def items(self):
        for a in sorted(self.rows):
            for b in sorted(self.rows[a]):
                yield (a, b), self.rows[a][b]

    def coefficient(self, a, b):
        a, b = Fraction(a), Fraction(b)
        if self.prec is not None and a >= self.prec:
            raise IndexError(f"q^{a} is beyond precision O(q^{self.prec})")
        return self.rows.get(a, {}).get(b, Fraction(0))

    def is_zero(self) -> bool:
        return not self.rows

    def y_exponents(self) -> set:
        return {b for row in self.rows.values() for b in row}

    def q_exponents(self) -> list:
        return sorted(self.rows)

    def y_integral(self) -> bool:
        return all(b.denominator == 1 for b in self.y_exponents())

    def is_rational(self) -> bool:
        return all(not isinstance(c, CycElt) or c.is_rational() for row in self.rows.values() for c in row.values())

    def truncate(self, prec) -> "QYSeries":
        p = Fraction(prec) if self.prec is None else min(self.prec, Fraction(prec))
        return QYSeries(self.rows, p)

    def __add__(self, other: "QYSeries") -> "QYSeries":
        prec = _pmin(self.prec, other.prec)
        rows = {a: dict(r) for a, r in self.rows.items()}
        for a, r in other.rows.items():
            dst = rows.setdefault(a, {})
            for b, c in r.items():
                dst[b] = dst[b] + c if b in dst else c
        return QYSeries(rows, prec)

    def __neg__(self) -> "QYSeries":
        return self.scale(-1)

    def __sub__(self, other: "QYSeries") -> "QYSeries":
        return self + (-other)

    def scale(self, c) -> "QYSeries":
        return QYSeries({a: {b: v * c for b, v in r.items()} for a, r in self.rows.items()}, self.prec)

    def mul_monomial(self, c, a, b) -> "QYSeries":
        """Multiply by ``c q^a y^b``; precision moves with ``a``."""
        a, b = Fraction(a), Fraction(b)
        prec = None if self.prec is None else self.prec + a
        return QYSeries({e + a: {f + b: v * c for f, v in r.items()} for e, r in self.rows.items()}, prec)

    def mul_one_minus(self, c, a, b) -> "QYSeries":
        """Multiply by ``1 - c q^a y^b`` with ``a >= 0``."""
        return self - self.mul_monomial(c, a, b).truncate_like(self)

    def truncate_like(self, other: "QYSeries") -> "QYSeries":
        return self if other.prec is None else self.truncate(other.prec)

    def div_one_minus(self, c, a, b) -> "QYSeries":
        """Divide by ``1 - c q^a y^b`` with ``a > 0`` (geometric series)."""
        a, b = Fraction(a), Fraction(b)
        if a <= 0:
            raise ValueError("only factors with positive q-exponent are units")
        if self.prec is None:
            raise ValueError("division needs a finite precision")
        rows = {e: dict(r) for e, r in self.rows.items()}
        heap = list(rows)
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            e = heapq.heappop(heap)
            tgt = e + a
            if tgt >= self.prec:
                continue
            dst = rows.setdefault(tgt, {})
            for f, v in list(rows[e].items()):
                t = v * c
                dst[f + b] = dst[f + b] + t if f + b in dst else t
            if tgt not in seen:
                seen.add(tgt)
                heapq.heappush(heap, tgt)
        return QYSeries(rows, self.prec)

    def mul(self, other: "QYSeries") -> "QYSeries":
        va = min(self.rows) if self.rows else Fraction(0)
        vb = min(other.rows) if other.rows else Fraction(0)
        prec = _pmin(
            None if self.prec is None else self.prec + vb,
            None if other.prec is None else other.prec + va,
        )
        out: dict = {}
        for e1, r1 in self.rows.items():
            for e2, r2 in other.rows.items():
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                dst = out.setdefault(e, {})
                for f1, c1 in r1.items():
                    for f2, c2 in r2.items():
                        t = c1 * c2
                        dst[f1 + f2] = dst[f1 + f2] + t if f1 + f2 in dst else t
        return QYSeries(out, prec)

    def evaluate(self, tau: complex, z: complex) -> complex:
        total = 0j
        for (a, b), c in self.items():
            cc = c.to_complex() if isinstance(c, CycElt) else complex(c)
            total += cc * cmath.exp(2j * cmath.pi * (float(a) * tau + float(b) * z))
        return total

    def at_y_one(self) -> QSeries:
        terms = {}
        for a, row in self.rows.items():
            s = None
            for c in row.values():
                s = c if s is None else s + c
            if s is not None:
                terms[a] = s
        return QSeries.from_exponents(terms.items(), self.prec)

    def to_json(self) -> dict:
        from .algebra.serialize import fraction_to_str, scalar_to_json

        D = 1
        for _, c in self.items():
            if isinstance(c, CycElt) and not c.is_rational():
                D = _lcm(D, c.D)
        doc = {
            "order": None if self.prec is None else fraction_to_str(self.prec),
            "terms": [
                {"q": fraction_to_str(a), "y": fraction_to_str(b), "value": scalar_to_json(c)}
                for (a, b), c in self.items()
            ],
        }
        if D > 1:
            doc["field"] = D
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "QYSeries":
        from .algebra.serialize import scalar_from_json, str_to_fraction

        D = int(doc.get("field", 1))
        terms = {
            (str_to_fraction(t["q"]), str_to_fraction(t["y"])): scalar_from_json(t["value"], D)
            for t in doc["terms"]
        }
        order = doc.get("order")
        return cls.from_terms(terms, None if order is None else str_to_fraction(order))

    def __eq__(self, other) -> bool:
        return isinstance(other, QYSeries) and self.prec == other.prec and self.terms() == other.terms()

    __hash__ = None

    def __repr__(self) -> str:
        parts = [f"({c})*q^{a}*y^{b}" for (a, b), c in self.items()]
        tail = "" if self.prec is None else f" + O(q^{self.prec})"
        return (" + ".join(parts) or "0") + tail


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _zero(c) -> bool:
    if isinstance(c, CycElt):
        return c.is_zero()
    return c == 0


class _RingSeries:
    """Series over the group ring ``Q[C_D]``; key ``(b, k)`` of row ``a`` stands for
    ``zeta_D^k q^a y^b``.  Multiplying by roots of unity is then an index shift."""

    __slots__ = ("rows", "prec", "D")

    def __init__(self, rows: dict, prec, D: int):
        self.rows = {a: r for a, r in rows.items() if r and a < prec}
        self.prec = Fraction(prec)
        self.D = D

    @classmethod
    def one(cls, prec, D: int) -> "_RingSeries":
        return cls({Fraction(0): {(Fraction(0), 0): 1}}, prec, D)

    def _k(self, x: Fraction) -> int:
        k = x * self.D
        if k.denominator != 1:
            raise ValueError(f"e^(2 pi i {x}) needs roots of unity beyond order {self.D}")
        return int(k) % self.D

    def mul_monomial(self, x, a, b, c=1) -> "_RingSeries":
        k, D = self._k(Fraction(x)), self.D
        rows = {}
        for e, r in self.rows.items():
            rows[e + a] = {(f + b, (j + k) % D): v * c for (f, j), v in r.items()}
        return _RingSeries(rows, self.prec + a, D)

    def __add__(self, other: "_RingSeries") -> "_RingSeries":
        rows = {a: dict(r) for a, r in self.rows.items()}
        for a, r in other.rows.items():
            dst = rows.setdefault(a, {})
            for key, v in r.items():
                t = dst.get(key, 0) + v
                if t:
                    dst[key] = t
                else:
                    dst.pop(key, None)
        return _RingSeries(rows, min(self.prec, other.prec), self.D)

    def mul_one_minus(self, x, a, b) -> "_RingSeries":
        sh = self.mul_monomial(x, a, b, -1)
        sh.prec = self.prec
        return self + sh

    def div_one_minus(self, x, a, b) -> "_RingSeries":
        """Divide by ``1 - e(x) q^a y^b`` with ``a > 0``."""
        if a <= 0:
            raise ValueError("only factors with positive q-exponent are units")
        k, D = self._k(Fraction(x)), self.D
        rows = {e: dict(r) for e, r in self.rows.items()}
        heap = list(rows)
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            e = heapq.heappop(heap)
            tgt = e + a
            if tgt >= self.prec:
                continue
            dst = rows.setdefault(tgt, {})
            for (f, j), v in list(rows[e].items()):
                key = (f + b, (j + k) % D)
                dst[key] = dst.get(key, 0) + v
            if tgt not in seen:
                seen.add(tgt)
                heapq.heappush(heap, tgt)
        return _RingSeries(rows, self.prec, D)

    def evaluate(self, tau: complex, z: complex) -> complex:
        total = 0j
        for a, r in self.rows.items():
            qa = cmath.exp(2j * cmath.pi * float(a) * tau)
            for (b, k), v in r.items():
                total += float(v) * qa * cmath.exp(2j * cmath.pi * (float(b) * z + k / self.D))
        return total

    def to_field(self, field: CyclotomicField) -> QYSeries:
        rows = {}
        for a, r in self.rows.items():
            out = {}
            for (b, k), v in r.items():
                t = field.root_of_unity(k, self.D) * v
                out[b] = out[b] + t if b in out else t
            rows[a] = out
        return QYSeries(rows, self.prec)

    def s_moment(self, field: CyclotomicField, j: int) -> dict:
        """Coefficient of ``s^j`` after ``y = e^s``, one field element per ``q``-exponent."""
        out = {}
        for a, r in self.rows.items():
            acc = {}
            for (b, k), v in r.items():
                acc[k] = acc.get(k, 0) + Fraction(v) * b**j / factorial(j)
            tot = Fraction(0)
            for k, v in acc.items():
                if v:
                    tot = tot + field.root_of_unity(k, self.D) * v
            out[a] = tot
        return out


# -- building blocks of one sector ----------------------------------------------------------


@dataclass
class SectorForm:
    """``sign * e^(2 pi i x) q^a y^b * prod num / prod den`` for factors ``1 - e^(2 pi i x) q^a y^b``."""

    mono: tuple  # (x, a, b)
    num: list = field(default_factory=list)
    den: list = field(default_factory=list)


def theta1_families(v: ThetaArg, sign: int = 1) -> tuple[tuple, list[Family]]:
    """Reduced ``Theta_1(v) = -y_v^(-1/2) (1 - y_v) prod (1 - q^k y_v)(1 - q^k / y_v)``.

    Returns the monomial ``(x, a, b)`` standing for ``-y_v^(-1/2)`` and the factor
    families; ``Family.sigma`` carries the power of ``y`` (possibly fractional).
    """
    mono = (Fraction(1, 2) - v.x / 2, -v.b / 2, -v.alpha / 2)
    fams = [
        Family(v.x, v.b, None, v.alpha),
        Family(v.x, 1 + v.b, Fraction(1), v.alpha),
        Family(-v.x, 1 - v.b, Fraction(1), -v.alpha),
    ]
    return mono, fams


def _add_mono(m1, m2, sign=1):
    return tuple(a + sign * b for a, b in zip(m1, m2))


def sector_families(model: LGModel, g1, g2, convention: str = "example"):
    """Monomial plus numerator and denominator factor families of one ``(g1, g2)`` term."""
    mono = (Fraction(0), Fraction(0), Fraction(0))
    num, den = [], []
    for pref, va, vb in sector_args(model, g1, g2, convention):
        ma, fa = theta1_families(va)
        mb, fb = theta1_families(vb)
        mono = _add_mono(mono, (Fraction(0), Fraction(0), pref))
        mono = _add_mono(mono, ma)
        mono = _add_mono(mono, mb, -1)
        num += fa
        den += fb
    return mono, num, den


def _normalize_factor(x, a, b):
    """Write ``1 - e(x) q^a y^b`` with ``a < 0`` as monomial times a unit factor."""
    if a < 0:
        # 1 - m = -m (1 - 1/m)
        return (x + Fraction(1, 2), a, b), (-x, -a, -b)
    return None, (x, a, b)


def theta1_ratio(num_args: Sequence[ThetaArg], den_args: Sequence[ThetaArg], T) -> "LGSeries":
    """``prod Theta_1(num) / prod Theta_1(den)`` as an exact :class:`LGSeries` to ``q``-order ``T``."""
    if len(num_args) != len(den_args):
        raise UnbalancedRatio(f"{len(num_args)} numerator vs {len(den_args)} denominator arguments")
    mono = (Fraction(0),) * 3
    num, den = [], []
    for v in num_args:
        m, f = theta1_families(v)
        mono = _add_mono(mono, m)
        num += f
    for v in den_args:
        m, f = theta1_families(v)
        mono = _add_mono(mono, m, -1)
        den += f
    D = 2
    for v in list(num_args) + list(den_args):
        D = _lcm(D, 2 * v.x.denominator)
    out = LGSeries(Fraction(T) + 1, D)
    out.add_sector(mono, num, den)
    return out


class LGSeries:
    """Sum of blocks ``numerator(q, y) / prod (1 - e(x) y^b)`` keyed by their denominators.

    Coefficients of ``q^a`` with ``a < prec`` are exact; numerators live in the
    group ring of the ``D``-th roots of unity until they are read out.
    """

    def __init__(self, prec, D: int):
        self.prec = Fraction(prec)
        self.D = D
        self.field = CyclotomicField(D)
        self.blocks: dict = {}
        self.sectors = 0
        self.vanishing = 0

    def add_block(self, key: tuple, series: _RingSeries) -> None:
        if key in self.blocks:
            self.blocks[key] = self.blocks[key] + series
        else:
            self.blocks[key] = series

    def add_sector(self, mono, num_fams, den_fams, weight=Fraction(1)) -> bool:
        """Expand one sector and add it; returns ``False`` when it vanishes identically."""
        self.sectors += 1
        m = tuple(mono)
        sides = ((num_fams, 1), (den_fams, -1))
        # negative exponents first: they move the monomial and hence the needed range
        for fams, sgn in sides:
            for fam in fams:
                for a in fam.negatives():
                    extra, _ = _normalize_factor(fam.x, a, fam.sigma)
                    m = _add_mono(m, extra, sgn)
        need = self.prec - m[1]
        if need <= 0:
            return True
        num_units, den_units, num_bin, den_bin = [], [], [], []
        for (fams, sgn), units, bins in zip(sides, (num_units, den_units), (num_bin, den_bin)):
            for fam in fams:
                for a in fam.members(need):
                    _, fac = _normalize_factor(fam.x, a, fam.sigma)
                    if fac[1] == 0:
                        if _mod1(fac[0]) == 0 and fac[2] == 0:
                            if sgn > 0:
                                self.vanishing += 1
                                return False
                            raise DenominatorVanishes("a Theta_1 denominator vanishes identically")
                        bins.append((_mod1(fac[0]), fac[2]))
                    else:
                        units.append(fac)
        # orient every binomial as 1 - e(x) y^b with b > 0
        for bins, sgn in ((num_bin, 1), (den_bin, -1)):
            for i, (x, b) in enumerate(bins):
                if b < 0:
                    m = _add_mono(m, (x + Fraction(1, 2), Fraction(0), b), sgn)
                    bins[i] = (_mod1(-x), -b)
        geom = []
        for bnm in list(den_bin):
            hit = _divides(bnm, num_bin)
            if hit is not None:
                den_bin.remove(bnm)
                num_bin.remove(hit)
                k = hit[1] / bnm[1]
                if k > 1:
                    geom.append((bnm, int(k)))
        ser = _RingSeries.one(need, self.D)
        for x, a, b in num_units:
            if a < need:
                ser = ser.mul_one_minus(x, a, b)
        for x, a, b in den_units:
            if a < need:
                ser = ser.div_one_minus(x, a, b)
        for x, b in num_bin:
            ser = ser.mul_one_minus(x, 0, b)
        for (x, b), k in geom:
            # (1 - c^k y^(kb)) / (1 - c y^b) = sum_{j<k} c^j y^(jb)
            acc = ser
            for j in range(1, k):
                acc = acc + ser.mul_monomial(j * x, 0, j * b)
            ser = acc
        ser = ser.mul_monomial(m[0], m[1], m[2], weight)
        self.add_block(tuple(sorted(den_bin)), ser)
        return True

    def block_count(self) -> int:
        return len(self.blocks)

    def evaluate(self, tau: complex, z: complex) -> complex:
        """Value of the truncated series at ``(tau, z)``."""
        total = 0j
        for key, ser in self.blocks.items():
            d = 1 + 0j
            for x, b in key:
                d *= 1 - cmath.exp(2j * cmath.pi * (float(x) + float(b) * z))
            if abs(d) == 0:
                raise DenominatorVanishes(f"binomial denominator vanishes at z={z}")
            total += ser.evaluate(tau, z) / d
        return total

    def collapse(self, shift: Fraction | None = None) -> QYSeries | None:
        """One polynomial series in ``y``; ``None`` if the blocks do not combine exactly.

        With ``shift`` given, every ``y``-exponent must lie in ``shift + Z``;
        otherwise :class:`NonIntegralExponents` is raised.
        """
        counts: dict = {}
        for key in self.blocks:
            local: dict = {}
            for bnm in key:
                local[bnm] = local.get(bnm, 0) + 1
            for bnm, k in local.items():
                counts[bnm] = max(counts.get(bnm, 0), k)
        total = None
        for key, ser in self.blocks.items():
            local = dict(counts)
            for bnm in key:
                local[bnm] -= 1
            for (x, b), k in local.items():
                for _ in range(k):
                    ser = ser.mul_one_minus(x, 0, b)
            total = ser if total is None else total + ser
        out = total.to_field(self.field) if total is not None else QYSeries({}, self.prec)
        for (x, b), k in counts.items():
            for _ in range(k):
                out = _exact_divide_binomial(out, self.field.exp2pi(x), b)
                if out is None:
                    return None
        out = QYSeries({a: {b: _simplify(c) for b, c in r.items()} for a, r in out.rows.items()}, out.prec)
        if shift is not None:
            bad = sorted(b for b in out.y_exponents() if (b - shift).denominator != 1)
            if bad:
                raise NonIntegralExponents(f"y-exponents {bad[:4]} not in {shift} + Z")
        return out

    def at_y_one(self) -> QSeries:
        """``Ell(q, 1)``: put ``y = e^s`` in every block and keep the ``s^0`` term."""
        field = self.field
        tails: dict = {}
        for key, ser in self.blocks.items():
            p = sum(1 for x, _ in key if x == 0)
            U = WSeries([Fraction(1)], 0, p + 1)
            for x, b in key:
                if x == 0:
                    # (1 - e^(bs)) / s
                    coeffs = [-(b ** (j + 1)) / factorial(j + 1) for j in range(p + 1)]
                else:
                    c = field.exp2pi(x)
                    coeffs = [1 - c] + [-c * (b**j / factorial(j)) for j in range(1, p + 1)]
                U = U.mul(WSeries(coeffs, 0, p + 1))
            Ui = U.inverse()
            moments = [ser.s_moment(field, j) for j in range(p + 1)]
            for m in range(-p, 1):
                acc = tails.setdefault(m, {})
                for j in range(m + p + 1):
                    coef = Ui[m + p - j]
                    for a, v in moments[j].items():
                        t = v * coef
                        acc[a] = acc[a] + t if a in acc else t
        for m, acc in tails.items():
            if m < 0 and any(not _zero(v) for v in acc.values()):
                raise ArithmeticError(f"y -> 1 limit has a pole of order {-m}")
        items = [(a, _simplify(v)) for a, v in tails.get(0, {}).items() if not _zero(v)]
        return QSeries.from_exponents(items, self.prec)


def _divides(den, num_bin):
    """A numerator binomial ``1 - e(kx) y^(kb)`` divisible by ``den = 1 - e(x) y^b``."""
    x, b = den
    for cand in num_bin:
        k = cand[1] / b
        if k.denominator == 1 and k > 0 and _mod1(cand[0] - k * x) == 0:
            return cand
    return None


def _simplify(c):
    if isinstance(c, CycElt) and c.is_rational():
        return c.rational()
    return c


def _exact_divide_binomial(S: QYSeries, c, b: Fraction) -> QYSeries | None:
    """``S / (1 - c y^b)`` row by row when each row is divisible, else ``None``."""
    if b == 0:
        raise DenominatorVanishes("constant binomial")
    if b < 0:
        # 1 - c y^b = -c y^b (1 - c^-1 y^-b)
        inv = scalar_inverse(c) if isinstance(c, (Fraction, CycElt)) else 1 / c
        T = _exact_divide_binomial(S, inv, -b)
        if T is None:
            return None
        return T.mul_monomial(-inv, 0, -b)
    rows = {}
    for a, row in S.rows.items():
        P = dict(row)
        Q = {}
        keys = sorted(P)
        # synthetic division from the lowest exponent upward
        while P:
            e = min(P)
            v = P.pop(e)
            if _zero(v):
                continue
            Q[e] = v
            t = v * c
            P[e + b] = P[e + b] + t if e + b in P else t
            if _zero(P[e + b]):
                del P[e + b]
            if keys and e > max(keys) + b:
                return None
        rows[a] = Q
    return QYSeries(rows, S.prec)


# -- public entry points ---------------------------------------------------------------------


def ell_genus(model: LGModel, T=2, convention: str = "example") -> LGSeries:
    """Exact ``Ell(q, y)`` with coefficients of ``q^a``, ``a <= T`` exact."""
    out = LGSeries(Fraction(T) + 1, model.field_order())
    w = Fraction(1, model.order)
    for g1 in model.elements:
        for g2 in model.elements:
            mono, num, den = sector_families(model, g1, g2, convention)
            out.add_sector(mono, num, den, w)
    return out


def theta1_value(v: ThetaArg, tau: complex, z: complex, eps: float = 1e-18) -> complex:
    q = cmath.exp(2j * cmath.pi * tau)
    arg = float(v.alpha) * z + float(v.x) + float(v.b) * tau
    yv = cmath.exp(2j * cmath.pi * arg)
    half = cmath.exp(1j * cmath.pi * arg)
    val = half - 1 / half
    qk = q
    while True:
        t1 = qk * yv
        t2 = qk / yv
        val *= (1 - t1) * (1 - t2)
        if abs(t1) < eps and abs(t2) < eps:
            break
        qk *= q
    return val


def _near_lattice(v: ThetaArg, tau: complex, z: complex, tol: float) -> bool:
    w = float(v.alpha) * z + float(v.x) + float(v.b) * tau
    n = w.imag / tau.imag
    m = w.real - n * tau.real
    return abs(n - round(n)) <= tol and abs(m - round(m)) <= tol


def ell_genus_numeric(model: LGModel, tau: complex, z: complex, convention: str = "example", tiny: float = 1e-12) -> complex:
    """Direct evaluation at concrete ``(tau, z)``.

    A sector whose denominator argument lies within ``tiny`` of the lattice
    raises ``DenominatorVanishes``; see ``half_period_report`` for points
    where such singularities cancel.
    """
    tau, z = complex(tau), complex(z)
    total = 0j
    for g1 in model.elements:
        for g2 in model.elements:
            term = 1 + 0j
            for pref, va, vb in sector_args(model, g1, g2, convention):
                if _near_lattice(vb, tau, z, tiny):
                    raise DenominatorVanishes(f"Theta_1 denominator vanishes in sector {g1}, {g2}")
                term *= cmath.exp(2j * cmath.pi * float(pref) * z) * theta1_value(va, tau, z) / theta1_value(vb, tau, z)
            total += term
    return total / model.order


def ell_at_y_one(model: LGModel, T=2, convention: str = "example", method: str = "blocks") -> QSeries:
    """``Ell(q, 1)`` through ``q^T``.

    ``blocks`` takes the limit on the assembled series.  ``sectors`` is an
    independent (slower) route: with ``y = e^s`` every sector is expanded in
    ``s`` through the theta-product engine, where the zeros of numerator and
    denominator at ``s = 0`` cancel, and the constant terms are summed.
    """
    if method == "blocks":
        return ell_genus(model, T, convention).at_y_one()
    if method != "sectors":
        raise ValueError(f"unknown method {method!r}")
    sprec = 1
    ctx = ExactContext(Fraction(T) + 1, model.field_order())
    total = None
    for g1 in model.elements:
        for g2 in model.elements:
            mono, num, den = sector_families(model, g1, g2, convention)
            dv = count_vanishing(den)
            p0 = sprec + 2 * dv + 1
            N = product_wseries(num, ctx, p0)
            Dn = product_wseries(den, ctx, p0)
            if Dn.is_zero():
                raise DenominatorVanishes(f"sector {g1}, {g2} has a vanishing denominator")
            ser = N / Dn
            m = ctx.mono(mono[0], mono[1])
            ser = ser.mul(exp_series(mono[2], p0).map(lambda c: m * c))
            total = ser if total is None else total + ser
    total = total.truncate(sprec).scale(QSeries.constant(Fraction(1, model.order)))
    if total.val < 0:
        raise ArithmeticError("y -> 1 limit has a pole")
    return total[0].truncate(ctx.prec).map_coefficients(_simplify)


def assembled(model: LGModel, T=2, convention: str = "example") -> QYSeries:
    """``Ell(q, y)`` as one series, checking that ``y``-exponents lie in ``c/6 + Z``."""
    E = ell_genus(model, T, convention)
    out = E.collapse(model.central_charge() / 2)
    if out is None:
        raise NonIntegralExponents("blocks do not combine into a Laurent polynomial in y")
    return out


HALF_PERIODS = {"1/2": (Fraction(1, 2), Fraction(0)), "tau/2": (Fraction(0), Fraction(1, 2)),
                "(1+tau)/2": (Fraction(1, 2), Fraction(1, 2))}


def degenerate_sectors(model: LGModel, zx, zb, convention: str = "example") -> list:
    """Sectors whose denominator argument is a lattice point at ``z = zx + zb tau``, decided exactly."""
    zx, zb = _frac(zx), _frac(zb)
    bad = []
    for g1 in model.elements:
        for g2 in model.elements:
            for _, _, den in sector_args(model, g1, g2, convention):
                if (den.alpha * zx + den.x).denominator == 1 and (den.alpha * zb + den.b).denominator == 1:
                    bad.append((g1, g2))
                    break
    return bad


def laurent_at(model: LGModel, tau: complex, z0: complex, convention: str = "example",
               radius: float = 0.05, samples: int = 48, depth: int = 3) -> dict:
    """Laurent coefficients ``a_k``, ``-depth <= k <= 0``, of ``Ell`` around ``z0`` by the trapezoid
    rule on a circle; accurate when no other pole lies within a few radii."""
    vals = []
    for j in range(samples):
        d = radius * cmath.exp(2j * cmath.pi * j / samples)
        vals.append((d, ell_genus_numeric(model, tau, z0 + d, convention)))
    return {k: sum(v * d ** (-k) for d, v in vals) / samples for k in range(-depth, 1)}


def half_period_report(model: LGModel, tau: complex = 1j, convention: str = "example", tol: float = 1e-9) -> dict:
    """``Ell`` at the three half periods.

    Where some sector has a denominator on the lattice (decided exactly), the
    value is not taken pointwise: the principal part of the whole sum is
    measured on a small circle.  If it vanishes the singularity is removable
    and the constant Laurent coefficient is the value; otherwise the point is
    reported as a pole together with its principal part.
    """
    out = {}
    for label, (zx, zb) in HALF_PERIODS.items():
        z = float(zx) + float(zb) * tau
        bad = degenerate_sectors(model, zx, zb, convention)
        if not bad:
            out[label] = {"value": ell_genus_numeric(model, tau, z, convention)}
            continue
        coeffs = laurent_at(model, tau, z, convention)
        scale = max(1.0, max(abs(c) for c in coeffs.values()))
        principal = {k: c for k, c in coeffs.items() if k < 0}
        entry = {"singular_sectors": len(bad)}
        if all(abs(c) <= tol * scale for c in principal.values()):
            entry["value"] = coeffs[0]
        else:
            entry["degenerate"] = "pole of the summed genus"
            entry["principal_part"] = principal
        out[label] = entry
    return out


__all__ = [
    "HALF_PERIODS",
    "NonIntegralExponents",
    "assembled",
    "degenerate_sectors",
    "half_period_report",
    "laurent_at",
    "CONVENTIONS",
    "DenominatorVanishes",
    "InvalidModel",
    "LGModel",
    "LGSeries",
    "QYSeries",
    "ThetaArg",
    "UnbalancedRatio",
    "c9_example",
    "ell_at_y_one",
    "ell_genus",
    "ell_genus_numeric",
    "fermat_quintic",
    "sector_args",
    "theta1_ratio",
    "theta1_value",
]
