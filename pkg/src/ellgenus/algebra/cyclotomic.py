"""Exact arithmetic in cyclotomic fields Q(zeta_D).

Elements are stored as coefficient vectors of length ``phi(D)`` in the power
basis ``1, x, ..., x^(phi(D)-1)`` of ``Q[x]/Phi_D(x)``.  Rational numbers are
accepted wherever an element is expected and promoted on the fly; elements of
two different fields never mix.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence, Union


class BackendMismatch(TypeError):
    """Raised when values from incompatible coefficient rings are combined."""


class InversionOfZero(ZeroDivisionError):
    pass


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Integer polynomials, coefficient lists low degree first; den monic.
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    rem = num[: len(den) - 1]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(D: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the D-th cyclotomic polynomial.

    Obtained by exact division of ``x^D - 1`` by ``Phi_d`` for every proper
    divisor ``d`` of ``D``.
    """
    if D < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (D - 1) + [1]
    for d in _divisors(D)[:-1]:
        poly, rem = _poly_divmod(poly, list(cyclotomic_poly(d)))
        assert not any(rem)
    return tuple(poly)


def euler_phi(D: int) -> int:
    return len(cyclotomic_poly(D)) - 1


@lru_cache(maxsize=None)
def _reduction_table(D: int) -> tuple[tuple[int, ...], ...]:
    """Row k gives x^k mod Phi_D in the power basis, for k < max(D, 2*phi(D) - 1)."""
    phi = cyclotomic_poly(D)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(max(2 * deg - 1, D, 1)):
        rows.append(tuple(cur))
        # multiply by x
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class CycElt:
    """An element of Q(zeta_D)."""

    __slots__ = ("D", "c")

    def __init__(self, D: int, coeffs: Sequence):
        n = euler_phi(D)
        if len(coeffs) != n:
            raise ValueError(f"expected {n} coefficients for Q(zeta_{D}), got {len(coeffs)}")
        self.D = D
        self.c = tuple(Fraction(v) for v in coeffs)

    # -- construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, D: int, coeffs: tuple) -> "CycElt":
        obj = object.__new__(cls)
        obj.D = D
        obj.c = coeffs
        return obj

    def _coerce(self, other) -> "CycElt":
        if isinstance(other, CycElt):
            if other.D != self.D:
                raise BackendMismatch(f"Q(zeta_{self.D}) vs Q(zeta_{other.D})")
            return other
        if isinstance(other, (int, Fraction)):
            n = len(self.c)
            return CycElt._raw(self.D, (Fraction(other),) + (Fraction(0),) * (n - 1))
        raise BackendMismatch(f"cannot combine Q(zeta_{self.D}) with {type(other).__name__}")

    # -- predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.c[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if isinstance(other, CycElt):
            return self.D == other.D and self.c == other.c
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.D, self.c))

    # -- ring operations ------------------------------------------------------------
    def __add__(self, other):
        try:
            o = self._coerce(other)
        except BackendMismatch:
            if isinstance(other, CycElt):
                raise
            return NotImplemented
        return CycElt._raw(self.D, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return CycElt._raw(self.D, tuple(-a for a in self.c))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycElt._raw(self.D, tuple(a * other for a in self.c))
        if not isinstance(other, CycElt):
            return NotImplemented
        o = self._coerce(other)
        n = len(self.c)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        table = _reduction_table(self.D)
        out = list(prod[:n])
        for k in range(n, 2 * n - 1):
            v = prod[k]
            if v:
                row = table[k]
                for i in range(n):
                    if row[i]:
                        out[i] += v * row[i]
        return CycElt._raw(self.D, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycElt":
        """Inverse via the extended Euclidean algorithm against Phi_D."""
        if self.is_zero():
            raise InversionOfZero("inverse of zero in cyclotomic field")
        phi = [Fraction(v) for v in cyclotomic_poly(self.D)]
        a = _trim(list(self.c))
        # invariant: s*self = r0, t*self = r1 (mod Phi_D)
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] == 0:
            q, r = _fdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fsub(s0, _fmul(q, s1))
        # r1 is a nonzero constant
        inv = [v / r1[0] for v in s1]
        n = len(self.c)
        table = _reduction_table(self.D)
        out = [Fraction(0)] * n
        for k, v in enumerate(inv):
            if v:
                for i in range(n):
                    if table[k][i]:
                        out[i] += v * table[k][i]
        return CycElt._raw(self.D, tuple(out))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise InversionOfZero("division by zero")
            return CycElt._raw(self.D, tuple(a / other for a in self.c))
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self._coerce(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.D)
        return sum(complex(float(v)) * z**i for i, v in enumerate(self.c))

    def __complex__(self) -> complex:
        return self.to_complex()

    def __repr__(self) -> str:
        terms = []
        for i, v in enumerate(self.c):
            if v:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                terms.append(f"{v}{'*' + mono if mono else ''}")
        return f"CycElt[{self.D}](" + (" + ".join(terms) or "0") + ")"


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _fmul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _fsub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(v) for v in out])


def _fdivmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    den = _trim(list(den))
    if len(num) < len(den):
        return [Fraction(0)], _trim(num)
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / lead
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    rem = _trim(num[: max(len(den) - 1, 1)])
    return _trim(q), rem


Scalar = Union[Fraction, CycElt, complex]


class CyclotomicField:
    """Factory for elements of Q(zeta_D).

    For ``D <= 2`` the field is Q itself and plain :class:`Fraction` values are
    handed out, which keeps the rational-only computations fast.
    """

    def __init__(self, D: int):
        if D < 1:
            raise ValueError("cyclotomic order must be positive")
        self.D = D

    @property
    def is_rational(self) -> bool:
        return self.D <= 2

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclotomicField) and other.D == self.D

    def __hash__(self) -> int:
        return hash(("CyclotomicField", self.D))

    def __repr__(self) -> str:
        return f"CyclotomicField({self.D})"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def root_of_unity(self, k: int, D: int | None = None):
        """zeta_D^k, expressed in this field (``D`` must divide the field order)."""
        D = self.D if D is None else D
        if self.D % D:
            raise BackendMismatch(f"zeta_{D} does not lie in Q(zeta_{self.D})")
        e = (k * (self.D // D)) % self.D
        if self.is_rational:
            return Fraction(-1) if (self.D == 2 and e == 1) else Fraction(1)
        return CycElt._raw(self.D, tuple(Fraction(v) for v in _reduction_table(self.D)[e]))

    def exp2pi(self, x: Fraction):
        """e^{2 pi i x} for rational x with denominator dividing D."""
        x = Fraction(x)
        if (x * self.D).denominator != 1:
            raise BackendMismatch(f"e^(2 pi i {x}) is not in Q(zeta_{self.D})")
        return self.root_of_unity(int(x * self.D) % self.D)

    def element(self, coeffs: Sequence):
        if self.is_rational:
            if len(coeffs) != 1:
                raise ValueError("rational field elements have one coefficient")
            return Fraction(coeffs[0])
        return CycElt(self.D, coeffs)

    def coerce(self, value):
        if isinstance(value, CycElt):
            if value.D != self.D:
                raise BackendMismatch(f"Q(zeta_{value.D}) value in Q(zeta_{self.D})")
            return value
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise BackendMismatch(f"cannot coerce {type(value).__name__} into {self!r}")


def scalar_is_zero(v, tol: float | None = None) -> bool:
    """Exact zero test for exact scalars; ``|v| <= tol`` for complex values."""
    if isinstance(v, complex) or isinstance(v, float):
        if tol is None:
            raise ValueError("complex zero test needs an explicit tolerance")
        return abs(v) <= tol
    if isinstance(v, CycElt):
        return v.is_zero()
    return v == 0


def scalar_inverse(v, tol: float | None = None):
    if isinstance(v, CycElt):
        return v.inverse()
    if isinstance(v, complex) or isinstance(v, float):
        if tol is not None and abs(v) <= tol:
            raise InversionOfZero("complex value below tolerance")
        return 1 / v
    if v == 0:
        raise InversionOfZero("inverse of zero")
    return 1 / Fraction(v)


def common_field(*orders: int) -> CyclotomicField:
    D = 1
    for d in orders:
        D = _lcm(D, d)
    return CyclotomicField(D)
