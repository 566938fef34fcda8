"""Integer-matrix machinery for division points on products of elliptic curves.

Points of ``E^t`` are tuples of :class:`DivisionPoint`.  A degree matrix ``M``
acts by ``([M]s)_i = sum_j m_ij s_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .elliptic.points import DivisionPoint


class SingularMatrix(ValueError):
    pass


Matrix = list[list[int]]


def _copy(M) -> Matrix:
    return [[int(v) for v in row] for row in M]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(X, Y) -> Matrix:
    return [[sum(X[i][k] * Y[k][j] for k in range(len(Y))) for j in range(len(Y[0]))] for i in range(len(X))]


def det(M) -> int:
    """Exact determinant by fraction-free elimination."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = _copy(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class DegreeMatrix:
    rows: tuple

    def __init__(self, rows):
        object.__setattr__(self, "rows", tuple(tuple(int(v) for v in r) for r in rows))
        if not self.rows or len({len(r) for r in self.rows}) != 1:
            raise ValueError("degree matrix must be a non-empty rectangle")

    @property
    def l(self) -> int:
        return len(self.rows)

    @property
    def t(self) -> int:
        return len(self.rows[0])

    def column_sums(self) -> list[int]:
        return [sum(r[j] for r in self.rows) for j in range(self.t)]

    def linear_forms(self) -> list[tuple[int, ...]]:
        """The forms ``mu_i = sum_j m_ij x_j`` as coefficient rows."""
        return [tuple(r) for r in self.rows]

    def det(self) -> int:
        return det(self.rows)

    def act(self, s: Sequence[DivisionPoint]) -> tuple[DivisionPoint, ...]:
        out = []
        for r in self.rows:
            acc = DivisionPoint(0, 0)
            for m, p in zip(r, s):
                acc = acc + p * m
            out.append(acc)
        return tuple(out)

    def as_lists(self) -> Matrix:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class SNFResult:
    A: tuple
    D: tuple
    B: tuple

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0])))]


def _as_matrix(M) -> Matrix:
    if isinstance(M, DegreeMatrix):
        return M.as_lists()
    return _copy(M)


def snf(M) -> SNFResult:
    """Smith normal form ``A M B = D`` with smallest-absolute-value pivoting."""
    S = _as_matrix(M)
    l, t = len(S), len(S[0])
    A = identity(l)
    B = identity(t)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        A[i], A[j] = A[j], A[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in B:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        S[dst] = [x + c * y for x, y in zip(S[dst], S[src])]
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]

    def add_col(dst, src, c):
        for row in S:
            row[dst] += c * row[src]
        for row in B:
            row[dst] += c * row[src]

    for k in range(min(l, t)):
        while True:
            best = None
            for i in range(k, l):
                for j in range(k, t):
                    if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return SNFResult(tuple(map(tuple, A)), tuple(map(tuple, S)), tuple(map(tuple, B)))
            swap_rows(k, best[0])
            swap_cols(k, best[1])
            p = S[k][k]
            dirty = False
            for i in range(k + 1, l):
                if S[i][k]:
                    add_row(i, k, -(S[i][k] // p))
                    dirty = dirty or S[i][k] != 0
            for j in range(k + 1, t):
                if S[k][j]:
                    add_col(j, k, -(S[k][j] // p))
                    dirty = dirty or S[k][j] != 0
            if dirty:
                continue
            bad = next(
                ((i, j) for i in range(k + 1, l) for j in range(k + 1, t) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(k, bad[0], 1)
        if S[k][k] < 0:
            S[k] = [-x for x in S[k]]
            A[k] = [-x for x in A[k]]
    return SNFResult(tuple(map(tuple, A)), tuple(map(tuple, S)), tuple(map(tuple, B)))


def _square_snf(M) -> tuple[DegreeMatrix, SNFResult, list[int]]:
    M = M if isinstance(M, DegreeMatrix) else DegreeMatrix(M)
    if M.l != M.t:
        raise SingularMatrix("degree matrix must be square")
    res = snf(M)
    d = res.diagonal
    if any(v == 0 for v in d):
        raise SingularMatrix("degree matrix is singular")
    return M, res, d


def _apply(X, v: Sequence[DivisionPoint]) -> tuple[DivisionPoint, ...]:
    out = []
    for row in X:
        acc = DivisionPoint(0, 0)
        for c, p in zip(row, v):
            acc = acc + p * c
        out.append(acc)
    return tuple(out)


def reduce_vector(v: Sequence[DivisionPoint]) -> tuple[DivisionPoint, ...]:
    return tuple(p.reduced() for p in v)


def solve_division(M, r: Sequence[DivisionPoint]) -> tuple[DivisionPoint, ...]:
    """A solution of ``[M] s = r`` on ``E^t``, coordinates reduced mod 1."""
    M, res, d = _square_snf(M)
    r = [p if isinstance(p, DivisionPoint) else DivisionPoint(p) for p in r]
    Ar = _apply(res.A, r)
    y = [p * Fraction(1, dk) for p, dk in zip(Ar, d)]
    s = reduce_vector(_apply(res.B, y))
    check = M.act(s)
    if not all((a - b).is_lattice_point() for a, b in zip(check, r)):
        raise ArithmeticError("division solve failed verification")
    return s


def canonical_mod_group(v: Sequence[DivisionPoint], n: int) -> tuple[DivisionPoint, ...]:
    """Representative mod ``Z^t + G^t`` with ``G`` generated by ``(0, 1/n)``."""
    out = []
    step = Fraction(1, n)
    for p in v:
        y = p.y - (p.y // step) * step
        out.append(DivisionPoint(p.x - (p.x.numerator // p.x.denominator), y))
    return tuple(out)


def _enumerate(M, n: int, ymult: int) -> list[tuple[DivisionPoint, ...]]:
    M, res, d = _square_snf(M)
    tau = Fraction(1, n)
    seen = {}
    ranges = []
    for dk in d:
        ranges.append(range(dk))
    for a in product(*ranges):
        for b in product(*(range(dk * ymult) for dk in d)):
            base = [DivisionPoint(Fraction(ak, dk), Fraction(bk, dk) * tau) for ak, bk, dk in zip(a, b, d)]
            h = _apply(res.B, base)
            key = canonical_mod_group(h, n) if ymult == 1 else reduce_vector(h)
            seen.setdefault(key, key)
    return list(seen)


def coset_reps(M, n: int) -> list[tuple[DivisionPoint, ...]]:
    """Representatives of ``H / G^t`` with ``H = {h : [M] h in G^t}`` and ``G`` cyclic of
    order ``n`` in the period direction; there are ``det(M)^2`` of them."""
    reps = _enumerate(M, n, 1)
    M2 = M if isinstance(M, DegreeMatrix) else DegreeMatrix(M)
    if len(reps) != M2.det() ** 2:
        raise ArithmeticError(f"expected {M2.det() ** 2} coset reps, found {len(reps)}")
    return reps


def full_h_reps(M, n: int) -> list[tuple[DivisionPoint, ...]]:
    """All of ``H`` modulo the lattice, ``n^t det(M)^2`` points."""
    return _enumerate(M, n, n)


def in_group_power(v: Sequence[DivisionPoint], n: int) -> bool:
    return all(p.x.denominator == 1 and (p.y * n).denominator == 1 for p in v)


def cy_condition(M, dims: Sequence[int], expG: int) -> bool:
    """Every column sum of ``M`` congruent to the matching dimension mod ``expG``."""
    M = M if isinstance(M, DegreeMatrix) else DegreeMatrix(M)
    if len(dims) != M.t:
        raise ValueError("one dimension per column required")
    return all((c - N) % expG == 0 for c, N in zip(M.column_sums(), dims))


__all__ = [
    "DegreeMatrix",
    "SNFResult",
    "SingularMatrix",
    "canonical_mod_group",
    "coset_reps",
    "cy_condition",
    "det",
    "full_h_reps",
    "in_group_power",
    "matmul",
    "snf",
    "solve_division",
]
