from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ellgenus.elliptic import DivisionPoint
from ellgenus.intlat import (
    DegreeMatrix,
    SingularMatrix,
    coset_reps,
    cy_condition,
    det,
    matmul,
    snf,
    solve_division,
)

WORKED = [[3, 0, 0], [1, 2, 0], [0, 1, 2]]
HALF = DivisionPoint(Fraction(1, 2), 0)


def check_snf(M):
    res = snf(M)
    assert matmul(matmul(res.A, M), res.B) == [list(r) for r in res.D]
    assert abs(det(res.A)) == 1 and abs(det(res.B)) == 1
    d = res.diagonal
    assert all(x >= 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]) if a)
    D = res.D
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    prod = 1
    for x in d:
        prod *= x
    assert prod == abs(det(M))
    return d


def test_worked_matrix_diagonal():
    assert check_snf(WORKED) == [1, 1, 12]


def test_det_and_singular():
    assert det(WORKED) == 12
    with pytest.raises(SingularMatrix):
        solve_division([[1, 2], [2, 4]], [HALF, HALF])


matrices = st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_random_snf_invariants(M):
    assume(det(M) != 0)
    check_snf(M)


def test_division_solve():
    s = solve_division(WORKED, [HALF] * 3)
    # any solution differs from (1/6,1/6,1/6) by a point of the kernel of [M]
    target = (DivisionPoint(Fraction(1, 6), 0),) * 3
    diff = [a - b for a, b in zip(s, target)]
    assert all(p.is_lattice_point() for p in DegreeMatrix(WORKED).act(diff))
    assert solve_division([[1, 0], [0, 1]], [HALF, HALF]) == (HALF, HALF)


def test_worked_cosets_are_multiples_of_v():
    reps = coset_reps(WORKED, 2)
    assert len(reps) == 144
    v = (Fraction(1, 3), Fraction(-1, 6), Fraction(1, 12))
    tau = Fraction(1, 2)
    expected = set()
    for a in range(12):
        for b in range(12):
            pt = tuple(DivisionPoint(a * c, b * c * tau) for c in v)
            expected.add(tuple(p.reduced() for p in pt))
    got = {tuple(p.reduced() for p in r) for r in reps}
    # compare modulo Z^t + G^t: reduce y modulo 1/2
    def mod_g(pts):
        return tuple(DivisionPoint(p.x, p.y % tau) for p in pts)

    assert {mod_g(r) for r in got} == {mod_g(r) for r in expected}


@pytest.mark.parametrize("m", [1, 2, 3])
def test_scalar_cosets(m):
    reps = coset_reps([[m]], 2)
    assert len(reps) == m * m


def test_identity_cosets():
    assert coset_reps([[1, 0], [0, 1]], 2) == [(DivisionPoint(0, 0), DivisionPoint(0, 0))]


def test_cy_condition():
    assert cy_condition(WORKED, [4, 3, 2], 2)
    assert cy_condition([[4]], [4], 2)
    assert not cy_condition([[3]], [4], 2)
    with pytest.raises(ValueError):
        cy_condition(WORKED, [4, 3], 2)
