from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellgenus.algebra import QSeries
from ellgenus.elliptic import (
    DivisionPoint,
    ExactContext,
    NomeSpec,
    NumericContext,
    PoleError,
    TrivialCoset,
    build_genus_function,
    build_level2,
    build_special,
    build_group_quotient,
    character_of,
    level2_data,
    modulus,
    ode_residual,
    theta_basic,
    theta_n_a,
    theta_shifted,
)
from ellgenus.elliptic.points import lift_sum, x_denominator_lcm


def lcm(*xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


points = st.builds(
    DivisionPoint,
    st.fractions(min_value=0, max_value=1, max_denominator=7),
    st.fractions(min_value=-1, max_value=1, max_denominator=5),
)


# -- division points ------------------------------------------------------------------------


def test_point_arithmetic_keeps_lifts():
    p = DivisionPoint(Fraction(5, 4), Fraction(-1, 3))
    assert p.reduced() == DivisionPoint(Fraction(1, 4), Fraction(2, 3))
    assert (p * 12).is_lattice_point()
    assert p.order() == 12
    assert p.equivalent(DivisionPoint(Fraction(1, 4), Fraction(2, 3)))
    assert lift_sum([p, p]) == DivisionPoint(Fraction(5, 2), Fraction(-2, 3))
    assert x_denominator_lcm([p, DivisionPoint(Fraction(1, 6), 0)]) == 12


def test_nome_must_be_positive():
    with pytest.raises(ValueError):
        NomeSpec(0)


# -- theta products ---------------------------------------------------------------------------


@pytest.mark.parametrize("e", [Fraction(1), Fraction(2), Fraction(1, 2)])
def test_quasi_periodicity(e):
    P = DivisionPoint(Fraction(1, 3), Fraction(1, 5))
    ctx = ExactContext(5, 3)
    nome = NomeSpec(e)
    lhs = theta_basic(P - DivisionPoint(0, 1), nome, ctx=ctx)
    u = ctx.mono(P.x, e * P.y)
    assert (lhs + u * theta_basic(P, nome, ctx=ctx)).truncate(5).is_zero()


def test_theta_vanishes_at_identity():
    assert theta_basic(DivisionPoint(0, 0), T=3).is_zero()


def test_theta_numeric_matches_exact():
    P = DivisionPoint(Fraction(1, 4), Fraction(1, 3))
    exact = theta_basic(P, ctx=ExactContext(12, 4))
    num = theta_basic(P, ctx=NumericContext(1j))
    assert abs(exact.evaluate(1j) - num) < 1e-12


def _product_identity(n, P, shift_q):
    D = lcm(n, P.x.denominator)
    ctx = ExactContext(5, D)
    q0 = DivisionPoint(0, Fraction(1, n)) if shift_q else DivisionPoint(0, 0)
    prod = ctx.one()
    for j in range(n):
        prod = (prod * theta_shifted(P, DivisionPoint(Fraction(j, n), 0) + q0, ctx=ctx)).truncate(5)
    target = theta_n_a(P, n, -1 if shift_q else 0, ctx=ctx)
    return prod.agrees_with(target)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([2, 3, 4]), points, st.booleans())
def test_root_of_unity_products(n, P, shift_q):
    assert _product_identity(n, P, shift_q)


# -- Jacobi functions -------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_genus_function_invariants(n):
    ctx = ExactContext(5, n)
    f = build_genus_function(n, ctx)
    g = DivisionPoint(0, Fraction(1, n))
    chi = character_of(f, g)
    assert chi**n == 1 and chi != 1
    r = f.zero_reps[0]
    c = modulus(f, r)
    assert (modulus(f, r + g) - c * chi).is_zero()
    fr = f.expand(r, 2)
    assert fr.val == 1
    assert (fr[1] + c).is_zero()
    F = f.expand(DivisionPoint(0, 0), 4)
    assert F.val == -1 and F[-1].agrees_with(QSeries.one())


@pytest.mark.parametrize("n", [2, 3, 4])
def test_special_function(n):
    s = build_special(n, ExactContext(5, n))
    assert s.periodic
    q0 = DivisionPoint(0, Fraction(1, n))
    assert modulus(s, q0).agrees_with(QSeries.monomial(Fraction(1), Fraction(n - 1, n), 5))
    chi = character_of(s, DivisionPoint(Fraction(1, n), 0))
    assert chi**n == 1


def test_level2_expansion_and_ode():
    f = build_level2(ExactContext(5, 2))
    F = f.expand(DivisionPoint(0, 0), 8)
    assert all(F._get(k) is None or F._get(k).is_zero() for k in range(0, 8, 2))  # odd function
    assert F[1][0] == Fraction(1, 12)
    data = level2_data(f)
    resid = ode_residual(F, data.delta, data.epsilon)
    assert all(resid._get(k) is None or resid._get(k).is_zero() for k in range(resid.val, resid.prec))
    assert (data.c_half * data.c_half - data.epsilon).is_zero()


def test_level2_numeric_matches_exact():
    P = DivisionPoint(Fraction(1, 3), Fraction(1, 7))
    exact = build_level2(ExactContext(12, 6)).value(P)
    num = build_level2(NumericContext(1j)).value(P)
    assert abs(exact.evaluate(1j) - num) < 1e-10


def test_pole_and_trivial_coset():
    f = build_level2(ExactContext(3, 2))
    with pytest.raises(PoleError):
        f.value(DivisionPoint(0, Fraction(1, 2)))
    with pytest.raises(TrivialCoset):
        build_group_quotient(NomeSpec(2), [DivisionPoint(0, 0), DivisionPoint(0, Fraction(1, 2))], DivisionPoint(0, Fraction(1, 2)), None)


def test_non_torsion_quotient_is_not_periodic():
    f = build_group_quotient(NomeSpec(1), [DivisionPoint(0, 0)], DivisionPoint(Fraction(1, 7), Fraction(1, 3)), ExactContext(3, 7))
    assert not f.periodic
