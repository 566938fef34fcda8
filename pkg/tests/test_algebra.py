import cmath
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellgenus.algebra import (
    CycElt,
    CyclotomicField,
    InversionOfZero,
    MultiPoly,
    NonUnitInversion,
    QSeries,
    WSeries,
    compose_linear,
    cyclotomic_poly,
    euler_phi,
    exp_series,
    qseries_from_json,
    qseries_to_json,
    scalar_inverse,
)
from ellgenus.algebra.serialize import dumps

ORDERS = [3, 4, 5, 8, 12]
small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyc(draw, D=None):
    D = D or draw(st.sampled_from(ORDERS))
    return CycElt(D, draw(st.lists(small, min_size=euler_phi(D), max_size=euler_phi(D))))


@st.composite
def cyc_pair(draw):
    D = draw(st.sampled_from(ORDERS))
    return draw(cyc(D)), draw(cyc(D)), draw(cyc(D))


# -- cyclotomic scalars -----------------------------------------------------------------------


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert euler_phi(12) == 4


def test_roots_of_unity():
    F = CyclotomicField(12)
    z = F.root_of_unity(1)
    assert z**12 == 1
    assert z**6 == -1
    assert abs(z.to_complex() - cmath.exp(2j * cmath.pi / 12)) < 1e-14
    assert F.exp2pi(Fraction(1, 3)) == F.root_of_unity(1, 3)


def test_rational_field_hands_out_fractions():
    F = CyclotomicField(2)
    assert F.exp2pi(Fraction(1, 2)) == Fraction(-1)
    assert isinstance(F.root_of_unity(0), Fraction)


def test_inverse_of_zero():
    with pytest.raises(InversionOfZero):
        CycElt(5, [0, 0, 0, 0]).inverse()
    with pytest.raises(InversionOfZero):
        scalar_inverse(Fraction(0))


@settings(max_examples=40, deadline=None)
@given(cyc_pair())
def test_field_axioms(t):
    a, b, c = t
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert a * a.inverse() == 1


@settings(max_examples=40, deadline=None)
@given(cyc_pair())
def test_complex_embedding_is_a_homomorphism(t):
    a, b, _ = t
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9
    assert abs((a + b).to_complex() - a.to_complex() - b.to_complex()) < 1e-9


# -- q-series -----------------------------------------------------------------------------------


@st.composite
def qseries(draw, unit=False):
    D = draw(st.sampled_from([1, 2, 3]))
    n = draw(st.integers(1, 6))
    coeffs = draw(st.lists(small, min_size=n, max_size=n))
    if unit:
        coeffs[0] = draw(st.sampled_from([Fraction(1), Fraction(-2), Fraction(1, 3)]))
    return QSeries({k: c for k, c in enumerate(coeffs)}, D, Fraction(4))


def test_qseries_basics():
    s = QSeries.from_exponents([(0, Fraction(1)), (Fraction(1, 2), Fraction(3))], 2)
    assert s[Fraction(1, 2)] == 3
    assert s.denom == 2
    assert s.truncate(Fraction(1, 2)).exponents() == [0]
    with pytest.raises(IndexError):
        s[2]
    assert repr(QSeries.zero(3)) == "0 + O(q^3)"


def test_qseries_non_unit_inverse():
    with pytest.raises(NonUnitInversion):
        QSeries.zero(3).inverse()


@settings(max_examples=40, deadline=None)
@given(qseries(), qseries(), qseries())
def test_qseries_ring_laws(a, b, c):
    assert (a * b).agrees_with(b * a)
    assert ((a * b) * c).agrees_with(a * (b * c))
    assert ((a + b) * c).agrees_with(a * c + b * c)


@settings(max_examples=40, deadline=None)
@given(qseries(unit=True))
def test_qseries_inverse(a):
    assert (a * a.inverse()).agrees_with(QSeries.one())


@settings(max_examples=30, deadline=None)
@given(qseries(), qseries())
def test_qseries_evaluation_is_multiplicative_to_precision(a, b):
    a, b = a.truncate(1), b.truncate(1)
    tau = 0.3 + 2j
    prod = (a * b).evaluate(tau)
    assert abs(prod - a.evaluate(tau) * b.evaluate(tau)) < 1e-3 * (1 + abs(prod))


@settings(max_examples=30, deadline=None)
@given(qseries())
def test_qseries_json_round_trip(a):
    back = qseries_from_json(json.loads(dumps(qseries_to_json(a))))
    assert back == a
    assert dumps(qseries_to_json(back)) == dumps(qseries_to_json(a))


def test_qseries_json_cyclotomic():
    z = CyclotomicField(5).root_of_unity(1)
    s = QSeries({0: z, 1: Fraction(2)}, 3, 2)
    assert qseries_from_json(json.loads(dumps(qseries_to_json(s)))) == s


# -- w-series -----------------------------------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(small, small)
def test_exponential_law(a, b):
    lhs = exp_series(a, 6) * exp_series(b, 6)
    assert lhs.agrees_with(exp_series(a + b, 6))


def test_wseries_inverse_and_precision():
    s = WSeries([Fraction(1), Fraction(2), Fraction(3)], 1, 5)  # w + 2w^2 + 3w^3 + O(w^5)
    inv = s.inverse()
    assert inv.val == -1
    assert inv.prec == 3
    assert (s * inv).agrees_with(WSeries([Fraction(1)], 0, 3))


def test_mul_one_minus_exp_matches_expansion():
    one = WSeries([Fraction(1)], 0, 6)
    m = Fraction(1, 3)
    got = one.mul_one_minus_exp(m, 2)
    want = one - exp_series(2, 5).scale(m)
    assert got.agrees_with(want)


def test_derivative_and_parity():
    e = exp_series(1, 6)
    assert e.derivative().agrees_with(e.truncate(6))
    c = (exp_series(1, 6) + exp_series(-1, 6)).scale(Fraction(1, 2))
    assert c.is_even()


# -- multivariate truncation --------------------------------------------------------------------


def test_compose_linear_against_direct_powers():
    caps = (2, 2)
    S = exp_series(1, 4)
    got = compose_linear(S, (1, 2), caps)
    lin = MultiPoly.linear(caps, (1, 2))
    want = MultiPoly.constant(caps, Fraction(1))
    term = MultiPoly.constant(caps, Fraction(1))
    for k in range(1, 5):
        term = term * lin * Fraction(1, k)
        want = want + term
    assert got == want
    assert got[(1, 1)] == Fraction(2)  # 2 * (w1)(2 w2) / 2!


def test_multipoly_caps_drop_high_terms():
    caps = (1, 1)
    x = MultiPoly.linear(caps, (1, 0))
    assert (x**2).terms == {}
    assert (x**0) == MultiPoly.constant(caps, Fraction(1))
