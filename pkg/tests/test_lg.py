import cmath
import json
from fractions import Fraction

import pytest

from ellgenus.lg import (
    DenominatorVanishes,
    InvalidModel,
    LGModel,
    QYSeries,
    ThetaArg,
    UnbalancedRatio,
    assembled,
    c9_example,
    ell_at_y_one,
    ell_genus,
    ell_genus_numeric,
    fermat_quintic,
    half_period_report,
    degenerate_sectors,
    laurent_at,
    sector_args,
    theta1_ratio,
    theta1_value,
)

F = Fraction
TAU, Z = 1j, 0.3 + 0.1j


# -- models -----------------------------------------------------------------------------------


def test_model_validation():
    with pytest.raises(InvalidModel):
        LGModel([F(1)], [[0]])
    with pytest.raises(InvalidModel):
        LGModel([F(1, 3)], [[F(1, 3)]])  # no identity
    with pytest.raises(InvalidModel):
        LGModel([F(1, 3)], [[0], [F(1, 3)]])  # not closed
    with pytest.raises(InvalidModel):
        LGModel([F(1, 3)], [[0], [0]])
    with pytest.raises(InvalidModel):
        LGModel([F(1, 3), F(1, 3)], [[0]])
    with pytest.raises(InvalidModel):
        LGModel.cyclic([F(1, 3)], [F(1, 3)], 4)


def test_presets():
    Q = fermat_quintic()
    assert (Q.order, Q.nvars, Q.central_charge()) == (5, 5, 3)
    C = c9_example()
    assert (C.order, C.nvars, C.central_charge()) == (12, 9, 3)
    assert LGModel.from_generators(C.charges, [C.elements[1]]).order == 12
    # lifts are reduced mod 1, so generator (1/3, -1/6, 1/12) appears as (1/3, 5/6, 1/12)
    assert (F(1, 3),) * 4 + (F(5, 6),) * 3 + (F(1, 12),) * 2 in C.elements


def test_c9_term_shape():
    C = c9_example()
    g = C.elements[1]
    args = sector_args(C, g, g)
    prefs = [p for p, _, _ in args]
    assert prefs == [F(-1, 3)] * 4 + [F(-5, 6)] * 3 + [F(-1, 12)] * 2
    # -5/6 and 1/6 agree mod 1: the printed y^(j/6)
    assert all((p - q) % 1 == 0 for p, q in zip(prefs, [F(-1, 3)] * 4 + [F(1, 6)] * 3 + [F(-1, 12)] * 2))
    assert [a.alpha for _, a, _ in args] == [F(2, 3)] * 9


# -- theta quotients --------------------------------------------------------------------------


def test_identical_arguments_give_one():
    r = theta1_ratio([ThetaArg(F(1, 2), 0, 0)], [ThetaArg(F(1, 2), 0, 0)], 2).collapse()
    assert r == QYSeries.one(3)


def test_full_period_shift_flips_sign():
    v = ThetaArg(F(1, 2), 0, F(1, 3))
    r = theta1_ratio([ThetaArg(v.alpha, v.x + 1, v.b)], [v], 2).collapse()
    assert r == QYSeries.one(3).scale(-1)


def test_constant_term_of_simple_ratio():
    r = theta1_ratio([ThetaArg(F(2, 3), 0, 0)], [ThetaArg(F(1, 3), 0, 0)], 1).collapse()
    # (y^(1/3) - y^(-1/3)) / (y^(1/6) - y^(-1/6)) = y^(1/6) + y^(-1/6)
    assert {b: c for (a, b), c in r.items() if a == 0} == {F(1, 6): 1, F(-1, 6): 1}


def test_unbalanced_ratio():
    with pytest.raises(UnbalancedRatio):
        theta1_ratio([ThetaArg(1, 0, 0)], [], 1)


def test_numeric_theta_quasi_period():
    v = ThetaArg(F(1, 3), F(1, 7), F(1, 5))
    w = ThetaArg(v.alpha, v.x + 1, v.b)
    assert abs(theta1_value(w, TAU, Z) + theta1_value(v, TAU, Z)) < 1e-12


# -- the genus --------------------------------------------------------------------------------


def test_symmetric_charge_is_one():
    assert ell_genus(LGModel([F(1, 2)], [[0]]), 2).collapse() == QYSeries.one(3)


def test_untwisted_sector_is_theta_quotient():
    m = LGModel([F(1, 3), F(1, 5)], [[0, 0]])
    direct = theta1_ratio(
        [ThetaArg(F(2, 3), 0, 0), ThetaArg(F(4, 5), 0, 0)],
        [ThetaArg(F(1, 3), 0, 0), ThetaArg(F(1, 5), 0, 0)],
        2,
    ).collapse()
    assert ell_genus(m, 2).collapse() == direct


SMALL = LGModel.cyclic([F(1, 3), F(1, 4)], [F(1, 3), F(1, 4)])


def test_relabeling_invariance():
    a = ell_genus_numeric(SMALL, TAU, Z)
    b = ell_genus_numeric(SMALL.relabeled([1, 0]), TAU, Z)
    assert abs(a - b) < 1e-10 * abs(a)
    assert ell_genus(SMALL, 1).collapse() is not None


def test_enumeration_invariance():
    shuffled = LGModel(SMALL.charges, list(reversed(SMALL.elements)))
    assert ell_genus(shuffled, 1).collapse() == ell_genus(SMALL, 1).collapse()


def test_exact_matches_numeric_on_quintic():
    Q = fermat_quintic()
    exact = ell_genus(Q, 3).evaluate(TAU, Z)
    num = ell_genus_numeric(Q, TAU, Z)
    assert abs(exact - num) < 1e-8 * abs(num)


def test_quintic_structure():
    A = assembled(fermat_quintic(), 1)
    # exponents sit in c/2 + Z with c = 3
    assert all((b - F(1, 2)).denominator == 1 for b in A.y_exponents())
    assert A.coefficient(0, F(1, 2)) == 100
    assert A.coefficient(0, F(-1, 2)) == 100


def test_y_to_one_routes_agree():
    Q = fermat_quintic()
    blocks = ell_at_y_one(Q, 1)
    assert blocks.agrees_with(ell_at_y_one(Q, 1, method="sectors"))
    assert blocks[0] == 200


def _sector_value(charge, r1, r2, convention):
    m = LGModel([charge], [[0]])
    (pref, a, b), = sector_args(m, [r1], [r2], convention)
    y = cmath.exp(2j * cmath.pi * Z)
    return y ** float(pref) * theta1_value(a, TAU, Z) / theta1_value(b, TAU, Z)


@pytest.mark.parametrize("convention,invariant", [("example", True), ("display", False)])
def test_lift_dependence(convention, invariant):
    c, r1, r2 = F(1, 5), F(2, 5), F(3, 5)
    a = _sector_value(c, r1, r2, convention)
    b = _sector_value(c, r1 - 1, r2 - 1, convention)
    assert (abs(a - b) < 1e-10 * abs(a)) is invariant


def test_display_convention_quintic_value():
    assert ell_at_y_one(fermat_quintic(), 0, convention="display")[0] == F(1048, 5)


def test_json_round_trip():
    A = assembled(fermat_quintic(), 1)
    doc = json.loads(json.dumps(A.to_json()))
    assert QYSeries.from_json(doc) == A


def test_half_periods():
    C = c9_example()
    # z = 1/2 puts (1/3) z + 5/6 on the lattice in sectors with g2 = 0
    assert degenerate_sectors(C, F(1, 2), 0)
    assert not degenerate_sectors(C, F(1, 7), F(1, 5))
    rep = half_period_report(C, 0.1 + 1.3j)
    for label in ("1/2", "tau/2", "(1+tau)/2"):
        assert rep[label]["singular_sectors"] == 5
        assert abs(rep[label]["value"]) < 1e-9
    with pytest.raises(DenominatorVanishes):
        ell_genus_numeric(C, 0.1 + 1.3j, (0.1 + 1.3j) / 2)


def test_laurent_coefficients_at_a_regular_point():
    z0 = 0.3 + 0.1j
    coeffs = laurent_at(fermat_quintic(), TAU, z0)
    direct = ell_genus_numeric(fermat_quintic(), TAU, z0)
    assert abs(coeffs[0] - direct) < 1e-10 * abs(direct)
    assert all(abs(coeffs[k]) < 1e-10 * abs(direct) for k in (-3, -2, -1))
