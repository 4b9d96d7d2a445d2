import cmath

import pytest

from wkbcluster.errors import AssumptionViolation
from wkbcluster.ratfun import rf_equal
from wkbcluster.wkb import (
    Potential,
    airy,
    assumption_check,
    differential_pole_order,
    hypergeometric,
    log_derivative_check,
    pole_order_check,
    residual_vanishes,
    residue_even_pole,
    riccati,
    s_odd_0_formula,
    voros_residue_coefficient,
    weber,
)


def test_airy_first_terms():
    P = airy()
    S = riccati(P, 1)
    z = P.Q0
    assert rf_equal(S[0].b, z ** 0)           # S_-1 = s
    assert rf_equal(S[1].a, -1 / (4 * z))     # S_0 = -Q0'/(4 Q0)
    assert S[1].b.is_zero()
    assert rf_equal(S[2].b, -5 / (32 * z ** 3))
    assert S[2].a.is_zero()


def test_plane_wave():
    S = riccati(Potential(["1"]), 4)
    assert all(t.is_zero() for t in S[1:])


def test_s_odd_zero_formula():
    P = Potential(["z^2 - 1", "z"])
    S = riccati(P, 0)
    assert s_odd_0_formula(P).b is not None
    assert rf_equal(S[1].b, s_odd_0_formula(P).b)
    assert s_odd_0_formula(airy()).is_zero()


@pytest.mark.parametrize("P", [airy(), weber()])
def test_log_derivative_identity(P):
    assert log_derivative_check(P, 4)


@pytest.mark.parametrize("P", [airy(), weber(), hypergeometric("1/3", "1/5", "1/7")])
def test_riccati_residual(P):
    assert residual_vanishes(P, 4)


def test_pole_orders():
    assert differential_pole_order(airy(), "inf") == 5
    assert differential_pole_order(weber(), "inf") == 6
    H = hypergeometric("1/3", "1/5", "1/7")
    assert [differential_pole_order(H, p) for p in (0, 1, "inf")] == [2, 2, 2]


def test_hypergeometric_holomorphic_at_double_poles():
    H = hypergeometric("1/3", "1/5", "1/7")
    for p in (0, 1, "inf"):
        assert assumption_check(H, p) == []
        rep = pole_order_check(H, 3, p)
        assert rep.ok


def test_airy_integrable_at_infinity():
    assert pole_order_check(airy(), 4, "inf").ok


def test_violating_q2_is_reported():
    bad = Potential(["(z-1)/z^2", "0", "-1/(2*z^2)"])
    assert assumption_check(bad, 0)
    with pytest.raises(AssumptionViolation):
        pole_order_check(bad, 2, 0)


def test_residue_degenerate_fixture():
    D = Potential(["-(z+2*i)*(z-3*i)/z^2"])
    r = residue_even_pole(D, -1, 0).value()
    assert abs(abs(r) - 6 ** 0.5) < 1e-14
    assert abs(r.real) < 1e-14


def test_residue_constant_over_z_squared():
    r = residue_even_pole(Potential(["3/z^2"]), -1, 0).value()
    assert abs(r - cmath.sqrt(3)) < 1e-14 or abs(r + cmath.sqrt(3)) < 1e-14


def test_regular_part_has_no_residue():
    H = hypergeometric("1/3", "1/5", "1/7")
    for n in range(0, 3):
        assert residue_even_pole(H, n, 0).is_zero()


def test_voros_residue_coefficient_is_exact():
    D = Potential(["-(z+2*i)*(z-3*i)/z^2"])
    c = voros_residue_coefficient(D, 0)
    assert abs(c.value() ** 2 + 6) < 1e-12
