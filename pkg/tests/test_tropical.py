import pytest

from wkbcluster.errors import LengthMismatch, SignIncoherent
from wkbcluster.exchange import ExchangeMatrix, mutate_matrix, quiver_roundtrip
from wkbcluster.tropical import TropicalMonomial, trop_sum, tropical_run, tropical_sign


def test_tropical_sum_is_componentwise_min():
    a = TropicalMonomial([1, -2, 0])
    b = TropicalMonomial([0, 3, -1])
    assert trop_sum(a, b).exponents == (0, -2, -1)
    assert (a + b) == (b + a)


def test_tropical_length_mismatch():
    with pytest.raises(LengthMismatch):
        TropicalMonomial([1, 2]) * TropicalMonomial([1])


def test_pentagon_cvectors_and_signs():
    signs, cvecs, ys = tropical_run([[0, 1], [-1, 0]], [0, 1, 0, 1, 0])
    assert signs == [1, 1, 1, -1, -1]
    assert [tuple(c) for c in cvecs] == [(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1)]
    assert [m.exponents for m in ys[-1]] == [(0, 1), (1, 0)]


def test_mutate_matrix_is_involution():
    B = [[0, 2, -1], [-2, 0, 3], [1, -3, 0]]
    for k in range(3):
        assert mutate_matrix(mutate_matrix(B, k), k) == ExchangeMatrix(B)


def test_quiver_round_trip():
    B = [[0, 2, -1], [-2, 0, 3], [1, -3, 0]]
    assert quiver_roundtrip(B) == ExchangeMatrix(B)


def test_mutate_matrix_a2():
    assert mutate_matrix([[0, 1], [-1, 0]], 0).tolist() == [[0, -1], [1, 0]]


def test_tropical_sign_examples():
    assert tropical_sign(TropicalMonomial([1, 1])) == 1
    assert tropical_sign(TropicalMonomial([-1, 0])) == -1
    with pytest.raises(SignIncoherent):
        tropical_sign(TropicalMonomial([1, -1]))


def test_principal_term_of_subtraction_free_quotient():
    # (2 u1^2 + u1 u2) / (u1^2 u2 + 2 u1 u2^2): coefficients drop, sums become minima
    num = trop_sum(TropicalMonomial([2, 0]), TropicalMonomial([1, 1]))
    den = trop_sum(TropicalMonomial([2, 1]), TropicalMonomial([1, 2]))
    assert num.exponents == (1, 0)
    assert den.exponents == (1, 1)
    assert (num / den).exponents == (0, -1)
