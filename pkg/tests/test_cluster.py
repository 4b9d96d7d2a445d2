import pytest

from wkbcluster.cluster import (
    ExtendedSeed,
    check_period,
    initial_extended_seed,
    initial_seed,
    local_rescaling,
    mutate_seed,
    mutate_seed_eps,
    run_sequence,
    seeds_match,
    signed_monomial_mutation,
    signed_mutation,
    signed_pop_seed,
    yhat,
    yhat_mutation,
)
from wkbcluster.errors import IndexOutOfRange, NonMonomialInput
from wkbcluster.exchange import ExchangeMatrix, mutate_matrix, quiver_from_matrix, quiver_roundtrip
from wkbcluster.ratfun import rf_equal
from wkbcluster.surface import StokesTriangulationState, punctured_digon
from wkbcluster.tropical import tropical_run

from conftest import random_skew

A2 = [[0, 1], [-1, 0]]
PENTAGON = [0, 1, 0, 1, 0]


def parse(s, text):
    return s.field.parse(text)


def test_mutate_matrix_examples():
    assert mutate_matrix(A2, 0).tolist() == [[0, -1], [1, 0]]
    B = [[0, -1, 2], [1, 0, -1], [-2, 1, 0]]
    assert mutate_matrix(B, 0).tolist() == [[0, 1, -2], [-1, 0, 1], [2, -1, 0]]


def test_mutate_matrix_bad_index():
    with pytest.raises(IndexOutOfRange):
        mutate_matrix(A2, 2)


def test_quiver_double_arrow():
    B = [[0, -1, 2], [1, 0, -1], [-2, 1, 0]]
    Q = quiver_from_matrix(B)
    assert Q.multiplicity(0, 2) == 2
    assert Q.multiplicity(2, 0) == 0
    assert quiver_roundtrip(B) == ExchangeMatrix(B)
    assert quiver_roundtrip([[0, 0], [0, 0]]) == ExchangeMatrix.zero(2)


def test_first_mutation_closed_form():
    s = mutate_seed(initial_seed(A2), 0)
    assert rf_equal(s.x[0], parse(s, "(x2 + y1)/(x1*(1 + y1))"))
    assert rf_equal(s.y_field(1), parse(s, "y1*y2/(1 + y1)"))


def test_yhat_initial():
    s = initial_seed(A2)
    yh = yhat(s)
    assert rf_equal(yh[0], parse(s, "y1/x2"))
    assert rf_equal(yh[1], parse(s, "y2*x1"))
    s0 = initial_seed([[0, 0], [0, 0]])
    assert all(rf_equal(a, s0.y_field(i)) for i, a in enumerate(yhat(s0)))


def test_mutation_involution():
    s = initial_seed([[0, 2, -1], [-2, 0, 1], [1, -1, 0]])
    for k in range(3):
        assert seeds_match(mutate_seed(mutate_seed(s, k), k), s)


def test_eps_expression_independent_of_sign():
    s = run_sequence(initial_seed(A2), [0, 1])[-1]
    for k in range(2):
        a = mutate_seed_eps(s, k, 1)
        b = mutate_seed_eps(s, k, -1)
        assert seeds_match(a, b)
        assert seeds_match(a, mutate_seed(s, k))


def test_signed_monomial_mutation_a2():
    s = initial_seed(A2, "tropical")
    m = signed_monomial_mutation(s, 0, 1)
    assert [v.exponents for v in m.y] == [(-1, 0), (1, 1)]
    # x'_1 = x_1^{-1} x_2^{[-b_21]_+} = x_2 / x_1
    assert rf_equal(m.x[0], parse(s, "x2/x1"))
    assert rf_equal(m.x[1], parse(s, "x2"))


def test_signed_monomial_mutation_rejects_non_monomial():
    s = initial_seed(A2)
    s = s.replace(x=(parse(s, "x1 + 1"), s.x[1]))
    with pytest.raises(NonMonomialInput):
        signed_monomial_mutation(s, 0, 1)


def test_signed_monomial_follows_pentagon_tropical_y():
    signs, _, ys = tropical_run(A2, PENTAGON)
    s = initial_seed(A2, "tropical")
    for t, k in enumerate(PENTAGON):
        s = signed_monomial_mutation(s, k, signs[t])
        assert [v.exponents for v in s.y] == [v.exponents for v in ys[t + 1]]


def test_signed_mutation_tropical_signs_match_exchange_relations():
    # with eps = tropical sign the signed mutation is the ordinary one in Trop
    signs, _, _ = tropical_run(A2, PENTAGON)
    a = b = initial_seed(A2, "tropical")
    for t, k in enumerate(PENTAGON):
        a = signed_mutation(a, k, signs[t])
        b = mutate_seed(b, k)
        assert all(rf_equal(u, v) for u, v in zip(a.x, b.x))


def test_signed_mutations_are_inverse(rng):
    for _ in range(10):
        n = rng.randint(2, 4)
        s = initial_seed(random_skew(rng, n), "tropical")
        k = rng.randrange(n)
        for eps in (1, -1):
            back = signed_mutation(signed_mutation(s, k, eps), k, -eps)
            assert seeds_match(back, s)


def test_yhat_mutates_like_coefficients(rng):
    for _ in range(10):
        n = rng.randint(2, 4)
        s = initial_seed(random_skew(rng, n))
        k = rng.randrange(n)
        direct = yhat(mutate_seed(s, k))
        via = yhat_mutation(yhat(s), s.B, k)
        assert all(rf_equal(a, b) for a, b in zip(direct, via))


def test_signed_yhat_independent_of_sign(rng):
    for _ in range(10):
        n = rng.randint(2, 4)
        s = initial_seed(random_skew(rng, n), "tropical")
        k = rng.randrange(n)
        for eps in (1, -1):
            direct = yhat(signed_mutation(s, k, eps))
            via = yhat_mutation(yhat(s), s.B, k, eps)
            assert all(rf_equal(a, b) for a, b in zip(direct, via))


def test_check_period_examples():
    s = initial_seed(A2)
    assert check_period(s, PENTAGON, [1, 0])
    assert check_period(s, [0, 0], [0, 1])
    assert not check_period(s, [0], [0, 1])


def test_pentagon_final_seed():
    s = run_sequence(initial_seed(A2), PENTAGON)[-1]
    assert rf_equal(s.x[0], parse(s, "x2")) and rf_equal(s.x[1], parse(s, "x1"))
    assert rf_equal(s.y_field(0), parse(s, "y2")) and rf_equal(s.y_field(1), parse(s, "y1"))


def test_seed_json_round_trip():
    s = run_sequence(initial_seed(A2), [0, 1])[-1]
    d = s.to_dict()
    assert set(d) >= {"n", "B", "x", "y"}
    t = type(s).from_dict(d)
    assert seeds_match(s, t)


def _digon_seed():
    return initial_extended_seed(StokesTriangulationState(punctured_digon()))


def test_signed_pop_factor_on_digon():
    es = _digon_seed()
    i, j = es.triangulation.self_folded_at("p")
    out = signed_pop_seed(es, "p", 1)
    F = es.seed.field
    assert rf_equal(out.seed.x[i], es.seed.x[i] * (1 - F.gen("yt_p")))
    assert rf_equal(out.seed.x[j], es.seed.x[j] / (1 - F.gen("yt_p")))
    assert out.ytilde["p"] == -1


def test_signed_pops_are_inverse():
    es = _digon_seed()
    for eps in (1, -1):
        back = signed_pop_seed(signed_pop_seed(es, "p", eps), "p", -eps)
        assert isinstance(back, ExtendedSeed)
        assert seeds_match(back.seed, es.seed)
        assert back.ytilde == es.ytilde


def test_local_rescaling_commutes_with_signed_mutation():
    es = _digon_seed()
    T = es.triangulation
    c = es.seed.field.parse("5/3")
    for k in range(es.n):
        if T.is_inner(k):
            continue
        for eps in (1, -1):
            after = signed_mutation(es, k, eps)
            a = local_rescaling(after.seed.x, after.triangulation, "p", c)
            pre = es.seed.replace(x=local_rescaling(es.seed.x, T, "p", c))
            b = signed_mutation(pre, k, eps).x
            assert all(rf_equal(u, v) for u, v in zip(a, b))
