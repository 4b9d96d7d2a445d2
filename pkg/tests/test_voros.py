import pytest

from wkbcluster.cluster import initial_seed, signed_mutation, x_name, y_name
from wkbcluster.errors import PeriodViolation
from wkbcluster.lattice import CycleVector
from wkbcluster.ratfun import rf_equal
from wkbcluster.surface import StokesTriangulationState, adjacency_matrix, lift_period, pentagon, punctured_digon
from wkbcluster.cluster import tropical_signs
from wkbcluster.voros import (
    VorosField,
    chain_closes,
    compose,
    cycle_symbol,
    flip_iso,
    identity_from_period,
    pop_auto,
    pop_iso,
    stokes_auto,
    transport_automorphism_check,
    voros_signed_mutation,
    voros_signed_pop,
)

from conftest import random_skew

A2 = [[0, 1], [-1, 0]]


def test_cycle_symbol_is_yhat():
    V = VorosField(A2)
    F = V.field
    assert rf_equal(cycle_symbol(V, CycleVector([1, 0])), F.parse("y1/x2"))
    assert rf_equal(cycle_symbol(V, CycleVector([0, 0])), F.one())


def test_cycle_symbol_additive(rng):
    for _ in range(10):
        n = rng.randint(2, 4)
        V = VorosField(random_skew(rng, n))
        g = CycleVector([rng.randint(-2, 2) for _ in range(n)])
        h = CycleVector([rng.randint(-2, 2) for _ in range(n)])
        gh = CycleVector([a + b for a, b in zip(g, h)])
        assert rf_equal(cycle_symbol(V, gh), cycle_symbol(V, g) * cycle_symbol(V, h))


def test_stokes_auto_basis_cycle():
    V = VorosField(A2)
    F = V.field
    for eps in (1, -1):
        S = stokes_auto(V, CycleVector([1, 0]), eps)
        yh = F.parse("y1/x2") ** eps
        assert rf_equal(S["x1"], F.gen("x1") / (1 + yh))
        assert rf_equal(S["x2"], F.gen("x2"))
        assert rf_equal(S["y1"], F.gen("y1"))


def test_minus_is_inverse_of_plus_on_negated_cycle(rng):
    for _ in range(8):
        n = rng.randint(2, 3)
        V = VorosField(random_skew(rng, n))
        g = CycleVector([rng.randint(-1, 1) for _ in range(n)])
        if g.is_zero():
            continue
        minus_g = CycleVector([-c for c in g])
        assert compose(stokes_auto(V, g, -1), stokes_auto(V, minus_g, 1)).is_identity()


def test_orthogonal_cycles_commute():
    B = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
    V = VorosField(B)
    g, h = CycleVector([1, 0, 0]), CycleVector([0, 0, 1])
    a = compose(stokes_auto(V, g, 1), stokes_auto(V, h, 1))
    b = compose(stokes_auto(V, h, 1), stokes_auto(V, g, 1))
    assert a.equals(b)


def test_pop_auto_fixes_yhat_and_inverts():
    V = VorosField([[0, 0], [0, 0]], punctures=["p"])
    K = pop_auto(V, "p", 1, 0, 1)
    for i in range(2):
        assert rf_equal(K(V.yhat(i)), V.yhat(i))
    F = V.field
    assert rf_equal(K["x2"], F.gen("x2") * (1 - F.gen("yt_p")))
    assert rf_equal(K["x1"], F.gen("x1") / (1 - F.gen("yt_p")))


def test_signed_pops_compose_to_identity():
    # kappa^(+) followed by kappa^(-): the labels swap at each pop
    V = VorosField([[0, 0], [0, 0]], punctures=["p"])
    for eps in (1, -1):
        first, V2 = voros_signed_pop(V, "p", 1, 0, eps)
        second, _ = voros_signed_pop(V2, "p", 0, 1, -eps)
        assert compose(first, second).is_identity()


def test_pop_iso_inverts_ytilde():
    V = VorosField([[0, 0], [0, 0]], punctures=["p"])
    tau = pop_iso(V, "p")
    assert rf_equal(tau["yt_p"], V.yt("p") ** -1)
    assert rf_equal(tau["x1"], V.x(0))


def test_flip_iso_on_y():
    V = VorosField(A2)
    tau = flip_iso(V, 0, 1)
    F = V.field
    assert rf_equal(tau["y1"], F.parse("1/y1"))
    assert rf_equal(tau["y2"], F.parse("y1*y2"))


def test_voros_mutation_matches_signed_mutation():
    V = VorosField(A2)
    s = initial_seed(A2, "tropical")
    for k in range(2):
        for eps in (1, -1):
            phi, V2 = voros_signed_mutation(V, k, eps)
            m = signed_mutation(s, k, eps)
            for i in range(2):
                assert rf_equal(phi[x_name(i)], m.x[i])
                assert rf_equal(phi[y_name(i)], m.y_field(i))
            assert V2.B == m.B


def test_voros_mutation_yhat_independent_of_sign():
    V = VorosField(A2)
    for k in range(2):
        p, V2 = voros_signed_mutation(V, k, 1)
        m, _ = voros_signed_mutation(V, k, -1)
        for i in range(2):
            assert rf_equal(p(V2.yhat(i)), m(V2.yhat(i)))


def test_transport_commutes_with_stokes(rng):
    for _ in range(10):
        n = rng.randint(2, 3)
        V = VorosField(random_skew(rng, n))
        g = CycleVector([rng.randint(-1, 1) for _ in range(n)])
        if g.is_zero():
            continue
        assert transport_automorphism_check(V, rng.randrange(n), rng.choice([1, -1]), g,
                                            rng.choice([1, -1]))


def test_pentagon_identity():
    report, ok = identity_from_period(A2, [0, 1, 0, 1, 0], [1, 0])
    assert ok
    assert report.balanced() == "S_{g2} S_{g1} = S_{g1} S_{g1+g2} S_{g2}"
    assert [s.c for s in report.steps] == [(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1)]


def test_trivial_identity():
    report, ok = identity_from_period(A2, [0, 0], [0, 1])
    assert ok
    assert report.product() == "S^(+)_{g1} S^(-)_{-g1} = id"


def test_non_period_rejected():
    with pytest.raises(PeriodViolation):
        identity_from_period(A2, [0, 1], [0, 1])


def test_chains_close():
    P = StokesTriangulationState(pentagon())
    moves = lift_period(P, [0, 1, 0, 1, 0], [1, 1, 1, -1, -1], [1, 0])
    assert chain_closes(P, moves, [1, 0])
    D = StokesTriangulationState(punctured_digon())
    ks = [0, 1, 0, 1]
    moves = lift_period(D, ks, tropical_signs(adjacency_matrix(D.signed), ks), [0, 1])
    assert chain_closes(D, moves, [0, 1])
