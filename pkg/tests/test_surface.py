import pytest

from wkbcluster.cluster import tropical_signs
from wkbcluster.errors import InnerArcNotFlippable, NotSelfFolded
from wkbcluster.exchange import ExchangeMatrix, mutate_matrix
from wkbcluster.surface import (
    LabeledSignedTriangulation,
    StokesTriangulationState,
    adjacency_matrix,
    execute,
    find_relabeling,
    flip_ideal,
    flip_tagged,
    lift_period,
    octagon_example,
    pentagon,
    polygon_fan,
    pop,
    punctured_digon,
    punctured_octagon_example,
    punctured_square,
    signed_flip_stokes,
    signed_pop_stokes,
)

OCTAGON_B = [
    [0, 1, -1, 0, 0],
    [-1, 0, 1, 0, 1],
    [1, -1, 0, 1, 0],
    [0, 0, -1, 0, 0],
    [0, -1, 0, 0, 0],
]
PUNCTURED_OCTAGON_B = [
    [0, 1, 0, 0, 0, 0, 0, 0],
    [-1, 0, 1, -1, -1, 0, 0, 0],
    [0, -1, 0, 1, 1, -1, 1, 0],
    [0, 1, -1, 0, 0, 0, 0, 0],
    [0, 1, -1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, -1, 0],
    [0, 0, -1, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, -1, 0],
]


def test_adjacency_matrices_of_octagons():
    assert adjacency_matrix(octagon_example()).tolist() == OCTAGON_B
    assert adjacency_matrix(punctured_octagon_example()).tolist() == PUNCTURED_OCTAGON_B


def test_square_with_one_diagonal():
    T = polygon_fan(4)
    assert adjacency_matrix(T).tolist() == [[0]]
    F = flip_ideal(T, 0)
    assert not F.tagged_equal(T)
    assert flip_ideal(F, 0).tagged_equal(T)


def test_inner_arc_is_not_flippable():
    with pytest.raises(InnerArcNotFlippable):
        flip_ideal(punctured_octagon_example(), 4)


def test_pop_swaps_labels_and_sign():
    T = punctured_digon()
    i, j = T.self_folded_at("p")
    P = pop(T, "p")
    assert P.signs["p"] == -T.signs["p"]
    assert P.self_folded_at("p") == (j, i)
    assert adjacency_matrix(P) == adjacency_matrix(T)
    assert pop(P, "p").tagged_equal(T)


def test_pop_needs_self_folded_triangle():
    with pytest.raises(NotSelfFolded):
        pop(punctured_square(), "p")


def test_tagged_flips_around_the_punctured_digon():
    T = punctured_digon()
    S = T
    for k in [0, 1, 0, 1]:
        S2 = flip_tagged(S, k)
        assert adjacency_matrix(S2) == mutate_matrix(adjacency_matrix(S), k)
        S = S2
    # back to the same tagged triangulation; as signed ones they differ by a pop
    assert S.tagged_equal(T)
    assert S.signs["p"] == -T.signs["p"]


def test_tagged_flip_of_plain_arc_is_ideal_flip():
    T = punctured_octagon_example()
    assert flip_tagged(T, 0).tagged_equal(flip_ideal(T, 0))


def test_random_polygon_flips_mutate_matrix(rng):
    for m in range(4, 9):
        T = polygon_fan(m)
        for _ in range(15):
            k = rng.randrange(T.n)
            T2 = flip_tagged(T, k)
            assert adjacency_matrix(T2) == mutate_matrix(adjacency_matrix(T), k)
            T = T2


def test_random_punctured_flips_mutate_matrix(rng):
    T = punctured_square()
    for _ in range(30):
        k = rng.randrange(T.n)
        T2 = flip_tagged(T, k)
        assert adjacency_matrix(T2) == mutate_matrix(adjacency_matrix(T), k)
        T = T2


def test_signed_flips_are_inverse():
    St = StokesTriangulationState(pentagon())
    for k in range(St.n):
        for eps in (1, -1):
            back = signed_flip_stokes(signed_flip_stokes(St, k, eps), k, -eps)
            assert back.signed.tagged_equal(St.signed)
            assert back.ledger == St.ledger


def test_signed_pops_are_inverse():
    St = StokesTriangulationState(punctured_digon())
    for eps in (1, -1):
        back = signed_pop_stokes(signed_pop_stokes(St, "p", eps), "p", -eps)
        assert back.signed.tagged_equal(St.signed)
        assert back.ledger == St.ledger


def test_pentagon_signed_sequence_returns_relabeled():
    St = StokesTriangulationState(pentagon())
    ks = [0, 1, 0, 1, 0]
    moves = lift_period(St, ks, [1, 1, 1, -1, -1], [1, 0])
    assert [m.kind for m in moves] == ["flip"] * 5
    states = execute(St, moves)
    B = adjacency_matrix(St.signed)
    for m, a, b in zip(moves, states, states[1:]):
        assert adjacency_matrix(b.signed) == mutate_matrix(adjacency_matrix(a.signed), m.target)
    assert states[-1].signed.tagged_equal(St.signed.relabeled([1, 0])) or \
        find_relabeling(states[-1].signed, St.signed) == [1, 0]
    assert adjacency_matrix(states[-1].signed) == B.permuted([1, 0])


def test_digon_lift_with_pops():
    St = StokesTriangulationState(punctured_digon())
    ks = [0, 1, 0, 1]
    signs = tropical_signs(adjacency_matrix(St.signed), ks)
    moves = lift_period(St, ks, signs, [0, 1])
    assert [str(m) for m in moves] == [
        "mu_1^(+)", "mu_2^(+)", "kappa_p^(+)", "mu_1^(-)", "mu_2^(-)", "kappa_p^(-)"]
    states = execute(St, moves)
    assert states[-1].signed.tagged_equal(St.signed)


def test_triangulation_json_round_trip():
    T = punctured_octagon_example()
    U = LabeledSignedTriangulation.from_dict(T.to_dict())
    assert U.tagged_equal(T)
    assert adjacency_matrix(U) == ExchangeMatrix(PUNCTURED_OCTAGON_B)
