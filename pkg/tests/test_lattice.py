import pytest

from wkbcluster.errors import IndexOutOfRange, LengthMismatch, PeriodViolation
from wkbcluster.exchange import mutate_matrix
from wkbcluster.lattice import (
    CycleVector,
    PathVector,
    cycle_to_path,
    decompose_cycle,
    mutate_lattice,
    mutate_lattice_forward,
    pair_cycle_cycle,
    pair_cycle_path,
    transport_and_cvector_check,
    transported_cycles,
)
from wkbcluster.tropical import tropical_run

from conftest import random_skew

A2 = [[0, 1], [-1, 0]]


def test_dual_bases():
    for i in range(3):
        for j in range(3):
            assert pair_cycle_path(CycleVector.basis(3, i), PathVector.basis(3, j)) == (i == j)
    assert pair_cycle_path(CycleVector.zero(3), PathVector([4, 5, 6])) == 0


def test_pairing_length_mismatch():
    with pytest.raises(LengthMismatch):
        pair_cycle_path(CycleVector([1, 0]), PathVector([1, 0, 0]))


def test_intersection_form():
    assert pair_cycle_cycle(CycleVector([1, 0]), CycleVector([0, 1]), A2) == 1
    assert pair_cycle_cycle(CycleVector([0, 1]), CycleVector([1, 0]), A2) == -1
    assert pair_cycle_cycle(CycleVector([3, -2]), CycleVector([3, -2]), A2) == 0


def test_decompose_cycle():
    assert decompose_cycle(0, A2).coeffs == (0, -1)
    assert decompose_cycle(1, [[0, 0], [0, 0]]).coeffs == (0, 0)
    with pytest.raises(IndexOutOfRange):
        decompose_cycle(2, A2)


def test_decomposition_consistent_with_forms(rng):
    for _ in range(20):
        n = rng.randint(1, 5)
        B = random_skew(rng, n)
        g = CycleVector([rng.randint(-3, 3) for _ in range(n)])
        h = CycleVector([rng.randint(-3, 3) for _ in range(n)])
        # (g, h) = <g, h as paths>
        assert pair_cycle_cycle(g, h, B) == pair_cycle_path(g, cycle_to_path(h, B))
        for i in range(n):
            for k in range(n):
                assert pair_cycle_path(CycleVector.basis(n, k), decompose_cycle(i, B)) == B[k][i]


def test_flip_sends_gamma_k_to_minus_gamma_k():
    for eps in (1, -1):
        assert mutate_lattice(CycleVector.basis(2, 0), 0, eps, A2).coeffs == (-1, 0)


def test_transport_preserves_pairings(rng):
    for _ in range(40):
        n = rng.randint(2, 5)
        B = random_skew(rng, n)
        k = rng.randrange(n)
        eps = rng.choice([1, -1])
        g = CycleVector([rng.randint(-3, 3) for _ in range(n)])
        h = CycleVector([rng.randint(-3, 3) for _ in range(n)])
        b = PathVector([rng.randint(-3, 3) for _ in range(n)])
        Bp = mutate_matrix(B, k)
        tg, th, tb = (mutate_lattice(v, k, eps, B) for v in (g, h, b))
        assert pair_cycle_path(tg, tb) == pair_cycle_path(g, b)
        assert pair_cycle_cycle(tg, th, B) == pair_cycle_cycle(g, h, Bp)
        assert mutate_lattice_forward(tg, k, eps, B) == g


def test_pentagon_transport_matches_cvectors():
    ks = [0, 1, 0, 1, 0]
    signs = [1, 1, 1, -1, -1]
    got = [g.coeffs for g in transported_cycles(ks, signs, A2)]
    assert got == [(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1)]
    assert transport_and_cvector_check(ks, signs, A2, [1, 0])


def test_trivial_period_transport():
    assert transport_and_cvector_check([1, 1], [1, -1], A2, [0, 1])


def test_digon_period_transport():
    # pops transport trivially, so only the flips enter
    assert transport_and_cvector_check([0, 1, 0, 1], [1, 1, -1, -1], [[0, 0], [0, 0]], [0, 1])


def test_wrong_signs_are_rejected():
    with pytest.raises(PeriodViolation):
        transport_and_cvector_check([0, 1], [1, -1], A2)


def test_random_transport_equals_cvectors(rng):
    for _ in range(30):
        n = rng.randint(2, 4)
        B = random_skew(rng, n)
        ks = [rng.randrange(n) for _ in range(rng.randint(1, 8))]
        signs, cvecs, _ = tropical_run(B, ks)
        assert transport_and_cvector_check(ks, signs, B)
