import math

import pytest

from wkbcluster.errors import NonSimpleZero, PoleOrderTooLow, SaddlePresent
from wkbcluster.exchange import ExchangeMatrix, mutate_matrix
from wkbcluster.surface import flip_ideal
from wkbcluster.tracer import (
    DEGENERATE_STRIP,
    build_graph,
    critical_points,
    detect_saddle,
    graph_svg,
    graph_to_triangulation,
    marked_points,
    numeric_residue_check,
    rotate,
    start_directions,
    trace,
)
from wkbcluster.tracer.critical import squarefree_decomposition
from wkbcluster.wkb import airy, weber

CUBIC = "z*(z+1)*(z+i)"
DEGENERATE = "-(z+2*i)*(z-3*i)/z^2"


def close(a, b, tol=1e-12):
    return abs(a - b) < tol


def test_critical_points_airy():
    C = critical_points(airy())
    assert len(C.turning_points) == 1 and close(C.turning_points[0], 0)
    assert [(p.key, p.order) for p in C.poles] == [("inf", 5)]


def test_critical_points_weber():
    C = critical_points(weber())
    assert sorted(C.turning_points, key=lambda z: z.real) == pytest.approx([-1, 1])
    assert [(p.key, p.order) for p in C.poles] == [("inf", 6)]


def test_critical_points_degenerate_fixture():
    C = critical_points(DEGENERATE)
    tps = sorted(C.turning_points, key=lambda z: z.imag)
    assert close(tps[0], -2j) and close(tps[1], 3j)
    assert [(p.key, p.order) for p in C.poles] == [("p0", 2), ("inf", 4)]
    assert C.pole("p0").z == 0


def test_critical_point_errors():
    with pytest.raises(NonSimpleZero):
        critical_points("(z-1)^2*(z+1)")
    with pytest.raises(PoleOrderTooLow):
        critical_points("(z-1)/z")


def test_squarefree_decomposition():
    # (z - 1)^2 (z + 2)
    out = squarefree_decomposition([2, -3, 0, 1])
    assert [(m, [float(c) for c in f]) for m, f in out] == [(1, [2.0, 1.0]), (2, [-1.0, 1.0])]


def test_airy_start_directions():
    C = critical_points(airy())
    phis = [p % (2 * math.pi) for p in start_directions(C, 0, 0.0)]
    assert sorted(phis) == pytest.approx([0, 2 * math.pi / 3, 4 * math.pi / 3])


def test_airy_trajectories_reach_infinity():
    for k in range(3):
        tr = trace(airy(), 0, k, 0.0)
        assert tr.end.kind == "infinity" and tr.end.target == "inf"
        assert tr.rel_drift < 1e-9


def test_weber_saddle_at_zero():
    C = critical_points(weber())
    a_plus = min(range(2), key=lambda i: abs(C.turning_points[i] - 1))
    ends = [trace(C, a_plus, k, 0.0).end for k in range(3)]
    assert sum(e.kind == "turning_point" for e in ends) == 1


def test_weber_rotated_is_saddle_free():
    G = build_graph(weber(), math.pi / 10)
    assert G.saddle_free
    assert all(e.end.target == "inf" for e in G.edges)
    assert G.census() == (1, 4)


def test_airy_graph():
    G = build_graph(airy(), 0.0)
    assert G.census() == (0, 3)
    T, B = graph_to_triangulation(G)
    assert T.n == 0 and len(T.triangles) == 1
    assert len(marked_points(G.critical)) == 3


def test_cubic_graph_is_a_pentagon():
    G = build_graph(CUBIC, 0.0)
    assert G.census() == (2, 5)
    T, B = graph_to_triangulation(G)
    assert len(marked_points(G.critical)) == 5
    assert B in (ExchangeMatrix([[0, 1], [-1, 0]]), ExchangeMatrix([[0, -1], [1, 0]]))


def test_degenerate_graph_off_the_event():
    for theta in (-0.1, 0.1):
        G = build_graph(DEGENERATE, theta)
        assert G.census() == (2, 2)
        assert sum(r.kind == DEGENERATE_STRIP for r in G.regions) == 1
        T, B = graph_to_triangulation(G)
        assert T.punctures == ["p0"] or list(T.punctures) == ["p0"]
        assert B == ExchangeMatrix.zero(2)


def test_saddle_graph_refuses_triangulation():
    G = build_graph(weber(), 0.0)
    assert not G.saddle_free
    with pytest.raises(SaddlePresent):
        graph_to_triangulation(G)


def test_detect_saddle_weber():
    events = detect_saddle(weber(), -math.pi / 10, math.pi / 10)
    assert [e.kind for e in events] == ["regular"]
    assert abs(events[0].theta) < 1e-6


def test_detect_saddle_degenerate_is_exact():
    events = detect_saddle(DEGENERATE, -0.15, 0.15)
    assert [e.kind for e in events] == ["degenerate"]
    assert events[0].exact and events[0].theta == 0.0


def test_degenerate_fixture_also_has_regular_saddles():
    # the turning points are joined at theta = -arg Z with Z = int sqrt(Q0) dz
    events = detect_saddle(DEGENERATE, 0.1, 0.3)
    assert [e.kind for e in events] == ["regular"]
    Z = events[0].period
    assert abs(Z.imag + math.pi / 2) < 1e-6
    assert abs(events[0].theta - math.atan2(math.pi / 2, Z.real)) < 1e-6


def test_detect_saddle_airy_none():
    assert detect_saddle(airy(), -math.pi / 6, math.pi / 6) == []


def test_residue_exact_against_roots():
    C = critical_points(DEGENERATE)
    for key, exact, numeric in numeric_residue_check(C):
        assert abs(exact - numeric) < 1e-12
        if key == "p0":
            assert abs(exact ** 2 + 6) < 1e-12


def test_weber_sweep_is_one_flip():
    res = rotate(weber(), -math.pi / 10, math.pi / 10, 5)
    assert len(res.moves) == 1
    m = res.moves[0].move
    assert m.kind == "flip" and m.sign == -1
    before = [T for t, T in zip(res.thetas, res.triangulations) if t < 0 and T is not None][-1]
    after = [T for t, T in zip(res.thetas, res.triangulations) if t > 0 and T is not None][0]
    T0, T1 = before, after
    assert flip_ideal(T0[0], m.target) == T1[0]
    assert mutate_matrix(T0[1], m.target) == T1[1]


def test_degenerate_sweep_is_one_pop():
    res = rotate(DEGENERATE, -0.2, 0.2, 5)
    assert [m.move.kind for m in res.moves] == ["pop"]
    assert res.verified


def test_graph_json_and_svg():
    G = build_graph(airy(), 0.0)
    d = G.to_dict()
    assert set(d) >= {"theta", "turning_points", "poles", "edges", "regions", "saddles"}
    assert len(d["edges"]) == 3
    svg = graph_svg(G)
    assert svg.startswith("<svg") and svg.count("<polyline") == 3
