"""Saddle trajectories under rotation ``Q0 -> e^{2 i theta} Q0`` and the
resulting flips and pops of labeled Stokes triangulations.

Regular saddles are located by the change of a trajectory's end point
between theta samples, bracketed by bisection and then pinned down by the
period: along the near-saddle trajectory from ``a`` to ``b`` the integral
``Z = int_a^b sqrt(Q0) dz`` is accumulated, and the saddle direction is the
``theta`` with ``e^{i theta} Z`` real.

Degenerate saddles (closed trajectories around a double pole ``p``) occur
exactly when ``e^{i theta} r`` is imaginary, ``r`` the residue of
``sqrt(Q0) dz`` at ``p``; since ``r^2`` is the leading coefficient ``A`` of
``Q0`` at ``p`` this is ``e^{2 i theta} A < 0``.

Crossing a regular saddle with increasing ``theta`` is the signed flip
``mu_k^(-)`` (decreasing: ``mu_k^(+)``), crossing a degenerate one is the
signed pop ``kappa_p^(-)`` (decreasing: ``kappa_p^(+)``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import FaceExtractionFailure, TooManyEvents
from ..exchange import ExchangeMatrix, mutate_matrix
from ..ratfun import GaussianRational
from ..surface import LabeledSignedTriangulation, Move, flip_ideal, pop
from ..wkb import Potential, voros_residue_coefficient
from .critical import CriticalSet, Pole, critical_points
from .graph import StokesGraphData, build_graph, graph_to_triangulation
from .integrate import TraceOptions, tail_to_turning_point, trace


@dataclass
class SaddleEvent:
    theta: float
    kind: str                                 # "regular" or "degenerate"
    bracket: Tuple[float, float]
    turning_points: Tuple[int, ...] = ()
    pole: Optional[str] = None
    period: Optional[complex] = None          # int_a^b sqrt(Q0) dz for regular saddles
    residue: Optional[complex] = None         # residue of sqrt(Q0) dz for degenerate ones
    exact: bool = False
    confirmed: bool = False

    def to_dict(self) -> dict:
        d = {"theta": self.theta, "kind": self.kind, "bracket": list(self.bracket),
             "confirmed": self.confirmed, "exact": self.exact}
        if self.turning_points:
            d["turning_points"] = [f"a{i}" for i in self.turning_points]
        if self.pole is not None:
            d["pole"] = self.pole
        if self.period is not None:
            d["period"] = [self.period.real, self.period.imag]
        if self.residue is not None:
            d["residue"] = [self.residue.real, self.residue.imag]
        return d


# ---------------------------------------------------------------------------
# degenerate events from residues
# ---------------------------------------------------------------------------

def residue_from_roots(C: CriticalSet, P: Pole) -> complex:
    """Residue of ``sqrt(Q0) dz`` at a finite double pole from the numerical
    roots: ``r^2 = lc(num) prod (p - a_j) / (lc(den) prod_{q != p} (p - q)^{m_q})``."""
    if P.order != 2 or P.z is None:
        raise ValueError("a finite double pole is required")
    p = P.z
    num = C.num[-1]
    for a in C.turning_points:
        num *= p - a
    den = C.den[-1]
    for q in C.finite_poles():
        if q.key != P.key:
            den *= (p - q.z) ** q.order
    return cmath.sqrt(num / den)


def exact_residue_square(C: CriticalSet, P: Pole):
    """``r^2`` as an exact number when the pole sits at a rational point, else ``None``."""
    if P.exact is None or P.order != 2:
        return None
    sc = voros_residue_coefficient(Potential([C.Q0]), P.exact)
    return sc.coeff * sc.coeff * sc.radicand


def degenerate_directions(C: CriticalSet, lo: float, hi: float) -> List[SaddleEvent]:
    """All ``theta`` in ``[lo, hi]`` where some double pole has ``e^{i theta} r`` imaginary."""
    out = []
    for P in C.double_poles():
        A = exact_residue_square(C, P)
        exact = False
        if A is not None and (isinstance(A, Fraction) or
                              (isinstance(A, GaussianRational) and A.im == 0)):
            base = 0.0 if A < 0 else math.pi / 2
            exact = True
            r = cmath.sqrt(complex(A))
        else:
            a_num = complex(A) if A is not None else P.leading
            base = (math.pi - cmath.phase(a_num)) / 2
            r = cmath.sqrt(a_num)
        j0 = math.ceil((lo - base) / math.pi - 1e-12)
        j = j0
        while base + j * math.pi <= hi + 1e-12:
            t = base + j * math.pi
            out.append(SaddleEvent(t, "degenerate", (t, t), pole=P.key, residue=r,
                                   exact=exact, confirmed=True))
            j += 1
    return sorted(out, key=lambda e: e.theta)


# ---------------------------------------------------------------------------
# regular events from trajectory end points
# ---------------------------------------------------------------------------

def _end(C, a, k, theta, opts) -> str:
    return trace(C, a, k, theta, opts).end.label()


def _refine_regular(C: CriticalSet, a: int, k: int, lo: float, hi: float,
                    opts: Optional[TraceOptions], width: float = 1e-5) -> SaddleEvent:
    lab_lo = _end(C, a, k, lo, opts)
    for _ in range(80):
        if hi - lo <= width:
            break
        mid = 0.5 * (lo + hi)
        lab = _end(C, a, k, mid, opts)
        if lab == lab_lo:
            lo = mid
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    tr = trace(C, a, k, mid, opts)
    if tr.end.kind == "turning_point":
        b = tr.end.target
    else:
        if not tr.approach:
            raise FaceExtractionFailure(f"no turning point near the trajectory a{a}/{k}")
        b = min(tr.approach, key=lambda j: tr.approach[j].distance)
    ap = tr.approach[b]
    Z = ap.integral + tail_to_turning_point(C, b, ap.z, ap.s)
    base = -cmath.phase(Z)
    j = round((mid - base) / math.pi)
    theta = base + j * math.pi
    slack = max(10 * (hi - lo), 1e-9)
    if not (lo - slack <= theta <= hi + slack):
        theta = mid  # the period does not fit the bracket; keep the bisection estimate
    check = trace(C, a, k, theta, opts)
    close = check.approach.get(b)
    confirmed = check.end.kind == "turning_point" or (
        close is not None and close.distance < 1e-5 * C.scale)
    return SaddleEvent(theta, "regular", (lo, hi), turning_points=(a, b), period=Z,
                       confirmed=confirmed)


def _regular_events(C: CriticalSet, graphs: Sequence[StokesGraphData],
                    degenerate: Sequence[SaddleEvent], opts) -> List[SaddleEvent]:
    events: List[SaddleEvent] = []
    for G0, G1 in zip(graphs, graphs[1:]):
        lo, hi = G0.theta, G1.theta
        if any(lo - 1e-12 <= d.theta <= hi + 1e-12 for d in degenerate):
            continue
        for G in (G0, G1):
            for s in G.saddles:
                if s.kind == "regular":
                    a, k = s.edges[0]
                    events.append(_at_sample(C, G, a, k, opts))
        if G0.saddles or G1.saddles:
            continue
        s0, s1 = G0.signature(), G1.signature()
        changed = sorted(key for key in s0 if s0[key] != s1[key])
        found: List[SaddleEvent] = []
        for a, k in changed:
            ev = _refine_regular(C, a, k, lo, hi, opts)
            if not any(abs(ev.theta - f.theta) < 1e-6 for f in found):
                found.append(ev)
        events.extend(found)
    uniq: List[SaddleEvent] = []
    for ev in sorted(events, key=lambda e: e.theta):
        if not any(abs(ev.theta - u.theta) < 1e-6 for u in uniq):
            uniq.append(ev)
    return uniq


def _at_sample(C, G, a, k, opts) -> SaddleEvent:
    tr = G.edge(a, k)
    b = tr.end.target
    ap = tr.approach[b]
    Z = ap.integral + tail_to_turning_point(C, b, ap.z, ap.s)
    base = -cmath.phase(Z)
    theta = base + round((G.theta - base) / math.pi) * math.pi
    return SaddleEvent(theta, "regular", (G.theta, G.theta), turning_points=(a, b), period=Z,
                       confirmed=True)


def sample_graphs(C: CriticalSet, thetas: Sequence[float],
                  opts: Optional[TraceOptions] = None) -> List[StokesGraphData]:
    return [build_graph(C, t, opts) for t in thetas]


def detect_saddle(Q0, theta_lo: float, theta_hi: float, samples: int = 9,
                  opts: Optional[TraceOptions] = None, max_events: int = 8,
                  graphs: Optional[Sequence[StokesGraphData]] = None) -> List[SaddleEvent]:
    """Saddle directions in ``[theta_lo, theta_hi]``, sorted.

    ``samples`` evenly spaced directions are traced; the interval should be
    small enough that consecutive samples are separated by at most one event.
    """
    C = Q0 if isinstance(Q0, CriticalSet) else critical_points(Q0)
    if theta_hi < theta_lo:
        theta_lo, theta_hi = theta_hi, theta_lo
    deg = degenerate_directions(C, theta_lo, theta_hi)
    if graphs is None:
        thetas = _grid(theta_lo, theta_hi, samples)
        thetas = _avoid(thetas, [d.theta for d in deg])
        graphs = sample_graphs(C, thetas, opts)
    reg = _regular_events(C, graphs, deg, opts)
    events = sorted(deg + reg, key=lambda e: e.theta)
    if len(events) > max_events:
        raise TooManyEvents(f"{len(events)} saddle events in [{theta_lo}, {theta_hi}]")
    return events


def _grid(lo: float, hi: float, n: int) -> List[float]:
    if n < 2:
        raise ValueError("at least two theta samples are needed")
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _avoid(thetas: List[float], bad: Sequence[float], gap: float = 1e-3) -> List[float]:
    """Drop samples sitting on a degenerate direction (closed trajectories never terminate)."""
    return [t for t in thetas if all(abs(t - b) > gap for b in bad)]


# ---------------------------------------------------------------------------
# label propagation and the rotation log
# ---------------------------------------------------------------------------

def _strip_keys(G: StokesGraphData) -> Dict[int, Tuple]:
    return {r.label: (tuple(sorted(r.turning_points)), tuple(sorted(r.ends)))
            for r in G.strips()}


def propagate_labels(prev: StokesGraphData, G: StokesGraphData) -> List[int]:
    """Relabel the strips of ``G`` to agree with ``prev`` on matching strips
    (same turning points and same ends); returns the labels of ``G`` that
    could not be matched (in their new numbering)."""
    kp = _strip_keys(prev)
    kg = _strip_keys(G)
    by_key: Dict[Tuple, List[int]] = {}
    for lab, key in sorted(kp.items()):
        by_key.setdefault(key, []).append(lab)
    new: Dict[int, int] = {}
    used = set()
    for lab, key in sorted(kg.items()):
        cands = [c for c in by_key.get(key, []) if c not in used]
        if cands:
            new[lab] = cands[0]
            used.add(cands[0])
    free = [c for c in sorted(kp) if c not in used]
    unmatched_old = [lab for lab in sorted(kg) if lab not in new]
    if len(free) != len(unmatched_old):
        raise FaceExtractionFailure("strip counts differ between consecutive directions")
    for lab, c in zip(unmatched_old, free):
        new[lab] = c
    for r in G.regions:
        if r.label is not None:
            r.label = new[r.label]
    return sorted(new[lab] for lab in unmatched_old)


@dataclass
class LoggedMove:
    move: Move
    event: SaddleEvent
    verified: bool
    detail: str = ""

    def to_dict(self) -> dict:
        d = self.move.to_dict()
        d.update({"theta": self.event.theta, "event": self.event.kind,
                  "verified": self.verified})
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class RotationResult:
    critical: CriticalSet
    thetas: List[float]
    graphs: List[StokesGraphData]
    events: List[SaddleEvent]
    moves: List[LoggedMove] = field(default_factory=list)
    triangulations: List[Optional[Tuple[LabeledSignedTriangulation, ExchangeMatrix]]] = field(
        default_factory=list)

    @property
    def verified(self) -> bool:
        return all(m.verified for m in self.moves)

    def to_dict(self) -> dict:
        return {
            "thetas": self.thetas,
            "graphs": [G.to_dict() for G in self.graphs],
            "events": [e.to_dict() for e in self.events],
            "moves": [m.to_dict() for m in self.moves],
            "matrices": [None if t is None else t[1].tolist() for t in self.triangulations],
        }


def rotate(Q0, theta_lo: float, theta_hi: float, steps: int = 9,
           opts: Optional[TraceOptions] = None) -> RotationResult:
    """Sweep ``theta`` from ``theta_lo`` to ``theta_hi`` (either direction).

    Graphs are built at ``steps`` sample directions (samples on a degenerate
    direction are skipped), strip labels are carried along by matching,
    and every saddle event between consecutive saddle-free samples is
    logged as a signed flip or pop and checked against the combinatorial
    move on the triangulation and on the exchange matrix.
    """
    C = Q0 if isinstance(Q0, CriticalSet) else critical_points(Q0)
    lo, hi = min(theta_lo, theta_hi), max(theta_lo, theta_hi)
    deg = degenerate_directions(C, lo, hi)
    thetas = _avoid(_grid(theta_lo, theta_hi, steps), [d.theta for d in deg])
    graphs = sample_graphs(C, thetas, opts)
    ordered = sorted(graphs, key=lambda G: G.theta)
    events = detect_saddle(C, lo, hi, opts=opts, graphs=ordered)
    res = RotationResult(C, thetas, graphs, events)
    increasing = theta_hi >= theta_lo
    eps = -1 if increasing else 1

    prev: Optional[StokesGraphData] = None
    prev_T = None
    for G in graphs:
        if not G.saddle_free:
            res.triangulations.append(None)
            continue
        if prev is None:
            T, B = graph_to_triangulation(G)
            res.triangulations.append((T, B))
            prev, prev_T = G, (T, B)
            continue
        a, b = sorted((prev.theta, G.theta))
        between = [e for e in events if a < e.theta < b]
        if len(between) > 1:
            raise TooManyEvents(f"{len(between)} events between samples {a} and {b}")
        unmatched = propagate_labels(prev, G)
        T, B = graph_to_triangulation(G)
        T0, B0 = prev_T
        if not between:
            ok = (T == T0)
            if not ok:
                raise FaceExtractionFailure(
                    f"triangulation changed between {prev.theta} and {G.theta} without an event")
        else:
            ev = between[0]
            if ev.kind == "regular":
                k = unmatched[0] if len(unmatched) == 1 else None
                if k is None:
                    res.moves.append(LoggedMove(Move("flip", 0, eps), ev, False,
                                                f"{len(unmatched)} strips changed"))
                else:
                    expected = flip_ideal(T0, k)
                    ok_T = expected == T
                    ok_B = mutate_matrix(B0, k) == B
                    res.moves.append(LoggedMove(Move("flip", k, eps), ev, ok_T and ok_B,
                                                "" if ok_T and ok_B else
                                                f"triangulation {ok_T}, matrix {ok_B}"))
            else:
                p = ev.pole
                try:
                    i, j = T.self_folded_at(p)
                except Exception as exc:  # no self-folded triangle after the event
                    res.moves.append(LoggedMove(Move("pop", p, eps), ev, False, str(exc)))
                else:
                    # the inner and outer regions at p exchange their labels
                    for r in G.regions:
                        if r.label == i:
                            r.label = j
                        elif r.label == j:
                            r.label = i
                    T, B = graph_to_triangulation(G)
                    expected = pop(T0, p).with_signs({p: 1})
                    ok = expected == T and B0 == B
                    res.moves.append(LoggedMove(Move("pop", p, eps), ev, ok))
        res.triangulations.append((T, B))
        prev, prev_T = G, (T, B)
    return res


def numeric_residue_check(C: CriticalSet) -> List[Tuple[str, complex, complex]]:
    """``(pole, exact r, numeric r)`` for every finite double pole at a rational point,
    numeric ``r`` chosen on the same branch as the exact one."""
    out = []
    for P in C.double_poles():
        if P.z is None or P.exact is None:
            continue
        sc = voros_residue_coefficient(Potential([C.Q0]), P.exact)
        r_exact = sc.value()
        r_num = residue_from_roots(C, P)
        if abs(r_num - r_exact) > abs(r_num + r_exact):
            r_num = -r_num
        out.append((P.key, r_exact, r_num))
    return out
