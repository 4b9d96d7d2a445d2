"""Trajectories of ``e^{2 i theta} Q0(z) dz^2`` leaving a simple turning point.

Along a trajectory ``e^{i theta} sqrt(Q0) dz`` is real and positive, so in
arc length the curve solves ``dz/dtau = conj(e^{i theta} s) / |s|`` with
``s`` a continuously chosen branch of ``sqrt(Q0)``.  The ODE is integrated
with an adaptive Dormand--Prince 5(4) pair; every stage picks the square
root nearest to the branch at the start of the step, and a step is rejected
when ``arg Q0`` turns by more than ``pi/2`` inside it.

Independently of the integrator, ``I = int_a^z sqrt(Q0) dz`` is
accumulated by five-point Gauss--Legendre quadrature along each accepted
chord.  Since ``I`` is path independent, ``Im(e^{i theta} I)`` measures how
far the computed polyline strays from the true trajectory.

Near infinity the state moves to the chart ``w = 1/z`` where the branch
becomes ``-s z^2`` (so that ``s dz`` is unchanged).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import BranchAmbiguity, StepFailure
from .critical import CriticalSet, Pole, critical_points

# Dormand--Prince 5(4)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)

_GL_X, _GL_W = np.polynomial.legendre.leggauss(5)
_GL_X = [(float(x) + 1) / 2 for x in _GL_X]
_GL_W = [float(w) / 2 for w in _GL_W]


@dataclass
class TraceOptions:
    tol: float = 1e-10            # local error per step, relative to the distance to the nearest critical point
    start_radius: float = 1e-4    # start offset, relative to the distance to the nearest critical point
    pole_radius: float = 1e-3     # capture radius at finite poles (relative, capped by neighbours)
    tp_radius: float = 1e-6       # turning-point capture radius, relative to the scale
    R: float = 1e3                # |z| > R counts as reaching a pole at infinity
    max_length: float = 400.0     # in units of the critical-point scale
    max_steps: int = 200000
    min_step: float = 1e-14
    guard: float = 0.25           # h <= guard * distance to the nearest critical point


@dataclass
class Termination:
    kind: str                      # "pole", "infinity", "turning_point", "truncated"
    target: Optional[object] = None  # pole key or turning-point index
    direction: Optional[int] = None  # asymptotic direction index at poles of order >= 3
    angle: Optional[float] = None    # arrival angle in the local coordinate
    distance: Optional[float] = None

    def label(self) -> str:
        if self.kind in ("pole", "infinity"):
            return self.target if self.direction is None else f"{self.target}.{self.direction}"
        if self.kind == "turning_point":
            return f"a{self.target}"
        return "truncated"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "target": self.target}
        if self.direction is not None:
            d["direction"] = self.direction
        if self.distance is not None:
            d["distance"] = self.distance
        return d


@dataclass
class Approach:
    """Closest approach of a trajectory to a turning point."""

    distance: float = math.inf
    z: complex = 0j
    s: complex = 0j
    integral: complex = 0j


@dataclass
class Trajectory:
    start: int
    dir: int
    theta: float
    departure: float
    samples: List[complex]
    branch: complex
    end: Termination
    integral: complex
    drift: float       # max |Im(e^{i theta} I)| along the trajectory
    rel_drift: float   # the same divided by the flat length Re(e^{i theta} I) (at least 1)
    length: float
    steps: int
    approach: Dict[int, Approach] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "from": f"a{self.start}",
            "dir": self.dir,
            "to": self.end.label(),
            "end": self.end.to_dict(),
            "samples": [[z.real, z.imag] for z in self.samples],
            "length": self.length,
            "drift": self.drift,
            "rel_drift": self.rel_drift,
        }


def _nearest(s_ref: complex, q: complex) -> complex:
    r = cmath.sqrt(q)
    return r if (r.real * s_ref.real + r.imag * s_ref.imag) >= 0 else -r


def start_directions(C: CriticalSet, a_index: int, theta: float) -> List[float]:
    """Departure angles ``phi_k = (2/3)(k pi - theta - arg sqrt(c))``, ``c = Q0'(a)``."""
    a = C.turning_points[a_index]
    c = C.dq_at_zero(a)
    base = cmath.phase(cmath.sqrt(c))
    return [(2.0 / 3.0) * (k * math.pi - theta - base) for k in range(3)]


class _Field:
    def __init__(self, C: CriticalSet, theta: float):
        self.C = C
        self.rot = cmath.exp(1j * theta)

    def q(self, u: complex, chart: int) -> complex:
        return self.C.q(u) if chart == 0 else self.C.q_w(u)

    def rhs(self, u: complex, chart: int, s_ref: complex) -> Tuple[complex, complex, complex]:
        q = self.q(u, chart)
        if q == 0 or not cmath.isfinite(q):
            raise BranchAmbiguity(f"integrand vanishes or blows up at {u}")
        s = _nearest(s_ref, q)
        v = (self.rot * s).conjugate()
        return v / abs(v), s, q


def trace(C, a_index: int, k: int, theta: float,
          opts: Optional[TraceOptions] = None) -> Trajectory:
    """Trace the ``k``-th trajectory (``k`` in 0, 1, 2) leaving turning point ``a_index``.

    ``C`` is a :class:`CriticalSet` or anything :func:`critical_points` accepts.
    """
    if not isinstance(C, CriticalSet):
        C = critical_points(C)
    opts = opts or TraceOptions()
    F = _Field(C, theta)
    a = C.turning_points[a_index]
    phi = start_directions(C, a_index, theta)[k]
    r0 = opts.start_radius * min(1.0, C.nearest_other(a, exclude=a))
    z0 = a + r0 * cmath.exp(1j * phi)
    q0 = C.q(z0)
    s = cmath.sqrt(q0)
    v = (F.rot * s).conjugate()
    if (v * cmath.exp(-1j * phi)).real < 0:
        s = -s
        v = -v
    if (v * cmath.exp(-1j * phi)).real < 0.9 * abs(v):
        raise BranchAmbiguity(f"flow at the start of a{a_index}/{k} is not radial")
    integral = (2.0 / 3.0) * s * (z0 - a)
    drift = abs((F.rot * integral).imag)
    rel_drift = 0.0

    scale = C.scale
    R_switch = 2.0 * scale + 1.0
    inf_pole = C.infinity()
    tp = C.turning_points
    fpoles = C.finite_poles()
    cap = {p.key: opts.pole_radius * min(1.0, C.nearest_other(p.z, exclude=p.z)) for p in fpoles}
    r_tp = opts.tp_radius * scale
    max_len = opts.max_length * scale

    approach = {b: Approach() for b in range(len(tp))}
    home_armed = False

    chart, u = 0, z0
    samples = [z0]
    length, steps = 0.0, 0
    h = min(r0, 0.01 * scale)
    end: Optional[Termination] = None

    while end is None:
        if steps >= opts.max_steps or length >= max_len:
            end = Termination("truncated", distance=length)
            break
        # guard against stepping over a critical point
        if chart == 0:
            d = min([abs(u - w) for w in tp] + [abs(u - p.z) for p in fpoles] + [R_switch])
        else:
            d = abs(u) if inf_pole is not None else 1.0 / R_switch
        hmax = max(opts.guard * d, opts.min_step)
        h = min(h, hmax)
        while True:
            if h < opts.min_step:
                raise StepFailure(f"step size underflow at {u} (a{a_index}/{k}, theta={theta})")
            try:
                u_new, s_new, err, ok = _dp_step(F, u, chart, s, h)
            except BranchAmbiguity:
                ok, err = False, math.inf
            tolerance = opts.tol * min(max(1.0, abs(u)), d)
            if ok and err <= tolerance:
                break
            if not ok or not math.isfinite(err):
                h *= 0.25
            else:
                h *= max(0.2, 0.9 * (tolerance / err) ** 0.2)
        h_used = h
        if err > 0:
            h *= min(5.0, max(0.2, 0.9 * (tolerance / err) ** 0.2))
        else:
            h *= 5.0
        # pole capture: land exactly on the capture circle so that arrival
        # angles of different trajectories are compared at the same radius
        hit = None
        if chart == 0:
            for p in fpoles:
                if abs(u_new - p.z) < cap[p.key]:
                    hit = (p, p.z, cap[p.key])
                    break
        elif inf_pole is not None and abs(u_new) < 1.0 / opts.R:
            hit = (inf_pole, 0j, 1.0 / opts.R)
        if hit is not None:
            P, centre, rho = hit
            u_new, s_new = _land(F, u, chart, s, h_used, centre, rho)
        integral += _chord_integral(F, u, u_new, chart, s)
        rot_i = F.rot * integral
        drift = max(drift, abs(rot_i.imag))
        rel_drift = max(rel_drift, abs(rot_i.imag) / max(rot_i.real, 1.0))
        u_old = u
        u, s = u_new, s_new
        length += abs(u - u_old)
        steps += 1
        samples.append(u if chart == 0 else 1.0 / u)

        if hit is not None:
            ang = cmath.phase(u - centre)
            dirn = P.nearest_direction(theta, ang) if P.order >= 3 else None
            end = Termination("pole" if chart == 0 else "infinity", P.key, dirn, ang, abs(u - centre))
            break
        if chart == 0:
            z = u
            if not home_armed and abs(z - a) > 20 * r0:
                home_armed = True
            for b, w in enumerate(tp):
                if b == a_index and not home_armed:
                    continue
                dist = abs(z - w)
                ap = approach[b]
                if dist < ap.distance:
                    ap.distance, ap.z, ap.s, ap.integral = dist, z, s, integral
                if dist < r_tp:
                    end = Termination("turning_point", b, distance=dist)
                    break
            if end is not None:
                break
            if abs(z) > R_switch:
                chart, u = 1, 1.0 / z
                s = -s * z * z
        elif abs(u) > 2.0 / R_switch:
            w = u
            chart, u = 0, 1.0 / w
            s = -s * w * w

    branch = s if chart == 0 else -s * u * u
    return Trajectory(a_index, k, theta, phi, samples, branch, end, integral, drift, rel_drift,
                      length, steps, {b: ap for b, ap in approach.items() if math.isfinite(ap.distance)})


def _dp_step(F: _Field, u: complex, chart: int, s0: complex, h: float):
    q_start = F.q(u, chart)
    ks = []
    s_last = s0
    for i in range(7):
        ui = u + h * sum(a * kk for a, kk in zip(_A[i], ks)) if i else u
        ki, si, qi = F.rhs(ui, chart, s0)
        if abs(cmath.phase(qi / q_start)) > math.pi / 2:
            return u, s0, math.inf, False
        ks.append(ki)
        s_last = si
    u5 = u + h * sum(b * kk for b, kk in zip(_B5, ks))
    u4 = u + h * sum(b * kk for b, kk in zip(_B4, ks))
    # stage 7 is evaluated at u5 (first-same-as-last), so s_last is the branch there
    return u5, s_last, abs(u5 - u4), True


def _land(F: _Field, u: complex, chart: int, s: complex, h: float, centre: complex, rho: float):
    """A single Dormand--Prince step from ``u`` of the length that ends on ``|u - centre| = rho``."""
    lo, hi = 0.0, h
    g_lo = abs(u - centre) - rho
    u_hi, s_hi, _, _ = _dp_step(F, u, chart, s, hi)
    g_hi = abs(u_hi - centre) - rho
    best = (u_hi, s_hi)
    for _ in range(60):
        if g_hi >= 0 or g_lo <= 0:
            break
        t = hi - g_hi * (hi - lo) / (g_hi - g_lo)
        if not lo < t < hi:
            t = 0.5 * (lo + hi)
        u_t, s_t, _, ok = _dp_step(F, u, chart, s, t)
        g_t = abs(u_t - centre) - rho
        best = (u_t, s_t)
        if abs(g_t) <= 1e-13 * rho or not ok:
            break
        if g_t > 0:
            lo, g_lo = t, g_t
        else:
            hi, g_hi = t, g_t
    return best


def _chord_integral(F: _Field, u0: complex, u1: complex, chart: int, s0: complex) -> complex:
    du = u1 - u0
    acc = 0j
    s_ref = s0
    for x, wt in zip(_GL_X, _GL_W):
        s_ref = _nearest(s_ref, F.q(u0 + x * du, chart))
        acc += wt * s_ref
    return acc * du


def tail_to_turning_point(C: CriticalSet, b: int, z: complex, s: complex) -> complex:
    """``int_z^b sqrt(Q0) dz`` along the segment, branch continued from ``s`` at ``z``.

    The substitution ``z(u) = b + (z - b) u^2`` removes the square-root
    singularity so that Gauss--Legendre converges quickly.
    """
    w = C.turning_points[b]
    d = z - w
    acc = 0j
    s_ref = s
    nodes = sorted(zip(_GL_X, _GL_W), reverse=True)
    for x, wt in nodes:  # from u = 1 (at z) towards u = 0 (at b)
        zz = w + d * x * x
        s_ref = _nearest(s_ref, C.q(zz))
        acc += wt * s_ref * 2 * d * x
    return -acc


def trace_all(C: CriticalSet, theta: float, opts: Optional[TraceOptions] = None) -> List[Trajectory]:
    """All ``3 * #turning points`` trajectories, sorted by (turning point, direction)."""
    return [trace(C, i, k, theta, opts) for i in range(len(C.turning_points)) for k in range(3)]


def pole_arrival_angle(P: Pole, tr: Trajectory) -> float:
    if tr.end.angle is None:
        raise ValueError("trajectory does not end at a pole")
    return tr.end.angle
