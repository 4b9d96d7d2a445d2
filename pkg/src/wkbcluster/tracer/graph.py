"""Stokes graphs: faces from the rotation system, region types, triangulations.

The traced trajectories form an embedded graph on the sphere whose vertices
are the turning points and the poles.  Half-edges are sorted by angle at
each vertex (departure angle at a turning point, arrival angle in the local
coordinate at a pole; the chart ``w = 1/z`` at infinity is orientation
preserving, so its angles can be used as they are).  Faces are traced with
the face on the left: after arriving at ``v`` along ``h`` the walk leaves
along the clockwise neighbour of the reverse of ``h``.

A face whose boundary passes two turning points is a horizontal strip
(degenerate when both are the same turning point); a face passing one
turning point is a half plane.  Every turning point then becomes a
triangle whose three sides are the faces between consecutive edges.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..errors import FaceExtractionFailure, MalformedTriangulation, SaddlePresent
from ..exchange import ExchangeMatrix
from ..surface import LabeledSignedTriangulation, Triangle, adjacency_matrix
from .critical import CriticalSet, critical_points
from .integrate import TraceOptions, Trajectory, trace_all

STRIP = "horizontal strip"
DEGENERATE_STRIP = "degenerate horizontal strip"
HALF_PLANE = "half plane"
RING = "degenerate ring domain"


@dataclass
class Region:
    index: int
    kind: str
    turning_points: Tuple[int, ...]
    ends: Tuple[str, ...]
    boundary: Tuple[int, ...]
    label: Optional[int] = None

    @property
    def is_strip(self) -> bool:
        return self.kind in (STRIP, DEGENERATE_STRIP)

    def to_dict(self) -> dict:
        return {
            "type": self.kind,
            "label": None if self.label is None else self.label + 1,
            "turning_points": [f"a{i}" for i in self.turning_points],
            "ends": list(self.ends),
        }


@dataclass
class Saddle:
    kind: str            # "regular", "degenerate" or "unresolved"
    edges: List[Tuple[int, int]]
    theta: Optional[float] = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "edges": [f"a{a}/{k}" for a, k in self.edges]}
        if self.theta is not None:
            d["theta"] = self.theta
        return d


@dataclass
class StokesGraphData:
    critical: CriticalSet
    theta: float
    edges: List[Trajectory]
    regions: List[Region] = field(default_factory=list)
    saddles: List[Saddle] = field(default_factory=list)
    face_of: Dict[int, int] = field(default_factory=dict)  # out half-edge -> region

    @property
    def saddle_free(self) -> bool:
        return not self.saddles

    def strips(self) -> List[Region]:
        return sorted((r for r in self.regions if r.is_strip), key=lambda r: r.label)

    def half_planes(self) -> List[Region]:
        return [r for r in self.regions if r.kind == HALF_PLANE]

    def census(self) -> Tuple[int, int]:
        """``(#strips, #half planes)`` (degenerate strips count as strips)."""
        return len(self.strips()), len(self.half_planes())

    def edge(self, a: int, k: int) -> Trajectory:
        return self.edges[3 * a + k]

    def signature(self) -> Dict[Tuple[int, int], str]:
        return {(e.start, e.dir): e.end.label() for e in self.edges}

    def to_dict(self) -> dict:
        C = self.critical
        return {
            "theta": self.theta,
            "turning_points": [[a.real, a.imag] for a in C.turning_points],
            "poles": [{"z": "inf" if p.z is None else [p.z.real, p.z.imag], "order": p.order,
                       "key": p.key} for p in C.poles],
            "edges": [{"from": f"a{e.start}", "to": e.end.label(), "dir": e.dir,
                       "samples": [[z.real, z.imag] for z in e.samples]} for e in self.edges],
            "regions": [r.to_dict() for r in self.regions],
            "saddles": [s.to_dict() for s in self.saddles],
        }


def _angle(x: float) -> float:
    return x % (2 * math.pi)


def build_graph(Q0, theta: float, opts: Optional[TraceOptions] = None,
                strict: bool = False) -> StokesGraphData:
    """Trace the Stokes graph of ``e^{2 i theta} Q0 dz^2`` and classify its faces.

    If a trajectory runs into a turning point (or does not terminate) the
    graph is returned without regions and with ``saddles`` filled in;
    ``strict=True`` raises :class:`SaddlePresent` instead.
    """
    C = Q0 if isinstance(Q0, CriticalSet) else critical_points(Q0)
    edges = trace_all(C, theta, opts)
    G = StokesGraphData(C, theta, edges)
    saddle_edges = [(e.start, e.dir) for e in edges if e.end.kind in ("turning_point", "truncated")]
    if saddle_edges:
        kinds = {e.end.kind for e in edges if (e.start, e.dir) in saddle_edges}
        kind = "regular" if kinds == {"turning_point"} else "unresolved"
        if kind == "regular" and any(e.end.target == e.start for e in edges
                                     if (e.start, e.dir) in saddle_edges):
            kind = "degenerate"
        G.saddles = [Saddle(kind, saddle_edges, theta)]
        if strict:
            raise SaddlePresent(f"saddle trajectory at theta={theta}", G.saddles)
        return G
    _extract_faces(G)
    return G


def _extract_faces(G: StokesGraphData):
    C = G.critical
    edges = G.edges
    # half-edge 2e leaves the turning point, 2e + 1 leaves the pole
    tail: List[str] = []
    ang: List[float] = []
    for e in edges:
        tail.append(f"a{e.start}")
        ang.append(_angle(e.departure))
        tail.append(e.end.target)
        ang.append(_angle(e.end.angle))
    rot: Dict[str, List[int]] = {}
    for h, v in enumerate(tail):
        rot.setdefault(v, []).append(h)
    pos: Dict[int, int] = {}
    for v, hs in rot.items():
        hs.sort(key=lambda h: ang[h])
        for i, h in enumerate(hs):
            pos[h] = i

    def nxt(h: int) -> int:
        t = h ^ 1
        hs = rot[tail[t]]
        return hs[(pos[t] - 1) % len(hs)]

    seen = set()
    faces: List[List[int]] = []
    for h0 in range(len(tail)):
        if h0 in seen:
            continue
        face, h = [], h0
        while h not in seen:
            seen.add(h)
            face.append(h)
            h = nxt(h)
        if h != h0:
            raise FaceExtractionFailure("half-edge walk did not close up")
        faces.append(face)

    V = len(rot)
    E = len(edges)
    isolated = [p.key for p in C.poles if p.key not in rot]
    if isolated:
        raise FaceExtractionFailure(f"poles {isolated} receive no trajectory")
    if V - E + len(faces) != 2:
        raise FaceExtractionFailure(
            f"Euler characteristic {V - E + len(faces)} != 2 (graph disconnected?)")

    regions: List[Region] = []
    for idx, face in enumerate(faces):
        tps = tuple(edges[h // 2].start for h in face if h % 2 == 0)
        ends = tuple(edges[h // 2].end.label() for h in face if h % 2 == 0)
        if len(tps) == 2:
            kind = DEGENERATE_STRIP if tps[0] == tps[1] else STRIP
        elif len(tps) == 1:
            kind = HALF_PLANE
        else:
            raise FaceExtractionFailure(f"face {idx} meets {len(tps)} turning points")
        regions.append(Region(idx, kind, tps, ends, tuple(face)))
        for h in face:
            if h % 2 == 0:
                G.face_of[h // 2] = idx

    def strip_key(r: Region):
        mid = sum(C.turning_points[i] for i in r.turning_points) / len(r.turning_points)
        return (round(mid.real, 9), round(mid.imag, 9), r.kind, tuple(sorted(r.ends)))

    strips = sorted((r for r in regions if r.is_strip), key=strip_key)
    for lab, r in enumerate(strips):
        r.label = lab
    G.regions = regions


def graph_to_triangulation(G: StokesGraphData) -> Tuple[LabeledSignedTriangulation, ExchangeMatrix]:
    """The labeled Stokes triangulation of a saddle-free graph and its matrix.

    Marked points are ``"<pole>.<k>"`` for the asymptotic directions at
    poles of order at least three; double poles are punctures named by
    their pole key.  Each turning point gives one triangle; a side facing a
    strip is that strip's arc, a side facing a half plane is the boundary
    segment ``"X~Y"`` between its two marked points.  All puncture signs
    are ``+``.
    """
    if G.saddles:
        raise SaddlePresent(f"graph at theta={G.theta} has a saddle trajectory", G.saddles)
    region = {r.index: r for r in G.regions}
    tris = []
    for a in range(len(G.critical.turning_points)):
        out = sorted(range(3 * a, 3 * a + 3), key=lambda e: _angle(G.edges[e].departure))
        corners = tuple(G.edges[e].end.label() for e in out)
        sides = []
        for i, e in enumerate(out):
            r = region[G.face_of[e]]
            if r.is_strip:
                sides.append(r.label)
            else:
                sides.append(f"{corners[i]}~{corners[(i + 1) % 3]}")
        tris.append(Triangle(tuple(sides), corners))
    punctures = [p.key for p in G.critical.poles if p.order == 2]
    n = len(G.strips())
    try:
        T = LabeledSignedTriangulation(n, tris, punctures)
    except MalformedTriangulation as exc:
        raise FaceExtractionFailure(f"faces do not form a Stokes triangulation: {exc}") from exc
    if len(T.triangles) != len(G.critical.turning_points):
        raise FaceExtractionFailure("midpoint count differs from triangle count")
    return T, adjacency_matrix(T)


def marked_points(C: CriticalSet) -> List[str]:
    """Boundary marked points (``m - 2`` per pole of order ``m >= 3``)."""
    out = []
    for p in C.poles:
        if p.order >= 3:
            out.extend(f"{p.key}.{k}" for k in range(p.order - 2))
    return out


def residue_theta(C: CriticalSet) -> List[Tuple[str, complex, List[float]]]:
    """For every double pole, its residue ``r`` (principal root) and the
    directions ``theta`` in ``(-pi/2, pi/2]`` with ``e^{i theta} r`` imaginary."""
    out = []
    for p in C.double_poles():
        r = cmath.sqrt(p.leading)
        t = math.pi / 2 - cmath.phase(r)
        t = (t + math.pi / 2) % math.pi - math.pi / 2
        out.append((p.key, r, [t]))
    return out


def region_summary(G: StokesGraphData) -> str:
    if G.saddles:
        return f"theta={G.theta:+.6f}: saddle ({', '.join(s.kind for s in G.saddles)})"
    ns, nh = G.census()
    deg = sum(1 for r in G.regions if r.kind == DEGENERATE_STRIP)
    extra = f" ({deg} degenerate)" if deg else ""
    return f"theta={G.theta:+.6f}: {ns} strips{extra}, {nh} half planes"
