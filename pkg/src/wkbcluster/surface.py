"""Labeled ideal / signed triangulations of bordered surfaces.

A triangulation is stored as a list of triangles.  Each triangle records its
three sides in counterclockwise order together with its three corners:
side ``s`` runs from ``corners[s]`` to ``corners[s + 1]``.  Arcs are labeled
``0 .. n-1`` (displayed as ``1 .. n``); boundary segments carry string
labels.  Marked points and punctures are strings.

A self-folded triangle is normalized to sides ``(l, i, i)`` with corners
``(v, v, p)``: ``l`` is the outer loop based at ``v`` and ``i`` the inner arc
joining ``v`` to the enclosed puncture ``p``.

Everything here is a local rewrite of incidence data: flips replace the
two triangles around an arc, pops swap the labels of a self-folded pair and
flip the sign of the puncture.  Curves are never embedded.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    IndexOutOfRange,
    InnerArcNotFlippable,
    MalformedTriangulation,
    NotSelfFolded,
    PeriodViolation,
)
from .exchange import ExchangeMatrix

Edge = Union[int, str]
Vertex = str


def _is_arc(e: Edge) -> bool:
    return isinstance(e, int) and not isinstance(e, bool)


def sign_str(s: int) -> str:
    return "+" if s > 0 else "-"


def _check_sign(s) -> int:
    if s not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {s!r}")
    return int(s)


# ---------------------------------------------------------------------------
# triangles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Triangle:
    edges: Tuple[Edge, Edge, Edge]
    corners: Tuple[Vertex, Vertex, Vertex]

    def __init__(self, edges: Sequence[Edge], corners: Sequence[Vertex]):
        if len(edges) != 3 or len(corners) != 3:
            raise MalformedTriangulation("a triangle has three sides and three corners")
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "corners", tuple(str(c) for c in corners))

    def rotated(self, r: int) -> "Triangle":
        r %= 3
        return Triangle(self.edges[r:] + self.edges[:r], self.corners[r:] + self.corners[:r])

    def side(self, s: int) -> Tuple[Vertex, Vertex]:
        """Endpoints ``(start, end)`` of side ``s`` in the ccw traversal."""
        return self.corners[s], self.corners[(s + 1) % 3]

    def self_folded_form(self) -> Optional["Triangle"]:
        """The rotation ``(l, i, i)`` if the triangle is self-folded, else None."""
        for r in range(3):
            t = self.rotated(r)
            if t.edges[1] == t.edges[2]:
                return t
        return None

    def canonical(self) -> "Triangle":
        """The rotation that is lexicographically smallest (for comparisons)."""
        return min((self.rotated(r) for r in range(3)), key=lambda t: (
            [(0, e) if _is_arc(e) else (1, e) for e in t.edges], t.corners))

    def relabeled(self, nu: Mapping[int, int]) -> "Triangle":
        return Triangle([nu[e] if _is_arc(e) else e for e in self.edges], self.corners)

    def _key(self):
        t = self.canonical()
        return (tuple((0, e) if _is_arc(e) else (1, e) for e in t.edges), t.corners)


@dataclass(frozen=True)
class BorderedSurface:
    """Topological type recovered from a triangulation."""

    genus: int
    boundary: Tuple[int, ...]          # marked points on each boundary component
    punctures: Tuple[Vertex, ...]

    @property
    def rank(self) -> int:
        """``6g + 3b + 3p + c - 6``: the number of arcs of any triangulation."""
        b = len(self.boundary)
        return 6 * self.genus + 3 * b + 3 * len(self.punctures) + sum(self.boundary) - 6

    def excluded(self) -> Optional[str]:
        """Name of the standard excluded case this surface falls into, if any."""
        g, b, p = self.genus, len(self.boundary), len(self.punctures)
        if g == 0 and b == 0 and p < 4:
            return "sphere with fewer than four punctures"
        if g == 0 and b == 1:
            c = self.boundary[0]
            if c == 1 and p == 0:
                return "unpunctured monogon"
            if c == 1 and p == 1:
                return "once-punctured monogon"
            if c == 2 and p == 0:
                return "unpunctured digon"
            if c == 3 and p == 0:
                return "unpunctured triangle"
        return None


# ---------------------------------------------------------------------------
# labeled signed triangulations
# ---------------------------------------------------------------------------

class LabeledSignedTriangulation:
    """A labeled ideal triangulation together with a sign at every puncture.

    ``triangles`` lists the triangles (see the module docstring for the
    conventions).  ``punctures`` names the interior marked points and
    ``signs`` maps each of them to ``+1`` or ``-1``.  With all signs ``+1``
    this is just a labeled ideal triangulation.
    """

    __slots__ = ("n", "triangles", "punctures", "signs", "_inner", "_surface")

    def __init__(self, n: int, triangles: Iterable[Triangle], punctures: Iterable[Vertex] = (),
                 signs: Optional[Mapping[Vertex, int]] = None, *, check: bool = True):
        self.n = int(n)
        tris = []
        for t in triangles:
            if not isinstance(t, Triangle):
                t = Triangle(*t)
            sf = t.self_folded_form()
            tris.append(sf if sf is not None else t)
        self.triangles: Tuple[Triangle, ...] = tuple(tris)
        self.punctures: Tuple[Vertex, ...] = tuple(str(p) for p in punctures)
        sg = {p: 1 for p in self.punctures}
        if signs:
            for p, s in signs.items():
                if str(p) not in sg:
                    raise MalformedTriangulation(f"sign given for unknown puncture {p!r}")
                sg[str(p)] = _check_sign(s)
        self.signs: Dict[Vertex, int] = sg
        self._inner: Dict[int, Tuple[int, Vertex]] = {}
        for t in self.triangles:
            if t.edges[1] == t.edges[2]:
                self._inner[t.edges[1]] = (t.edges[0], t.corners[2])
        self._surface = None
        if check:
            self._validate()

    # -- validation ---------------------------------------------------------

    def _validate(self):
        slots: Dict[Edge, List[Tuple[Vertex, Vertex]]] = {}
        for t in self.triangles:
            for s, e in enumerate(t.edges):
                if _is_arc(e):
                    if not 0 <= e < self.n:
                        raise MalformedTriangulation(f"arc label {e} out of range for n={self.n}")
                elif not isinstance(e, str):
                    raise MalformedTriangulation(f"bad edge label {e!r}")
                slots.setdefault(e, []).append(t.side(s))
        for k in range(self.n):
            if len(slots.get(k, ())) != 2:
                raise MalformedTriangulation(
                    f"arc {k + 1} fills {len(slots.get(k, ()))} slots, expected 2")
            (a0, b0), (a1, b1) = slots[k]
            if (a0, b0) != (b1, a1):
                raise MalformedTriangulation(
                    f"arc {k + 1} is traversed inconsistently ({a0}->{b0} and {a1}->{b1})")
        for e, sl in slots.items():
            if not _is_arc(e) and len(sl) != 1:
                raise MalformedTriangulation(f"boundary segment {e!r} fills {len(sl)} slots")
        vertices = {c for t in self.triangles for c in t.corners}
        for p in self.punctures:
            if p not in vertices:
                raise MalformedTriangulation(f"puncture {p!r} is not a vertex")
        for t in self.triangles:
            if t.edges[1] == t.edges[2]:
                if not _is_arc(t.edges[1]) or t.corners[0] != t.corners[1]:
                    raise MalformedTriangulation("degenerate triangle is not self-folded")
                if t.corners[2] not in self.punctures:
                    raise MalformedTriangulation("a self-folded triangle must enclose a puncture")
        self.surface()  # checks the Euler characteristic

    def surface(self) -> BorderedSurface:
        """Recover genus and boundary data; checks the arc count."""
        if self._surface is not None:
            return self._surface
        bnd = [(t.side(s), e) for t in self.triangles for s, e in enumerate(t.edges)
               if not _is_arc(e)]
        nxt = {}
        for (a, b), e in bnd:
            if a in nxt:
                raise MalformedTriangulation(f"two boundary segments leave {a!r}")
            nxt[a] = b
        if set(nxt) != set(nxt.values()):
            raise MalformedTriangulation("boundary segments do not close into cycles")
        seen, comps = set(), []
        for start in sorted(nxt):
            if start in seen:
                continue
            c, v = 0, start
            while v not in seen:
                seen.add(v)
                v = nxt[v]
                c += 1
            comps.append(c)
        vertices = {c for t in self.triangles for c in t.corners}
        for p in self.punctures:
            if p in nxt:
                raise MalformedTriangulation(f"puncture {p!r} lies on the boundary")
        if set(vertices) != set(nxt) | set(self.punctures):
            raise MalformedTriangulation("every marked point must be on the boundary or a puncture")
        V, E, F = len(vertices), self.n + len(bnd), len(self.triangles)
        chi = V - E + F
        twice_g = 2 - len(comps) - chi
        if twice_g < 0 or twice_g % 2:
            raise MalformedTriangulation(f"incidence data has Euler characteristic {chi}")
        surf = BorderedSurface(twice_g // 2, tuple(sorted(comps)), self.punctures)
        if surf.rank != self.n:
            raise MalformedTriangulation(f"{self.n} arcs but the surface needs {surf.rank}")
        self._surface = surf
        return surf

    # -- basic queries ------------------------------------------------------

    def is_inner(self, k: int) -> bool:
        return k in self._inner

    def inner_arcs(self) -> Dict[int, Tuple[int, Vertex]]:
        """``{inner arc: (outer arc, puncture)}``."""
        return dict(self._inner)

    def self_folded_at(self, p: Vertex) -> Tuple[int, int]:
        """``(i_p, j_p)``: inner and outer labels of the self-folded triangle at ``p``."""
        for i, (j, q) in self._inner.items():
            if q == p:
                return i, j
        raise NotSelfFolded(f"puncture {p!r} is not enclosed by a self-folded triangle")

    def check_arc(self, k: int):
        if not isinstance(k, int) or not 0 <= k < self.n:
            raise IndexOutOfRange(f"arc index {k!r} out of range for n={self.n}")

    def with_signs(self, signs: Mapping[Vertex, int]) -> "LabeledSignedTriangulation":
        s = dict(self.signs)
        s.update(signs)
        return LabeledSignedTriangulation(self.n, self.triangles, self.punctures, s, check=False)

    def relabeled(self, nu: Sequence[int]) -> "LabeledSignedTriangulation":
        """Give the arc with label ``i`` the label ``nu[i]``."""
        if sorted(nu) != list(range(self.n)):
            raise ValueError("nu is not a permutation of the arc labels")
        m = {i: nu[i] for i in range(self.n)}
        return LabeledSignedTriangulation(
            self.n, [t.relabeled(m) for t in self.triangles], self.punctures, self.signs,
            check=False)

    # -- comparison ---------------------------------------------------------

    def _key(self):
        return (self.n, tuple(sorted(t._key() for t in self.triangles)),
                tuple(sorted(self.signs.items())))

    def __eq__(self, other):
        if not isinstance(other, LabeledSignedTriangulation):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def canonical(self) -> "LabeledSignedTriangulation":
        """Representative of the pop-equivalence class with ``sigma_p = +``
        wherever the puncture sits in a self-folded triangle."""
        t = self
        for p in self.punctures:
            if t.signs[p] < 0 and any(q == p for _, q in t._inner.values()):
                t = pop(t, p)
        return t

    def tagged_equal(self, other: "LabeledSignedTriangulation") -> bool:
        """Equality of the underlying labeled tagged triangulations."""
        return self.canonical() == other.canonical()

    def __repr__(self):
        return (f"LabeledSignedTriangulation(n={self.n}, triangles={len(self.triangles)}, "
                f"signs={self.signs})")

    def describe(self) -> str:
        lines = []
        for t in self.triangles:
            es = " ".join(str(e + 1) if _is_arc(e) else str(e) for e in t.edges)
            lines.append(f"  [{es}] at ({', '.join(t.corners)})")
        if self.signs:
            lines.append("  signs: " + ", ".join(f"{p}:{sign_str(s)}" for p, s in self.signs.items()))
        return "\n".join(lines)

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        def enc(e):
            return e + 1 if _is_arc(e) else e
        return {
            "arcs": self.n,
            "boundary": sorted({e for t in self.triangles for e in t.edges if not _is_arc(e)}),
            "triangles": [[enc(e) for e in t.edges] for t in self.triangles],
            "corners": [list(t.corners) for t in self.triangles],
            "punctures": list(self.punctures),
            "signs": dict(self.signs),
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "LabeledSignedTriangulation":
        try:
            n = int(d["arcs"])
            tris = []
            for es, cs in zip(d["triangles"], d["corners"], strict=True):
                edges = [e - 1 if isinstance(e, int) else str(e) for e in es]
                tris.append(Triangle(edges, cs))
            return cls(n, tris, d.get("punctures", ()), d.get("signs"))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedTriangulation):
                raise
            raise MalformedTriangulation(f"bad triangulation document: {exc}") from exc


# ---------------------------------------------------------------------------
# adjacency matrix
# ---------------------------------------------------------------------------

def adjacency_matrix(T: LabeledSignedTriangulation) -> ExchangeMatrix:
    """Signed adjacency matrix ``B(T)``.

    Inside a triangle that is not self-folded, the angle from side ``s+1``
    to side ``s`` is counterclockwise, contributing ``b[e_{s+1}][e_s] += 1``.
    An inner arc borrows the row and column of its outer arc.  Signs at the
    punctures do not enter (the matrix of a signed triangulation is that of
    its ideal representative).
    """
    n = T.n
    raw = [[0] * n for _ in range(n)]
    for t in T.triangles:
        if t.edges[1] == t.edges[2]:
            continue
        for s in range(3):
            a, b = t.edges[s], t.edges[(s + 1) % 3]
            if _is_arc(a) and _is_arc(b) and a != b:
                raw[b][a] += 1
                raw[a][b] -= 1
    bar = [T._inner[i][0] if i in T._inner else i for i in range(n)]
    return ExchangeMatrix([[raw[bar[i]][bar[j]] for j in range(n)] for i in range(n)])


# ---------------------------------------------------------------------------
# flips and pops
# ---------------------------------------------------------------------------

def _locate(T: LabeledSignedTriangulation, k: int):
    hits = [(ti, s) for ti, t in enumerate(T.triangles) for s, e in enumerate(t.edges) if e == k]
    if len(hits) != 2:
        raise MalformedTriangulation(f"arc {k + 1} fills {len(hits)} slots")
    return hits


def flip_ideal(T: LabeledSignedTriangulation, k: int) -> LabeledSignedTriangulation:
    """Replace arc ``k`` by the other diagonal of its quadrilateral.

    With the two triangles rotated to ``(k, a, b)`` at ``(X, Y, Z1)`` and
    ``(k, c, d)`` at ``(Y, X, Z2)`` the result has triangles
    ``(k, d, a)`` at ``(Z1, Z2, Y)`` and ``(k, b, c)`` at ``(Z2, Z1, X)``.
    Signs are untouched.
    """
    T.check_arc(k)
    if T.is_inner(k):
        raise InnerArcNotFlippable(f"arc {k + 1} is the inner arc of a self-folded triangle")
    (t1, s1), (t2, s2) = _locate(T, k)
    A = T.triangles[t1].rotated(s1)
    Bt = T.triangles[t2].rotated(s2)
    _, a, b = A.edges
    X, Y, Z1 = A.corners
    _, c, d = Bt.edges
    Z2 = Bt.corners[2]
    new = [Triangle((k, d, a), (Z1, Z2, Y)), Triangle((k, b, c), (Z2, Z1, X))]
    rest = [t for i, t in enumerate(T.triangles) if i not in (t1, t2)]
    return LabeledSignedTriangulation(T.n, rest + new, T.punctures, T.signs, check=False)


def pop(T: LabeledSignedTriangulation, p: Vertex) -> LabeledSignedTriangulation:
    """Swap the inner/outer labels of the self-folded triangle at ``p`` and
    change the sign of ``p``."""
    i, j = T.self_folded_at(p)
    swap = {e: e for e in range(T.n)}
    swap[i], swap[j] = j, i
    signs = dict(T.signs)
    signs[p] = -signs[p]
    return LabeledSignedTriangulation(
        T.n, [t.relabeled(swap) for t in T.triangles], T.punctures, signs, check=False)


def flip_tagged(T: LabeledSignedTriangulation, k: int) -> LabeledSignedTriangulation:
    """Flip of the tagged arc ``k`` through signed representatives.

    An inner arc is first turned into an outer one by a pop at its puncture.
    """
    T.check_arc(k)
    if T.is_inner(k):
        T = pop(T, T._inner[k][1])
    return flip_ideal(T, k)


def find_relabeling(A: LabeledSignedTriangulation,
                    B: LabeledSignedTriangulation) -> Optional[List[int]]:
    """A permutation ``nu`` with ``A.relabeled(nu) == B``, or None.

    Marked points and boundary labels are fixed; only arc labels may move.
    """
    if A.n != B.n or len(A.triangles) != len(B.triangles) or A.signs != B.signs:
        return None
    a_tris = list(A.triangles)
    b_tris = list(B.triangles)
    used = [False] * len(b_tris)
    fwd: Dict[int, int] = {}
    bwd: Dict[int, int] = {}

    def assign(ta: Triangle, tb: Triangle, trail):
        for ea, eb in zip(ta.edges, tb.edges):
            if _is_arc(ea) != _is_arc(eb):
                return False
            if not _is_arc(ea):
                if ea != eb:
                    return False
                continue
            if ea in fwd:
                if fwd[ea] != eb:
                    return False
            elif eb in bwd:
                return False
            else:
                fwd[ea] = eb
                bwd[eb] = ea
                trail.append(ea)
        return True

    def rec(idx: int) -> bool:
        if idx == len(a_tris):
            return True
        ta = a_tris[idx]
        for j, tb in enumerate(b_tris):
            if used[j]:
                continue
            for r in range(3):
                tr = tb.rotated(r)
                if tr.corners != ta.corners:
                    continue
                trail: List[int] = []
                if assign(ta, tr, trail):
                    used[j] = True
                    if rec(idx + 1):
                        return True
                    used[j] = False
                for e in trail:
                    del bwd[fwd.pop(e)]
        return False

    if not rec(0):
        return None
    return [fwd[i] for i in range(A.n)]


# ---------------------------------------------------------------------------
# Stokes triangulations: signed flips and pops with a slide ledger
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StokesTriangulationState:
    """A signed triangulation plus a per-arc counter of signed moves.

    The ledger is bookkeeping only: a signed flip at ``k`` adds ``eps`` to
    entry ``k``; a signed pop moves each entry along with its arc and adds
    ``eps`` to the arc that becomes inner.  It makes ``(+)`` and ``(-)``
    moves exact inverses on the full state.
    """

    signed: LabeledSignedTriangulation
    ledger: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.ledger:
            object.__setattr__(self, "ledger", (0,) * self.signed.n)
        if len(self.ledger) != self.signed.n:
            raise ValueError("ledger length must equal the number of arcs")

    @property
    def n(self) -> int:
        return self.signed.n

    def to_dict(self) -> dict:
        d = self.signed.to_dict()
        d["ledger"] = list(self.ledger)
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "StokesTriangulationState":
        T = LabeledSignedTriangulation.from_dict(d)
        return cls(T, tuple(d.get("ledger") or (0,) * T.n))


def signed_flip_stokes(St: StokesTriangulationState, k: int, eps: int) -> StokesTriangulationState:
    eps = _check_sign(eps)
    T = flip_ideal(St.signed, k)
    led = list(St.ledger)
    led[k] += eps
    return StokesTriangulationState(T, tuple(led))


def signed_pop_stokes(St: StokesTriangulationState, p: Vertex, eps: int) -> StokesTriangulationState:
    eps = _check_sign(eps)
    i, j = St.signed.self_folded_at(p)
    T = pop(St.signed, p)
    led = list(St.ledger)
    led[i], led[j] = St.ledger[j], St.ledger[i] + eps
    return StokesTriangulationState(T, tuple(led))


@dataclass(frozen=True)
class Move:
    """One signed move: ``('flip', k, eps)`` or ``('pop', p, eps)``."""

    kind: str
    target: Union[int, Vertex]
    sign: int

    def __post_init__(self):
        if self.kind not in ("flip", "pop"):
            raise ValueError(f"unknown move kind {self.kind!r}")
        _check_sign(self.sign)

    def __str__(self):
        if self.kind == "flip":
            return f"mu_{self.target + 1}^({sign_str(self.sign)})"
        return f"kappa_{self.target}^({sign_str(self.sign)})"

    def to_dict(self) -> dict:
        t = self.target + 1 if self.kind == "flip" else self.target
        return {"kind": self.kind, "target": t, "sign": self.sign}


def apply_move(St: StokesTriangulationState, m: Move) -> StokesTriangulationState:
    if m.kind == "flip":
        return signed_flip_stokes(St, m.target, m.sign)
    return signed_pop_stokes(St, m.target, m.sign)


def execute(St: StokesTriangulationState, moves: Iterable[Move]) -> List[StokesTriangulationState]:
    """All intermediate states, starting with ``St``."""
    out = [St]
    for m in moves:
        out.append(apply_move(out[-1], m))
    return out


def lift_period(T0: StokesTriangulationState, ks: Sequence[int], signs: Sequence[int],
                nu: Optional[Sequence[int]] = None) -> List[Move]:
    """Lift a period of the exchange matrix to signed flips and pops.

    Whenever ``k_t`` is an inner arc at puncture ``p``, a pop at ``p`` with
    sign ``(-1)**n_p`` (``n_p`` = pops at ``p`` so far) is inserted before
    the flip; at the end every puncture popped an odd number of times gets
    a final ``(-)`` pop.  The emitted sequence is executed and must return
    ``T0`` with arcs relabeled by ``nu`` (any relabeling if ``nu`` is None),
    otherwise :class:`PeriodViolation` is raised.
    """
    if len(ks) != len(signs):
        raise ValueError("ks and signs must have the same length")
    moves: List[Move] = []
    count: Counter = Counter()
    St = T0
    for k, e in zip(ks, signs):
        St.signed.check_arc(k)
        if St.signed.is_inner(k):
            p = St.signed._inner[k][1]
            m = Move("pop", p, (-1) ** count[p])
            count[p] += 1
            moves.append(m)
            St = apply_move(St, m)
        m = Move("flip", k, e)
        moves.append(m)
        St = apply_move(St, m)
    for p in T0.signed.punctures:
        if count[p] % 2:
            m = Move("pop", p, -1)
            moves.append(m)
            try:
                St = apply_move(St, m)
            except NotSelfFolded as exc:
                raise PeriodViolation(f"final pop at {p!r} impossible: {exc}") from exc
    end = St.signed
    if nu is None:
        if find_relabeling(T0.signed, end) is None:
            raise PeriodViolation("lifted sequence does not return the initial triangulation")
    elif T0.signed.relabeled(list(nu)) != end:
        raise PeriodViolation("lifted sequence does not return the triangulation relabeled by nu")
    return moves


# ---------------------------------------------------------------------------
# constructors and fixtures
# ---------------------------------------------------------------------------

def polygon_fan(m: int, apex: int = 0) -> LabeledSignedTriangulation:
    """Fan triangulation of an ``m``-gon from vertex ``P{apex}``.

    Vertices ``P0 .. P{m-1}`` are counterclockwise, boundary segment
    ``b{j}`` runs from ``Pj`` to ``P{j+1}`` and arc ``j - 2`` joins the apex
    to ``P{apex + j}``.
    """
    if m < 3:
        raise MalformedTriangulation("a polygon needs at least three vertices")
    P = [f"P{(apex + j) % m}" for j in range(m)]
    seg = [f"b{(apex + j) % m}" for j in range(m)]

    def spoke(j):  # edge from apex to P[j]
        if j == 1:
            return seg[0]
        if j == m - 1:
            return seg[m - 1]
        return j - 2

    tris = []
    for j in range(1, m - 1):
        tris.append(Triangle((spoke(j), seg[j], spoke(j + 1)), (P[0], P[j], P[j + 1])))
    # the third side runs from P[j+1] back to the apex, i.e. the reverse of spoke(j+1)
    return LabeledSignedTriangulation(m - 3, tris)


def pentagon() -> LabeledSignedTriangulation:
    """Fan of the pentagon; its adjacency matrix is ``[[0, 1], [-1, 0]]``."""
    return polygon_fan(5)


def octagon_example() -> LabeledSignedTriangulation:
    """The labeled triangulation of an octagon with arcs P2P4, P2P7, P4P7,
    P5P7, P2P0 labeled 1..5 (0-based 0..4), vertices counterclockwise from
    ``P0 = (1, 0)``."""
    T = [
        ((("b2", "b3", 0)), ("P2", "P3", "P4")),
        (((0, 2, 1)), ("P2", "P4", "P7")),
        ((("b4", 3, 2)), ("P4", "P5", "P7")),
        ((("b5", "b6", 3)), ("P5", "P6", "P7")),
        ((("b7", 4, 1)), ("P7", "P0", "P2")),
        ((("b0", "b1", 4)), ("P0", "P1", "P2")),
    ]
    return LabeledSignedTriangulation(5, [Triangle(e, c) for e, c in T])


def punctured_octagon_example() -> LabeledSignedTriangulation:
    """Once-punctured octagon with a self-folded triangle at the puncture.

    Arcs (1-based): 1 = P2P4, 2 and 3 = P2P5 on either side of the
    puncture, 4 = loop at P5 around ``p``, 5 = P5p (inner), 6 = P5P7,
    7 = P2P7, 8 = P2P0.
    """
    T = [
        (("b2", "b3", 0), ("P2", "P3", "P4")),
        ((0, "b4", 1), ("P2", "P4", "P5")),
        ((1, 3, 2), ("P2", "P5", "P5")),
        ((3, 4, 4), ("P5", "P5", "p")),
        ((5, 6, 2), ("P5", "P7", "P2")),
        (("b5", "b6", 5), ("P5", "P6", "P7")),
        (("b7", 7, 6), ("P7", "P0", "P2")),
        (("b0", "b1", 7), ("P0", "P1", "P2")),
    ]
    return LabeledSignedTriangulation(8, [Triangle(e, c) for e, c in T], punctures=["p"])


def punctured_digon(sign: int = 1) -> LabeledSignedTriangulation:
    """Once-punctured digon (marked points ``u``, ``d``, puncture ``p``).

    Arc 0 is the loop at ``u`` around ``p`` and arc 1 the inner radius
    ``u p``.  Boundary segments ``bL`` (u to d) and ``bR`` (d to u).
    """
    return LabeledSignedTriangulation(
        2,
        [Triangle((0, 1, 1), ("u", "u", "p")), Triangle((0, "bL", "bR"), ("u", "u", "d"))],
        punctures=["p"], signs={"p": sign})


def punctured_digon_radii(sign: int = 1) -> LabeledSignedTriangulation:
    """Once-punctured digon with the two radii: arc 0 = ``u p``, arc 1 = ``p d``."""
    return LabeledSignedTriangulation(
        2,
        [Triangle((1, 0, "bL"), ("d", "p", "u")), Triangle((0, 1, "bR"), ("u", "p", "d"))],
        punctures=["p"], signs={"p": sign})


def punctured_square() -> LabeledSignedTriangulation:
    """Once-punctured square ``T, L, B, R`` (ccw) with puncture ``p``.

    Arcs (1-based): 1 = TB left of ``p``, 2 = Tp, 3 = pB, 4 = TB right of
    ``p``.  Its quiver is the oriented 4-cycle 3 -> 1 -> 2 -> 4 -> 3.
    """
    T = [
        (("bTL", "bLB", 0), ("T", "L", "B")),
        ((0, 2, 1), ("T", "B", "p")),
        ((3, 1, 2), ("B", "T", "p")),
        (("bBR", "bRT", 3), ("B", "R", "T")),
    ]
    return LabeledSignedTriangulation(4, [Triangle(e, c) for e, c in T], punctures=["p"])


def annulus(p: int, q: int) -> LabeledSignedTriangulation:
    """Annulus with ``p`` outer and ``q`` inner marked points.

    All ``p + q`` arcs are bridges ``O_o I_i``; going around, the first
    ``p`` triangles carry an outer boundary segment and the remaining ``q``
    an inner one.  ``annulus(1, 1)`` has the Kronecker matrix ``b_01 = 2``.
    """
    if p < 1 or q < 1:
        raise MalformedTriangulation("each boundary component needs a marked point")
    n = p + q
    tris = []
    o = i = 0
    for t in range(n):
        a, b = t, (t + 1) % n
        if t < p:
            tris.append(Triangle((f"o{o}", b, a), (f"O{o}", f"O{(o + 1) % p}", f"I{i}")))
            o = (o + 1) % p
        else:
            i2 = (i + 1) % q
            tris.append(Triangle((b, f"i{i2}", a), (f"O{o}", f"I{i2}", f"I{i}")))
            i = i2
    return LabeledSignedTriangulation(n, tris)


def dump_json(T: Union[LabeledSignedTriangulation, StokesTriangulationState]) -> str:
    return json.dumps(T.to_dict(), indent=2)
