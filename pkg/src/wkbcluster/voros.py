"""Voros symbols as field generators and the automorphisms acting on them.

The Voros field of a labeled Stokes graph with ``n`` arcs is the rational
function field generated by

* ``x_i = e^{W_i}`` (Voros symbols of the simple paths ``beta_i``),
* ``y_i = e^{v_i}`` (Voros symbols of the simple cycles ``gamma_i``),
* ``yt_p = e^{vt_p}`` (residue symbols at the punctures, extended field).

All Voros fields of the same rank and puncture set share one generator list,
so field maps are stored as generator-image tables over that list.  The
exchange matrix of the current graph is needed to form the cycle symbols
``e^{V_gamma} = prod_i (y_i prod_j x_j^{b_ji})^{c_i}``.

Composition convention: ``compose(A, B)`` is the map ``f -> A(B(f))``; its
image table is computed by substituting ``A``'s images into ``B``'s images.
A product ``A_1 A_2 ... A_N`` written left to right therefore acts on an
element by applying ``A_N`` first, exactly as a composite of functions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Mapping, Optional, Sequence, Tuple

from .cluster import cluster_field, x_name, y_name, yt_name
from .errors import IdentityFailed, IndexOutOfRange, LengthMismatch, PeriodViolation
from .exchange import ExchangeMatrix, check_index, mutate_matrix, pos
from .lattice import CycleVector, format_combination, mutate_lattice
from .ratfun import FunctionField, RationalFunction, rf_equal, rf_substitute
from .tropical import tropical_run


def _sign(eps) -> int:
    if eps in (1, "+"):
        return 1
    if eps in (-1, "-"):
        return -1
    raise ValueError(f"sign must be +1 or -1, got {eps!r}")


def _sign_str(eps: int) -> str:
    return "+" if eps > 0 else "-"


@dataclass(frozen=True, eq=False)
class VorosField:
    """The (extended) Voros field of a graph with exchange matrix ``B``."""

    B: ExchangeMatrix
    punctures: Tuple[str, ...] = ()
    field: Optional[FunctionField] = None

    def __post_init__(self):
        object.__setattr__(self, "B", ExchangeMatrix(self.B))
        object.__setattr__(self, "punctures", tuple(self.punctures))
        if self.field is None:
            object.__setattr__(self, "field", cluster_field(self.B.n, self.punctures))

    @property
    def n(self) -> int:
        return self.B.n

    def x(self, i: int) -> RationalFunction:
        return self.field.gen(x_name(i))

    def y(self, i: int) -> RationalFunction:
        return self.field.gen(y_name(i))

    def yt(self, p: str) -> RationalFunction:
        return self.field.gen(yt_name(p))

    def with_matrix(self, B) -> "VorosField":
        """The Voros field of another graph with the same arcs and punctures."""
        return VorosField(ExchangeMatrix(B), self.punctures, self.field)

    def generator_names(self) -> Tuple[str, ...]:
        return self.field.names

    def yhat(self, i: int) -> RationalFunction:
        return cycle_symbol(self, CycleVector.basis(self.n, i))


def cycle_symbol(V: VorosField, g: CycleVector) -> RationalFunction:
    """``e^{V_gamma} = prod_i (y_i prod_j x_j^{b_ji})^{c_i}``."""
    if len(g) != V.n:
        raise LengthMismatch(f"cycle of length {len(g)} in a field of rank {V.n}")
    n = V.n
    exps = {}
    for i in range(n):
        if g[i]:
            exps[y_name(i)] = exps.get(y_name(i), 0) + g[i]
            for j in range(n):
                if V.B[j][i]:
                    exps[x_name(j)] = exps.get(x_name(j), 0) + V.B[j][i] * g[i]
    return V.field.monomial(exps)


class FieldAutomorphism:
    """A field map given by the images of all generators.

    ``images[name]`` is the image of generator ``name``; every image lives
    in ``field``.  ``label`` is only used for printing.
    """

    __slots__ = ("field", "images", "label")

    def __init__(self, field: FunctionField, images: Mapping[str, RationalFunction], label: str = ""):
        missing = [v for v in field.names if v not in images]
        if missing:
            raise ValueError(f"no image for generators {missing}")
        self.field = field
        self.images = {v: images[v] for v in field.names}
        self.label = label

    @classmethod
    def identity(cls, field: FunctionField) -> "FieldAutomorphism":
        return cls(field, {v: field.gen(v) for v in field.names}, "id")

    def apply(self, f: RationalFunction) -> RationalFunction:
        return rf_substitute(f, self.images)

    __call__ = apply

    def __getitem__(self, name: str) -> RationalFunction:
        return self.images[name]

    def is_identity(self) -> bool:
        return all(rf_equal(self.images[v], self.field.gen(v)) for v in self.field.names)

    def equals(self, other: "FieldAutomorphism") -> bool:
        return all(rf_equal(self.images[v], other.images[v]) for v in self.field.names)

    def fixed_failures(self) -> List[str]:
        """Generators that are not fixed."""
        return [v for v in self.field.names if not rf_equal(self.images[v], self.field.gen(v))]

    def __repr__(self):
        return f"FieldAutomorphism({self.label or '?'})"

    def describe(self) -> str:
        lines = [self.label] if self.label else []
        for v in self.field.names:
            img = self.images[v]
            if not rf_equal(img, self.field.gen(v)):
                lines.append(f"  {v} -> {img}")
        if len(lines) <= (1 if self.label else 0):
            lines.append("  (identity)")
        return "\n".join(lines)


def compose(*maps: FieldAutomorphism) -> FieldAutomorphism:
    """``compose(A, B, C)`` is ``f -> A(B(C(f)))``."""
    if not maps:
        raise ValueError("nothing to compose")
    out = maps[-1]
    for A in reversed(maps[:-1]):
        if A.field.names != out.field.names:
            raise LengthMismatch("maps live on different fields")
        out = FieldAutomorphism(out.field, {v: _tidy(A.apply(img)) for v, img in out.images.items()},
                                " ".join(m.label for m in maps if m.label))
    return out


def _tidy(f: RationalFunction) -> RationalFunction:
    return f.reduced()


# ---------------------------------------------------------------------------
# Stokes automorphisms
# ---------------------------------------------------------------------------

def stokes_auto(V: VorosField, g: CycleVector, eps) -> FieldAutomorphism:
    """``S^(eps)_gamma``: ``y_i, yt_p`` fixed and
    ``x_i -> x_i (1 + (e^{V_gamma})^eps)^{-<gamma, beta_i>}``."""
    eps = _sign(eps)
    if len(g) != V.n:
        raise LengthMismatch(f"cycle of length {len(g)} in a field of rank {V.n}")
    E = cycle_symbol(V, g)
    factor = 1 + E ** eps
    images = {v: V.field.gen(v) for v in V.field.names}
    for i in range(V.n):
        if g[i]:
            images[x_name(i)] = V.x(i) * factor ** (-g[i])
    return FieldAutomorphism(V.field, images, f"S^({_sign_str(eps)})_{{{format_combination(g, 'g')}}}")


def pop_auto(V: VorosField, p: str, ip: int, jp: int, eps) -> FieldAutomorphism:
    """``K^(eps)_p``: ``x_{ip} -> x_{ip} (1 - yt_p^eps)``,
    ``x_{jp} -> x_{jp} (1 - yt_p^eps)^{-1}``, everything else fixed."""
    eps = _sign(eps)
    check_index(ip, V.n)
    check_index(jp, V.n)
    if ip == jp:
        raise IndexOutOfRange("inner and outer arc must differ")
    if p not in V.punctures:
        raise IndexOutOfRange(f"unknown puncture {p!r}")
    factor = 1 - V.yt(p) ** eps
    images = {v: V.field.gen(v) for v in V.field.names}
    images[x_name(ip)] = V.x(ip) * factor
    images[x_name(jp)] = V.x(jp) / factor
    return FieldAutomorphism(V.field, images, f"K^({_sign_str(eps)})_{p}")


def flip_iso(V: VorosField, k: int, eps) -> FieldAutomorphism:
    """``tau*`` for the signed flip ``mu_k^(eps)`` of the graph of ``V``.

    The map goes from the Voros field of the flipped graph to ``V``:
    ``y'_k -> y_k^{-1}``, ``y'_i -> y_i y_k^{[eps b_ki]_+}``,
    ``x'_k -> x_k^{-1} prod_j x_j^{[-eps b_jk]_+}``, other generators fixed.
    """
    eps = _sign(eps)
    check_index(k, V.n)
    B = V.B
    images = {v: V.field.gen(v) for v in V.field.names}
    yk = V.y(k)
    for i in range(V.n):
        if i == k:
            images[y_name(i)] = yk ** -1
        elif pos(eps * B[k][i]):
            images[y_name(i)] = V.y(i) * yk ** pos(eps * B[k][i])
    xk = {x_name(k): -1}
    for j in range(V.n):
        if pos(-eps * B[j][k]):
            xk[x_name(j)] = pos(-eps * B[j][k])
    images[x_name(k)] = V.field.monomial(xk)
    return FieldAutomorphism(V.field, images, f"tau*[mu_{k + 1}^({_sign_str(eps)})]")


def pop_iso(V: VorosField, p: str) -> FieldAutomorphism:
    """``tau*`` for a signed pop at ``p``: ``yt_p -> yt_p^{-1}``, all else fixed."""
    if p not in V.punctures:
        raise IndexOutOfRange(f"unknown puncture {p!r}")
    images = {v: V.field.gen(v) for v in V.field.names}
    images[yt_name(p)] = V.yt(p) ** -1
    return FieldAutomorphism(V.field, images, f"tau*[kappa_{p}]")


def monomial_iso(V: VorosField, move) -> FieldAutomorphism:
    """``tau*`` for a move: ``("flip", k, eps)``, ``("pop", p)`` or a
    :class:`~wkbcluster.surface.Move`."""
    kind, target, sign = _unpack(move)
    if kind == "flip":
        return flip_iso(V, target, sign)
    return pop_iso(V, target)


def _unpack(move):
    if hasattr(move, "kind"):
        return move.kind, move.target, move.sign
    kind = move[0]
    if kind == "flip":
        return kind, move[1], move[2]
    if kind == "pop":
        return kind, move[1], (move[2] if len(move) > 2 else 1)
    raise ValueError(f"unknown move {move!r}")


def voros_signed_mutation(V: VorosField, k: int, eps) -> Tuple[FieldAutomorphism, VorosField]:
    """The Voros symbols of ``mu_k^(eps)(G)`` expressed through those of ``G``.

    Returns ``(S^(eps)_{gamma_k} o tau*, V')`` where ``V'`` carries the
    mutated matrix.  The images reproduce the signed mutation of extended
    seeds.
    """
    eps = _sign(eps)
    check_index(k, V.n)
    phi = compose(stokes_auto(V, CycleVector.basis(V.n, k), eps), flip_iso(V, k, eps))
    phi.label = f"mu_{k + 1}^({_sign_str(eps)})"
    return phi, V.with_matrix(mutate_matrix(V.B, k))


def voros_signed_pop(V: VorosField, p: str, ip: int, jp: int, eps) -> Tuple[FieldAutomorphism, VorosField]:
    """``K^(eps)_p o tau*`` for the signed pop at ``p`` (inner ``ip``, outer ``jp``)."""
    eps = _sign(eps)
    phi = compose(pop_auto(V, p, ip, jp, eps), pop_iso(V, p))
    phi.label = f"kappa_{p}^({_sign_str(eps)})"
    return phi, V


def relabeling_map(V: VorosField, nu: Sequence[int]) -> FieldAutomorphism:
    """``nu*``: ``x_{nu(i)} -> x_i``, ``y_{nu(i)} -> y_i``, ``yt_p`` fixed."""
    nu = list(nu)
    if sorted(nu) != list(range(V.n)):
        raise IndexOutOfRange(f"{nu} is not a permutation of range({V.n})")
    images = {v: V.field.gen(v) for v in V.field.names}
    for i in range(V.n):
        images[x_name(nu[i])] = V.x(i)
        images[y_name(nu[i])] = V.y(i)
    return FieldAutomorphism(V.field, images, "nu*")


# ---------------------------------------------------------------------------
# chains of moves and the identity of a period
# ---------------------------------------------------------------------------

def chain_automorphism(T0, moves) -> Tuple[FieldAutomorphism, List[FieldAutomorphism]]:
    """Compose the Voros maps of a sequence of signed flips and pops.

    ``T0`` is a signed (or Stokes) triangulation providing ``B`` and the
    inner/outer arcs for pops.  Returns ``(total, steps)`` where
    ``total = Phi_1 o ... o Phi_N`` sends the generators of the final
    Voros field to their expressions in the initial one.
    """
    from .surface import StokesTriangulationState, adjacency_matrix, apply_move

    St = T0 if isinstance(T0, StokesTriangulationState) else StokesTriangulationState(T0)
    V = VorosField(adjacency_matrix(St.signed), tuple(St.signed.punctures))
    steps = []
    for m in moves:
        if m.kind == "flip":
            phi, V2 = voros_signed_mutation(V, m.target, m.sign)
        else:
            ip, jp = St.signed.self_folded_at(m.target)
            phi, V2 = voros_signed_pop(V, m.target, ip, jp, m.sign)
        steps.append(phi)
        St = apply_move(St, m)
        V = V2
    total = compose(*steps) if steps else FieldAutomorphism.identity(V.field)
    return total, steps


def chain_closes(T0, moves, nu: Sequence[int]) -> bool:
    """``Phi_1 o ... o Phi_N`` equals the relabeling ``nu*``: the Voros symbols
    return to the initial ones up to ``nu`` after the sequence."""
    total, _ = chain_automorphism(T0, moves)
    from .surface import StokesTriangulationState, adjacency_matrix

    St = T0 if isinstance(T0, StokesTriangulationState) else StokesTriangulationState(T0)
    V = VorosField(adjacency_matrix(St.signed), tuple(St.signed.punctures))
    return total.equals(relabeling_map(V, nu))


@dataclass
class IdentityStep:
    t: int
    k: int
    eps: int
    c: Tuple[int, ...]

    @property
    def gamma(self) -> str:
        return format_combination(self.c, "g")

    def factor(self) -> str:
        return f"S^({_sign_str(self.eps)})_{{{self.gamma}}}"

    def to_dict(self) -> dict:
        return {"t": self.t, "k": self.k + 1, "eps": _sign_str(self.eps), "c": list(self.c),
                "gamma": self.gamma}


@dataclass
class IdentityReport:
    B: List[List[int]]
    ks: List[int]
    nu: List[int]
    steps: List[IdentityStep]
    verified: bool
    failures: List[str]

    def product(self) -> str:
        return " ".join(s.factor() for s in self.steps) + " = id"

    def balanced(self) -> Optional[str]:
        """The identity with every ``-`` factor moved to the other side.

        ``F_1 ... F_N = id`` is invariant under cyclic rotation; when some
        rotation lists all ``+`` factors before all ``-`` factors, the
        ``-`` factors are inverted with ``(S^(-)_{-g})^{-1} = S^(+)_g``.
        Returns ``None`` when no such rotation exists.
        """
        N = len(self.steps)
        if N == 0:
            return "id = id"
        signs = [s.eps for s in self.steps]
        for r in range(N):
            rot = self.steps[r:] + self.steps[:r]
            rs = signs[r:] + signs[:r]
            m = sum(1 for e in rs if e > 0)
            if all(e > 0 for e in rs[:m]) and all(e < 0 for e in rs[m:]):
                left = [f"S_{{{format_combination([-a for a in s.c], 'g')}}}" for s in reversed(rot[m:])]
                right = [f"S_{{{s.gamma}}}" for s in rot[:m]]
                return f"{' '.join(left) or 'id'} = {' '.join(right) or 'id'}"
        return None

    def text(self) -> str:
        lines = [f"B = {self.B}", f"sequence = {[k + 1 for k in self.ks]}",
                 f"nu = {[v + 1 for v in self.nu]}",
                 " t  k  eps  c(t)        gamma(t)"]
        for s in self.steps:
            lines.append(f"{s.t:2d} {s.k + 1:2d}   {_sign_str(s.eps)}   {str(list(s.c)):<11} {s.gamma}")
        lines.append("identity: " + self.product())
        bal = self.balanced()
        if bal:
            lines.append("          " + bal)
        lines.append("verified: " + ("yes" if self.verified else "NO (" + ", ".join(self.failures) + ")"))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"B": self.B, "ks": [k + 1 for k in self.ks], "nu": [v + 1 for v in self.nu],
                "steps": [s.to_dict() for s in self.steps], "identity": self.product(),
                "balanced": self.balanced(), "verified": self.verified, "failures": self.failures}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def identity_from_period(V, ks: Sequence[int], nu: Sequence[int], *, check: bool = True,
                         raise_on_failure: bool = True) -> Tuple[IdentityReport, bool]:
    """Build and verify the Stokes-automorphism identity of a period.

    ``V`` is a :class:`VorosField` (or an exchange matrix).  The sequence
    ``ks`` must be a ``nu``-period; its tropical signs ``eps_t`` and
    c-vectors ``c(t)`` give the factors ``S^(eps_t)_{gamma(t)}`` with
    ``gamma(t) = sum_i c_i(t) gamma_i``.  The composite
    ``S^(eps_1)_{gamma(1)} o ... o S^(eps_N)_{gamma(N)}`` must fix every
    ``x_i`` and ``y_i``.
    """
    if not isinstance(V, VorosField):
        V = VorosField(ExchangeMatrix(V))
    n = V.n
    ks = [int(k) for k in ks]
    for k in ks:
        check_index(k, n)
    nu = list(nu)
    if len(nu) != n or sorted(nu) != list(range(n)):
        raise PeriodViolation(f"{nu} is not a permutation of range({n})")
    signs, cvecs, ys = tropical_run(V.B, ks)
    if check:
        final = ys[-1]
        if any(final[nu[i]].exponents != ys[0][i].exponents for i in range(n)):
            raise PeriodViolation(f"sequence {[k + 1 for k in ks]} is not a nu-period")
        Bf = V.B
        for k in ks:
            Bf = mutate_matrix(Bf, k)
        if Bf != V.B.permuted(nu):
            raise PeriodViolation("the exchange matrix does not return up to nu")
    steps = [IdentityStep(t + 1, k, signs[t], tuple(cvecs[t])) for t, k in enumerate(ks)]
    factors = [stokes_auto(V, CycleVector(s.c), s.eps) for s in steps]
    total = compose(*factors) if factors else FieldAutomorphism.identity(V.field)
    failures = total.fixed_failures()
    report = IdentityReport(V.B.tolist(), ks, nu, steps, not failures, failures)
    if failures and raise_on_failure:
        raise IdentityFailed(f"composite moves {failures}\n{report.text()}")
    return report, not failures


def transport_automorphism_check(V: VorosField, k: int, flip_eps, g: CycleVector, stokes_eps) -> bool:
    """``tau* o S_{V', g'} = S_{V, tau(g')} o tau*`` for the flip ``mu_k^(flip_eps)``."""
    Vp = V.with_matrix(mutate_matrix(V.B, k))
    tau = flip_iso(V, k, flip_eps)
    lhs = compose(tau, stokes_auto(Vp, g, stokes_eps))
    rhs = compose(stokes_auto(V, mutate_lattice(g, k, flip_eps, V.B), stokes_eps), tau)
    return lhs.equals(rhs)
