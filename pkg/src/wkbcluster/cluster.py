"""Seeds and their mutations.

A :class:`Seed` holds an exchange matrix ``B``, cluster variables ``x``
(rational functions in the initial ``x1..xn, y1..yn``) and coefficients
``y``.  Two coefficient flavors are supported:

* ``universal``: ``y`` are rational functions and the semifield addition is
  ordinary ``+`` (the universal semifield embeds in the field of rational
  functions, and every formula used below is a rational identity);
* ``tropical``: ``y`` are :class:`~wkbcluster.tropical.TropicalMonomial`
  and the semifield addition takes componentwise minima.

All indices are 0-based; the printed names ``x1 .. xn`` are 1-based.
Extended seeds carry, in addition, one coefficient ``yt_p`` per puncture
and a live signed triangulation that provides the inner/outer labels used
by signed pops.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import IndexOutOfRange, LengthMismatch, NonMonomialInput
from .exchange import (  # noqa: F401  (re-exported)
    ExchangeMatrix,
    Quiver,
    check_index,
    matrix_from_quiver,
    mutate_matrix,
    pos,
    quiver_from_matrix,
    quiver_roundtrip,
)
from .ratfun import FunctionField, RationalFunction, rf_equal
from .surface import (
    LabeledSignedTriangulation,
    Move,
    StokesTriangulationState,
    adjacency_matrix,
    signed_flip_stokes,
    signed_pop_stokes,
)
from .tropical import TropicalMonomial, initial_tropical_y, trop_sum, tropical_sign

Coefficient = Union[RationalFunction, TropicalMonomial]


def x_name(i: int) -> str:
    return f"x{i + 1}"


def y_name(i: int) -> str:
    return f"y{i + 1}"


def yt_name(p: str) -> str:
    return f"yt_{p}"


def cluster_field(n: int, punctures: Iterable[str] = ()) -> FunctionField:
    """``Q(x1..xn, y1..yn, yt_p ...)``."""
    return FunctionField([x_name(i) for i in range(n)] + [y_name(i) for i in range(n)]
                         + [yt_name(p) for p in punctures])


# ---------------------------------------------------------------------------
# seeds
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Seed:
    B: ExchangeMatrix
    x: Tuple[RationalFunction, ...]
    y: Tuple[Coefficient, ...]
    field: FunctionField

    def __post_init__(self):
        n = self.B.n
        if len(self.x) != n or len(self.y) != n:
            raise LengthMismatch(f"seed of rank {n} needs {n} x- and y-variables")
        if self.y and isinstance(self.y[0], RationalFunction):
            if any(v.is_zero() for v in self.y):
                raise ValueError("universal coefficients must be nonzero")

    @property
    def n(self) -> int:
        return self.B.n

    @property
    def flavor(self) -> str:
        if self.y and isinstance(self.y[0], TropicalMonomial):
            return "tropical"
        return "universal"

    def y_field(self, i: int) -> RationalFunction:
        """The coefficient ``y_i`` as an element of the ambient field."""
        return coefficient_to_field(self, self.y[i])

    def replace(self, **kw) -> "Seed":
        d = dict(B=self.B, x=self.x, y=self.y, field=self.field)
        d.update(kw)
        return Seed(**d)

    def __repr__(self):
        return f"Seed(flavor={self.flavor}, B={self.B.tolist()})"

    def describe(self) -> str:
        lines = [f"B = {self.B.tolist()}"]
        for i in range(self.n):
            lines.append(f"  x{i + 1} = {self.x[i]}    y{i + 1} = {self.y[i]}")
        return "\n".join(lines)

    # -- serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        if self.flavor == "tropical":
            ys = [list(v.exponents) for v in self.y]
        else:
            ys = [str(v) for v in self.y]
        return {"n": self.n, "B": self.B.tolist(), "x": [str(v) for v in self.x], "y": ys,
                "vars": list(self.field.names)}

    @classmethod
    def from_dict(cls, d: Mapping) -> "Seed":
        B = ExchangeMatrix(d["B"])
        n = B.n
        if int(d.get("n", n)) != n:
            raise LengthMismatch("n does not match B")
        F = FunctionField(d["vars"]) if "vars" in d else cluster_field(n)
        x = tuple(F.parse(s) for s in d["x"]) if "x" in d else tuple(F.gen(x_name(i)) for i in range(n))
        ys = d.get("y")
        if ys is None:
            y = tuple(F.gen(y_name(i)) for i in range(n))
        elif ys and not isinstance(ys[0], str):
            y = tuple(TropicalMonomial(v) for v in ys)
        else:
            y = tuple(F.parse(s) for s in ys)
        return cls(B, x, y, F)


def initial_seed(B, flavor: str = "universal", field: Optional[FunctionField] = None) -> Seed:
    """The initial seed ``(B, x0, y0)`` in the given flavor."""
    B = ExchangeMatrix(B)
    n = B.n
    F = field or cluster_field(n)
    x = tuple(F.gen(x_name(i)) for i in range(n))
    if flavor == "universal":
        y = tuple(F.gen(y_name(i)) for i in range(n))
    elif flavor == "tropical":
        y = tuple(initial_tropical_y(n))
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return Seed(B, x, y, F)


def coefficient_to_field(s: Seed, c: Coefficient) -> RationalFunction:
    if isinstance(c, TropicalMonomial):
        return s.field.monomial({y_name(j): a for j, a in enumerate(c.exponents)})
    return c


def _one_oplus(s: Seed, c: Coefficient) -> Coefficient:
    """``1 (+) c`` in the seed's semifield."""
    if isinstance(c, TropicalMonomial):
        return trop_sum(TropicalMonomial.one(len(c)), c)
    return 1 + c


def _xmono(s: Seed, exps: Sequence[int]) -> RationalFunction:
    """``prod_j x_j ** exps[j]`` for the *current* cluster variables."""
    out = s.field.one()
    for j, a in enumerate(exps):
        if a:
            out = out * s.x[j] ** a
    return out


def _tidy(f: RationalFunction) -> RationalFunction:
    return f.reduced()


def yhat(s: Seed) -> List[RationalFunction]:
    """``yhat_i = y_i prod_j x_j ** b_ji``."""
    n = s.n
    return [s.y_field(i) * _xmono(s, [s.B[j][i] for j in range(n)]) for i in range(n)]


def yhat_mutation(yh: Sequence[RationalFunction], B, k: int, eps: int = 1) -> List[RationalFunction]:
    """The exchange relation of ``yhat``-variables (independent of ``eps``):
    ``yhat'_k = yhat_k^{-1}``, ``yhat'_i = yhat_i yhat_k^{[eps b_ki]_+} (1 + yhat_k^eps)^{-b_ki}``."""
    B = ExchangeMatrix(B)
    check_index(k, B.n)
    out = []
    for i in range(B.n):
        if i == k:
            out.append(yh[k] ** -1)
        else:
            b = B[k][i]
            out.append(yh[i] * yh[k] ** pos(eps * b) * (1 + yh[k] ** eps) ** (-b))
    return out


# ---------------------------------------------------------------------------
# mutations
# ---------------------------------------------------------------------------

def _mutate_y(s: Seed, k: int, eps: int) -> Tuple[Coefficient, ...]:
    yk = s.y[k]
    yk_eps = yk if eps > 0 else yk ** -1
    denom = _one_oplus(s, yk_eps)
    out = []
    for i in range(s.n):
        if i == k:
            out.append(yk ** -1)
        else:
            b = s.B[k][i]
            v = s.y[i] * yk ** pos(eps * b) * denom ** (-b)
            out.append(v)
    return tuple(out)


def mutate_seed(s: Seed, k: int) -> Seed:
    """The exchange relations at ``k``.

    ``y'_k = y_k^{-1}``, ``y'_i = y_i y_k^{[b_ki]_+} (1 (+) y_k)^{-b_ki}`` and
    ``x'_k = x_k^{-1} (y_k prod x_j^{[b_jk]_+} + prod x_j^{[-b_jk]_+}) / (1 (+) y_k)``.
    In the tropical flavor the coefficients of the x-relation are the
    tropical ones, turned back into monomials in ``y1..yn``.
    """
    check_index(k, s.n)
    n = s.n
    up = _xmono(s, [pos(s.B[j][k]) for j in range(n)])
    down = _xmono(s, [pos(-s.B[j][k]) for j in range(n)])
    yk = s.y[k]
    d = _one_oplus(s, yk)
    p_plus = coefficient_to_field(s, yk / d if isinstance(yk, TropicalMonomial) else yk)
    if isinstance(yk, TropicalMonomial):
        p_minus = coefficient_to_field(s, d.inverse())
        xk = (p_plus * up + p_minus * down) / s.x[k]
    else:
        xk = (yk * up + down) / (s.x[k] * d)
    x = list(s.x)
    x[k] = _tidy(xk)
    return Seed(mutate_matrix(s.B, k), tuple(x), _mutate_y(s, k, 1), s.field)


def mutate_seed_eps(s: Seed, k: int, eps: int) -> Seed:
    """The same mutation written in its ``eps``-expression.

    ``x'_k = x_k^{-1} prod x_j^{[-eps b_jk]_+} (1 + yhat_k^eps) / (1 (+) y_k^eps)``.
    The result does not depend on ``eps``.
    """
    check_index(k, s.n)
    eps = _sign(eps)
    n = s.n
    yh = yhat(s)[k]
    yk = s.y[k]
    yk_eps = yk if eps > 0 else yk ** -1
    d = coefficient_to_field(s, _one_oplus(s, yk_eps))
    mono = _xmono(s, [pos(-eps * s.B[j][k]) for j in range(n)])
    xk = mono * (1 + yh ** eps) / (s.x[k] * d)
    x = list(s.x)
    x[k] = _tidy(xk)
    return Seed(mutate_matrix(s.B, k), tuple(x), _mutate_y(s, k, eps), s.field)


def _monomial_y(s: Seed, k: int, eps: int) -> Tuple[Coefficient, ...]:
    yk = s.y[k]
    return tuple(yk ** -1 if i == k else s.y[i] * yk ** pos(eps * s.B[k][i]) for i in range(s.n))


def signed_monomial_mutation(s: Seed, k: int, eps: int) -> Seed:
    """``y'_k = y_k^{-1}``, ``y'_i = y_i y_k^{[eps b_ki]_+}``,
    ``x'_k = x_k^{-1} prod_j x_j^{[-eps b_jk]_+}``.  The x-variables must be
    Laurent monomials."""
    check_index(k, s.n)
    eps = _sign(eps)
    for v in s.x:
        if not v.is_laurent_monomial():
            raise NonMonomialInput(f"{v} is not a Laurent monomial")
    x = list(s.x)
    x[k] = _xmono(s, [pos(-eps * s.B[j][k]) for j in range(s.n)]) / s.x[k]
    return Seed(mutate_matrix(s.B, k), tuple(x), _monomial_y(s, k, eps), s.field)


def _signed_seed_mutation(s: Seed, k: int, eps: int) -> Seed:
    check_index(k, s.n)
    eps = _sign(eps)
    yh = yhat(s)[k]
    mono = _xmono(s, [pos(-eps * s.B[j][k]) for j in range(s.n)])
    x = list(s.x)
    x[k] = _tidy(mono * (1 + yh ** eps) / s.x[k])
    return Seed(mutate_matrix(s.B, k), tuple(x), _monomial_y(s, k, eps), s.field)


def tropical_sign_at(s: Seed, k: int) -> int:
    check_index(k, s.n)
    if s.flavor != "tropical":
        raise ValueError("tropical signs need a tropical-flavor seed")
    return tropical_sign(s.y[k])


# ---------------------------------------------------------------------------
# extended seeds
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExtendedSeed:
    """``(B, x, y, yt)`` kept in lockstep with a Stokes triangulation state.

    ``ytilde[p]`` is the exponent ``+1`` or ``-1`` of ``yt_p`` relative to
    its initial value.
    """

    seed: Seed
    ytilde: Dict[str, int]
    state: StokesTriangulationState

    def __post_init__(self):
        if set(self.ytilde) != set(self.state.signed.punctures):
            raise ValueError("ytilde must be indexed by the punctures of the triangulation")
        if self.state.n != self.seed.n:
            raise LengthMismatch("triangulation and seed have different ranks")

    @property
    def n(self) -> int:
        return self.seed.n

    @property
    def triangulation(self) -> LabeledSignedTriangulation:
        return self.state.signed

    def ytilde_field(self, p: str) -> RationalFunction:
        return self.seed.field.monomial({yt_name(p): self.ytilde[p]})

    def describe(self) -> str:
        yt = ", ".join(f"yt_{p} = {yt_name(p)}^{e}" for p, e in self.ytilde.items())
        return self.seed.describe() + ("\n  " + yt if yt else "")


def initial_extended_seed(T: Union[LabeledSignedTriangulation, StokesTriangulationState]) -> ExtendedSeed:
    """Tropical-flavor seed with ``B = B(T)`` and ``yt_p`` for each puncture."""
    St = T if isinstance(T, StokesTriangulationState) else StokesTriangulationState(T)
    punct = St.signed.punctures
    F = cluster_field(St.n, punct)
    s = initial_seed(adjacency_matrix(St.signed), "tropical", F)
    return ExtendedSeed(s, {p: 1 for p in punct}, St)


def signed_mutation(s: Union[Seed, ExtendedSeed], k: int, eps: int):
    """Signed mutation ``mu_k^(eps)``.

    ``y`` changes as in the signed monomial mutation and
    ``x'_k = x_k^{-1} prod_j x_j^{[-eps b_jk]_+} (1 + yhat_k^eps)``.
    ``mu_k^(+)`` and ``mu_k^(-)`` are mutually inverse.  For extended seeds
    ``yt`` is unchanged and the attached triangulation gets the signed flip.
    """
    if isinstance(s, ExtendedSeed):
        St = signed_flip_stokes(s.state, k, eps)
        return ExtendedSeed(_signed_seed_mutation(s.seed, k, eps), dict(s.ytilde), St)
    return _signed_seed_mutation(s, k, eps)


def local_rescaling(x: Sequence[RationalFunction], T: LabeledSignedTriangulation, p: str,
                    c) -> Tuple[RationalFunction, ...]:
    """Rescale at puncture ``p`` by ``c``: arcs ending at ``p`` gain ``c``
    (once per endpoint), the outer arc of a self-folded triangle around
    ``p`` gains ``c^{-1}``."""
    ends = [0] * T.n
    for t in T.triangles:
        for s_, e in enumerate(t.edges):
            if isinstance(e, int):
                a, b = t.side(s_)
                ends[e] += (a == p) + (b == p)
    outer = {j for j, q in T.inner_arcs().values() if q == p}
    res = []
    for i, v in enumerate(x):
        # both slots of an arc see each of its endpoints, hence the halving
        e = ends[i] // 2 - (1 if i in outer else 0)
        res.append(v * c ** e if e else v)
    return tuple(res)


def signed_pop_seed(es: ExtendedSeed, p: str, eps: int) -> ExtendedSeed:
    """Signed pop ``kappa_p^(eps)``: ``yt_p -> yt_p^{-1}``,
    ``x_{i_p} -> (1 - yt_p^eps) x_{i_p}``, ``x_{j_p} -> (1 - yt_p^eps)^{-1} x_{j_p}``
    with ``i_p`` / ``j_p`` the inner / outer labels at ``p``; the attached
    triangulation is popped (labels swap)."""
    eps = _sign(eps)
    i, j = es.triangulation.self_folded_at(p)
    factor = 1 - es.ytilde_field(p) ** eps
    x = list(es.seed.x)
    x[i] = x[i] * factor
    x[j] = x[j] / factor
    yt = dict(es.ytilde)
    yt[p] = -yt[p]
    St = signed_pop_stokes(es.state, p, eps)
    return ExtendedSeed(es.seed.replace(x=tuple(x)), yt, St)


def apply_extended_move(es: ExtendedSeed, m: Move) -> ExtendedSeed:
    if m.kind == "flip":
        return signed_mutation(es, m.target, m.sign)
    return signed_pop_seed(es, m.target, m.sign)


def run_extended(es: ExtendedSeed, moves: Iterable[Move]) -> List[ExtendedSeed]:
    out = [es]
    for m in moves:
        out.append(apply_extended_move(out[-1], m))
    return out


# ---------------------------------------------------------------------------
# periodicity
# ---------------------------------------------------------------------------

def run_sequence(s0: Seed, ks: Sequence[int], mutate=mutate_seed) -> List[Seed]:
    """Seeds ``s(1) = s0, s(2), ..., s(N+1)`` along the sequence."""
    out = [s0]
    for k in ks:
        out.append(mutate(out[-1], k))
    return out


def _check_perm(nu: Sequence[int], n: int) -> List[int]:
    nu = list(nu)
    if len(nu) != n:
        raise LengthMismatch(f"permutation of length {len(nu)} for rank {n}")
    if sorted(nu) != list(range(n)):
        raise IndexOutOfRange(f"{nu} is not a permutation of range({n})")
    return nu


def _coef_equal(a: Coefficient, b: Coefficient) -> bool:
    if isinstance(a, TropicalMonomial):
        return a == b
    return rf_equal(a, b)


def check_period(s0: Seed, ks: Sequence[int], nu: Sequence[int]) -> bool:
    """True iff ``y'_{nu(i)} = y_i`` for the seed ``mu_ks(s0)``."""
    nu = _check_perm(nu, s0.n)
    for k in ks:
        check_index(k, s0.n)
    s = s0
    for k in ks:
        s = mutate_seed(s, k)
    return all(_coef_equal(s.y[nu[i]], s0.y[i]) for i in range(s0.n))


def seeds_match(a: Seed, b: Seed, nu: Optional[Sequence[int]] = None) -> bool:
    """Full comparison ``b_{nu(i) nu(j)} = a_ij``, ``x, y`` permuted likewise."""
    nu = _check_perm(nu if nu is not None else range(a.n), a.n)
    if b.B != a.B.permuted(nu):
        return False
    return all(rf_equal(b.x[nu[i]], a.x[i]) and _coef_equal(b.y[nu[i]], a.y[i])
               for i in range(a.n))


def check_extended_period(es0: ExtendedSeed, moves: Sequence[Move], nu: Sequence[int]) -> bool:
    """Execute signed moves and test full return up to ``nu``: matrix, x, y,
    the ``yt`` exponents and the signed triangulation."""
    es = es0
    for m in moves:
        es = apply_extended_move(es, m)
    nu = _check_perm(nu, es0.n)
    return (seeds_match(es0.seed, es.seed, nu) and es.ytilde == es0.ytilde
            and es.triangulation == es0.triangulation.relabeled(nu))


def tropical_signs(B0, ks: Sequence[int]) -> List[int]:
    from .tropical import tropical_run
    return tropical_run(B0, ks)[0]


def dump_seed(s: Seed) -> str:
    return json.dumps(s.to_dict(), indent=2)


def _sign(eps) -> int:
    if eps in (1, -1):
        return int(eps)
    if eps in ("+", "-"):
        return 1 if eps == "+" else -1
    raise ValueError(f"sign must be +1 or -1, got {eps!r}")
