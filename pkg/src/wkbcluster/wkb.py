"""Exact Riccati recursion for Schroedinger potentials with rational terms.

The potential is ``Q(z, eta) = Q_0(z) + eta^{-1} Q_1(z) + eta^{-2} Q_2(z) + ...``
with each ``Q_n`` a rational function of ``z`` over Q(i).  The formal
solution ``S = sum_{n >= -1} eta^{-n} S_n`` of ``S' + S^2 = eta^2 Q`` lives in
the quadratic extension ``K(s)``, ``s^2 = Q_0``, of ``K = Q(i)(z)``.  Every
coefficient is stored as ``a(z) + b(z) s`` (:class:`SqrtExtElement`).  The
``+`` branch starts from ``S_{-1} = s``; the ``-`` branch is obtained by
``s -> -s``.  The odd part of ``S_n`` is ``b_n s`` and its even part is
``a_n``.

Local questions at a pole ``p`` (valuations, residues) are answered in the
local coordinate ``t`` with ``z = p + t`` (finite ``p``) or ``z = 1/t``
(``p = inf``).  The one-form ``b_n s dz`` becomes ``b_n(z(t)) sqrt(Qt_0(t)) dt``
with ``Qt_0 = Q_0(z(t)) (dz/dt)^2``.  At an even-order pole the square root
is single valued; the branch used is the one whose leading Laurent
coefficient has argument in ``(-pi/2, pi/2]``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import AssumptionViolation, OddOrderPole, ZeroLeadingTerm
from .ratfun import (
    Coefficient,
    FunctionField,
    GaussianRational,
    Polynomial,
    RationalFunction,
    coeff_str,
    rf_equal,
    to_coeff,
)

INF = "inf"
Point = Union[Coefficient, str]


# ---------------------------------------------------------------------------
# potentials
# ---------------------------------------------------------------------------

class Potential:
    """``Q_0, Q_1, ..., Q_m`` as rational functions of one variable."""

    def __init__(self, Q: Sequence, var: str = "z"):
        self.var = var
        self.field = FunctionField([var])
        terms = []
        for q in Q:
            if isinstance(q, RationalFunction):
                if q.vars != (var,):
                    raise ValueError(f"potential terms must be functions of {var!r} only")
                terms.append(q)
            else:
                terms.append(self.field.parse(str(q)))
        if not terms or terms[0].is_zero():
            raise ZeroLeadingTerm("Q_0 vanishes identically")
        self.Q = tuple(terms)

    @classmethod
    def from_strings(cls, texts: Sequence[str], var: str = "z") -> "Potential":
        return cls(list(texts), var)

    @property
    def Q0(self) -> RationalFunction:
        return self.Q[0]

    def term(self, n: int) -> RationalFunction:
        """``Q_n`` (zero beyond the stored terms)."""
        if 0 <= n < len(self.Q):
            return self.Q[n]
        return self.field.zero()

    def zero(self) -> RationalFunction:
        return self.field.zero()

    def d(self, f: RationalFunction) -> RationalFunction:
        return f.derivative(self.var)

    def __repr__(self):
        return "Potential([" + ", ".join(f"'{q}'" for q in self.Q) + "])"

    def to_dict(self) -> dict:
        return {"var": self.var, "Q": [str(q) for q in self.Q]}


def airy() -> Potential:
    return Potential(["z"])


def weber() -> Potential:
    return Potential(["1 - z^2"])


def hypergeometric(alpha, beta, gamma) -> Potential:
    """Gauss' equation in Schroedinger form: ``Q = Q_0 + eta^{-2} Q_2``."""
    F = FunctionField(["z"])
    z = F.gen("z")
    a, b, c = (to_coeff(v) for v in (alpha, beta, gamma))
    den = 4 * z ** 2 * (z - 1) ** 2
    Q0 = ((a - b) ** 2 * z ** 2 + 2 * (2 * a * b - a * c - b * c) * z + c ** 2) / den
    Q2 = -(z ** 2 - z + 1) / den
    return Potential([Q0, F.zero(), Q2])


# ---------------------------------------------------------------------------
# the quadratic extension K(s), s^2 = Q_0
# ---------------------------------------------------------------------------

class SqrtExtElement:
    """``a + b s`` with ``s^2 = Q_0``."""

    __slots__ = ("a", "b", "Q0")

    def __init__(self, a: RationalFunction, b: RationalFunction, Q0: RationalFunction):
        self.a = a
        self.b = b
        self.Q0 = Q0

    @classmethod
    def scalar(cls, a: RationalFunction, Q0: RationalFunction) -> "SqrtExtElement":
        return cls(a, a * 0, Q0)

    @classmethod
    def s(cls, Q0: RationalFunction) -> "SqrtExtElement":
        return cls(Q0 * 0, Q0 * 0 + 1, Q0)

    def _lift(self, other) -> "SqrtExtElement":
        if isinstance(other, SqrtExtElement):
            return other
        return SqrtExtElement(self.a * 0 + other, self.a * 0, self.Q0)

    def __add__(self, other):
        o = self._lift(other)
        return SqrtExtElement(self.a + o.a, self.b + o.b, self.Q0)

    __radd__ = __add__

    def __neg__(self):
        return SqrtExtElement(-self.a, -self.b, self.Q0)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return SqrtExtElement(self.a * o.a + self.b * o.b * self.Q0, self.a * o.b + self.b * o.a, self.Q0)

    __rmul__ = __mul__

    def conjugate(self) -> "SqrtExtElement":
        """The covering involution ``s -> -s``."""
        return SqrtExtElement(self.a, -self.b, self.Q0)

    def norm(self) -> RationalFunction:
        return self.a * self.a - self.b * self.b * self.Q0

    def __truediv__(self, other):
        o = self._lift(other)
        n = o.norm()
        num = self * o.conjugate()
        return SqrtExtElement(num.a / n, num.b / n, self.Q0)

    def derivative(self, var: str = "z") -> "SqrtExtElement":
        """``(a + b s)' = a' + (b' + b Q_0'/(2 Q_0)) s``."""
        dQ = self.Q0.derivative(var)
        return SqrtExtElement(self.a.derivative(var),
                              self.b.derivative(var) + self.b * dQ / (2 * self.Q0), self.Q0)

    def div_2s(self) -> "SqrtExtElement":
        """``(a + b s)/(2 s) = b/2 + (a/(2 Q_0)) s``."""
        return SqrtExtElement(self.b / 2, self.a / (2 * self.Q0), self.Q0)

    def odd(self) -> "SqrtExtElement":
        return SqrtExtElement(self.a * 0, self.b, self.Q0)

    def even(self) -> "SqrtExtElement":
        return SqrtExtElement(self.a, self.b * 0, self.Q0)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other):
        if not isinstance(other, SqrtExtElement):
            try:
                other = self._lift(other)
            except Exception:
                return NotImplemented
        return rf_equal(self.a, other.a) and rf_equal(self.b, other.b)

    __hash__ = None

    def __str__(self):
        if self.b.is_zero():
            return str(self.a)
        bs = f"({self.b})*s"
        return bs if self.a.is_zero() else f"{self.a} + {bs}"

    def __repr__(self):
        return f"SqrtExtElement('{self}')"

    def to_dict(self) -> dict:
        return {"even": str(self.a), "odd_over_s": str(self.b)}


# ---------------------------------------------------------------------------
# Riccati recursion
# ---------------------------------------------------------------------------

def riccati(P: Potential, N: int) -> List[SqrtExtElement]:
    """``[S_{-1}, S_0, ..., S_N]`` of the ``+`` branch.

    ``S_{-1} = s`` and
    ``S_{n+1} = (Q_{n+2} - sum_{n1+n2=n, n_j >= 0} S_{n1} S_{n2} - S_n') / (2 s)``.
    """
    if N < -1:
        raise ValueError("N must be at least -1")
    Q0 = P.Q0
    S = [SqrtExtElement.s(Q0)]
    for n in range(-1, N):
        acc = SqrtExtElement.scalar(P.term(n + 2), Q0)
        for n1 in range(0, n + 1):
            acc = acc - S[n1 + 1] * S[n - n1 + 1]
        acc = acc - S[n + 1].derivative(P.var)
        S.append(acc.div_2s())
    return S


def minus_branch(S: Sequence[SqrtExtElement]) -> List[SqrtExtElement]:
    """``S^(-)_n``: the conjugates ``s -> -s``."""
    return [x.conjugate() for x in S]


def s_odd(P: Potential, N: int, S: Optional[Sequence[SqrtExtElement]] = None) -> List[SqrtExtElement]:
    """``[S_odd,-1, ..., S_odd,N]``; ``S_odd,n = b_n s``."""
    S = S if S is not None else riccati(P, N)
    return [x.odd() for x in S[: N + 2]]


def s_odd_reg(P: Potential, N: int, S: Optional[Sequence[SqrtExtElement]] = None) -> List[SqrtExtElement]:
    """``[S_odd,0, ..., S_odd,N]``: the odd part without the ``eta s`` term."""
    return s_odd(P, N, S)[1:]


def s_even(P: Potential, N: int, S: Optional[Sequence[SqrtExtElement]] = None) -> List[SqrtExtElement]:
    S = S if S is not None else riccati(P, N)
    return [x.even() for x in S[: N + 2]]


def riccati_residual(P: Potential, N: int, S: Optional[Sequence[SqrtExtElement]] = None) -> List[SqrtExtElement]:
    """Coefficients of ``eta^{-j}``, ``j = -2..N``, of ``S' + S^2 - eta^2 Q``.

    ``S`` must contain ``S_{-1}..S_{N+1}`` (computed if not given).
    """
    S = list(S) if S is not None else riccati(P, N + 1)
    if len(S) < N + 3:
        raise ValueError(f"need S_-1 .. S_{N + 1} for the residual through eta^-{N}")
    Q0 = P.Q0
    out = []
    for j in range(-2, N + 1):
        acc = SqrtExtElement.scalar(-P.term(j + 2), Q0)
        if j >= -1:
            acc = acc + S[j + 1].derivative(P.var)
        for n1 in range(-1, j + 2):
            n2 = j - n1
            if -1 <= n2 <= N + 1:
                acc = acc + S[n1 + 1] * S[n2 + 1]
        out.append(acc)
    return out


def residual_vanishes(P: Potential, N: int) -> bool:
    """The Riccati equation holds exactly through ``eta^{-N}``."""
    return all(r.is_zero() for r in riccati_residual(P, N))


def log_derivative_check(P: Potential, N: int, S: Optional[Sequence[SqrtExtElement]] = None) -> bool:
    """``S_even = -(1/2) (log S_odd)'`` order by order through ``eta^{-N}``.

    Multiplied out: ``sum_{n1+n2=j} a_{n1} (b_{n2} s) = -(1/2) (b_j s)'``.
    """
    S = list(S) if S is not None else riccati(P, N + 1)
    odd = [x.odd() for x in S]
    even = [x.even() for x in S]
    for j in range(-1, N + 1):
        lhs = SqrtExtElement.scalar(P.zero(), P.Q0)
        for n1 in range(0, j + 2):
            n2 = j - n1
            if n2 >= -1:
                lhs = lhs + even[n1 + 1] * odd[n2 + 1]
        rhs = odd[j + 1].derivative(P.var) * Fraction(-1, 2)
        if not lhs == rhs:
            return False
    return True


def s_odd_0_formula(P: Potential) -> SqrtExtElement:
    """``Q_1 / (2 sqrt(Q_0))`` written in ``K(s)``: ``(Q_1/(2 Q_0)) s``."""
    return SqrtExtElement(P.zero(), P.term(1) / (2 * P.Q0), P.Q0)


# ---------------------------------------------------------------------------
# local coordinates, valuations and Laurent series
# ---------------------------------------------------------------------------

def parse_point(p) -> Point:
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "oo"):
            return INF
        return to_coeff(p)
    return to_coeff(p)


def _point_str(p: Point) -> str:
    return "inf" if p == INF else coeff_str(p)


def _taylor_shift(coeffs: Sequence[Coefficient], p: Coefficient) -> List[Coefficient]:
    """Coefficients of ``f(p + t)`` from those of ``f(z)`` (repeated Horner)."""
    c = [to_coeff(a) for a in coeffs]
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] = c[j] + p * c[j + 1]
    return c


def _strip(c: Sequence[Coefficient]) -> Tuple[int, List[Coefficient]]:
    """``(v, rest)`` with ``c = t^v * rest`` and ``rest[0] != 0``."""
    v = 0
    while v < len(c) and c[v] == 0:
        v += 1
    if v == len(c):
        raise ValueError("zero polynomial has no valuation")
    return v, list(c[v:])


def _local_poly(poly: Polynomial, p: Point) -> Tuple[int, List[Coefficient]]:
    """``poly(z(t)) = t^v * (c_0 + c_1 t + ...)`` with ``c_0 != 0``."""
    coeffs = poly.coefficients_univariate()
    if p == INF:
        d = len(coeffs) - 1
        v, rest = _strip(list(reversed(coeffs)))
        return v - d, rest
    return _strip(_taylor_shift(coeffs, p))


def _local_rational(f: RationalFunction, p: Point, extra: int = 0) -> Tuple[int, List[Coefficient], List[Coefficient]]:
    """``t^extra f(z(t)) = t^v * num(t)/den(t)``, ``num(0), den(0) != 0``."""
    vn, num = _local_poly(f.num, p)
    vd, den = _local_poly(f.den, p)
    return vn - vd + extra, num, den


def order_at(f: RationalFunction, p: Point) -> int:
    """Valuation of ``f`` at ``p`` (zero order > 0, pole order < 0).

    At ``inf`` this is ``deg den - deg num``.
    """
    if f.is_zero():
        raise ValueError("the zero function has infinite order")
    return _local_rational(f, parse_point(p))[0]


def _dz_dt_order(p: Point) -> int:
    return -2 if p == INF else 0


def differential_pole_order(P: Potential, p) -> int:
    """Pole order of ``Q_0(z) dz^2`` at ``p`` (negative means a zero or regular point).

    At infinity this is ``4 + deg num - deg den``.
    """
    p = parse_point(p)
    return -(order_at(P.Q0, p) + 2 * _dz_dt_order(p))


@dataclass
class LaurentSeries:
    """``sum_k coeffs[k] t^(val + k)`` known modulo ``t^(val + len(coeffs))``."""

    val: int
    coeffs: List[Coefficient]

    @property
    def precision(self) -> int:
        return self.val + len(self.coeffs)

    def coefficient(self, k: int) -> Coefficient:
        if k >= self.precision:
            raise ValueError(f"coefficient of t^{k} beyond precision {self.precision}")
        i = k - self.val
        return self.coeffs[i] if i >= 0 else Fraction(0)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        prec = min(self.val + other.precision, other.val + self.precision)
        val = self.val + other.val
        n = prec - val
        out = [Fraction(0)] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                out[i + j] = out[i + j] + a * b
        return LaurentSeries(val, out)


def _series_div(num: Sequence[Coefficient], den: Sequence[Coefficient], n: int) -> List[Coefficient]:
    """First ``n`` coefficients of ``num/den`` (``den[0] != 0``)."""
    out = []
    d0 = den[0]
    for k in range(n):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc / d0)
    return out


def _series_sqrt1(h: Sequence[Coefficient], n: int) -> List[Coefficient]:
    """First ``n`` coefficients of ``sqrt(h)`` for ``h[0] = 1``."""
    g = [Fraction(1)]
    for k in range(1, n):
        acc = h[k] if k < len(h) else Fraction(0)
        for j in range(1, k):
            acc = acc - g[j] * g[k - j]
        g.append(acc / 2)
    return g[:n]


def laurent_expand(f: RationalFunction, p, precision: int, extra: int = 0) -> LaurentSeries:
    """Expansion of ``t^extra f(z(t))`` modulo ``t^precision``."""
    p = parse_point(p)
    v, num, den = _local_rational(f, p, extra)
    n = max(precision - v, 0)
    return LaurentSeries(v, _series_div(num, den, n))


# ---------------------------------------------------------------------------
# exact square-root constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SqrtConstant:
    """``coeff * sqrt(radicand)``, the square root taken with argument in (-pi/2, pi/2]."""

    coeff: Coefficient
    radicand: Coefficient

    def value(self) -> complex:
        return complex(self.coeff) * _principal_sqrt(complex(self.radicand))

    def simplified(self) -> "SqrtConstant":
        r = self.radicand
        if isinstance(r, Fraction):
            for sign, unit in ((1, Fraction(1)), (-1, GaussianRational(0, 1))):
                q = sign * r
                if q > 0:
                    a, b = _isqrt_exact(q.numerator), _isqrt_exact(q.denominator)
                    if a is not None and b is not None:
                        return SqrtConstant(to_coeff(self.coeff * unit * Fraction(a, b)), Fraction(1))
        return self

    def __neg__(self):
        return SqrtConstant(-self.coeff, self.radicand)

    def is_zero(self) -> bool:
        return self.coeff == 0 or self.radicand == 0

    def __str__(self):
        s = self.simplified()
        if s.is_zero():
            return "0"
        if s.radicand == 1:
            return coeff_str(s.coeff)
        c = "" if s.coeff == 1 else ("-" if s.coeff == -1 else coeff_str(s.coeff) + "*")
        return f"{c}sqrt({coeff_str(s.radicand)})"

    def to_dict(self) -> dict:
        v = self.value()
        return {"exact": str(self), "coeff": coeff_str(self.coeff), "radicand": coeff_str(self.radicand),
                "value": [v.real, v.imag]}


def _isqrt_exact(n: int) -> Optional[int]:
    r = math.isqrt(n)
    return r if r * r == n else None


def _principal_sqrt(w: complex) -> complex:
    r = cmath.sqrt(w)
    # cmath.sqrt(-x - 0j) lands on the -i side; the convention here is arg in (-pi/2, pi/2]
    if r.real == 0 and r.imag < 0:
        r = -r
    return r


# ---------------------------------------------------------------------------
# Prop.-2.5-type checks and residues
# ---------------------------------------------------------------------------

@dataclass
class PoleOrderRow:
    n: int
    valuation: Optional[Fraction]  # None when S_odd,n vanishes identically
    ok: bool

    def to_dict(self) -> dict:
        v = None if self.valuation is None else str(self.valuation)
        return {"n": self.n, "valuation": v, "ok": self.ok}


@dataclass
class PoleOrderReport:
    point: str
    pole_order: int
    rows: List[PoleOrderRow] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def text(self) -> str:
        lines = [f"pole {self.point} (order {self.pole_order}):"]
        for r in self.rows:
            v = "identically 0" if r.valuation is None else f"valuation {r.valuation}"
            lines.append(f"  S_odd,{r.n}: {v}  {'ok' if r.ok else 'VIOLATION'}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"point": self.point, "pole_order": self.pole_order, "ok": self.ok,
                "rows": [r.to_dict() for r in self.rows]}


def one_form_valuation(b: RationalFunction, P: Potential, p) -> Optional[Fraction]:
    """Valuation in ``t`` of ``b s dz = b(z(t)) sqrt(Qt_0(t)) dt`` (``None`` if ``b = 0``)."""
    if b.is_zero():
        return None
    p = parse_point(p)
    m = differential_pole_order(P, p)
    return Fraction(order_at(b, p)) - Fraction(m, 2)


def pole_order_check(P: Potential, N: int, p, S: Optional[Sequence[SqrtExtElement]] = None,
                     raise_on_violation: bool = True) -> PoleOrderReport:
    """Valuations of ``S_odd,n dz`` at the pole ``p`` for ``n = 0..N``.

    Each must exceed ``-1`` (integrability); at even-order poles each must be
    ``>= 0`` (holomorphy).  Raises :class:`AssumptionViolation` otherwise.
    """
    p = parse_point(p)
    m = differential_pole_order(P, p)
    if m < 2:
        raise ValueError(f"{_point_str(p)} is not a pole of order >= 2 of Q_0 dz^2 (order {m})")
    S = S if S is not None else riccati(P, N)
    report = PoleOrderReport(_point_str(p), m)
    for n in range(0, N + 1):
        v = one_form_valuation(S[n + 1].b, P, p)
        if v is None:
            ok = True
        elif m % 2 == 0:
            ok = v >= 0
        else:
            ok = v > -1
        report.rows.append(PoleOrderRow(n, v, ok))
    if raise_on_violation and not report.ok:
        bad = [r.n for r in report.rows if not r.ok]
        raise AssumptionViolation(f"S_odd,n not integrable/holomorphic at {_point_str(p)} for n = {bad}\n"
                                  + report.text())
    return report


def assumption_check(P: Potential, p) -> List[str]:
    """Exact order conditions on ``Q_n`` (n >= 1) at the pole ``p`` of ``Q_0 dz^2``.

    For poles of order ``m >= 3``: the order of ``Q_n`` is ``< 1 + m/2``.
    For double poles: ``Q_n`` has at most a simple pole for ``n != 2`` and
    ``Q_2 = -1/(4 t^2) (1 + O(t))``.  Returns a list of violations (empty
    when the conditions hold).
    """
    p = parse_point(p)
    m = differential_pole_order(P, p)
    problems = []
    for n in range(1, len(P.Q)):
        q = P.Q[n]
        if q.is_zero():
            continue
        order = -(order_at(q, p) + 2 * _dz_dt_order(p))  # pole order of Qt_n = Q_n (dz/dt)^2
        if m >= 3:
            if not Fraction(order) < 1 + Fraction(m, 2):
                problems.append(f"Q_{n} has a pole of order {order} >= 1 + {m}/2 at {_point_str(p)}")
        elif m == 2:
            if n == 2:
                lead = laurent_expand(q, p, -1, extra=2 * _dz_dt_order(p))
                if order != 2 or lead.coefficient(-2) != Fraction(-1, 4):
                    c = lead.coefficient(-2) if order <= 2 else "higher pole"
                    problems.append(f"Q_2 is not -1/(4t^2)(1+O(t)) at {_point_str(p)} (t^-2 coefficient {c})")
            elif order > 1:
                problems.append(f"Q_{n} has a pole of order {order} > 1 at {_point_str(p)}")
    return problems


def residue_even_pole(P: Potential, n: int, p, S: Optional[Sequence[SqrtExtElement]] = None) -> SqrtConstant:
    """``Res_{t=0} S_odd,n dz`` at an even-order pole, on the branch fixed above.

    ``n = -1`` gives the residue of ``sqrt(Q_0) dz``.  The result is
    ``c * sqrt(u0)`` with ``c`` in Q(i) and ``u0`` the leading coefficient of
    ``Qt_0``.
    """
    p = parse_point(p)
    m = differential_pole_order(P, p)
    if m < 2 or m % 2:
        raise OddOrderPole(f"{_point_str(p)} is a pole of order {m}; residues need an even order >= 2")
    S = S if S is not None else riccati(P, max(n, -1))
    b = S[n + 1].b
    # sqrt(Qt_0) = t^{-m/2} sqrt(u0) sqrt(h), h = Qt_0 t^m / u0, h(0) = 1
    v, num, den = _local_rational(P.Q0, p, 2 * _dz_dt_order(p))
    assert v == -m
    if b.is_zero():
        return SqrtConstant(Fraction(0), num[0] / den[0])
    vb = order_at(b, p) - m // 2
    need = -1 - vb + 1  # terms of sqrt(h) that reach t^{-1}
    if need <= 0:
        return SqrtConstant(Fraction(0), num[0] / den[0])
    h = _series_div(num, den, need)
    u0 = h[0]
    g = _series_sqrt1([c / u0 for c in h], need)
    bs = laurent_expand(b, p, precision=0 + m // 2, extra=0)  # b(z(t)) modulo t^{m/2}
    bt = LaurentSeries(bs.val - m // 2, bs.coeffs)  # times t^{-m/2}
    prod = bt * LaurentSeries(0, g)
    return SqrtConstant(to_coeff(prod.coefficient(-1)), u0)


def voros_residue_coefficient(P: Potential, p) -> SqrtConstant:
    """``Res sqrt(Q_0) dz``; the residue Voros symbol is ``4 pi i eta`` times this."""
    return residue_even_pole(P, -1, p)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def riccati_report(P: Potential, N: int) -> dict:
    S = riccati(P, N + 1)
    return {
        "potential": P.to_dict(),
        "order": N,
        "S": [{"n": n, "even": str(S[n + 1].a), "odd_over_s": str(S[n + 1].b)} for n in range(-1, N + 1)],
        "residual_vanishes": all(r.is_zero() for r in riccati_residual(P, N, S)),
        "log_derivative_identity": log_derivative_check(P, N, S),
    }


def riccati_text(P: Potential, N: int) -> str:
    d = riccati_report(P, N)
    lines = [f"Q = {', '.join(P.to_dict()['Q'])}   (s^2 = Q_0)"]
    for row in d["S"]:
        lines.append(f"S_{row['n']} = {row['even']} + ({row['odd_over_s']})*s")
    lines.append(f"residual vanishes through eta^-{N}: {d['residual_vanishes']}")
    lines.append(f"S_even = -(1/2)(log S_odd)': {d['log_derivative_identity']}")
    return "\n".join(lines)


def dump_report(P: Potential, N: int) -> str:
    return json.dumps(riccati_report(P, N), indent=2)
