"""Exact sparse multivariate polynomials and rational functions.

Coefficients are :class:`fractions.Fraction` or :class:`GaussianRational`
(rationals adjoined ``i``); nothing in this module ever touches a float.

A :class:`Polynomial` is a dictionary from exponent tuples to nonzero
coefficients over a fixed, ordered tuple of generator names.  A
:class:`RationalFunction` is a pair ``num/den`` whose denominator is made
monic with respect to the graded-lexicographic order.  Equality of
rational functions is decided by cross-multiplication, so correctness
never depends on reduction; quotients are nevertheless kept in lowest
terms (Euclid for one generator, recursive primitive remainder sequences
for several) so that long mutation sequences stay small.

Typical use goes through a :class:`FunctionField`::

    >>> K = FunctionField(["x1", "x2", "y1"])
    >>> x1, x2, y1 = K.gens
    >>> f = (x2 + y1) / x1
    >>> str(f)
    '(x2 + y1)/(x1)'
"""

from __future__ import annotations

import ast
import heapq
import math
import random as _random
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import DivisionByZero, NonMonomialInput, VariableMismatch

Exponent = Tuple[int, ...]


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts.

    Arithmetic that produces a purely real value returns a plain
    :class:`~fractions.Fraction`, so Q-valued computations stay in Q.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _split(other):
        if isinstance(other, GaussianRational):
            return other.re, other.im
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return gaussian(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return gaussian(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return gaussian(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o
        return gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        c, d = o
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b = self.re, self.im
        return gaussian((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return GaussianRational(*o) / self

    def __neg__(self):
        return gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** (-k))
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return gaussian(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        o = self._split(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return coeff_str(self)


Coefficient = Union[Fraction, GaussianRational]


def gaussian(re, im) -> Coefficient:
    """Build ``re + im*i``, collapsing to a Fraction when ``im == 0``."""
    im = Fraction(im)
    if im == 0:
        return Fraction(re)
    return GaussianRational(re, im)


I = GaussianRational(0, 1)


def to_coeff(c) -> Coefficient:
    """Coerce ``c`` to an exact coefficient.

    Accepts ints, Fractions, Gaussian rationals, complex numbers with
    integral parts, and strings such as ``"3/2"``, ``"-i"`` or ``"1+2i"``.
    Floats are rejected: the exact layer never guesses.
    """
    if isinstance(c, GaussianRational):
        return gaussian(c.re, c.im)
    if isinstance(c, bool):
        return Fraction(int(c))
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    if isinstance(c, complex):
        if c.real != int(c.real) or c.imag != int(c.imag):
            raise TypeError(f"inexact complex coefficient {c!r}")
        return gaussian(int(c.real), int(c.imag))
    if isinstance(c, str):
        value = parse_expression(c, ())
        if not value.is_constant():
            raise ValueError(f"{c!r} is not a constant")
        return value.constant_value()
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


def coeff_str(c: Coefficient) -> str:
    if isinstance(c, GaussianRational):
        if c.re == 0:
            if c.im == 1:
                return "i"
            if c.im == -1:
                return "-i"
            return f"{c.im}*i"
        sign = "+" if c.im > 0 else "-"
        mag = abs(c.im)
        im = "i" if mag == 1 else f"{mag}*i"
        return f"({c.re}{sign}{im})"
    return str(c)


def _is_negative(c: Coefficient) -> bool:
    if isinstance(c, GaussianRational):
        return c.re < 0 or (c.re == 0 and c.im < 0)
    return c < 0


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

def _grlex_key(e: Exponent):
    return (sum(e), e)


def _neg_grlex(e: Exponent):
    """Heap entry ordering exponents by decreasing grlex."""
    return ((-sum(e), tuple(-a for a in e)), e)


class Polynomial:
    """Sparse polynomial over an ordered tuple of generator names."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.vars = tuple(vars)
        clean: Dict[Exponent, Coefficient] = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                e = tuple(int(a) for a in e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for {self.vars}")
                if any(a < 0 for a in e):
                    raise ValueError(f"negative exponent {e} in a polynomial")
                c = to_coeff(c)
                if c != 0:
                    clean[e] = clean.get(e, 0) + c
                    if clean[e] == 0:
                        del clean[e]
        self.terms = clean

    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Dict[Exponent, Coefficient]) -> "Polynomial":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, vars) -> "Polynomial":
        return cls._raw(tuple(vars), {})

    @classmethod
    def constant(cls, vars, c) -> "Polynomial":
        vars = tuple(vars)
        c = to_coeff(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c != 0 else {})

    @classmethod
    def generator(cls, vars, name: str) -> "Polynomial":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls._raw(vars, {tuple(e): Fraction(1)})

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Coefficient:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # structure ------------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.vars != other.vars:
            raise VariableMismatch(f"{self.vars} vs {other.vars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.vars, other)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, name: str | None = None) -> int:
        """Degree in one generator (or the only generator)."""
        if name is None:
            if len(self.vars) != 1:
                raise ValueError("degree() needs a generator name for multivariate input")
            idx = 0
        else:
            idx = self.vars.index(name)
        if not self.terms:
            return -1
        return max(e[idx] for e in self.terms)

    def leading_exponent(self) -> Exponent:
        if not self.terms:
            raise DivisionByZero("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self) -> Coefficient:
        return self.terms[self.leading_exponent()]

    def monomial_content(self) -> Exponent:
        """Componentwise minimum of the exponents (largest monomial divisor)."""
        if not self.terms:
            return (0,) * len(self.vars)
        exps = list(self.terms)
        return tuple(min(col) for col in zip(*exps))

    def shift(self, e: Exponent, sign: int = 1) -> "Polynomial":
        """Multiply (sign=+1) or exactly divide (sign=-1) by the monomial x^e."""
        out = {}
        for f, c in self.terms.items():
            g = tuple(a + sign * b for a, b in zip(f, e))
            if sign < 0 and any(a < 0 for a in g):
                raise ValueError("monomial does not divide polynomial")
            out[g] = c
        return Polynomial._raw(self.vars, out)

    def scale(self, c) -> "Polynomial":
        c = to_coeff(c)
        if c == 0:
            return Polynomial.zero(self.vars)
        return Polynomial._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v == 0:
                    del out[e]
                else:
                    out[e] = v
        return Polynomial._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: Dict[Exponent, Coefficient] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return Polynomial._raw(self.vars, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        try:
            return self == Polynomial.constant(self.vars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # division -------------------------------------------------------------
    def divmod_exact(self, divisor: "Polynomial", _abort: bool = False):
        """Multivariate division by one polynomial (grlex).

        Returns ``(quotient, remainder)``; the division is exact iff the
        remainder is zero.  With ``_abort`` the division stops (returning
        ``None``) at the first remainder term.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        lt = divisor.leading_exponent()
        lc = divisor.terms[lt]
        rem = dict(self.terms)
        quot: Dict[Exponent, Coefficient] = {}
        out_rem: Dict[Exponent, Coefficient] = {}
        # max-heap of remainder exponents (grlex); stale entries are skipped
        heap = [_neg_grlex(e) for e in rem]
        heapq.heapify(heap)
        while rem:
            e = heapq.heappop(heap)[1]
            if e not in rem:
                continue
            c = rem[e]
            diff = tuple(a - b for a, b in zip(e, lt))
            if any(a < 0 for a in diff):
                if _abort:
                    return None
                out_rem[e] = c
                del rem[e]
                continue
            q = c / lc
            quot[diff] = quot.get(diff, 0) + q
            for f, d in divisor.terms.items():
                g = tuple(a + b for a, b in zip(f, diff))
                v = rem.get(g, 0) - q * d
                if v == 0:
                    rem.pop(g, None)
                else:
                    if g not in rem:
                        heapq.heappush(heap, _neg_grlex(g))
                    rem[g] = v
        return (Polynomial._raw(self.vars, {e: c for e, c in quot.items() if c != 0}),
                Polynomial._raw(self.vars, out_rem))

    def exact_quotient(self, divisor: "Polynomial"):
        """``self / divisor`` if the division is exact, else ``None``."""
        self._check(divisor)
        if not self.is_zero() and not divisor.is_zero():
            for i in range(len(self.vars)):
                if max(e[i] for e in divisor.terms) > max(e[i] for e in self.terms):
                    return None
        res = self.divmod_exact(divisor, _abort=True)
        return None if res is None else res[0]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_coefficient())

    def gcd_univariate(self, other: "Polynomial") -> "Polynomial":
        """Monic GCD of two univariate polynomials (Euclid over the field)."""
        self._check(other)
        if len(self.vars) != 1:
            raise ValueError("gcd_univariate needs a single generator")
        g = _dense_gcd(self.coefficients_univariate() if not self.is_zero() else [],
                       other.coefficients_univariate() if not other.is_zero() else [])
        return Polynomial.from_univariate(self.vars[0], g)

    # calculus / evaluation --------------------------------------------------
    def derivative(self, name: str) -> "Polynomial":
        idx = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[idx]:
                f = list(e)
                f[idx] -= 1
                out[tuple(f)] = c * e[idx]
        return Polynomial._raw(self.vars, out)

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at numeric values (exact or floating, caller's choice)."""
        vals = [point[v] for v in self.vars]
        numeric = any(isinstance(v, (float, complex)) for v in vals)
        total = 0
        for e, c in self.terms.items():
            term = complex(c) if numeric else c
            for v, a in zip(vals, e):
                if a:
                    term = term * v ** a
            total = total + term
        return total

    def coefficients_univariate(self):
        """Dense coefficient list ``[c0, c1, ...]`` of a univariate polynomial."""
        if len(self.vars) != 1:
            raise ValueError("not univariate")
        d = self.degree()
        out = [Fraction(0)] * (d + 1)
        for (a,), c in self.terms.items():
            out[a] = c
        return out

    @classmethod
    def from_univariate(cls, var: str, coeffs: Sequence) -> "Polynomial":
        return cls((var,), {(k,): c for k, c in enumerate(coeffs) if to_coeff(c) != 0})

    # display ------------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if a == 1 else f"{v}^{a}" for v, a in zip(self.vars, e) if a
            )
            neg = _is_negative(c)
            mag = -c if neg else c
            if not mono:
                body = coeff_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{coeff_str(mag)}*{mono}"
            pieces.append(("-" if neg else "+", body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Polynomial({self.vars}, '{self}')"


def _dense_rem_monic(a: list, b: list) -> list:
    """Remainder of ``a`` modulo the monic dense polynomial ``b`` (low degree first)."""
    a = list(a)
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            off = k - db
            for j in range(db):
                if b[j]:
                    a[off + j] = a[off + j] - c * b[j]
        a[k] = 0
    r = a[:db]
    while r and not r[-1]:
        r.pop()
    return r


def _dense_quo_monic(a: list, b: list) -> list:
    """Quotient of ``a`` by the monic dense polynomial ``b`` (remainder discarded)."""
    a = list(a)
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            off = k - db
            q[off] = c
            for j in range(db):
                if b[j]:
                    a[off + j] = a[off + j] - c * b[j]
    return q


def _dense_monic(a: list) -> list:
    lc = a[-1]
    if lc == 1:
        return list(a)
    inv = 1 / lc
    return [c * inv for c in a[:-1]] + [Fraction(1)]


def _dense_gcd(a: list, b: list) -> list:
    """Monic GCD of dense univariate coefficient lists (Euclid with monic remainders)."""
    a = list(a)
    b = list(b)
    while a and not a[-1]:
        a.pop()
    while b and not b[-1]:
        b.pop()
    if not a:
        return _dense_monic(b) if b else []
    if not b:
        return _dense_monic(a)
    if len(a) < len(b):
        a, b = b, a
    b = _dense_monic(b)
    while b:
        r = _dense_rem_monic(a, b)
        a, b = b, (_dense_monic(r) if r else [])
    return a


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """A quotient ``num/den`` of polynomials over the same generators.

    Normal form: the common monomial factor is cancelled, the denominator
    is monic (grlex), and univariate quotients are in lowest terms.
    Equality (``==``) is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, *, normalize: bool = True):
        if den is None:
            den = Polynomial.constant(num.vars, 1)
        num._check(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if normalize:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @property
    def vars(self) -> Tuple[str, ...]:
        return self.num.vars

    # helpers --------------------------------------------------------------
    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.vars != self.vars:
                raise VariableMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction(Polynomial.constant(self.vars, other))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Coefficient:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def laurent_exponents(self) -> Tuple[Coefficient, Tuple[int, ...]]:
        """``(c, e)`` with ``self == c * prod(v**e)``; raises if not a Laurent monomial."""
        if not (self.num.is_monomial() and self.den.is_monomial()):
            raise NonMonomialInput(f"{self} is not a Laurent monomial")
        (en, cn), = self.num.terms.items()
        (ed, cd), = self.den.terms.items()
        return cn / cd, tuple(a - b for a, b in zip(en, ed))

    def is_laurent_monomial(self) -> bool:
        return self.num.is_monomial() and self.den.is_monomial()

    # arithmetic -------------------------------------------------------------
    # Normalized quotients are in lowest terms, so sums and products only
    # need gcds of the smaller pieces (Henrici's algorithms).
    def __add__(self, other):
        other = self._coerce(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RationalFunction(a + c, b)
        g = poly_gcd(b, d)
        if g.is_constant():
            return _lowest(a * d + c * b, b * d)
        b1, d1 = _quo(b, g), _quo(d, g)
        t = a * d1 + c * b1
        h = poly_gcd(t, g)
        return _lowest(_quo(t, h), b1 * _quo(d, h))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return _cross(self.num, self.den, other.num, other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return _lowest(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return _cross(self.num, self.den, other.den, other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError("only integer powers are supported")
        if k < 0:
            return self.inverse() ** (-k)
        return _lowest(self.num ** k, self.den ** k)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return rf_equal(self, other)

    __hash__ = None  # equality is semantic; there is no canonical hashable form

    # calculus -----------------------------------------------------------------
    def derivative(self, name: str) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative(name) * d - n * d.derivative(name), d * d)

    def evaluate(self, point: Mapping[str, object]):
        den = self.den.evaluate(point)
        if den == 0:
            raise DivisionByZero("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / den

    def reduced(self) -> "RationalFunction":
        """Try harder to cancel: exact division of num by den (and vice versa)."""
        q = self.num.exact_quotient(self.den)
        if q is not None:
            return RationalFunction(q)
        q = self.den.exact_quotient(self.num) if not self.num.is_zero() else None
        if q is not None:
            return RationalFunction(Polynomial.constant(self.vars, 1), q)
        return self

    # display ----------------------------------------------------------------
    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction('{self}')"


# ---------------------------------------------------------------------------
# multivariate GCD (recursive primitive remainder sequences)
# ---------------------------------------------------------------------------

def _uses(p: Polynomial, idx: int) -> bool:
    return any(e[idx] for e in p.terms)


def _coeffs_in(p: Polynomial, idx: int) -> Dict[int, Polynomial]:
    """Coefficients of ``p`` as a polynomial in generator ``idx``."""
    out: Dict[int, Dict[Exponent, Coefficient]] = {}
    for e, c in p.terms.items():
        d = e[idx]
        f = e[:idx] + (0,) + e[idx + 1:]
        out.setdefault(d, {})[f] = c
    return {d: Polynomial._raw(p.vars, t) for d, t in out.items()}


def _unit_normal(p: Polynomial) -> Polynomial:
    return p.monic()


def _content_in(p: Polynomial, idx: int) -> Polynomial:
    g = None
    for c in sorted(_coeffs_in(p, idx).values(), key=lambda q: len(q.terms)):
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            return Polynomial.constant(p.vars, 1)
    return _unit_normal(g)


def _prem(a: Polynomial, b: Polynomial, idx: int) -> Polynomial:
    """Pseudo-remainder of ``a`` by ``b`` as polynomials in generator ``idx``."""
    db = b.degree(b.vars[idx])
    cb = _coeffs_in(b, idx)
    lcb = cb[db]
    r = a
    while not r.is_zero():
        dr = r.degree(r.vars[idx])
        if dr < db:
            break
        lcr = _coeffs_in(r, idx)[dr]
        e = [0] * len(a.vars)
        e[idx] = dr - db
        r = r * lcb - (lcr * b).shift(tuple(e))
    return r


def _image(p: Polynomial, idx: int, point: Sequence[int]) -> list:
    """Dense coefficients of ``p`` in generator ``idx`` after substituting
    ``point`` for all other generators."""
    out: Dict[int, Coefficient] = {}
    for e, c in p.terms.items():
        v = c
        for j, a in enumerate(e):
            if a and j != idx:
                v = v * point[j] ** a
        out[e[idx]] = out.get(e[idx], 0) + v
    d = max(out)
    return [out.get(i, 0) for i in range(d + 1)]


def _provably_coprime(a: Polynomial, b: Polynomial, tries: int = 3) -> bool:
    """``True`` if ``gcd(a, b)`` is shown to be constant by univariate images.

    A common factor only involves generators used by both.  For each such
    generator, substituting integers for the others keeps the degree of the
    gcd as long as the leading coefficients survive, so a constant image
    gcd bounds that degree by zero.  ``False`` means "not shown", not
    "not coprime".
    """
    shared = [i for i in range(len(a.vars)) if _uses(a, i) and _uses(b, i)]
    rng = _random.Random(len(a.terms) * 7919 + len(b.terms))
    for idx in shared:
        ok = False
        for _ in range(tries):
            point = [rng.randint(2, 97) for _ in a.vars]
            ia, ib = _image(a, idx, point), _image(b, idx, point)
            if ia[-1] == 0 or ib[-1] == 0 or len(ia) != a.degree(a.vars[idx]) + 1 \
                    or len(ib) != b.degree(b.vars[idx]) + 1:
                continue
            if len(_dense_gcd(ia, ib)) == 1:
                ok = True
            break
        if not ok:
            return False
    return True


def _integer_form(p: Polynomial) -> Optional[Polynomial]:
    """``p`` scaled to integer coefficients, or ``None`` for non-rational ones."""
    den = 1
    for c in p.terms.values():
        if isinstance(c, GaussianRational):
            return None
        den = den * c.denominator // math.gcd(den, c.denominator)
    return Polynomial._raw(p.vars, {e: int(c * den) for e, c in p.terms.items()})


def _fraction_form(p: Polynomial) -> Polynomial:
    return Polynomial._raw(p.vars, {e: Fraction(c) for e, c in p.terms.items()})


def _int_content(p: Polynomial) -> int:
    g = 0
    for c in p.terms.values():
        g = math.gcd(g, int(c))
    return g


def _symmetric_mod(c: int, m: int) -> int:
    r = c % m
    return r - m if r > m // 2 else r


def _eval_at(p: Polynomial, j: int, xi: int) -> Polynomial:
    out: Dict[Exponent, int] = {}
    for e, c in p.terms.items():
        f = e[:j] + (0,) + e[j + 1:]
        out[f] = out.get(f, 0) + c * xi ** e[j]
    return Polynomial._raw(p.vars, {e: c for e, c in out.items() if c})


def _interpolate(h: Polynomial, j: int, xi: int) -> Polynomial:
    """Recover a polynomial in generator ``j`` from its value at ``xi`` (xi-adic digits)."""
    terms: Dict[Exponent, int] = {}
    cur = dict(h.terms)
    i = 0
    while cur:
        nxt = {}
        for e, c in cur.items():
            d = _symmetric_mod(c, xi)
            if d:
                terms[e[:j] + (i,) + e[j + 1:]] = d
            q = (c - d) // xi
            if q:
                nxt[e] = q
        cur = nxt
        i += 1
    return Polynomial._raw(h.vars, terms)


_HEU_GCD_BITS = 4000


def _heu_gcd_int(f: Polynomial, g: Polynomial, tries: int = 6) -> Optional[Polynomial]:
    """Heuristic gcd of nonzero integer polynomials (evaluation at a large
    integer, recursive gcd of the images, xi-adic reconstruction, checked by
    exact division).  With ``xi > 2 min(|f|, |g|) + 1`` a candidate that
    divides both inputs is the gcd.  ``None`` if every attempt fails."""
    cf, cg = _int_content(f), _int_content(g)
    cont = math.gcd(cf, cg)
    used = [i for i in range(len(f.vars)) if _uses(f, i) or _uses(g, i)]
    if f.is_constant() or g.is_constant() or not used:
        return Polynomial.constant(f.vars, cont)
    f = Polynomial._raw(f.vars, {e: c // cf for e, c in f.terms.items()})
    g = Polynomial._raw(g.vars, {e: c // cg for e, c in g.terms.items()})
    j = used[-1]
    norm = min(max(abs(c) for c in f.terms.values()), max(abs(c) for c in g.terms.values()))
    xi = 2 * norm + 29
    degree = max(max(e[j] for e in f.terms), max(e[j] for e in g.terms))
    if xi.bit_length() * degree > _HEU_GCD_BITS:
        return None  # the images would be too large; let the caller fall back
    for _ in range(tries):
        ff, gg = _eval_at(f, j, xi), _eval_at(g, j, xi)
        if not ff.is_zero() and not gg.is_zero():
            hi = _heu_gcd_int(ff, gg, tries)
            if hi is not None:
                h = _interpolate(hi, j, xi)
                if not h.is_zero():
                    c = _int_content(h)
                    h = Polynomial._raw(h.vars, {e: v // c for e, v in h.terms.items()})
                    hf = _fraction_form(h)
                    if _fraction_form(f).exact_quotient(hf) is not None and \
                            _fraction_form(g).exact_quotient(hf) is not None:
                        return Polynomial._raw(h.vars, {e: v * cont for e, v in h.terms.items()})
        xi = xi * 73794 * math.isqrt(math.isqrt(xi)) // 27011 + 1
    return None


def _heuristic_gcd(a: Polynomial, b: Polynomial) -> Optional[Polynomial]:
    fa, fb = _integer_form(a), _integer_form(b)
    if fa is None or fb is None:
        return None
    h = _heu_gcd_int(fa, fb)
    if h is None:
        return None
    return _fraction_form(h)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic (grlex) greatest common divisor of two polynomials."""
    a._check(b)
    if a.is_zero():
        return _unit_normal(b) if not b.is_zero() else b
    if b.is_zero():
        return _unit_normal(a)
    if a.is_constant() or b.is_constant():
        return Polynomial.constant(a.vars, 1)
    ea, eb = a.monomial_content(), b.monomial_content()
    if any(ea) or any(eb):
        # gcd(x^p a0, x^q b0) = x^min(p, q) gcd(a0, b0) when no generator divides a0, b0
        mc = tuple(min(x, y) for x, y in zip(ea, eb))
        return poly_gcd(a.shift(ea, -1), b.shift(eb, -1)).shift(mc)
    if _provably_coprime(a, b):
        return Polynomial.constant(a.vars, 1)
    small, big = (a, b) if len(a.terms) <= len(b.terms) else (b, a)
    if big.exact_quotient(small) is not None:
        return _unit_normal(small)
    h = _heuristic_gcd(a, b)
    if h is not None:
        return _unit_normal(h)
    idx = next(i for i in range(len(a.vars)) if _uses(a, i) or _uses(b, i))
    if not _uses(a, idx):
        return poly_gcd(a, _content_in(b, idx))
    if not _uses(b, idx):
        return poly_gcd(_content_in(a, idx), b)
    ca, cb = _content_in(a, idx), _content_in(b, idx)
    g = poly_gcd(ca, cb)
    pa, pb = a.exact_quotient(ca), b.exact_quotient(cb)
    name = a.vars[idx]
    if pa.degree(name) < pb.degree(name):
        pa, pb = pb, pa
    while not pb.is_zero():
        if pb.degree(name) == 0:
            pa = Polynomial.constant(a.vars, 1)
            break
        r = _prem(pa, pb, idx)
        pa = pb
        if r.is_zero():
            pb = r
        else:
            pb = r.exact_quotient(_content_in(r, idx))
    return _unit_normal(g * pa)


def _normalize(num: Polynomial, den: Polynomial):
    if num.is_zero():
        return num, Polynomial.constant(num.vars, 1)
    mc = tuple(min(a, b) for a, b in zip(num.monomial_content(), den.monomial_content()))
    if any(mc):
        num = num.shift(mc, -1)
        den = den.shift(mc, -1)
    if not den.is_constant() and not num.is_constant():
        if len(num.vars) == 1:
            nc, dc = num.coefficients_univariate(), den.coefficients_univariate()
            g = _dense_gcd(nc, dc)
            if len(g) > 1:
                var = num.vars[0]
                num = Polynomial.from_univariate(var, _dense_quo_monic(nc, g))
                den = Polynomial.from_univariate(var, _dense_quo_monic(dc, g))
        else:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = num.divmod_exact(g)[0]
                den = den.divmod_exact(g)[0]
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def _quo(a: Polynomial, g: Polynomial) -> Polynomial:
    return a if g.is_constant() and g.constant_value() == 1 else a.divmod_exact(g)[0]


def _lowest(num: Polynomial, den: Polynomial) -> RationalFunction:
    """``num/den`` known to be coprime: only make the denominator monic."""
    if den.is_zero():
        raise DivisionByZero("rational function with zero denominator")
    if num.is_zero():
        return RationalFunction(num)
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num, den = num.scale(inv), den.scale(inv)
    return RationalFunction(num, den, normalize=False)


def _cross(a: Polynomial, b: Polynomial, c: Polynomial, d: Polynomial) -> RationalFunction:
    """``(a/b)(c/d)`` for coprime pairs ``(a, b)`` and ``(c, d)``."""
    if a.is_zero() or c.is_zero():
        return RationalFunction(Polynomial.zero(a.vars))
    g1, g2 = poly_gcd(a, d), poly_gcd(c, b)
    return _lowest(_quo(a, g1) * _quo(c, g2), _quo(b, g2) * _quo(d, g1))


def rf_equal(a: RationalFunction, b: RationalFunction) -> bool:
    """Exact equality by cross-multiplication."""
    if a.vars != b.vars:
        raise VariableMismatch(f"{a.vars} vs {b.vars}")
    if a.den == b.den:
        return a.num == b.num
    return a.num * b.den == b.num * a.den


def rf_substitute(f: RationalFunction, mapping: Mapping[str, RationalFunction]) -> RationalFunction:
    """Apply the ring homomorphism sending each generator to ``mapping[g]``.

    All images must share one generator list (the target field).
    """
    images = []
    target = None
    for v in f.vars:
        if v not in mapping:
            raise KeyError(f"no image for generator {v!r}")
        img = mapping[v]
        if target is None:
            target = img.vars
        elif img.vars != target:
            raise VariableMismatch("images live over different generator lists")
        images.append(img)
    if target is None:  # no generators at all: constants map to themselves
        return f
    num = _substitute_poly(f.num, images, target)
    den = _substitute_poly(f.den, images, target)
    if den.is_zero():
        raise DivisionByZero("substitution makes the denominator vanish")
    return num / den


def _substitute_poly(p: Polynomial, images: Sequence[RationalFunction], target) -> RationalFunction:
    # Cache powers of every image; combine all terms over a common denominator
    # built from per-generator maximal powers of the image denominators.
    if p.is_zero():
        return RationalFunction(Polynomial.zero(target))
    n = len(images)
    maxdeg = [max(e[i] for e in p.terms) for i in range(n)]
    num_pows = [[Polynomial.constant(target, 1)] for _ in range(n)]
    den_pows = [[Polynomial.constant(target, 1)] for _ in range(n)]
    for i in range(n):
        for _ in range(maxdeg[i]):
            num_pows[i].append(num_pows[i][-1] * images[i].num)
            den_pows[i].append(den_pows[i][-1] * images[i].den)
    total = Polynomial.zero(target)
    for e, c in p.terms.items():
        term = Polynomial.constant(target, c)
        for i, a in enumerate(e):
            if maxdeg[i]:
                term = term * num_pows[i][a] * den_pows[i][maxdeg[i] - a]
        total = total + term
    common = Polynomial.constant(target, 1)
    for i in range(n):
        if maxdeg[i]:
            common = common * den_pows[i][maxdeg[i]]
    return RationalFunction(total, common)


# ---------------------------------------------------------------------------
# Fields of rational functions and parsing
# ---------------------------------------------------------------------------

class FunctionField:
    """The field Q(i)(v1, ..., vn) over a fixed ordered generator list."""

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")

    @property
    def gens(self) -> Tuple[RationalFunction, ...]:
        return tuple(self.gen(v) for v in self.names)

    def gen(self, name: str) -> RationalFunction:
        return RationalFunction(Polynomial.generator(self.names, name), normalize=False)

    def const(self, c) -> RationalFunction:
        return RationalFunction(Polynomial.constant(self.names, c), normalize=False)

    def zero(self) -> RationalFunction:
        return self.const(0)

    def one(self) -> RationalFunction:
        return self.const(1)

    def monomial(self, exponents: Mapping[str, int] | Sequence[int], coeff=1) -> RationalFunction:
        """The Laurent monomial ``coeff * prod(v**e)``."""
        if isinstance(exponents, Mapping):
            exps = [int(exponents.get(v, 0)) for v in self.names]
        else:
            exps = [int(a) for a in exponents]
            if len(exps) != len(self.names):
                raise ValueError("exponent vector has wrong length")
        num = tuple(max(a, 0) for a in exps)
        den = tuple(max(-a, 0) for a in exps)
        return RationalFunction(Polynomial._raw(self.names, {num: to_coeff(coeff)}) if coeff != 0
                                else Polynomial.zero(self.names),
                                Polynomial._raw(self.names, {den: Fraction(1)}), normalize=False)

    def parse(self, text: str) -> RationalFunction:
        return parse_expression(text, self.names)

    def __contains__(self, f) -> bool:
        return isinstance(f, RationalFunction) and f.vars == self.names

    def __repr__(self):
        return f"FunctionField({list(self.names)})"


_IMAG_SUFFIX = re.compile(r"(\d)\s*[iI]\b")


def parse_expression(text: str, names: Sequence[str]) -> RationalFunction:
    """Parse ``+ - * / ^ **`` expressions over the given generators.

    ``i``/``I`` denote the imaginary unit unless they are generator names;
    a numeral followed by ``i`` (``"2i"``) is read as ``2*i``.
    """
    names = tuple(names)
    src = text.replace("^", "**")
    src = _IMAG_SUFFIX.sub(r"\1*i", src)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None

    def const(c):
        return RationalFunction(Polynomial.constant(names, c), normalize=False)

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            v = node.value
            if isinstance(v, bool) or not isinstance(v, (int, complex)):
                raise ValueError(f"unsupported literal {v!r} in {text!r}")
            return const(to_coeff(v))
        if isinstance(node, ast.Name):
            if node.id in names:
                return RationalFunction(Polynomial.generator(names, node.id), normalize=False)
            if node.id in ("i", "I"):
                return const(I)
            raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = walk(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = _int_literal(node.right, text)
                return walk(node.left) ** k
            a, b = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ValueError(f"unsupported syntax in {text!r}")

    return walk(tree)


def _int_literal(node, text) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        k = _int_literal(node.operand, text)
        return -k if isinstance(node.op, ast.USub) else k
    raise ValueError(f"exponents must be integer literals in {text!r}")

