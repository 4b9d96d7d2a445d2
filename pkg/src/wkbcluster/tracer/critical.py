"""Zeros and poles of a quadratic differential ``Q0(z) dz^2`` on the sphere.

Multiplicities are decided exactly (squarefree decomposition over the
Gaussian rationals); root locations are floating point (companion-matrix
eigenvalues via :func:`numpy.roots`, then a few Newton steps on the
squarefree factor).  At infinity the chart ``w = 1/z`` turns the
differential into ``Q0(1/w) w^-4 dw^2``, whose pole order is
``4 + deg num - deg den``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ConfigError, NonSimpleZero, NumericalError, PoleOrderTooLow
from ..ratfun import RationalFunction, _dense_gcd, _dense_monic, _dense_quo_monic
from ..wkb import Potential

INF_KEY = "inf"


def _as_q0(Q0) -> RationalFunction:
    if isinstance(Q0, Potential):
        return Q0.Q0
    if isinstance(Q0, RationalFunction):
        if len(Q0.vars) != 1:
            raise ConfigError("Q0 must be a function of one variable")
        return Q0
    if isinstance(Q0, str):
        return Potential([Q0]).Q0
    raise ConfigError(f"cannot interpret {Q0!r} as Q0")


def _deriv(c: Sequence) -> list:
    return [k * c[k] for k in range(1, len(c))]


def squarefree_decomposition(c: Sequence) -> List[Tuple[int, list]]:
    """Yun's algorithm: ``[(multiplicity, monic factor), ...]`` for a dense
    coefficient list (low degree first).  Constant factors are dropped."""
    f = _dense_monic(list(c))
    if len(f) <= 1:
        return []
    out = []
    a0 = _dense_gcd(f, _deriv(f))
    b = _dense_quo_monic(f, a0)
    cc = _dense_quo_monic(_deriv(f), a0)
    d = _sub(cc, _deriv(b))
    i = 1
    while len(b) > 1:
        g = _dense_gcd(b, d)
        if len(g) > 1:
            out.append((i, g))
        b_next = _dense_quo_monic(b, g)
        d = _sub(_dense_quo_monic(d, g), _deriv(b_next))
        b = b_next
        i += 1
    return out


def _sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]
    while out and not out[-1]:
        out.pop()
    return out


def _to_complex(c: Sequence) -> np.ndarray:
    return np.array([complex(x) for x in c], dtype=complex)


def horner(c: Sequence[complex], z: complex) -> complex:
    """Evaluate a low-degree-first coefficient list."""
    acc = 0j
    for a in reversed(c):
        acc = acc * z + a
    return acc


def polished_roots(c: Sequence, newton_steps: int = 8) -> List[complex]:
    """Roots of a squarefree dense polynomial (low degree first)."""
    cx = _to_complex(c)
    if len(cx) <= 1:
        return []
    raw = np.roots(cx[::-1])
    d = [k * cx[k] for k in range(1, len(cx))]
    out = []
    for r in raw:
        z = complex(r)
        for _ in range(newton_steps):
            fp = horner(d, z)
            if fp == 0:
                break
            step = horner(cx, z) / fp
            z -= step
            if abs(step) <= 1e-16 * max(1.0, abs(z)):
                break
        out.append(complex(z))
    return sorted(out, key=lambda w: (round(w.real, 12), round(w.imag, 12)))


@dataclass
class Pole:
    """A pole of ``Q0 dz^2``; ``z`` is ``None`` for the point at infinity.

    ``leading`` is ``A`` in ``Q0 ~ A t^-order`` for the local coordinate
    ``t`` (``z - p`` or ``1/z``), so for a double pole the residue of
    ``sqrt(Q0) dz`` is ``+-sqrt(A)``.
    """

    key: str
    z: Optional[complex]
    order: int
    leading: complex
    exact: Optional[object] = None   # exact location when it is rational (``"inf"`` at infinity)

    @property
    def at_infinity(self) -> bool:
        return self.z is None

    def directions(self, theta: float) -> List[float]:
        """Asymptotic tangent directions (in ``t``) of trajectories of
        ``e^{2 i theta} Q0 dz^2`` entering a pole of order ``m >= 3``."""
        m = self.order
        if m < 3:
            return []
        base = 2 * theta + cmath.phase(self.leading)
        return [(base + 2 * k * np.pi) / (m - 2) for k in range(m - 2)]

    def nearest_direction(self, theta: float, angle: float) -> int:
        dirs = self.directions(theta)
        if not dirs:
            raise ValueError("only poles of order >= 3 carry directions")
        best, best_d = 0, None
        for k, psi in enumerate(dirs):
            d = abs(cmath.phase(cmath.exp(1j * (angle - psi))))
            if best_d is None or d < best_d:
                best, best_d = k, d
        return best

    def to_dict(self) -> dict:
        return {"key": self.key,
                "z": "inf" if self.z is None else [self.z.real, self.z.imag],
                "order": self.order}


@dataclass
class CriticalSet:
    """Numerical critical data of ``Q0 dz^2``."""

    Q0: RationalFunction
    num: List[complex]
    den: List[complex]
    turning_points: List[complex]
    poles: List[Pole]
    inf_order: int
    scale: float = 1.0
    _rnum: List[complex] = field(default_factory=list, repr=False)
    _rden: List[complex] = field(default_factory=list, repr=False)

    def __post_init__(self):
        self._rnum = list(reversed(self.num))
        self._rden = list(reversed(self.den))
        self._dnum = [k * self.num[k] for k in range(1, len(self.num))]

    # -- evaluation --------------------------------------------------------
    def q(self, z: complex) -> complex:
        return horner(self.num, z) / horner(self.den, z)

    def q_w(self, w: complex) -> complex:
        """``Q0(1/w) w^-4``, the coefficient of ``dw^2`` in the chart at infinity."""
        return w ** (-self.inf_order) * horner(self._rnum, w) / horner(self._rden, w)

    def q_chart(self, u: complex, chart: int) -> complex:
        return self.q(u) if chart == 0 else self.q_w(u)

    def dq_at_zero(self, a: complex) -> complex:
        """``Q0'(a)`` at a zero ``a`` of the numerator."""
        return horner(self._dnum, a) / horner(self.den, a)

    # -- lookup ------------------------------------------------------------
    def finite_poles(self) -> List[Pole]:
        return [p for p in self.poles if p.z is not None]

    def pole(self, key: str) -> Pole:
        for p in self.poles:
            if p.key == key:
                return p
        raise KeyError(key)

    def infinity(self) -> Optional[Pole]:
        for p in self.poles:
            if p.z is None:
                return p
        return None

    def double_poles(self) -> List[Pole]:
        return [p for p in self.poles if p.order == 2]

    def nearest_other(self, z: complex, exclude: Optional[complex] = None) -> float:
        """Distance from ``z`` to the nearest finite critical point other than ``exclude``."""
        pts = list(self.turning_points) + [p.z for p in self.finite_poles()]
        ds = [abs(z - w) for w in pts if exclude is None or abs(w - exclude) > 1e-14]
        return min(ds) if ds else self.scale

    def to_dict(self) -> dict:
        return {
            "turning_points": [[a.real, a.imag] for a in self.turning_points],
            "poles": [p.to_dict() for p in self.poles],
        }


def critical_points(Q0) -> CriticalSet:
    """Turning points and poles of ``Q0 dz^2`` on the sphere.

    Raises :class:`NonSimpleZero` for a multiple zero (also at infinity)
    and :class:`PoleOrderTooLow` for a simple pole.
    """
    f = _as_q0(Q0)
    nc = f.num.coefficients_univariate()
    dc = f.den.coefficients_univariate()
    if len(nc) > 1 and len(_dense_gcd(nc, _deriv(nc))) > 1:
        raise NonSimpleZero(f"Q0 = {f} has a multiple zero")
    inf_order = 4 + (len(nc) - 1) - (len(dc) - 1)
    if inf_order == 1:
        raise PoleOrderTooLow("Q0 dz^2 has a simple pole at infinity")
    if inf_order <= -2:
        raise NonSimpleZero("Q0 dz^2 has a multiple zero at infinity")
    if inf_order == -1:
        raise NumericalError("a turning point at infinity is not supported; move it by a Moebius map")
    tps = polished_roots(nc)
    ncx = [complex(x) for x in nc]
    dcx = [complex(x) for x in dc]
    poles: List[Pole] = []
    for mult, fac in squarefree_decomposition(dc):
        if mult == 1:
            raise PoleOrderTooLow(f"Q0 = {f} has a simple pole")
        rest = _dense_quo_monic(dc, _power(fac, mult))
        exact = -fac[0] if len(fac) == 2 else None
        for r in polished_roots(fac):
            if exact is not None:
                r = complex(exact)
            poles.append(Pole("", r, mult, complex(horner(ncx, r) / _leading_den(fac, mult, rest, r)),
                              exact))
    poles.sort(key=lambda p: (round(p.z.real, 12), round(p.z.imag, 12)))
    for i, p in enumerate(poles):
        p.key = f"p{i}"
    if inf_order >= 2:
        poles.append(Pole(INF_KEY, None, inf_order, complex(nc[-1]) / complex(dc[-1]), INF_KEY))
    pts = tps + [p.z for p in poles if p.z is not None]
    scale = max([1.0] + [abs(z) for z in pts])
    return CriticalSet(f, ncx, dcx, tps, poles, inf_order, scale)


def _power(c: list, k: int) -> list:
    out = [Fraction(1)]
    for _ in range(k):
        out = _mul(out, c)
    return out


def _mul(a: Sequence, b: Sequence) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _leading_den(fac: list, mult: int, rest: list, r: complex) -> complex:
    """``den(z) / (z - r)^mult`` at ``z = r`` where ``den = fac^mult * rest``."""
    fx = _to_complex(fac)
    dfac = horner([k * fx[k] for k in range(1, len(fx))], r)  # fac(z) ~ fac'(r)(z - r)
    return dfac ** mult * horner(list(_to_complex(rest)), r)


def residue(P: Pole) -> complex:
    """Residue of ``sqrt(Q0) dz`` at a double pole, principal branch of the square root."""
    if P.order != 2:
        raise ValueError(f"residue requested at a pole of order {P.order}")
    return cmath.sqrt(P.leading)

