"""Simple cycles and simple paths as integer vectors, and their transport.

A labeled Stokes graph ``G`` with ``n`` arcs carries two dual bases: simple
cycles ``gamma_1..gamma_n`` and simple paths ``beta_1..beta_n`` with
``<gamma_i, beta_j> = delta_ij``.  The intersection form on cycles is
``(gamma_i, gamma_j) = b_ij`` where ``B`` is the adjacency matrix of ``G``,
and every simple cycle decomposes in the path basis as
``gamma_i = sum_j b_ji beta_j``.

A signed flip ``mu_k^(eps): G -> G'`` induces an isomorphism ``tau`` from the
lattices of ``G'`` to those of ``G``:

* ``tau(gamma'_k) = -gamma_k`` and ``tau(gamma'_i) = gamma_i + [eps b_ki]_+ gamma_k``;
* ``tau(beta'_k) = -beta_k + sum_j [-eps b_jk]_+ beta_j`` and ``tau(beta'_i) = beta_i``,

with ``B`` the matrix of ``G`` (before the flip).  Signed pops induce the
identity.  Vectors are coordinate tuples in the respective bases.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import IndexOutOfRange, LengthMismatch, PeriodViolation
from .exchange import ExchangeMatrix, check_index, mutate_matrix, pos
from .tropical import tropical_run


class _Vector:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        self.coeffs = tuple(int(c) for c in coeffs)

    @classmethod
    def basis(cls, n: int, i: int):
        check_index(i, n)
        return cls(1 if j == i else 0 for j in range(n))

    @classmethod
    def zero(cls, n: int):
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} and {type(other).__name__}")
        if len(other) != len(self):
            raise LengthMismatch(f"lengths {len(self)} and {len(other)}")

    def __add__(self, other):
        self._check(other)
        return type(self)(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return type(self)(a - b for a, b in zip(self, other))

    def __neg__(self):
        return type(self)(-a for a in self)

    def __mul__(self, k: int):
        return type(self)(k * a for a in self)

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is type(self):
            return self.coeffs == other.coeffs
        if isinstance(other, (tuple, list)):
            return self.coeffs == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coeffs)})"


class CycleVector(_Vector):
    """``sum_i c_i gamma_i`` in the simple-cycle basis."""

    __slots__ = ()

    def __str__(self):
        return format_combination(self.coeffs, "g")


class PathVector(_Vector):
    """``sum_i d_i beta_i`` in the simple-path basis."""

    __slots__ = ()

    def __str__(self):
        return format_combination(self.coeffs, "b")


def format_combination(coeffs: Sequence[int], letter: str) -> str:
    """``(1, -1) -> "g1-g2"``; the zero vector prints as ``0``."""
    out = ""
    for i, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if out else "")
        mag = "" if abs(c) == 1 else str(abs(c))
        out += f"{sign}{mag}{letter}{i}"
    return out or "0"


def pair_cycle_path(g: CycleVector, b: PathVector) -> int:
    """``<g, b> = sum_i c_i d_i``."""
    if len(g) != len(b):
        raise LengthMismatch(f"lengths {len(g)} and {len(b)}")
    return sum(c * d for c, d in zip(g, b))


def pair_cycle_cycle(g: CycleVector, g2: CycleVector, B) -> int:
    """``(g, g2) = c^T B c'``."""
    B = ExchangeMatrix(B)
    if len(g) != len(g2) or len(g) != B.n:
        raise LengthMismatch(f"lengths {len(g)}, {len(g2)} and rank {B.n}")
    return sum(g[i] * B[i][j] * g2[j] for i in range(B.n) for j in range(B.n))


def decompose_cycle(i: int, B) -> PathVector:
    """``gamma_i = sum_j b_ji beta_j``: column ``i`` of ``B``."""
    B = ExchangeMatrix(B)
    check_index(i, B.n)
    return PathVector(B[j][i] for j in range(B.n))


def cycle_to_path(g: CycleVector, B) -> PathVector:
    """Linear extension of :func:`decompose_cycle`."""
    B = ExchangeMatrix(B)
    if len(g) != B.n:
        raise LengthMismatch(f"length {len(g)} vs rank {B.n}")
    return PathVector(sum(B[j][i] * g[i] for i in range(B.n)) for j in range(B.n))


def _sign(eps) -> int:
    if eps in (1, "+"):
        return 1
    if eps in (-1, "-"):
        return -1
    raise ValueError(f"sign must be +1 or -1, got {eps!r}")


def mutate_lattice(v: Union[CycleVector, PathVector], k: int, eps, B):
    """Transport ``v`` from the flipped graph ``G'`` back to ``G``.

    ``v`` has coordinates in the basis of ``G' = mu_k^(eps)(G)``; the result
    has coordinates in the basis of ``G``.  ``B`` is the matrix of ``G``.
    """
    B = ExchangeMatrix(B)
    n = B.n
    if not 0 <= k < n:
        raise IndexOutOfRange(f"direction {k} out of range for rank {n}")
    if len(v) != n:
        raise LengthMismatch(f"length {len(v)} vs rank {n}")
    eps = _sign(eps)
    c = list(v)
    if isinstance(v, CycleVector):
        # sum_i c'_i tau(gamma'_i) = -c'_k gamma_k + sum_{i != k} c'_i (gamma_i + [eps b_ki]_+ gamma_k)
        ck = -c[k] + sum(c[i] * pos(eps * B[k][i]) for i in range(n) if i != k)
        c[k] = ck
        return CycleVector(c)
    if isinstance(v, PathVector):
        # d'_k tau(beta'_k) = d'_k (-beta_k + sum_j [-eps b_jk]_+ beta_j)
        dk = c[k]
        out = [c[j] + dk * pos(-eps * B[j][k]) for j in range(n)]
        out[k] = -dk  # [-eps b_kk]_+ = 0
        return PathVector(out)
    raise TypeError(f"expected CycleVector or PathVector, got {type(v).__name__}")


def mutate_lattice_forward(v: Union[CycleVector, PathVector], k: int, eps, B):
    """Inverse of :func:`mutate_lattice`: coordinates in ``G`` -> coordinates in ``G'``.

    Since ``mu_k^(+)`` and ``mu_k^(-)`` are mutually inverse, this equals the
    backward transport along ``mu_k^(-eps)`` from ``G'`` (matrix ``mu_k(B)``).
    """
    return mutate_lattice(v, k, -_sign(eps), mutate_matrix(B, k))


def transport_to_start(v: Union[CycleVector, PathVector], steps: Sequence[Tuple[int, int]], B0):
    """Transport ``v`` living on ``G(t+1)`` back to ``G(1)``.

    ``steps`` lists the signed flips ``(k_s, eps_s)`` for ``s = 1..t`` that
    lead from ``G(1)`` to ``G(t+1)``.  Pops transport trivially and are
    therefore omitted from ``steps``.
    """
    mats = [ExchangeMatrix(B0)]
    for k, _ in steps:
        mats.append(mutate_matrix(mats[-1], k))
    for s in range(len(steps) - 1, -1, -1):
        k, eps = steps[s]
        v = mutate_lattice(v, k, eps, mats[s])
    return v


def transported_cycles(ks: Sequence[int], signs: Sequence[int], B0) -> List[CycleVector]:
    """For each ``t``, the cycle ``gamma_{k_t}(t)`` transported to ``G(1)``."""
    B0 = ExchangeMatrix(B0)
    if len(ks) != len(signs):
        raise LengthMismatch("ks and signs differ in length")
    out = []
    for t, k in enumerate(ks):
        steps = [(ks[s], _sign(signs[s])) for s in range(t)]
        out.append(transport_to_start(CycleVector.basis(B0.n, k), steps, B0))
    return out


def transport_and_cvector_check(ks: Sequence[int], signs: Sequence[int], B0,
                                nu: Optional[Sequence[int]] = None) -> bool:
    """Compare lattice transport with tropical c-vectors along a period.

    Checks, for every ``t``, that ``gamma_{k_t}(t)`` transported to ``G(1)``
    equals ``sum_i c_i(t) gamma_i(1)`` with ``c(t)`` computed by tropical
    mutation; also that ``signs`` are the tropical signs.  When ``nu`` is
    given, additionally checks that ``gamma_{nu(i)}`` at the end of the
    sequence transports back to ``gamma_i(1)``.  Returns ``True`` on success
    and raises :class:`PeriodViolation` otherwise.
    """
    B0 = ExchangeMatrix(B0)
    n = B0.n
    trop_signs, cvecs, _ = tropical_run(B0, ks)
    signs = [_sign(e) for e in signs]
    if list(signs) != list(trop_signs):
        raise PeriodViolation(f"signs {signs} are not the tropical signs {trop_signs}")
    for t, g in enumerate(transported_cycles(ks, signs, B0)):
        if g.coeffs != tuple(cvecs[t]):
            raise PeriodViolation(
                f"step {t + 1}: transported cycle {g.coeffs} != c-vector {tuple(cvecs[t])}")
    if nu is not None:
        if sorted(nu) != list(range(n)):
            raise PeriodViolation(f"{list(nu)} is not a permutation of 0..{n - 1}")
        steps = list(zip(ks, signs))
        for i in range(n):
            back = transport_to_start(CycleVector.basis(n, nu[i]), steps, B0)
            if back != CycleVector.basis(n, i):
                raise PeriodViolation(
                    f"gamma_{nu[i] + 1} at the end transports to {back.coeffs}, not gamma_{i + 1}")
    return True
