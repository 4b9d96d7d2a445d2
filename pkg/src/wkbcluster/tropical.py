"""The tropical semifield Trop(y) and tropical y-seeds.

An element of Trop(y1, ..., yn) is a Laurent monomial, stored as its
integer exponent vector.  Multiplication adds exponents, the semifield
addition takes componentwise minima.  The exponent vectors of the
tropical y-variables of a seed are its c-vectors; sign coherence says each
of them is either nonnegative or nonpositive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import IndexOutOfRange, LengthMismatch, SignIncoherent
from .exchange import ExchangeMatrix, mutate_matrix


def pos(a: int) -> int:
    """``[a]_+ = max(a, 0)``."""
    return a if a > 0 else 0


@dataclass(frozen=True)
class TropicalMonomial:
    """Laurent monomial ``prod_j (y0_j)**exponents[j]`` in Trop(y0)."""

    exponents: Tuple[int, ...]

    def __init__(self, exponents: Iterable[int]):
        object.__setattr__(self, "exponents", tuple(int(a) for a in exponents))

    @classmethod
    def one(cls, n: int) -> "TropicalMonomial":
        return cls((0,) * n)

    @classmethod
    def generator(cls, n: int, i: int) -> "TropicalMonomial":
        if not 0 <= i < n:
            raise IndexOutOfRange(f"generator {i} out of range for rank {n}")
        return cls(1 if j == i else 0 for j in range(n))

    def __len__(self):
        return len(self.exponents)

    def _check(self, other: "TropicalMonomial"):
        if len(self) != len(other):
            raise LengthMismatch(f"lengths {len(self)} and {len(other)}")

    def __mul__(self, other: "TropicalMonomial") -> "TropicalMonomial":
        self._check(other)
        return TropicalMonomial(a + b for a, b in zip(self.exponents, other.exponents))

    def __truediv__(self, other: "TropicalMonomial") -> "TropicalMonomial":
        self._check(other)
        return TropicalMonomial(a - b for a, b in zip(self.exponents, other.exponents))

    def __pow__(self, k: int) -> "TropicalMonomial":
        return TropicalMonomial(k * a for a in self.exponents)

    def inverse(self) -> "TropicalMonomial":
        return self ** -1

    def __add__(self, other: "TropicalMonomial") -> "TropicalMonomial":
        """Tropical addition (the semifield's oplus)."""
        return trop_sum(self, other)

    def __str__(self):
        parts = []
        for j, a in enumerate(self.exponents, start=1):
            if a == 1:
                parts.append(f"y{j}")
            elif a:
                parts.append(f"y{j}^{a}")
        return "*".join(parts) if parts else "1"


def trop_sum(a: TropicalMonomial, *rest: TropicalMonomial) -> TropicalMonomial:
    """``a (+) b (+) ...``: componentwise minimum of exponent vectors."""
    out = list(a.exponents)
    for b in rest:
        a._check(b)
        out = [min(x, y) for x, y in zip(out, b.exponents)]
    return TropicalMonomial(out)


def tropical_y_mutation(y: Sequence[TropicalMonomial], B, k: int) -> List[TropicalMonomial]:
    """Mutate tropical y-variables at ``k`` using only semifield operations.

    ``y'_k = y_k^{-1}`` and
    ``y'_i = y_i (1 (+) y_k)^{[-b_ki]_+} (1 (+) y_k^{-1})^{-[b_ki]_+}``.
    ``B`` is the exchange matrix *before* mutation (any ``B[i][j]`` indexable).
    """
    n = len(y)
    if not 0 <= k < n:
        raise IndexOutOfRange(f"direction {k} out of range for rank {n}")
    one = TropicalMonomial.one(len(y[k]))
    yk = y[k]
    up = trop_sum(one, yk)
    down = trop_sum(one, yk.inverse())
    out = []
    for i in range(n):
        if i == k:
            out.append(yk.inverse())
            continue
        bki = B[k][i]
        out.append(y[i] * up ** pos(-bki) * down ** (-pos(bki)))
    return out


def tropical_sign(m: TropicalMonomial) -> int:
    """``+1`` for a positive vector, ``-1`` for a negative vector.

    Raises :class:`SignIncoherent` for mixed or zero vectors, which sign
    coherence forbids for tropical y-variables.
    """
    e = m.exponents
    if any(a > 0 for a in e) and all(a >= 0 for a in e):
        return 1
    if any(a < 0 for a in e) and all(a <= 0 for a in e):
        return -1
    raise SignIncoherent(f"exponent vector {e} has no coherent sign")


def initial_tropical_y(n: int) -> List[TropicalMonomial]:
    return [TropicalMonomial.generator(n, i) for i in range(n)]


def tropical_run(B0, ks: Sequence[int]):
    """Follow a mutation sequence from the initial tropical seed.

    Returns ``(signs, cvectors, ys)`` where ``signs[t]`` and ``cvectors[t]``
    belong to the mutation point ``k_t`` *before* the t-th mutation, and
    ``ys[t]`` is the full list of tropical y-variables at time t
    (``len(ys) == len(ks) + 1``).
    """
    B = ExchangeMatrix(B0)
    y = initial_tropical_y(B.n)
    signs, cvecs, ys = [], [], [list(y)]
    for k in ks:
        signs.append(tropical_sign(y[k]))
        cvecs.append(y[k].exponents)
        y = tropical_y_mutation(y, B, k)
        B = mutate_matrix(B, k)
        ys.append(list(y))
    return signs, cvecs, ys
