"""Exchange matrices, their mutation, and quivers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import IndexOutOfRange


def pos(a: int) -> int:
    return a if a > 0 else 0


class ExchangeMatrix:
    """A skew-symmetric integer matrix ``B = (b_ij)``, stored immutably."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        if isinstance(rows, ExchangeMatrix):
            self.rows = rows.rows
            return
        data = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(data)
        for i, row in enumerate(data):
            if len(row) != n:
                raise ValueError("exchange matrix must be square")
            if row[i] != 0:
                raise ValueError(f"nonzero diagonal entry b_{i}{i}")
            for j in range(i):
                if row[j] != -data[j][i]:
                    raise ValueError(f"matrix is not skew-symmetric at ({i}, {j})")
        self.rows = data

    @classmethod
    def zero(cls, n: int) -> "ExchangeMatrix":
        return cls([[0] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, i) -> Tuple[int, ...]:
        return self.rows[i]

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if isinstance(other, ExchangeMatrix):
            return self.rows == other.rows
        try:
            return self.rows == ExchangeMatrix(other).rows
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.rows]

    def permuted(self, nu: Sequence[int]) -> "ExchangeMatrix":
        """The matrix ``b'`` with ``b'_{nu(i) nu(j)} = b_ij``."""
        n = self.n
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[nu[i]][nu[j]] = self.rows[i][j]
        return ExchangeMatrix(out)

    def __repr__(self):
        return f"ExchangeMatrix({self.tolist()})"

    def __str__(self):
        width = max((len(str(v)) for r in self.rows for v in r), default=1)
        return "\n".join("[" + " ".join(str(v).rjust(width) for v in r) + "]" for r in self.rows)


def check_index(k: int, n: int):
    if not isinstance(k, int) or not 0 <= k < n:
        raise IndexOutOfRange(f"index {k!r} out of range for rank {n}")


def mutate_matrix(B, k: int) -> ExchangeMatrix:
    """Matrix mutation at ``k`` (0-based).

    ``b'_ij = -b_ij`` if ``k`` is ``i`` or ``j``, otherwise
    ``b'_ij = b_ij + [-b_ik]_+ b_kj + b_ik [b_kj]_+``.
    """
    B = ExchangeMatrix(B)
    n = B.n
    check_index(k, n)
    b = B.rows
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                row.append(b[i][j] + pos(-b[i][k]) * b[k][j] + b[i][k] * pos(b[k][j]))
        out.append(row)
    return ExchangeMatrix(out)


@dataclass(frozen=True)
class Quiver:
    """A quiver without loops or 2-cycles: ``arrows[(i, j)]`` = multiplicity."""

    n: int
    arrows: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        seen = {}
        for i, j, m in self.arrows:
            if i == j:
                raise ValueError("quivers here have no loops")
            if m <= 0:
                raise ValueError("arrow multiplicities must be positive")
            if (j, i) in seen:
                raise ValueError("quivers here have no 2-cycles")
            if (i, j) in seen:
                raise ValueError("repeated arrow entry")
            seen[(i, j)] = m

    def multiplicity(self, i: int, j: int) -> int:
        for a, b, m in self.arrows:
            if (a, b) == (i, j):
                return m
        return 0


def quiver_from_matrix(B) -> Quiver:
    """``b_ij > 0`` means ``b_ij`` arrows from ``i`` to ``j``."""
    B = ExchangeMatrix(B)
    arrows = tuple(
        (i, j, B[i][j]) for i in range(B.n) for j in range(B.n) if B[i][j] > 0
    )
    return Quiver(B.n, arrows)


def matrix_from_quiver(Q: Quiver) -> ExchangeMatrix:
    rows = [[0] * Q.n for _ in range(Q.n)]
    for i, j, m in Q.arrows:
        rows[i][j] += m
        rows[j][i] -= m
    return ExchangeMatrix(rows)


def quiver_roundtrip(B) -> ExchangeMatrix:
    return matrix_from_quiver(quiver_from_matrix(B))
