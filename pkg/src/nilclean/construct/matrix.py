"""Matrices over a commutative finite ring: determinant and cofactors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..ring.core import FiniteRing, RingError
from .rings import PatternMatrixCarrier


@dataclass(frozen=True)
class Matrix:
    """Square grid of base-ring element indices."""

    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "Matrix":
        m = cls(tuple(tuple(int(v) for v in row) for row in rows))
        if any(len(row) != m.n for row in m.entries):
            raise ValueError("matrix must be square")
        return m

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def minor(self, i: int, j: int) -> "Matrix":
        """Delete row i and column j."""
        return Matrix(tuple(
            tuple(v for c, v in enumerate(row) if c != j)
            for r, row in enumerate(self.entries) if r != i
        ))


def _require_commutative(R: FiniteRing) -> None:
    if not R.is_commutative():
        raise RingError(f"determinants need a commutative base; {R.label} is not")


def _det(R: FiniteRing, A: Matrix) -> int:
    n = A.n
    if n == 0:
        return R.one
    if n == 1:
        return A[0, 0]
    total = R.zero
    for j in range(n):
        a = A[0, j]
        if a == R.zero:
            continue
        term = R.mul(a, _det(R, A.minor(0, j)))
        total = R.add(total, term) if j % 2 == 0 else R.sub(total, term)
    return total


def det(R: FiniteRing, A: Matrix) -> int:
    """Determinant by cofactor expansion along the first row."""
    _require_commutative(R)
    return _det(R, A)


def cofactor(R: FiniteRing, A: Matrix, i: int, j: int) -> int:
    """(-1)^(i+j) times the determinant of A with row i and column j removed (0-based)."""
    _require_commutative(R)
    d = _det(R, A.minor(i, j))
    return d if (i + j) % 2 == 0 else R.neg(d)


def identity(R: FiniteRing, n: int) -> Matrix:
    return Matrix(tuple(tuple(R.one if i == j else R.zero for j in range(n)) for i in range(n)))


def unit_matrix(R: FiniteRing, n: int, i: int, j: int, x: int | None = None) -> Matrix:
    """x·E_ij (x defaults to 1)."""
    x = R.one if x is None else x
    return Matrix(tuple(
        tuple(x if (r, c) == (i, j) else R.zero for c in range(n)) for r in range(n)
    ))


def mat_add(R: FiniteRing, A: Matrix, B: Matrix) -> Matrix:
    return Matrix(tuple(
        tuple(R.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A.entries, B.entries)
    ))


def mat_mul(R: FiniteRing, A: Matrix, B: Matrix) -> Matrix:
    n = A.n
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = R.zero
            for k in range(n):
                acc = R.add(acc, R.mul(A[i, k], B[k, j]))
            row.append(acc)
        out.append(tuple(row))
    return Matrix(tuple(out))


def matrix_of(M: FiniteRing, x: int) -> Matrix:
    """View an element of a matrix ring as a grid over its base."""
    if not isinstance(M.carrier, PatternMatrixCarrier):
        raise TypeError(f"{M.label} is not a matrix ring")
    return Matrix.of(M.carrier.to_grid(x))


def element_of(M: FiniteRing, A: Matrix) -> int:
    if not isinstance(M.carrier, PatternMatrixCarrier):
        raise TypeError(f"{M.label} is not a matrix ring")
    return M.carrier.from_grid([list(row) for row in A.entries])
