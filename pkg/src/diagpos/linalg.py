"""Exact linear algebra over Q on lists of Fractions, backed by sympy's DomainMatrix."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = list[list[Fraction]]


def _to_dm(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    data = [[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _from_dm(m: DomainMatrix) -> Matrix:
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in m.to_list()]


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not len(rows[0]):
        return 0
    return _to_dm(rows).rank()


def inverse(rows: Sequence[Sequence]) -> Matrix:
    n = len(rows)
    if n == 0:
        return []
    if any(len(r) != n for r in rows):
        raise ValueError("inverse of a non-square matrix")
    m = _to_dm(rows)
    if m.rank() < n:
        raise ZeroDivisionError("singular matrix")
    return _from_dm(m.inv())


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : rows . x = 0} as a list of vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    return _from_dm(_to_dm(rows, ncols).nullspace())


def independent_rows(rows: Sequence[Sequence]) -> list[int]:
    """Indices of the first maximal linearly independent subfamily of ``rows``, in order."""
    if not rows or not len(rows[0]):
        return []
    # pivot columns of rref(rows^T) index the greedy independent rows
    transposed = [list(col) for col in zip(*rows)]
    _, pivots = _to_dm(transposed).rref()
    return list(pivots)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(u, v)), Fraction(0))
