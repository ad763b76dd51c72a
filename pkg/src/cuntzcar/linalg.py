"""Exact sparse Gauss-Jordan inversion over exact coefficients."""

from __future__ import annotations

from fractions import Fraction

from ._coeffs import prune
from .scalars import Scalar


class SingularSystemError(ArithmeticError):
    pass


def _inv(x):
    if isinstance(x, Scalar):
        return 1 / x
    return Fraction(1) / x


def invert_sparse(columns: list[dict], n: int) -> list[dict]:
    """Invert the ``n x n`` matrix whose ``j``-th column is ``columns[j]`` (``{row: value}``).

    Returns the inverse as a list of columns in the same sparse format.
    """
    # rows of [A | I], each row a dict {col: value}; identity part offset by n
    rows = [dict() for _ in range(n)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                rows[i][j] = v
    for i in range(n):
        rows[i][n + i] = 1
    for col in range(n):
        pivot = None
        best = None
        for r in range(col, n):
            if col in rows[r]:
                size = len(rows[r])
                if best is None or size < best:
                    pivot, best = r, size
        if pivot is None:
            raise SingularSystemError(f"no pivot in column {col}")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        prow = rows[col]
        inv = _inv(prow[col])
        if inv != 1:
            prow = prune({k: v * inv for k, v in prow.items()})
            rows[col] = prow
        for r in range(n):
            if r == col:
                continue
            f = rows[r].get(col)
            if not f:
                continue
            row = rows[r]
            for k, v in prow.items():
                row[k] = row.get(k, 0) - f * v
            prune(row)
    inverse = [dict() for _ in range(n)]
    for i in range(n):
        for k, v in rows[i].items():
            if k >= n:
                inverse[k - n][i] = v
    return inverse
