"""Exact row reduction over the rationals.

Only what the annihilator and canonical-representative code needs: reduced
row echelon form, rank and a nullspace basis. Matrices are lists of rows of
``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Return ``(reduced, pivot_columns)`` for a copy of ``rows``."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``; see ``nullspace_with_free``."""
    return nullspace_with_free(rows, n_cols)[0]


def nullspace_with_free(
    rows: Sequence[Sequence], n_cols: int | None = None
) -> tuple[list[list[Fraction]], list[int]]:
    """Nullspace basis together with the free column of each basis vector.

    Each basis vector has a 1 at its own free column and 0 at every other
    free column, so reducing a vector against the basis is canonical.
    """
    if n_cols is None:
        if not rows:
            raise ValueError("n_cols is required for an empty matrix")
        n_cols = len(rows[0])
    reduced, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis, free
