"""Square supermatrices over the Grassmann algebra.

A ``(p|q)`` supermatrix has ``p`` even rows/columns followed by ``q`` odd ones.
Only even morphisms are represented: the two diagonal blocks hold even
entries and the off-diagonal blocks hold odd entries. Zero is allowed
anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .errors import DimensionError, DomainError, GradingError, ShapeError
from .grassmann import GrassmannElement, Scalar

Grid = tuple[tuple[GrassmannElement, ...], ...]


def _as_element(x, n: int) -> GrassmannElement:
    if isinstance(x, GrassmannElement):
        if x.n != n:
            raise DimensionError(f"entry over N={x.n} in a matrix over N={n}")
        return x
    if isinstance(x, (int, Fraction)):
        return GrassmannElement.scalar(n, x)
    raise TypeError(f"cannot use {type(x).__name__} as a supermatrix entry")


class Supermatrix:
    """Immutable ``(p|q)`` supermatrix with Grassmann entries."""

    __slots__ = ("p", "q", "n", "entries", "_hash")

    def __init__(self, p: int, q: int, entries: Sequence[Sequence], n: int | None = None):
        size = p + q
        if p < 0 or q < 0 or size == 0:
            raise ShapeError(f"invalid shape ({p}|{q})")
        if len(entries) != size or any(len(row) != size for row in entries):
            raise ShapeError(f"shape ({p}|{q}) needs a {size}x{size} grid")
        if n is None:
            n = next(
                (x.n for row in entries for x in row if isinstance(x, GrassmannElement)), None
            )
            if n is None:
                raise DimensionError("generator count cannot be inferred from scalar entries")
        grid = tuple(tuple(_as_element(x, n) for x in row) for row in entries)
        for i in range(size):
            for j in range(size):
                x = grid[i][j]
                if (i < p) == (j < p):
                    if not x.is_even():
                        raise GradingError(f"entry ({i},{j}) = {x} must be even")
                elif not x.is_odd():
                    raise GradingError(f"entry ({i},{j}) = {x} must be odd")
        self.p, self.q, self.n = p, q, n
        self.entries: Grid = grid
        self._hash = None

    @classmethod
    def _raw(cls, p: int, q: int, n: int, grid: Grid) -> "Supermatrix":
        obj = object.__new__(cls)
        obj.p, obj.q, obj.n = p, q, n
        obj.entries = grid
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, p: int, q: int, n: int) -> "Supermatrix":
        size = p + q
        return cls(p, q, [[int(i == j) for j in range(size)] for i in range(size)], n=n)

    @classmethod
    def zero(cls, p: int, q: int, n: int) -> "Supermatrix":
        size = p + q
        return cls(p, q, [[0] * size for _ in range(size)], n=n)

    @classmethod
    def from_11(cls, a, alpha, beta, b, n: int | None = None) -> "Supermatrix":
        """The (1|1) matrix ``[[a, alpha], [beta, b]]``."""
        return cls(1, 1, [[a, alpha], [beta, b]], n=n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.p, self.q)

    @property
    def size(self) -> int:
        return self.p + self.q

    def __getitem__(self, ij) -> GrassmannElement:
        i, j = ij
        return self.entries[i][j]

    def blocks(self):
        """``(A, B, C, D)`` as nested lists: even-even, even-odd, odd-even, odd-odd."""
        p, g = self.p, self.entries
        A = [list(row[:p]) for row in g[:p]]
        B = [list(row[p:]) for row in g[:p]]
        C = [list(row[:p]) for row in g[p:]]
        D = [list(row[p:]) for row in g[p:]]
        return A, B, C, D

    # (1|1) accessors, named after the usual [[a, alpha], [beta, b]] layout
    def _require_11(self) -> None:
        if self.shape != (1, 1):
            raise ShapeError(f"expected a (1|1) supermatrix, got {self.shape}")

    @property
    def a(self) -> GrassmannElement:
        self._require_11()
        return self.entries[0][0]

    @property
    def alpha(self) -> GrassmannElement:
        self._require_11()
        return self.entries[0][1]

    @property
    def beta(self) -> GrassmannElement:
        self._require_11()
        return self.entries[1][0]

    @property
    def b(self) -> GrassmannElement:
        self._require_11()
        return self.entries[1][1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Supermatrix):
            return NotImplemented
        return self.shape == other.shape and self.n == other.n and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.q, self.n, self.entries))
        return self._hash

    def __repr__(self) -> str:
        return f"Supermatrix({self.p}|{self.q}, {self.to_text()})"

    def __str__(self) -> str:
        return self.to_text()

    def _check_compatible(self, other: "Supermatrix") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        if self.n != other.n:
            raise DimensionError(f"generator count mismatch {self.n} vs {other.n}")

    def __add__(self, other: "Supermatrix") -> "Supermatrix":
        if not isinstance(other, Supermatrix):
            return NotImplemented
        self._check_compatible(other)
        grid = tuple(
            tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)
        )
        return Supermatrix._raw(self.p, self.q, self.n, grid)

    def __neg__(self) -> "Supermatrix":
        return Supermatrix._raw(
            self.p, self.q, self.n, tuple(tuple(-x for x in row) for row in self.entries)
        )

    def __sub__(self, other: "Supermatrix") -> "Supermatrix":
        if not isinstance(other, Supermatrix):
            return NotImplemented
        return self + (-other)

    def __matmul__(self, other: "Supermatrix") -> "Supermatrix":
        return smul(self, other)

    def __mul__(self, other):
        if isinstance(other, Supermatrix):
            return smul(self, other)
        if isinstance(other, (int, Fraction)) or (
            isinstance(other, GrassmannElement) and other.is_even()
        ):
            grid = tuple(tuple(x * other for x in row) for row in self.entries)
            return Supermatrix(self.p, self.q, grid, n=self.n)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, GrassmannElement) and other.is_even():
            grid = tuple(tuple(other * x for x in row) for row in self.entries)
            return Supermatrix(self.p, self.q, grid, n=self.n)
        return NotImplemented

    def __pow__(self, k: int) -> "Supermatrix":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Supermatrix.identity(self.p, self.q, self.n)
        for _ in range(k):
            out = smul(out, self)
        return out

    def to_text(self, unicode: bool = False) -> str:
        rows = ", ".join(
            "[" + ", ".join(x.to_text(unicode) for x in row) + "]" for row in self.entries
        )
        return f"[{rows}]"

    def to_json(self) -> dict:
        return {
            "shape": [self.p, self.q],
            "entries": [[x.to_json() for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict, n: int) -> "Supermatrix":
        p, q = data["shape"]
        grid = [[GrassmannElement.from_json(x, n) for x in row] for row in data["entries"]]
        return cls(p, q, grid, n=n)


def smul(M: Supermatrix, N: Supermatrix) -> Supermatrix:
    """Ordinary matrix product; entry order is kept since odd entries anticommute."""
    M._check_compatible(N)
    zero = GrassmannElement.zero(M.n)
    cols = list(zip(*N.entries))
    grid = []
    for row in M.entries:
        out_row = []
        for col in cols:
            acc = zero
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        grid.append(tuple(out_row))
    # even morphisms compose to even morphisms; grading is not rechecked
    return Supermatrix._raw(M.p, M.q, M.n, tuple(grid))


def supertrace(M: Supermatrix) -> GrassmannElement:
    """Trace of the even block minus trace of the odd block (``a - b`` at (1|1))."""
    out = GrassmannElement.zero(M.n)
    for i in range(M.size):
        out = out + M.entries[i][i] if i < M.p else out - M.entries[i][i]
    return out


def _leibniz_det(rows: list[list[GrassmannElement]], n: int) -> GrassmannElement:
    size = len(rows)
    out = GrassmannElement.zero(n)
    if size == 0:
        return GrassmannElement.one(n)
    for perm in permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = GrassmannElement.one(n)
        for i, j in enumerate(perm):
            term = term * rows[i][j]
            if not term:
                break
        if term:
            out = out - term if inversions & 1 else out + term
    return out


def det_even(rows: list[list[GrassmannElement]], n: int) -> GrassmannElement:
    """Determinant of a square matrix of even (hence commuting) entries."""
    for row in rows:
        for x in row:
            if not x.is_even():
                raise GradingError(f"determinant needs even entries, got {x}")
    return _leibniz_det(rows, n)


def inverse_even(rows: list[list[GrassmannElement]], n: int) -> list[list[GrassmannElement]]:
    """Gauss-Jordan inverse of an even matrix whose body is invertible."""
    size = len(rows)
    one, zero = GrassmannElement.one(n), GrassmannElement.zero(n)
    aug = [list(r) + [one if i == j else zero for j in range(size)] for i, r in enumerate(rows)]
    for c in range(size):
        piv = next((r for r in range(c, size) if aug[r][c].body != 0), None)
        if piv is None:
            raise DomainError("non-invertible body")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [x * inv for x in aug[c]]
        for r in range(size):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[size:] for row in aug]


def _matmul(X, Y, n: int):
    zero = GrassmannElement.zero(n)
    cols = list(zip(*Y)) if Y else []
    out = []
    for row in X:
        out_row = []
        for col in cols:
            acc = zero
            for x, y in zip(row, col):
                acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def berezinian_11(M: Supermatrix) -> GrassmannElement:
    """``a/b + beta*alpha/b^2`` for a (1|1) matrix, literally."""
    M._require_11()
    b_inv = M.b.inverse()
    return M.a * b_inv + M.beta * M.alpha * b_inv * b_inv


def berezinian(M: Supermatrix) -> GrassmannElement:
    """Superdeterminant ``det(A - B D^-1 C) / det(D)``.

    Defined only when the odd-odd block ``D`` has invertible body; raises
    ``DomainError("non-invertible body")`` otherwise.
    """
    if M.shape == (1, 1):
        if M.b.body == 0:
            raise DomainError("non-invertible body")
        return berezinian_11(M)
    return berezinian_block(M)


def berezinian_block(M: Supermatrix) -> GrassmannElement:
    """General block formula; also valid at (1|1), where it must agree with ``berezinian_11``."""
    A, B, C, D = M.blocks()
    n = M.n
    if M.q == 0:
        return det_even(A, n)
    D_inv = inverse_even(D, n)
    det_D_inv = det_even(D_inv, n)
    if M.p == 0:
        return det_D_inv
    BDC = _matmul(_matmul(B, D_inv, n), C, n)
    S = [[A[i][j] - BDC[i][j] for j in range(M.p)] for i in range(M.p)]
    return det_even(S, n) * det_D_inv


def reduce_even(M: Supermatrix) -> Supermatrix:
    """Drop the lower-left odd entry: ``[[a, alpha], [0, b]]``."""
    return Supermatrix.from_11(M.a, M.alpha, 0, M.b, n=M.n)


def reduce_odd(M: Supermatrix) -> Supermatrix:
    """Drop the upper-left even entry: ``[[0, alpha], [beta, b]]``."""
    return Supermatrix.from_11(0, M.alpha, M.beta, M.b, n=M.n)


def is_odd_reduced(M: Supermatrix) -> bool:
    return M.shape == (1, 1) and M.a.is_zero()


def odd_power_closed_form(M: Supermatrix, k: int) -> Supermatrix:
    """``M^k`` for odd-reduced ``M`` without iterating the product.

    ``M^k = b^(k-2) [[alpha beta, alpha b], [beta b, b^2 - (k-1) alpha beta]]``
    for ``k >= 2``.
    """
    if not is_odd_reduced(M):
        raise ShapeError("closed-form powers need an odd-reduced (1|1) matrix")
    if k < 1:
        raise ValueError("power must be at least 1")
    if k == 1:
        return M
    alpha, beta, b = M.alpha, M.beta, M.b
    ab = alpha * beta
    scale = b ** (k - 2)
    return Supermatrix.from_11(
        scale * ab,
        scale * alpha * b,
        scale * beta * b,
        scale * (b * b - ab * (k - 1)),
        n=M.n,
    )


def is_odd_closed(M: Supermatrix) -> bool:
    """Membership test for the odd-reduced semigroup: ``alpha * beta == 0``."""
    return (M.alpha * M.beta).is_zero()


def scalar_matrix(p: int, q: int, n: int, c: Scalar) -> Supermatrix:
    return Supermatrix.identity(p, q, n) * c
