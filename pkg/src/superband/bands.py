"""Band semigroups realised by odd-reduced supermatrices.

Every element is numbered by a fixed odd ``alpha`` and a few even
parameters:

==========  =========================================  ======================
kind        matrix                                     abstract product
==========  =========================================  ======================
``z``       zero (1|1) matrix                          null semigroup
``y[t]``    ``[[0, alpha t], [alpha, 0]]``             null semigroup
``e``       ``[[0, alpha], [alpha, 1]]``               wreath band
``p[t]``    ``[[0, alpha t], [alpha, 1]]``             wreath band
``q[u]``    ``[[0, alpha], [alpha u, 1]]``             wreath band
``r[t;u]``  ``[[0, alpha t], [alpha u, 1]]``           wreath band
``f[..;..]`` (1|n) block ``[[0, alpha t], [alpha u, I]]`` higher (n|n)-band
==========  =========================================  ======================

Two elements have the same matrix iff their parameters agree after
multiplying by ``alpha``, so parameters can be canonicalized modulo
``Ann(alpha)``. Parameters in ``1 + Ann(alpha)`` are reserved for ``e``.

Passing ``alpha=None`` and string parameters gives the symbolic mode used
to print the wreath band's Cayley table with formal indices.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    AlphaMismatchError,
    DomainError,
    InvalidElementError,
    NotClosedError,
    ParityError,
)
from .grassmann import GrassmannElement, Parity, annihilator_even, enumerate_even
from .supermatrix import Supermatrix

DEFAULT_POOL = (-1, 0, 1, 2)


class Kind(enum.Enum):
    ZERO = "z"
    Y = "y"
    E = "e"
    P = "p"
    Q = "q"
    R = "r"
    F = "f"


_ARITY = {
    Kind.ZERO: (0, 0),
    Kind.E: (0, 0),
    Kind.Y: (1, 0),
    Kind.P: (1, 0),
    Kind.Q: (0, 1),
    Kind.R: (1, 1),
}

WREATH_KINDS = frozenset({Kind.E, Kind.P, Kind.Q, Kind.R})
NULL_KINDS = frozenset({Kind.ZERO, Kind.Y})


def is_unit_class(alpha: GrassmannElement, t: GrassmannElement) -> bool:
    """``t`` lies in ``1 + Ann(alpha)``."""
    return (alpha * (t - 1)).is_zero()


def canonical_param(alpha: GrassmannElement, t: GrassmannElement) -> GrassmannElement:
    return annihilator_even(alpha).reduce(t)


def _param_text(x) -> str:
    return x if isinstance(x, str) else x.to_text()


@dataclass(frozen=True)
class BandElement:
    kind: Kind
    alpha: GrassmannElement | None
    t: tuple = ()
    u: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(self.t))
        object.__setattr__(self, "u", tuple(self.u))
        if self.kind is Kind.F:
            if not self.t or len(self.t) != len(self.u):
                raise InvalidElementError("an (n|n)-band element needs n >= 1 t's and u's")
        elif (len(self.t), len(self.u)) != _ARITY[self.kind]:
            raise InvalidElementError(f"wrong parameter count for kind {self.kind.value}")
        params = self.t + self.u
        if self.alpha is None:
            if not all(isinstance(x, str) for x in params):
                raise InvalidElementError("symbolic elements take string parameters")
            return
        alpha = self.alpha
        if alpha.is_zero() or alpha.parity is not Parity.ODD:
            raise ParityError(f"alpha must be a nonzero odd element, got {alpha}")
        for x in params:
            if not isinstance(x, GrassmannElement) or x.n != alpha.n:
                raise InvalidElementError(f"parameter {x!r} is not an element over N={alpha.n}")
            if not x.is_even():
                raise ParityError(f"parameter {x} must be even")
        if self.kind in (Kind.P, Kind.Q, Kind.R):
            if any(is_unit_class(alpha, x) for x in params):
                raise InvalidElementError(
                    f"parameters in 1 + Ann(alpha) are reserved for e ({self.kind.value})"
                )
        elif self.kind is Kind.F and all(is_unit_class(alpha, x) for x in params):
            raise InvalidElementError("an (n|n)-band element with every parameter in 1 + Ann(alpha)")

    @property
    def symbolic(self) -> bool:
        return self.alpha is None

    @property
    def arity(self) -> int:
        return len(self.t)

    @property
    def params(self) -> tuple:
        return self.t + self.u

    @property
    def label(self) -> str:
        k = self.kind.value
        if self.kind in (Kind.ZERO, Kind.E):
            return k
        ts = ",".join(_param_text(x) for x in self.t)
        us = ",".join(_param_text(x) for x in self.u)
        if self.kind in (Kind.Y, Kind.P):
            return f"{k}[{ts}]"
        if self.kind is Kind.Q:
            return f"{k}[{us}]"
        return f"{k}[{ts};{us}]"

    def __str__(self) -> str:
        return self.label

    def canonical(self) -> "BandElement":
        if self.symbolic:
            return self
        c = lambda x: canonical_param(self.alpha, x)  # noqa: E731
        return BandElement(self.kind, self.alpha, tuple(map(c, self.t)), tuple(map(c, self.u)))

    @property
    def image_key(self) -> Hashable:
        """Identity of the element's matrix: kind plus ``alpha * param`` for each parameter."""
        if self.symbolic:
            return (self.kind, self.t, self.u)
        a = self.alpha
        return (self.kind, tuple(a * x for x in self.t), tuple(a * x for x in self.u))


# -- constructors -------------------------------------------------------------


def _build(kind, alpha, t=(), u=(), canonical=True) -> BandElement:
    x = BandElement(kind, alpha, t, u)
    return x.canonical() if canonical else x


def zero(alpha) -> BandElement:
    return BandElement(Kind.ZERO, alpha)


def e(alpha) -> BandElement:
    return BandElement(Kind.E, alpha)


def y(alpha, t, canonical=True) -> BandElement:
    return _build(Kind.Y, alpha, (t,), (), canonical)


def p(alpha, t, canonical=True) -> BandElement:
    return _build(Kind.P, alpha, (t,), (), canonical)


def q(alpha, u, canonical=True) -> BandElement:
    return _build(Kind.Q, alpha, (), (u,), canonical)


def r(alpha, t, u, canonical=True) -> BandElement:
    return _build(Kind.R, alpha, (t,), (u,), canonical)


def f(alpha, ts: Sequence, us: Sequence, canonical=True) -> BandElement:
    return _build(Kind.F, alpha, tuple(ts), tuple(us), canonical)


def unit_param(alpha):
    return "1" if alpha is None else GrassmannElement.one(alpha.n)


# -- representation -------------------------------------------------------------


def rep(x: BandElement) -> Supermatrix:
    """The supermatrix representing ``x``."""
    if x.symbolic:
        raise ValueError("symbolic elements have no matrix")
    a = x.alpha
    n = a.n
    if x.kind is Kind.ZERO:
        return Supermatrix.zero(1, 1, n)
    if x.kind is Kind.Y:
        return Supermatrix.from_11(0, a * x.t[0], a, 0, n=n)
    if x.kind is Kind.E:
        return Supermatrix.from_11(0, a, a, 1, n=n)
    if x.kind is Kind.P:
        return Supermatrix.from_11(0, a * x.t[0], a, 1, n=n)
    if x.kind is Kind.Q:
        return Supermatrix.from_11(0, a, a * x.u[0], 1, n=n)
    if x.kind is Kind.R:
        return Supermatrix.from_11(0, a * x.t[0], a * x.u[0], 1, n=n)
    k = x.arity
    size = k + 1
    grid = [[0] * size for _ in range(size)]
    for i in range(k):
        grid[0][i + 1] = a * x.t[i]
        grid[i + 1][0] = a * x.u[i]
        grid[i + 1][i + 1] = 1
    return Supermatrix(1, k, grid, n=n)


# -- products -------------------------------------------------------------------


def _same_alpha(x: BandElement, y_: BandElement) -> None:
    if x.alpha != y_.alpha:
        raise AlphaMismatchError(f"alphas differ: {x.alpha} vs {y_.alpha}")


def _row_param(x: BandElement):
    return x.t[0] if x.kind in (Kind.P, Kind.R) else None


def _col_param(x: BandElement):
    return x.u[0] if x.kind in (Kind.Q, Kind.R) else None


def _from_pair(alpha, t, u) -> BandElement:
    if t is None and u is None:
        return e(alpha)
    if u is None:
        return p(alpha, t)
    if t is None:
        return q(alpha, u)
    return r(alpha, t, u)


def wreath_mul(x: BandElement, y_: BandElement) -> BandElement:
    """Product in the wreath rectangular band.

    Each element is a pair (row index, column index) where ``e`` has
    neither, ``p_t`` only a row, ``q_u`` only a column and ``r_tu`` both; the
    Cayley table is the rule ``(a, b) * (c, d) = (a, d)``. In particular
    ``p_t * q_u = r_tu``, ``q_u * p_t = e`` and ``r_tu * r_vw = r_tw``.
    """
    _same_alpha(x, y_)
    if x.kind not in WREATH_KINDS or y_.kind not in WREATH_KINDS:
        raise InvalidElementError(f"{x.label} * {y_.label} is not a wreath-band product")
    return _from_pair(x.alpha, _row_param(x), _col_param(y_))


def null_mul(x: BandElement, y_: BandElement) -> BandElement:
    _same_alpha(x, y_)
    if x.kind not in NULL_KINDS or y_.kind not in NULL_KINDS:
        raise InvalidElementError(f"{x.label} * {y_.label} is not a null-semigroup product")
    return zero(x.alpha)


def higher_mul(x: BandElement, y_: BandElement) -> BandElement:
    """``f[t;u] * f[t';u'] = f[t;u']``."""
    _same_alpha(x, y_)
    if x.kind is not Kind.F or y_.kind is not Kind.F:
        raise InvalidElementError(f"{x.label} * {y_.label} is not an (n|n)-band product")
    if x.arity != y_.arity:
        raise InvalidElementError(f"arity mismatch ({x.arity}|{x.arity}) vs ({y_.arity}|{y_.arity})")
    return f(x.alpha, x.t, y_.u)


def multiply(x: BandElement, y_: BandElement) -> BandElement:
    if x.kind in NULL_KINDS:
        return null_mul(x, y_)
    if x.kind is Kind.F:
        return higher_mul(x, y_)
    return wreath_mul(x, y_)


# -- finite families --------------------------------------------------------------


def parameter_classes(
    alpha: GrassmannElement,
    count: int,
    pool: Iterable = DEFAULT_POOL,
    exclude_unit: bool = True,
) -> list[GrassmannElement]:
    """Up to ``count`` canonical even parameters with distinct ``alpha``-images.

    Candidates come from ``enumerate_even`` (simplest first), so the result
    is deterministic. Fewer are returned when the algebra has fewer classes.
    """
    seen = set()
    out = []
    pool = tuple(pool)
    for cand in enumerate_even(alpha.n, pool):
        if len(out) == count:
            break
        if exclude_unit and is_unit_class(alpha, cand):
            continue
        key = alpha * cand
        if key in seen:
            continue
        seen.add(key)
        out.append(canonical_param(alpha, cand))
    return out


def dedupe_params(alpha, params: Iterable[GrassmannElement]) -> list[GrassmannElement]:
    """Canonical representatives of the distinct alpha-classes, first-seen order."""
    out, seen = [], set()
    for t in params:
        key = alpha * t
        if key not in seen:
            seen.add(key)
            out.append(canonical_param(alpha, t))
    return out


@dataclass(frozen=True)
class ParameterGrid:
    """Finite sample of row (``T``) and column (``U``) parameters for one ``alpha``."""

    alpha: GrassmannElement
    T: tuple = ()
    U: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "T", tuple(dedupe_params(self.alpha, self.T)))
        object.__setattr__(self, "U", tuple(dedupe_params(self.alpha, self.U)))

    @classmethod
    def sample(cls, alpha, t_count: int, u_count: int | None = None, pool=DEFAULT_POOL):
        u_count = t_count if u_count is None else u_count
        classes = parameter_classes(alpha, max(t_count, u_count), pool)
        return cls(alpha, tuple(classes[:t_count]), tuple(classes[:u_count]))


def null_family(alpha, ts: Iterable, canonical=True) -> list[BandElement]:
    ts = dedupe_params(alpha, ts) if canonical else list(ts)
    return [zero(alpha)] + [y(alpha, t, canonical) for t in ts]


def p_family(alpha, ts: Iterable, canonical=True, with_e=False) -> list[BandElement]:
    ts = dedupe_params(alpha, ts) if canonical else list(ts)
    return ([e(alpha)] if with_e else []) + [p(alpha, t, canonical) for t in ts]


def q_family(alpha, us: Iterable, canonical=True, with_e=False) -> list[BandElement]:
    us = dedupe_params(alpha, us) if canonical else list(us)
    return ([e(alpha)] if with_e else []) + [q(alpha, u, canonical) for u in us]


def rect_family(alpha, ts: Iterable, us: Iterable, canonical=True, with_e=False) -> list[BandElement]:
    if canonical:
        ts, us = dedupe_params(alpha, ts), dedupe_params(alpha, us)
    return ([e(alpha)] if with_e else []) + [
        r(alpha, t, u, canonical) for t in ts for u in us
    ]


def wreath_family(grid: ParameterGrid) -> list[BandElement]:
    a = grid.alpha
    return (
        [e(a)]
        + [p(a, t) for t in grid.T]
        + [q(a, u) for u in grid.U]
        + [r(a, t, u) for t in grid.T for u in grid.U]
    )


def higher_family(
    alpha, t_choices: Sequence[Sequence], u_choices: Sequence[Sequence], canonical=True
) -> list[BandElement]:
    """All ``f[t1..tn;u1..un]`` with ``t_i`` from ``t_choices[i]`` and ``u_i`` from ``u_choices[i]``."""
    if len(t_choices) != len(u_choices):
        raise InvalidElementError("t and u need the same number of indices")
    out = []
    seen = set()
    for ts in product(*t_choices):
        for us in product(*u_choices):
            x = f(alpha, ts, us, canonical)
            if canonical:
                if x.image_key in seen:
                    continue
                seen.add(x.image_key)
            out.append(x)
    return out


def band_grid(alpha, n: int, classes: int, pool=DEFAULT_POOL) -> list[BandElement]:
    """The full (n|n)-band on ``classes`` parameter classes per index."""
    cls = parameter_classes(alpha, classes, pool)
    return higher_family(alpha, [cls] * n, [cls] * n)


def padded_family(alpha, k: int, m: int, n: int, classes: int, pool=DEFAULT_POOL):
    """A (k|m)-band written as an (n|n)-band with unit padding."""
    if not (0 <= k <= n and 0 <= m <= n) or k + m == 0:
        raise InvalidElementError(f"cannot pad a ({k}|{m})-band into ({n}|{n})")
    cls = parameter_classes(alpha, classes, pool)
    one = [unit_param(alpha)]
    return higher_family(alpha, [cls] * k + [one] * (n - k), [cls] * m + [one] * (n - m))


SYMBOLIC_WREATH = ("e", "p_t", "p_u", "q_t", "q_u", "r_tu", "r_ut", "r_tw", "r_vw")


def symbolic_wreath() -> list[BandElement]:
    """The nine formal elements heading the printed wreath-band table, in its order."""
    out = []
    for name in SYMBOLIC_WREATH:
        if name == "e":
            out.append(e(None))
        elif name[0] == "p":
            out.append(p(None, name[2]))
        elif name[0] == "q":
            out.append(q(None, name[2]))
        else:
            out.append(r(None, name[2], name[3]))
    return out


# -- Cayley tables ----------------------------------------------------------------


def key_of(x) -> Hashable:
    return x.image_key if isinstance(x, BandElement) else x


def label_of(x) -> str:
    return x.label if isinstance(x, BandElement) else str(x)


@dataclass
class CayleyTable:
    """Products of every ordered pair of a finite element list.

    ``index[i][j]`` is the position of ``elements[i] * elements[j]`` in
    ``elements`` (matched by matrix identity, first occurrence), or ``-1``
    when the product falls outside the list. ``keys`` holds each element's
    matrix identity; raw lists may repeat keys.
    """

    elements: list
    products: list
    index: np.ndarray
    keys: list
    mul: Callable | None = field(default=None, repr=False)

    @property
    def closed(self) -> bool:
        return bool((self.index >= 0).all())

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def labels(self) -> list[str]:
        return [label_of(x) for x in self.elements]

    @property
    def has_duplicates(self) -> bool:
        return len(set(self.keys)) != len(self.keys)

    def cell_label(self, i: int, j: int) -> str:
        return label_of(self.products[i][j])

    def label_grid(self) -> list[list[str]]:
        return [[label_of(x) for x in row] for row in self.products]

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], labels: Sequence[str] | None = None):
        """Table of an abstract semigroup given as index products."""
        size = len(rows)
        labels = list(labels) if labels is not None else [str(i) for i in range(size)]
        index = np.array(rows, dtype=np.int64).reshape(size, size)
        if ((index < 0) | (index >= size)).any():
            raise NotClosedError("product indices out of range")
        products = [[labels[k] for k in row] for row in index.tolist()]
        return cls(labels, products, index, list(labels))

    def with_cell(self, i: int, j: int, k: int) -> "CayleyTable":
        """Copy with one product overwritten (used for mutation tests)."""
        index = self.index.copy()
        index[i, j] = k
        products = [list(row) for row in self.products]
        products[i][j] = self.elements[k]
        return CayleyTable(list(self.elements), products, index, list(self.keys), self.mul)

    def restrict(self, positions: Sequence[int]) -> "CayleyTable":
        """Sub-table on ``positions``; raises if that subset is not closed."""
        positions = list(positions)
        new_pos = {}
        for new, old in enumerate(positions):
            new_pos.setdefault(self.keys[old], new)
        index = np.full((len(positions), len(positions)), -1, dtype=np.int64)
        for a, i in enumerate(positions):
            for b, j in enumerate(positions):
                k = self.index[i, j]
                if k < 0 or self.keys[k] not in new_pos:
                    raise NotClosedError(
                        f"{label_of(self.elements[i])} * {label_of(self.elements[j])} leaves the subset"
                    )
                index[a, b] = new_pos[self.keys[k]]
        products = [[self.products[i][j] for j in positions] for i in positions]
        return CayleyTable(
            [self.elements[i] for i in positions], products, index,
            [self.keys[i] for i in positions], self.mul,
        )

    def to_rows(self) -> list[list[str]]:
        labels = self.labels
        return [[""] + labels] + [[labels[i]] + row for i, row in enumerate(self.label_grid())]

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.to_rows())
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {"labels": self.labels, "closed": self.closed, "table": self.label_grid()}
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def cayley_table(elems: Sequence, mul: Callable = multiply) -> CayleyTable:
    elems = list(elems)
    keys = [key_of(x) for x in elems]
    first = {}
    for i, k in enumerate(keys):
        first.setdefault(k, i)
    size = len(elems)
    index = np.full((size, size), -1, dtype=np.int64)
    products = []
    for i, x in enumerate(elems):
        row = []
        for j, y_ in enumerate(elems):
            xy = mul(x, y_)
            row.append(xy)
            index[i, j] = first.get(key_of(xy), -1)
        products.append(row)
    return CayleyTable(elems, products, index, keys, mul)


def find_nonassociative(table: CayleyTable, mul: Callable | None = None):
    """First triple ``(i, j, k)`` with ``(xy)z != x(yz)``, or ``None``.

    Closed tables are checked on the stored cells only. Open tables need
    ``mul`` (or ``table.mul``) to evaluate products that leave the list.
    """
    idx = table.index
    size = table.size
    if table.closed:
        lhs = idx[idx, :]  # lhs[i, j, k] = idx[idx[i, j], k]
        rhs = idx[np.arange(size)[:, None, None], idx[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        return tuple(int(v) for v in bad[0]) if len(bad) else None
    mul = mul or table.mul
    if mul is None:
        raise NotClosedError("an open table needs a multiplication to check associativity")
    els = table.elements

    def times(i, x, k):
        # x = product already computed; i is its index or -1
        return table.products[i][k] if i >= 0 else mul(x, els[k])

    for i in range(size):
        for j in range(size):
            xy = table.products[i][j]
            for k in range(size):
                left = times(idx[i, j], xy, k)
                yz = table.products[j][k]
                right = table.products[i][idx[j, k]] if idx[j, k] >= 0 else mul(els[i], yz)
                if key_of(left) != key_of(right):
                    return (i, j, k)
    return None


def associativity_check(table: CayleyTable, mul: Callable | None = None) -> bool:
    return find_nonassociative(table, mul) is None


# -- structure results ---------------------------------------------------------------


def band_decompose(x: BandElement) -> tuple[BandElement | None, BandElement | None]:
    """Split a band element into its left-zero and right-zero factors.

    ``r[t;u] -> (p[t], q[u])`` and ``f[t;u] -> (f[t;1..1], f[1..1;u])``. A
    factor whose parameters are all in ``1 + Ann(alpha)`` is absent
    (returned as ``None``); the other factor then equals ``x``.
    """
    a = x.alpha
    if x.kind is Kind.R:
        return p(a, x.t[0], False), q(a, x.u[0], False)
    if x.kind is not Kind.F:
        raise InvalidElementError(f"{x.label} is not a rectangular-band element")
    unit = unit_param(a)
    ones = (unit,) * x.arity
    units = (lambda v: all(is_unit_class(a, w) for w in v)) if a is not None else (
        lambda v: all(w == "1" for w in v)
    )
    left = None if units(x.t) else BandElement(Kind.F, a, x.t, ones)
    right = None if units(x.u) else BandElement(Kind.F, a, ones, x.u)
    return left, right


def recompose(left: BandElement | None, right: BandElement | None) -> BandElement:
    if left is None or right is None:
        return left if right is None else right
    if left.kind is Kind.P:
        return wreath_mul(left, right)
    return higher_mul(left, right)


def to_block(x: BandElement, k: int, m: int) -> Supermatrix:
    """The ``(k|m)`` block matrix ``[[0, alpha T], [alpha U, I]]`` of an (n|n) element, n = km.

    Index ``i`` (0-based) goes to ``T[i // m][i % m]`` and ``U[i % m][i // m]``.
    """
    n = x.arity
    if n != k * m:
        raise DomainError(f"n = {n} is not k*m = {k * m}")
    a = x.alpha
    size = k + m
    grid = [[0] * size for _ in range(size)]
    for i in range(n):
        row, col = divmod(i, m)
        grid[row][k + col] = a * x.t[i]
        grid[k + col][row] = a * x.u[i]
    for j in range(m):
        grid[k + j][k + j] = 1
    return Supermatrix(k, m, grid, n=a.n)


@dataclass
class IsomorphismReport:
    n: int
    k: int
    m: int
    permutation: list  # index i -> ("T", row, col) and ("U", row, col)
    samples: int
    bijective: bool
    product_compatible: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.product_compatible


def block_permutation(n: int, k: int, m: int) -> list[tuple[str, int, int, str, int, int]]:
    if n != k * m:
        raise DomainError(f"n = {n} is not k*m = {k * m}")
    out = []
    for i in range(n):
        row, col = divmod(i, m)
        out.append(("T", row, col, "U", col, row))
    return out


def _vectors(classes, n: int, count: int, shift: int) -> list[tuple]:
    c = len(classes)
    return [tuple(classes[(v * (i + 1) + shift + i) % c] for i in range(n)) for v in range(count)]


def block_isomorphism(n: int, k: int, m: int, alpha=None, samples: int = 3) -> IsomorphismReport:
    """Compare the (1|n) and (k|m) block representations of the (n|n)-band.

    Builds ``samples`` t-vectors times ``samples`` u-vectors and checks that
    the index permutation is a bijection on matrices and turns products into
    products: ``F_TU F_T'U' = F_TU'``.
    """
    perm = block_permutation(n, k, m)
    if alpha is None:
        alpha = GrassmannElement.generator(3, 1)
    classes = parameter_classes(alpha, 3)
    elems = [
        f(alpha, ts, us)
        for ts in _vectors(classes, n, samples, 0)
        for us in _vectors(classes, n, samples, 1)
    ]
    blocks = [to_block(x, k, m) for x in elems]
    reps = [rep(x) for x in elems]
    bijective = all(
        (blocks[i] == blocks[j]) == (reps[i] == reps[j])
        for i in range(len(elems))
        for j in range(len(elems))
    )
    compatible = all(
        to_block(higher_mul(x, y_), k, m) == blocks[i] @ blocks[j]
        for i, x in enumerate(elems)
        for j, y_ in enumerate(elems)
    )
    return IsomorphismReport(n, k, m, perm, len(elems), bijective, compatible)


@dataclass
class IrreducibilityReport:
    k: int
    m: int
    chain: list[str]
    chain_product: str
    expected: str
    lost_parameters: list[str]
    varied_parameter: str
    distinct_pair: tuple[str, str]
    distinct_matrices: bool
    chain_pair_equal: bool

    @property
    def collapsed(self) -> bool:
        return self.chain_product == self.expected

    @property
    def ok(self) -> bool:
        return self.collapsed and self.distinct_matrices and self.chain_pair_equal


def irreducibility_witness(k: int, m: int, alpha=None) -> IrreducibilityReport:
    """Show that chaining 1-parameter factors loses parameters a (k|m)-band keeps.

    ``p_t1 * ... * p_tk * q_u1 * ... * q_um`` collapses to ``r[t1;um]``,
    while two (k|m)-band elements differing only in a lost parameter have
    different matrices.
    """
    if k < 1 or m < 1 or k + m < 3:
        raise DomainError("need k, m >= 1 and k + m >= 3")
    if alpha is None:
        alpha = GrassmannElement.generator(3, 1)
    n_classes = k + m + 1
    classes = parameter_classes(alpha, n_classes)
    if len(classes) < 2:
        raise DomainError("need at least two parameter classes")
    ts = [classes[i % len(classes)] for i in range(k)]
    us = [classes[(k + j) % len(classes)] for j in range(m)]
    factors = [p(alpha, t) for t in ts] + [q(alpha, u) for u in us]
    acc = factors[0]
    for x in factors[1:]:
        acc = wreath_mul(acc, x)
    expected = r(alpha, ts[0], us[-1])

    # vary one lost parameter: t2 if k >= 2, else u1
    n = max(k, m)
    one = unit_param(alpha)
    pad_t = list(ts) + [one] * (n - k)
    pad_u = list(us) + [one] * (n - m)
    alt_t, alt_u = list(pad_t), list(pad_u)
    if k >= 2:
        varied = "t2"
        alt_t[1] = next(c for c in classes if alpha * c != alpha * ts[1])
    else:
        varied = "u1"
        alt_u[0] = next(c for c in classes if alpha * c != alpha * us[0])
    f1 = f(alpha, pad_t, pad_u)
    f2 = f(alpha, alt_t, alt_u)
    alt_factors = [p(alpha, t) for t in alt_t[:k]] + [q(alpha, u) for u in alt_u[:m]]
    acc2 = alt_factors[0]
    for x in alt_factors[1:]:
        acc2 = wreath_mul(acc2, x)
    lost_all = [f"t{i + 1}" for i in range(1, k)] + [f"u{j + 1}" for j in range(m - 1)]
    return IrreducibilityReport(
        k=k,
        m=m,
        chain=[x.label for x in factors],
        chain_product=acc.label,
        expected=expected.label,
        lost_parameters=lost_all,
        varied_parameter=varied,
        distinct_pair=(f1.label, f2.label),
        distinct_matrices=rep(f1) != rep(f2),
        chain_pair_equal=acc.image_key == acc2.image_key,
    )
