"""Exact arithmetic in the Grassmann algebra on ``N`` generators over Q.

An element is a map from generator subsets to nonzero rationals. A subset is
stored as an ``N``-bit mask (bit ``i`` stands for generator ``i + 1``), and a
monomial is always written with ascending generator indices. Integral
coefficients are kept as ``int`` and the rest as ``Fraction``; the two compare
and hash alike, and ints keep the exhaustive sweeps fast.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Union

from .errors import DegenerateError, DimensionError, DomainError, ParityError
from .linalg import nullspace_with_free, rank

Scalar = Union[int, Fraction]

ASCII_GEN = "g"
UNICODE_GEN = "θ"


def _norm(c):
    """Exact scalar as ``int`` when integral, else ``Fraction``."""
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _recip(c):
    return _norm(Fraction(1, 1) / c)


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"


@lru_cache(maxsize=None)
def merge_sign(a: int, b: int) -> int:
    """Sign picked up when the ascending monomial ``a`` is multiplied by ``b``.

    Counts the inversions of the concatenated index sequence. Overlapping
    masks are not checked here; their product vanishes anyway.
    """
    swaps = 0
    rest = b
    while rest:
        low = rest & -rest
        swaps += (a >> low.bit_length()).bit_count()
        rest ^= low
    return -1 if swaps & 1 else 1


def mask_indices(mask: int) -> tuple[int, ...]:
    """1-based generator indices of a mask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i + 1)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"generator indices start at 1, got {i}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated generator {i} in monomial")
        mask |= bit
    return mask


def _mask_order(mask: int) -> tuple:
    return (mask.bit_count(), mask_indices(mask))


def even_masks(n: int) -> list[int]:
    """Even-degree monomials of the n-generator algebra, in display order."""
    return sorted((m for m in range(1 << n) if m.bit_count() % 2 == 0), key=_mask_order)


def odd_masks(n: int) -> list[int]:
    return sorted((m for m in range(1 << n) if m.bit_count() % 2 == 1), key=_mask_order)


class GrassmannElement:
    """Immutable element of the Grassmann algebra on ``n`` generators."""

    __slots__ = ("n", "_terms", "_hash", "_inv")

    def __init__(self, n: int, terms: Mapping[int, Scalar] | None = None):
        if n < 0:
            raise ValueError("generator count must be nonnegative")
        limit = 1 << n
        clean: dict[int, Scalar] = {}
        for mask, c in (terms or {}).items():
            mask = int(mask)
            if mask < 0 or mask >= limit:
                raise DimensionError(f"mask {mask:#b} uses generators beyond N={n}")
            c = _norm(c)
            if c:
                clean[mask] = c
        self.n = n
        self._terms = clean
        self._hash = None
        self._inv = None

    @classmethod
    def _raw(cls, n: int, terms: dict[int, Scalar]) -> "GrassmannElement":
        # trusted constructor: terms already canonical
        obj = object.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        obj._inv = None
        return obj

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "GrassmannElement":
        return cls._raw(n, {})

    @classmethod
    def scalar(cls, n: int, c: Scalar) -> "GrassmannElement":
        return cls(n, {0: c})

    @classmethod
    def one(cls, n: int) -> "GrassmannElement":
        return cls._raw(n, {0: 1})

    @classmethod
    def generator(cls, n: int, i: int) -> "GrassmannElement":
        if not 1 <= i <= n:
            raise DimensionError(f"generator {i} outside 1..{n}")
        return cls._raw(n, {1 << (i - 1): 1})

    @classmethod
    def monomial(cls, n: int, indices: Iterable[int], coeff: Scalar = 1) -> "GrassmannElement":
        """Product ``coeff * θ_{i1} θ_{i2} ...`` in the given (any) order."""
        idx = list(indices)
        if any(not 1 <= i <= n for i in idx):
            raise DimensionError(f"monomial {idx} outside 1..{n}")
        out = cls.scalar(n, coeff)
        for i in idx:
            out = out * cls.generator(n, i)
        return out

    @classmethod
    def parse(cls, text: str, n: int) -> "GrassmannElement":
        from .expr import parse_element

        return parse_element(text, n)

    # -- basic protocol -------------------------------------------------------

    @property
    def terms(self) -> dict[int, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, mask: int) -> Scalar:
        return self._terms.get(mask, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, GrassmannElement):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"GrassmannElement({self.n}, {self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def _coerce(self, other) -> "GrassmannElement":
        if isinstance(other, GrassmannElement):
            if other.n != self.n:
                raise DimensionError(f"cannot combine elements of N={self.n} and N={other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return GrassmannElement.scalar(self.n, other)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s if type(s) is int else _norm(s)
            else:
                out.pop(m, None)
        return GrassmannElement._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return GrassmannElement.zero(self.n)
            return GrassmannElement._raw(
                self.n, {m: _norm(c * other) for m, c in self._terms.items()}
            )
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        other = self._coerce(other)
        out: dict[int, Scalar] = {}
        right = list(other._terms.items())
        for ma, ca in self._terms.items():
            for mb, cb in right:
                if ma & mb:
                    continue
                m = ma | mb
                c = ca * cb if merge_sign(ma, mb) > 0 else -(ca * cb)
                s = out.get(m, 0) + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        if any(type(c) is not int for c in out.values()):
            out = {m: _norm(c) for m, c in out.items()}
        return GrassmannElement._raw(self.n, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * _recip(other)
        if isinstance(other, GrassmannElement):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = GrassmannElement.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure ------------------------------------------------------------

    @property
    def parity(self) -> Parity:
        degrees = {m.bit_count() & 1 for m in self._terms}
        if degrees <= {0}:
            return Parity.EVEN
        if degrees == {1}:
            return Parity.ODD
        return Parity.MIXED

    def is_even(self) -> bool:
        return all(m.bit_count() % 2 == 0 for m in self._terms)

    def is_odd(self) -> bool:
        # zero counts as odd here so it may sit in an odd matrix block
        return all(m.bit_count() % 2 == 1 for m in self._terms)

    @property
    def body(self) -> Scalar:
        return self._terms.get(0, 0)

    @property
    def soul(self) -> "GrassmannElement":
        return GrassmannElement._raw(self.n, {m: c for m, c in self._terms.items() if m})

    def is_invertible(self) -> bool:
        return self.body != 0

    def inverse(self) -> "GrassmannElement":
        """Exact inverse via the terminating series in the nilpotent soul."""
        if self._inv is not None:
            return self._inv
        c = self.body
        if c == 0:
            raise DomainError("non-invertible body")
        x = -self.soul * _recip(c)
        out = GrassmannElement.one(self.n)
        power = GrassmannElement.one(self.n)
        while True:
            power = power * x
            if power.is_zero():
                break
            out = out + power
        self._inv = out * _recip(c)
        return self._inv

    def vector(self, masks: Iterable[int]) -> list[Scalar]:
        return [self.coeff(m) for m in masks]

    # -- serialization --------------------------------------------------------

    def to_text(self, unicode: bool = False) -> str:
        if not self._terms:
            return "0"
        gen = UNICODE_GEN if unicode else ASCII_GEN
        parts = []
        for m in sorted(self._terms, key=_mask_order):
            c = self._terms[m]
            mag = abs(c)
            if m == 0:
                body = str(mag)
            else:
                mono = ".".join(f"{gen}{i}" for i in mask_indices(m))
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((c < 0, body))
        neg, first = parts[0]
        text = ("-" if neg else "") + first
        for neg, body in parts[1:]:
            text += (" - " if neg else " + ") + body
        return text

    def to_json(self) -> list[dict]:
        return [
            {"mask": list(mask_indices(m)), "coeff": str(self._terms[m])}
            for m in sorted(self._terms, key=_mask_order)
        ]

    @classmethod
    def from_json(cls, data: list[dict], n: int) -> "GrassmannElement":
        terms: dict[int, Scalar] = {}
        for term in data:
            m = indices_mask(term["mask"])
            terms[m] = terms.get(m, 0) + Fraction(term["coeff"])
        return cls(n, terms)


def _check_same_n(x: GrassmannElement, y: GrassmannElement) -> None:
    if x.n != y.n:
        raise DimensionError(f"mismatched generator counts {x.n} and {y.n}")


def add(x: GrassmannElement, y: GrassmannElement) -> GrassmannElement:
    _check_same_n(x, y)
    return x + y


def mul(x: GrassmannElement, y: GrassmannElement) -> GrassmannElement:
    _check_same_n(x, y)
    return x * y


def parity_of(x: GrassmannElement) -> Parity:
    return x.parity


def body(x: GrassmannElement) -> Scalar:
    return x.body


def soul(x: GrassmannElement) -> GrassmannElement:
    return x.soul


def monomials(n: int) -> list[GrassmannElement]:
    """All basis monomials, ordered by degree then indices."""
    return [
        GrassmannElement._raw(n, {m: 1})
        for m in sorted(range(1 << n), key=_mask_order)
    ]


def _require_odd_nonzero(alpha: GrassmannElement) -> None:
    if alpha.is_zero():
        raise DegenerateError("alpha is zero: its annihilator is the whole even sector")
    if alpha.parity is not Parity.ODD:
        raise ParityError(f"alpha must be odd, got {alpha.parity.value} element {alpha}")


@dataclass(frozen=True)
class AnnihilatorBasis:
    """Basis of ``{x even : alpha * x = 0}``."""

    n: int
    alpha: GrassmannElement
    basis: tuple[GrassmannElement, ...]
    # free column (even-mask position) owned by each basis vector
    free_masks: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, x: GrassmannElement) -> bool:
        return x.is_even() and (self.alpha * x).is_zero()

    def reduce(self, t: GrassmannElement) -> GrassmannElement:
        """Canonical representative of the coset ``t + Ann(alpha)``.

        Clears the coefficient of every free mask; two even elements reduce to
        the same representative iff ``alpha * t`` agrees.
        """
        out = t
        for m, b in zip(self.free_masks, self.basis):
            c = out.coeff(m)
            if c:
                out = out - b * c
        return out


def multiplication_matrix(alpha: GrassmannElement) -> list[list[Fraction]]:
    """Matrix of ``x -> alpha * x`` from the even sector to the odd sector."""
    n = alpha.n
    cols = even_masks(n)
    rows = odd_masks(n)
    images = [alpha * GrassmannElement._raw(n, {m: 1}) for m in cols]
    return [[img.coeff(r) for img in images] for r in rows]


@lru_cache(maxsize=256)
def annihilator_even(alpha: GrassmannElement) -> AnnihilatorBasis:
    """Even-sector annihilator of an odd, nonzero ``alpha`` by exact solve."""
    _require_odd_nonzero(alpha)
    n = alpha.n
    cols = even_masks(n)
    matrix = multiplication_matrix(alpha)
    vectors, free = nullspace_with_free(matrix, n_cols=len(cols))
    basis = tuple(GrassmannElement(n, dict(zip(cols, v))) for v in vectors)
    return AnnihilatorBasis(n, alpha, basis, tuple(cols[f] for f in free))


def multiplication_rank(alpha: GrassmannElement) -> int:
    return rank(multiplication_matrix(alpha))


def _require_even(*xs: GrassmannElement) -> None:
    for x in xs:
        if not x.is_even():
            raise ParityError(f"expected an even element, got {x}")


def alpha_equal(alpha: GrassmannElement, t: GrassmannElement, u: GrassmannElement) -> bool:
    """``t`` and ``u`` are alpha-equal iff ``alpha * (t - u) = 0``."""
    _require_odd_nonzero(alpha)
    _require_even(t, u)
    _check_same_n(alpha, t)
    _check_same_n(alpha, u)
    return (alpha * (t - u)).is_zero()


def canonical_even(alpha: GrassmannElement, t: GrassmannElement) -> GrassmannElement:
    """Representative of ``t`` modulo ``Ann(alpha)``; see ``AnnihilatorBasis.reduce``."""
    _require_even(t)
    _check_same_n(alpha, t)
    return annihilator_even(alpha).reduce(t)


def enumerate_even(n: int, pool: Iterable[Scalar]) -> Iterable[GrassmannElement]:
    """Even elements with coefficients from ``pool``, simplest first.

    Ordered by support size, then support (display order), then the pool
    order of the coefficients. Zero comes first when 0 is in the pool.
    """
    from itertools import product

    pool = [_norm(c) for c in pool]
    nonzero = [c for c in pool if c]
    masks = even_masks(n)
    if any(c == 0 for c in pool):
        yield GrassmannElement.zero(n)
    for size in range(1, len(masks) + 1):
        for support in combinations(masks, size):
            for coeffs in product(nonzero, repeat=size):
                yield GrassmannElement._raw(n, dict(zip(support, coeffs)))
