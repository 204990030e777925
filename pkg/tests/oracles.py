"""Slow reference implementations the package is checked against.

Nothing here imports the bitmask kernel's sign logic: monomials are sorted
index tuples and signs come from an explicit bubble sort.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import sympy

from superband.grassmann import GrassmannElement, even_masks, mask_indices


def _sort_sign(seq: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign and sorted form of a generator word; sign 0 if a generator repeats."""
    if len(set(seq)) != len(seq):
        return 0, ()
    word = list(seq)
    sign = 1
    for i in range(len(word)):
        for j in range(len(word) - 1 - i):
            if word[j] > word[j + 1]:
                word[j], word[j + 1] = word[j + 1], word[j]
                sign = -sign
    return sign, tuple(word)


def as_words(x: GrassmannElement) -> dict[tuple[int, ...], Fraction]:
    return {mask_indices(m): Fraction(c) for m, c in x.items()}


def word_mul(x: dict, y: dict) -> dict:
    out: dict[tuple[int, ...], Fraction] = {}
    for (a, ca), (b, cb) in product(x.items(), y.items()):
        sign, word = _sort_sign(a + b)
        if sign:
            out[word] = out.get(word, Fraction(0)) + sign * ca * cb
    return {w: c for w, c in out.items() if c}


def oracle_mul(x: GrassmannElement, y: GrassmannElement) -> dict:
    return word_mul(as_words(x), as_words(y))


def matrix_mul(X, Y):
    """Plain row-by-column product of nested lists of elements."""
    size = len(X)
    return [
        [sum((X[i][k] * Y[k][j] for k in range(size)), X[0][0] * 0) for j in range(size)]
        for i in range(size)
    ]


def brute_annihilator(alpha: GrassmannElement, pool=(-1, 0, 1)) -> list[GrassmannElement]:
    """Every even element with coefficients in ``pool`` that ``alpha`` kills."""
    n = alpha.n
    masks = even_masks(n)
    found = []
    for coeffs in product(pool, repeat=len(masks)):
        x = GrassmannElement(n, dict(zip(masks, coeffs)))
        if not oracle_mul(alpha, x):
            found.append(x)
    return found


def sympy_rank(rows) -> int:
    return sympy.Matrix(rows).rank() if rows else 0


def span_rank(elems: list[GrassmannElement], n: int) -> int:
    masks = even_masks(n)
    rows = [[x.coeff(m) for m in masks] for x in elems]
    return sympy_rank(rows)
