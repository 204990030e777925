"""Predicates on finite closed Cayley tables: ideals, zeros, identities, inverses."""

from __future__ import annotations

from typing import Sequence

from .bands import CayleyTable
from .errors import NotClosedError


def _closed(table: CayleyTable) -> None:
    if not table.closed:
        raise NotClosedError("the table is not closed")


def _key_set(table: CayleyTable, positions) -> set:
    return {table.keys[i] for i in positions}


def is_subsemigroup(table: CayleyTable, positions: Sequence[int]) -> bool:
    keys = _key_set(table, positions)
    return all(table.keys[table.index[i, j]] in keys for i in positions for j in positions)


def is_ideal(table: CayleyTable, positions: Sequence[int], side: str = "two") -> bool:
    """``S I`` (left), ``I S`` (right) or both land in ``I``."""
    _closed(table)
    keys = _key_set(table, positions)
    idx = table.index
    everything = range(table.size)
    if side in ("left", "two") and any(
        table.keys[idx[s, i]] not in keys for s in everything for i in positions
    ):
        return False
    if side in ("right", "two") and any(
        table.keys[idx[i, s]] not in keys for s in everything for i in positions
    ):
        return False
    return True


def principal_ideal(table: CayleyTable, i: int) -> set:
    """Keys of ``S^1 a S^1``."""
    idx = table.index
    col = idx[:, i]
    pos = {i, *idx[i, :].tolist(), *col.tolist(), *idx[col, :].ravel().tolist()}
    return _key_set(table, pos)


def two_sided_zeros(table: CayleyTable) -> list[int]:
    keys = table.keys
    return [
        z for z in range(table.size)
        if all(keys[table.index[z, s]] == keys[z] == keys[table.index[s, z]] for s in range(table.size))
    ]


def two_sided_identities(table: CayleyTable) -> list[int]:
    keys = table.keys
    return [
        e for e in range(table.size)
        if all(keys[table.index[e, s]] == keys[s] == keys[table.index[s, e]] for s in range(table.size))
    ]


def is_zero_minimal_ideal(table: CayleyTable, positions: Sequence[int], zero: int) -> bool:
    """``I`` is an ideal strictly above ``{0}`` with no ideal strictly between.

    Equivalent finite test: ``S^1 a S^1 = I`` for every nonzero ``a`` in ``I``.
    """
    _closed(table)
    keys = _key_set(table, positions)
    if table.keys[zero] not in keys or keys == {table.keys[zero]}:
        return False
    if not is_ideal(table, positions):
        return False
    return all(
        principal_ideal(table, a) | {table.keys[zero]} == keys
        for a in positions
        if table.keys[a] != table.keys[zero]
    )


def is_band(table: CayleyTable) -> bool:
    return all(table.keys[table.index[i, i]] == table.keys[i] for i in range(table.size))


def is_regular(table: CayleyTable) -> bool:
    """Every ``x`` has some ``y`` with ``x y x = x``."""
    idx, keys = table.index, table.keys
    return all(
        any(keys[idx[idx[i, j], i]] == keys[i] for j in range(table.size))
        for i in range(table.size)
    )


def inverses(table: CayleyTable, i: int) -> list[int]:
    """Positions ``j`` with ``x y x = x`` and ``y x y = y``, one per distinct matrix."""
    idx, keys = table.index, table.keys
    seen, out = set(), []
    for j in range(table.size):
        if keys[j] in seen:
            continue
        if keys[idx[idx[i, j], i]] == keys[i] and keys[idx[idx[j, i], j]] == keys[j]:
            seen.add(keys[j])
            out.append(j)
    return out


def non_cancellative_witness(table: CayleyTable) -> tuple[int, int, int] | None:
    """``(a, b, c)`` with distinct labels ``b != c`` but ``a b = a c``.

    Pairs sharing a matrix are preferred; they show the representation
    identifying different labels.
    """
    idx, keys = table.index, table.keys
    labels = table.labels
    fallback = None
    for b in range(table.size):
        for c in range(b + 1, table.size):
            if labels[b] == labels[c]:
                continue
            for a in range(table.size):
                if keys[idx[a, b]] == keys[idx[a, c]]:
                    if keys[b] == keys[c]:
                        return (a, b, c)
                    fallback = fallback or (a, b, c)
                    break
    return fallback
