"""Green's relations, alpha-equality relations and eggbox diagrams on finite tables.

Relations are ``Partition`` objects over element positions ``0..size-1``.
The ideals behind Green's relations are compared as sets of matrix
identities (``CayleyTable.keys``), so on a raw list two labels with the same
matrix always share every class.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Hashable, Iterable, Sequence

from .bands import BandElement, CayleyTable, Kind, label_of
from .errors import DomainError, InvalidElementError, NotClosedError, RelationError


class Partition:
    """Equivalence relation on ``range(size)``, stored as normalized block ids.

    Block ids are numbered by first occurrence, so two partitions are equal
    iff they relate the same pairs.
    """

    __slots__ = ("block_of",)

    def __init__(self, block_of: Sequence[int]):
        relabel: dict[int, int] = {}
        self.block_of = tuple(relabel.setdefault(b, len(relabel)) for b in block_of)

    @classmethod
    def from_key(cls, keys: Iterable[Hashable]) -> "Partition":
        ids: dict[Hashable, int] = {}
        return cls([ids.setdefault(k, len(ids)) for k in keys])

    @classmethod
    def universal(cls, size: int) -> "Partition":
        return cls([0] * size)

    @classmethod
    def discrete(cls, size: int) -> "Partition":
        return cls(range(size))

    @property
    def size(self) -> int:
        return len(self.block_of)

    @property
    def n_blocks(self) -> int:
        return max(self.block_of, default=-1) + 1

    @property
    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_blocks)]
        for i, b in enumerate(self.block_of):
            out[b].append(i)
        return out

    def same(self, i: int, j: int) -> bool:
        return self.block_of[i] == self.block_of[j]

    def is_universal(self) -> bool:
        return self.n_blocks <= 1

    def is_discrete(self) -> bool:
        return self.n_blocks == self.size

    def refines(self, other: "Partition") -> bool:
        _check_sizes(self, other)
        image: dict[int, int] = {}
        return all(image.setdefault(a, b) == b for a, b in zip(self.block_of, other.block_of))

    def restrict(self, positions: Sequence[int]) -> "Partition":
        return Partition([self.block_of[i] for i in positions])

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.block_of == other.block_of

    def __hash__(self) -> int:
        return hash(self.block_of)

    def __repr__(self) -> str:
        return f"Partition({self.blocks})"


def _check_sizes(a: Partition, b: Partition) -> None:
    if a.size != b.size:
        raise RelationError(f"partitions of different element lists ({a.size} vs {b.size})")


def meet(*parts: Partition) -> Partition:
    """Common refinement."""
    if not parts:
        raise RelationError("meet of no partitions")
    for q in parts[1:]:
        _check_sizes(parts[0], q)
    return Partition.from_key(zip(*(q.block_of for q in parts)))


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def join(*parts: Partition) -> Partition:
    """Finest partition coarser than every argument (transitive closure of the union)."""
    if not parts:
        raise RelationError("join of no partitions")
    size = parts[0].size
    uf = _UnionFind(size)
    for q in parts:
        _check_sizes(parts[0], q)
        for block in q.blocks:
            for i in block[1:]:
                uf.union(block[0], i)
    return Partition([uf.find(i) for i in range(size)])


# -- Green's relations ------------------------------------------------------------


@dataclass
class GreensClasses:
    R: Partition
    L: Partition
    H: Partition
    D: Partition
    J: Partition

    def as_dict(self) -> dict[str, Partition]:
        return {"R": self.R, "L": self.L, "H": self.H, "D": self.D, "J": self.J}


MODES = ("raw", "canonical", "abstract")


def _ideal_keys(table: CayleyTable, mode: str) -> list:
    if mode not in MODES:
        raise RelationError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == "abstract":
        return list(range(table.size))
    if mode == "canonical" and table.has_duplicates:
        raise RelationError("canonical mode needs distinct matrices; use mode='raw'")
    return list(table.keys)


def greens_classes(table: CayleyTable, mode: str = "raw") -> GreensClasses:
    """R, L, H, D and J of a closed table, from principal ideals over S with 1 adjoined."""
    if not table.closed:
        raise NotClosedError("Green's relations need a closed table")
    keys = _ideal_keys(table, mode)
    idx = table.index
    size = table.size

    def ideal(positions) -> frozenset:
        return frozenset(keys[k] for k in positions)

    right = [ideal([i, *idx[i, :]]) for i in range(size)]
    left = [ideal([i, *idx[:, i]]) for i in range(size)]
    two = [
        ideal([i, *idx[i, :], *idx[:, i], *idx[idx[:, i], :].ravel()])
        for i in range(size)
    ]
    R = Partition.from_key(right)
    L = Partition.from_key(left)
    return GreensClasses(R=R, L=L, H=meet(R, L), D=join(R, L), J=Partition.from_key(two))


# -- alpha-equality relations -------------------------------------------------------


def _param_key(x: BandElement, value):
    return value if x.symbolic else x.alpha * value


def _homogeneous(elems: Sequence[BandElement]) -> None:
    if not elems:
        return
    first = elems[0]
    for x in elems[1:]:
        if x.kind is not first.kind or x.arity != first.arity:
            raise InvalidElementError(f"mixed kinds: {first.label} and {x.label}")
        if x.alpha != first.alpha:
            raise InvalidElementError("elements carry different alphas")


def delta_partition(elems: Sequence[BandElement], mode: str = "single") -> Partition:
    """Blocks of componentwise alpha-equal parameters.

    ``single`` compares the one parameter of p/q/y elements, ``double`` both
    parameters of r elements, ``n_ple`` all ``2n`` parameters of f elements.
    """
    elems = list(elems)
    _homogeneous(elems)
    if elems:
        kind = elems[0].kind
        wanted = {
            "single": (Kind.P, Kind.Q, Kind.Y),
            "double": (Kind.R,),
            "n_ple": (Kind.F,),
        }
        if mode not in wanted:
            raise RelationError(f"unknown mode {mode!r}")
        if kind not in wanted[mode]:
            raise InvalidElementError(f"mode {mode!r} does not apply to {kind.value} elements")
    return Partition.from_key(tuple(_param_key(x, v) for v in x.params) for x in elems)


def _indexed(elems: Sequence[BandElement]) -> int:
    _homogeneous(elems)
    if elems and elems[0].kind not in (Kind.R, Kind.F):
        raise InvalidElementError("fine relations need rectangular-band elements")
    return elems[0].arity if elems else 0


def fine_relation(elems: Sequence[BandElement], side: str, k: int) -> Partition:
    """``R^(k)`` (``side='R'``) or ``L^(k)``: alpha-equality of ``t_k`` or ``u_k`` alone."""
    elems = list(elems)
    n = _indexed(elems)
    if side not in ("R", "L"):
        raise RelationError(f"side must be 'R' or 'L', not {side!r}")
    if elems and not 1 <= k <= n:
        raise DomainError(f"index {k} outside 1..{n}")
    pick = (lambda x: x.t[k - 1]) if side == "R" else (lambda x: x.u[k - 1])
    return Partition.from_key(_param_key(x, pick(x)) for x in elems)


def mixed_relation(elems: Sequence[BandElement], op: str, rows: Iterable[int], cols: Iterable[int]) -> Partition:
    """``H^(I|K)`` (meet) or ``D^(I|K)`` (join) of the row and column fine relations.

    The row side is the meet of ``R^(i)`` over ``I``; the column side the
    meet of ``L^(k)`` over ``K``.
    """
    elems = list(elems)
    rows, cols = sorted(set(rows)), sorted(set(cols))
    if not rows or not cols:
        raise RelationError("mixed relations need at least one index on each side")
    r_side = meet(*(fine_relation(elems, "R", i) for i in rows))
    l_side = meet(*(fine_relation(elems, "L", k) for k in cols))
    if op == "H":
        return meet(r_side, l_side)
    if op == "D":
        return join(r_side, l_side)
    raise RelationError(f"mixed operator must be 'H' or 'D', not {op!r}")


def mixed_name(op: str, rows: Iterable[int], cols: Iterable[int]) -> str:
    return f"{op}({''.join(map(str, rows))}|{''.join(map(str, cols))})"


_NAME = re.compile(r"^(?:(?P<green>[RLHDJ])|(?P<side>[RL])(?P<k>\d+)|(?P<op>[HD])\((?P<rows>\d+)\|(?P<cols>\d+)\))$")


def parse_relation(name: str) -> tuple:
    """``'R'`` -> ('green', 'R'); ``'L2'`` -> ('fine', 'L', 2); ``'H(12|1)'`` -> ('mixed', 'H', (1, 2), (1,))."""
    m = _NAME.match(name.strip())
    if not m:
        raise RelationError(f"unknown relation {name!r}")
    if m.group("green"):
        return ("green", m.group("green"))
    if m.group("side"):
        return ("fine", m.group("side"), int(m.group("k")))
    rows = tuple(int(c) for c in m.group("rows"))
    cols = tuple(int(c) for c in m.group("cols"))
    return ("mixed", m.group("op"), rows, cols)


def relation(name: str, elems: Sequence, table: CayleyTable | None = None, mode: str = "raw") -> Partition:
    """Evaluate a relation by name on ``elems`` (``table`` is built on demand for Green's)."""
    parsed = parse_relation(name)
    if parsed[0] == "green":
        from .bands import cayley_table

        table = table if table is not None else cayley_table(elems)
        return greens_classes(table, mode).as_dict()[parsed[1]]
    if parsed[0] == "fine":
        return fine_relation(elems, parsed[1], parsed[2])
    return mixed_relation(elems, parsed[1], parsed[2], parsed[3])


def mixed_families(n: int) -> dict[str, list[str]]:
    """Names of every mixed relation of the six families on an (n|n)-band.

    Families: ``H(i|j)``, ``D(i|j)``, ``H(ij|k)``, ``H(i|kl)``, ``D(ij|k)``,
    ``D(i|kl)`` with ``i < j`` and ``k < l`` where pairs occur.
    """
    idx = range(1, n + 1)
    pairs = list(combinations(idx, 2))
    out = {}
    for op in ("H", "D"):
        out[f"{op}(i|j)"] = [mixed_name(op, (i,), (j,)) for i in idx for j in idx]
        out[f"{op}(ij|k)"] = [mixed_name(op, pr, (k,)) for pr in pairs for k in idx]
        out[f"{op}(i|kl)"] = [mixed_name(op, (i,), pr) for i in idx for pr in pairs]
    return out


# -- eggbox diagrams -----------------------------------------------------------------


@dataclass
class EggboxDiagram:
    axes: list[str]
    classes_per_axis: list[int]
    cells: dict[tuple, list[str]]
    labels: list[str] = field(repr=False)
    positions: dict[tuple, list[int]] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.axes)

    def occupied(self) -> int:
        return sum(1 for v in self.cells.values() if v)

    def is_partition(self) -> bool:
        seen = sorted(i for v in self.positions.values() for i in v)
        return seen == list(range(len(self.labels)))

    def to_json(self) -> str:
        payload = {
            "axes": self.axes,
            "classes_per_axis": self.classes_per_axis,
            "cells": {",".join(map(str, c)): v for c, v in self.cells.items()},
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"

    def to_dot(self, d_classes: Partition | None = None) -> str:
        """Graphviz text for a 2-D box: one cluster per D-class, cells on an R x L grid."""
        if self.dim != 2:
            raise RelationError("DOT export needs exactly two axes")
        rows, cols = self.classes_per_axis
        if d_classes is None:
            d_of_cell = {c: 0 for c in self.cells}
        else:
            d_of_cell = {
                c: d_classes.block_of[pos[0]] for c, pos in self.positions.items() if pos
            }
        lines = [
            "graph eggbox {",
            "  node [shape=box, fontname=\"monospace\"];",
            "  newrank=true;",
        ]
        clusters = sorted(set(d_of_cell.values()))
        for d in clusters:
            lines.append(f"  subgraph cluster_D{d} {{")
            lines.append(f"    label=\"D{d}\";")
            for c in sorted(self.cells):
                if self.cells[c] and d_of_cell[c] == d:
                    text = "\\n".join(self.cells[c])
                    lines.append(f"    c{c[0]}_{c[1]} [label=\"{text}\", pos=\"{c[1]},{-c[0]}!\"];")
            lines.append("  }")
        for c in sorted(self.cells):
            if not self.cells[c]:
                lines.append(f"  c{c[0]}_{c[1]} [label=\"\", style=dashed, pos=\"{c[1]},{-c[0]}!\"];")
        for i in range(rows):
            row = " ".join(f"c{i}_{j};" for j in range(cols))
            lines.append(f"  {{ rank=same; {row} }}")
        for j in range(cols):
            for i in range(rows - 1):
                lines.append(f"  c{i}_{j} -- c{i + 1}_{j} [style=invis];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def eggbox(labels: Sequence[str], axes: Sequence[tuple[str, Partition]]) -> EggboxDiagram:
    """Grid of elements indexed by their class on each axis (empty cells kept)."""
    names = [a for a, _ in axes]
    if len(set(names)) != len(names):
        raise RelationError(f"duplicate axis in {names}")
    if not axes:
        raise RelationError("an eggbox needs at least one axis")
    parts = [q for _, q in axes]
    for q in parts:
        if q.size != len(labels):
            raise RelationError("axis partition does not match the element list")
    counts = [q.n_blocks for q in parts]
    positions: dict[tuple, list[int]] = {c: [] for c in product(*(range(c) for c in counts))}
    for i in range(len(labels)):
        positions[tuple(q.block_of[i] for q in parts)].append(i)
    cells = {c: [labels[i] for i in pos] for c, pos in positions.items()}
    return EggboxDiagram(names, counts, cells, list(labels), positions)


# -- psi: elements to (R-class, L-class) -----------------------------------------------


@dataclass
class PsiReport:
    values: list[tuple[int, int]]
    n_r: int
    n_l: int
    is_homomorphism: bool
    is_surjective: bool
    is_injective: bool
    non_injective_witness: tuple[str, str] | None

    @property
    def ok(self) -> bool:
        return self.is_homomorphism and self.is_surjective


def psi_map(table: CayleyTable, greens: GreensClasses | None = None) -> PsiReport:
    """``psi(x) = (R-class, L-class)`` with ``(R1, L1) * (R2, L2) = (R1, L2)``."""
    greens = greens or greens_classes(table)
    R, L = greens.R, greens.L
    values = [(R.block_of[i], L.block_of[i]) for i in range(table.size)]
    idx = table.index
    hom = all(
        values[idx[i, j]] == (values[i][0], values[j][1])
        for i in range(table.size)
        for j in range(table.size)
    )
    surjective = set(values) == set(product(range(R.n_blocks), range(L.n_blocks)))
    first: dict[tuple, int] = {}
    witness = None
    for i, v in enumerate(values):
        if v in first:
            witness = (label_of(table.elements[first[v]]), label_of(table.elements[i]))
            break
        first[v] = i
    return PsiReport(values, R.n_blocks, L.n_blocks, hom, surjective, witness is None, witness)


# -- restriction to index subsemigroups -----------------------------------------------


@dataclass(frozen=True)
class SubsemigroupSpec:
    """Fixes ``alpha t_i`` (``t_fixed``) and ``alpha u_i`` (``u_fixed``) to given odd values."""

    t_fixed: tuple = ()  # pairs (index, odd value)
    u_fixed: tuple = ()

    @classmethod
    def all_but(cls, base: BandElement, k: int) -> "SubsemigroupSpec":
        """Fix every index of ``base`` except ``k`` at its current alpha-image."""
        a = base.alpha
        n = base.arity
        if not 1 <= k <= n:
            raise DomainError(f"index {k} outside 1..{n}")
        fixed = [i for i in range(1, n + 1) if i != k]
        return cls(
            tuple((i, a * base.t[i - 1]) for i in fixed),
            tuple((i, a * base.u[i - 1]) for i in fixed),
        )

    def selects(self, x: BandElement) -> bool:
        a = x.alpha
        return all(a * x.t[i - 1] == v for i, v in self.t_fixed) and all(
            a * x.u[i - 1] == v for i, v in self.u_fixed
        )

    def positions(self, elems: Sequence[BandElement]) -> list[int]:
        return [i for i, x in enumerate(elems) if self.selects(x)]


@dataclass
class RestrictionReport:
    k: int
    size: int
    subset_size: int
    equalities: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.equalities.values())


def subsemigroup_restriction(
    spec: SubsemigroupSpec, elems: Sequence[BandElement], k: int, table: CayleyTable | None = None
) -> RestrictionReport:
    """Green's relations of the subsemigroup against restricted fine relations.

    Checks ``R_U = R^(k)|U``, ``L_U = L^(k)|U``, ``H_U = H^(k|k)|U`` and
    ``D_U = D^(k|k)|U``, the D's being joins.
    """
    from .bands import cayley_table

    elems = list(elems)
    table = table if table is not None else cayley_table(elems)
    pos = spec.positions(elems)
    if not pos:
        raise DomainError("the subsemigroup selects no elements")
    inner = greens_classes(table.restrict(pos))
    Rk = fine_relation(elems, "R", k)
    Lk = fine_relation(elems, "L", k)
    outer = {"R": Rk, "L": Lk, "H": meet(Rk, Lk), "D": join(Rk, Lk)}
    eq = {name: getattr(inner, name) == outer[name].restrict(pos) for name in ("R", "L", "H", "D")}
    return RestrictionReport(k, len(elems), len(pos), eq)


def j_universal_check(table: CayleyTable) -> bool:
    """J has one class and ``x y x = x`` for every pair."""
    if not table.closed:
        raise NotClosedError("J needs a closed table")
    idx = table.index
    keys = table.keys
    size = table.size
    sandwich = all(
        keys[idx[idx[i, j], i]] == keys[i] for i in range(size) for j in range(size)
    )
    return sandwich and greens_classes(table).J.is_universal()


def partition_from_labels(labels: Sequence[str], blocks: Iterable[Iterable[str]]) -> Partition:
    """Build a partition from blocks of labels (handy for fixtures)."""
    where = {}
    for b, block in enumerate(blocks):
        for lab in block:
            where[lab] = b
    missing = [lab for lab in labels if lab not in where]
    if missing:
        raise RelationError(f"labels not covered: {missing}")
    return Partition([where[lab] for lab in labels])


def block_labels(part: Partition, labels: Sequence[str]) -> list[list[str]]:
    return [[labels[i] for i in block] for block in part.blocks]
