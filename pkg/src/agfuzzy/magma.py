"""Finite magmas as Cayley tables: law checking, regularity, crisp subset algebra."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

from .errors import CarrierMismatch, EmptySubsetError, TableFormatError

CONDITIONAL_LAWS_NOTE = (
    "paramedial and extended laws are reported unconditionally but are only "
    "guaranteed to follow from the left invertive law when a left identity exists"
)


@dataclass(frozen=True)
class CayleyTable:
    """An order-n magma; ``rows[a][b]`` is the product a*b, everything 0-based.

    ``names`` is presentation-only; when absent, elements display 1-based.
    """

    order: int
    rows: tuple[tuple[int, ...], ...]
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        n = self.order
        if not isinstance(n, int) or n < 1:
            raise TableFormatError(f"order must be a positive integer, got {n!r}")
        rows = tuple(tuple(row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != n:
            raise TableFormatError(f"table has {len(rows)} rows, expected {n}")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise TableFormatError(f"table row {i} has {len(row)} entries, expected {n}")
            for j, v in enumerate(row):
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                    raise TableFormatError(f"table[{i}][{j}] = {v!r} is not an index in 0..{n - 1}")
        if self.names is not None:
            names = tuple(str(s) for s in self.names)
            object.__setattr__(self, "names", names)
            if len(names) != n:
                raise TableFormatError(f"names has {len(names)} entries, expected {n}")

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def label(self, x: int) -> str:
        return self.names[x] if self.names is not None else str(x + 1)

    @cached_property
    def factorizations(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each x, all pairs (y, z) with y*z = x, in lexicographic order."""
        buckets: list[list[tuple[int, int]]] = [[] for _ in range(self.order)]
        for y in range(self.order):
            for z in range(self.order):
                buckets[self.rows[y][z]].append((y, z))
        return tuple(tuple(b) for b in buckets)


@dataclass(frozen=True)
class LawReport:
    """Outcome of the four identity checks plus the left identities found.

    Each ``*_violation`` is the lexicographically first offending tuple, or
    None when the law holds.
    """

    left_invertive: bool
    left_invertive_violation: Optional[tuple[int, int, int]]
    medial: bool
    medial_violation: Optional[tuple[int, int, int, int]]
    paramedial: bool
    paramedial_violation: Optional[tuple[int, int, int, int]]
    extended: bool
    extended_violation: Optional[tuple[int, int, int]]
    left_identities: tuple[int, ...]


def check_laws(table: CayleyTable) -> LawReport:
    """Check the left invertive, medial, paramedial and extended laws.

    The paramedial law (ab)(cd) = (db)(ca) and the extended law a(bc) = b(ac)
    are computed for every table; see CONDITIONAL_LAWS_NOTE for when they are
    guaranteed consequences of the left invertive law.
    """
    n, rows = table.order, table.rows
    rng = range(n)

    li_viol = None
    for a in rng:
        for b in rng:
            ab = rows[a][b]
            for c in rng:
                if rows[ab][c] != rows[rows[c][b]][a]:
                    li_viol = (a, b, c)
                    break
            if li_viol:
                break
        if li_viol:
            break

    med_viol = None
    par_viol = None
    for a in rng:
        for b in rng:
            ab = rows[a][b]
            for c in rng:
                ac = rows[a][c]
                ca = rows[c][a]
                for d in rng:
                    v = rows[ab][rows[c][d]]
                    if med_viol is None and v != rows[ac][rows[b][d]]:
                        med_viol = (a, b, c, d)
                    if par_viol is None and v != rows[rows[d][b]][ca]:
                        par_viol = (a, b, c, d)
                if med_viol and par_viol:
                    break
            if med_viol and par_viol:
                break
        if med_viol and par_viol:
            break

    ext_viol = None
    for a in rng:
        for b in rng:
            for c in rng:
                if rows[a][rows[b][c]] != rows[b][rows[a][c]]:
                    ext_viol = (a, b, c)
                    break
            if ext_viol:
                break
        if ext_viol:
            break

    idents = tuple(e for e in rng if all(rows[e][a] == a for a in rng))
    return LawReport(
        left_invertive=li_viol is None,
        left_invertive_violation=li_viol,
        medial=med_viol is None,
        medial_violation=med_viol,
        paramedial=par_viol is None,
        paramedial_violation=par_viol,
        extended=ext_viol is None,
        extended_violation=ext_viol,
        left_identities=idents,
    )


@dataclass(frozen=True)
class RegularityReport:
    """Per-element witnesses for the three regularity classes.

    ``regular_witnesses[a]`` is the first x with a = (ax)a, or None.
    ``intra_regular_witnesses[a]`` is the first (x, y) with a = (x(aa))y.
    ``weakly_regular_witnesses[s]`` is the first (x, y) with s = (sx)(sy).
    """

    regular: bool
    regular_witnesses: tuple[Optional[int], ...]
    intra_regular: bool
    intra_regular_witnesses: tuple[Optional[tuple[int, int]], ...]
    weakly_regular: bool
    weakly_regular_witnesses: tuple[Optional[tuple[int, int]], ...]


def regularity(table: CayleyTable) -> RegularityReport:
    n, rows = table.order, table.rows
    rng = range(n)

    reg: list[Optional[int]] = []
    for a in rng:
        reg.append(next((x for x in rng if rows[rows[a][x]][a] == a), None))

    intra: list[Optional[tuple[int, int]]] = []
    for a in rng:
        sq = rows[a][a]
        intra.append(next(((x, y) for x in rng for y in rng if rows[rows[x][sq]][y] == a), None))

    weak: list[Optional[tuple[int, int]]] = []
    for s in rng:
        weak.append(next(((x, y) for x in rng for y in rng if rows[rows[s][x]][rows[s][y]] == s), None))

    return RegularityReport(
        regular=all(w is not None for w in reg),
        regular_witnesses=tuple(reg),
        intra_regular=all(w is not None for w in intra),
        intra_regular_witnesses=tuple(intra),
        weakly_regular=all(w is not None for w in weak),
        weakly_regular_witnesses=tuple(weak),
    )


def has_left_identity(table: CayleyTable) -> bool:
    return any(all(table.rows[e][a] == a for a in range(table.order)) for e in range(table.order))


@dataclass(frozen=True)
class CrispSubset:
    """A subset of the carrier 0..order-1, stored as a bitmask."""

    order: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.order):
            raise ValueError(f"mask {self.mask:#x} does not fit a carrier of order {self.order}")

    @classmethod
    def from_indices(cls, order: int, indices) -> "CrispSubset":
        mask = 0
        for i in indices:
            if not 0 <= i < order:
                raise ValueError(f"index {i} out of range 0..{order - 1}")
            mask |= 1 << i
        return cls(order, mask)

    @classmethod
    def full(cls, order: int) -> "CrispSubset":
        return cls(order, (1 << order) - 1)

    @classmethod
    def empty(cls, order: int) -> "CrispSubset":
        return cls(order, 0)

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.order and bool(self.mask >> x & 1)

    def indices(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.order) if self.mask >> x & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def is_empty(self) -> bool:
        return self.mask == 0

    def _check(self, other: "CrispSubset") -> None:
        if self.order != other.order:
            raise CarrierMismatch(f"subsets over carriers of order {self.order} and {other.order}")

    def intersection(self, other: "CrispSubset") -> "CrispSubset":
        self._check(other)
        return CrispSubset(self.order, self.mask & other.mask)

    def union(self, other: "CrispSubset") -> "CrispSubset":
        self._check(other)
        return CrispSubset(self.order, self.mask | other.mask)

    def issubset(self, other: "CrispSubset") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0


def all_subsets(order: int, nonempty: bool = True) -> Iterator[CrispSubset]:
    """All subsets of the carrier, in ascending bitmask order."""
    for mask in range(0 if not nonempty else 1, 1 << order):
        yield CrispSubset(order, mask)


def subset_product(table: CayleyTable, a: CrispSubset, b: CrispSubset) -> CrispSubset:
    """The product set {x*y : x in a, y in b}; empty when either factor is."""
    if a.order != table.order or b.order != table.order:
        raise CarrierMismatch("subset carrier does not match the table")
    mask = 0
    rows = table.rows
    for x in a.indices():
        row = rows[x]
        for y in b.indices():
            mask |= 1 << row[y]
    return CrispSubset(table.order, mask)


@dataclass(frozen=True)
class CrispClassReport:
    """Eight crisp classifications of one subset, each with a first witness violation.

    Witness shapes: la_subsemigroup (a, b) with ab outside; left_ideal (s, a);
    right_ideal (a, s); generalized_bi (a, s, b) for (as)b; interior (s1, a, s2)
    for (s1 a)s2; quasi (x,) for x in AS∩SA outside A. two_sided and bi reuse
    the witness of whichever conjunct failed first.
    """

    la_subsemigroup: bool
    la_subsemigroup_violation: Optional[tuple[int, ...]]
    left_ideal: bool
    left_ideal_violation: Optional[tuple[int, ...]]
    right_ideal: bool
    right_ideal_violation: Optional[tuple[int, ...]]
    two_sided_ideal: bool
    two_sided_ideal_violation: Optional[tuple[int, ...]]
    bi_ideal: bool
    bi_ideal_violation: Optional[tuple[int, ...]]
    generalized_bi_ideal: bool
    generalized_bi_ideal_violation: Optional[tuple[int, ...]]
    quasi_ideal: bool
    quasi_ideal_violation: Optional[tuple[int, ...]]
    interior_ideal: bool
    interior_ideal_violation: Optional[tuple[int, ...]]


def classify_crisp(table: CayleyTable, a: CrispSubset) -> CrispClassReport:
    """Classify a non-empty subset against the eight crisp ideal notions."""
    if a.order != table.order:
        raise CarrierMismatch("subset carrier does not match the table")
    if a.is_empty():
        raise EmptySubsetError("classification requires a non-empty subset")
    n, rows = table.order, table.rows
    mem = a.mask
    elems = a.indices()
    rng = range(n)

    sub_viol = None
    for x in elems:
        row = rows[x]
        for y in elems:
            if not mem >> row[y] & 1:
                sub_viol = (x, y)
                break
        if sub_viol:
            break

    left_viol = None
    for s in rng:
        row = rows[s]
        for x in elems:
            if not mem >> row[x] & 1:
                left_viol = (s, x)
                break
        if left_viol:
            break

    right_viol = None
    for x in elems:
        row = rows[x]
        for s in rng:
            if not mem >> row[s] & 1:
                right_viol = (x, s)
                break
        if right_viol:
            break

    genbi_viol = None
    for x in elems:
        for s in rng:
            xs = rows[x][s]
            for y in elems:
                if not mem >> rows[xs][y] & 1:
                    genbi_viol = (x, s, y)
                    break
            if genbi_viol:
                break
        if genbi_viol:
            break

    interior_only_viol = None
    for s1 in rng:
        for x in elems:
            sx = rows[s1][x]
            for s2 in rng:
                if not mem >> rows[sx][s2] & 1:
                    interior_only_viol = (s1, x, s2)
                    break
            if interior_only_viol:
                break
        if interior_only_viol:
            break

    sset = CrispSubset.full(n)
    aspr = subset_product(table, a, sset)
    spra = subset_product(table, sset, a)
    quasi_viol = None
    inter = aspr.intersection(spra)
    for x in inter.indices():
        if x not in a:
            quasi_viol = (x,)
            break

    two_viol = left_viol if left_viol is not None else right_viol
    bi_viol = sub_viol if sub_viol is not None else genbi_viol
    int_viol = sub_viol if sub_viol is not None else interior_only_viol
    return CrispClassReport(
        la_subsemigroup=sub_viol is None,
        la_subsemigroup_violation=sub_viol,
        left_ideal=left_viol is None,
        left_ideal_violation=left_viol,
        right_ideal=right_viol is None,
        right_ideal_violation=right_viol,
        two_sided_ideal=left_viol is None and right_viol is None,
        two_sided_ideal_violation=two_viol,
        bi_ideal=sub_viol is None and genbi_viol is None,
        bi_ideal_violation=bi_viol,
        generalized_bi_ideal=genbi_viol is None,
        generalized_bi_ideal_violation=genbi_viol,
        quasi_ideal=quasi_viol is None,
        quasi_ideal_violation=quasi_viol,
        interior_ideal=sub_viol is None and interior_only_viol is None,
        interior_ideal_violation=int_viol,
    )


def table_to_dict(table: CayleyTable) -> dict:
    out: dict = {"order": table.order, "table": [list(row) for row in table.rows]}
    if table.names is not None:
        out["names"] = list(table.names)
    return out


def table_to_json(table: CayleyTable) -> str:
    return json.dumps(table_to_dict(table), separators=(", ", ": "))


def table_from_dict(obj: object) -> CayleyTable:
    """Build a table from the {"order", "table", "names"?} mapping, with field diagnostics."""
    if not isinstance(obj, dict):
        raise TableFormatError(f"expected a JSON object, got {type(obj).__name__}")
    if "order" not in obj:
        raise TableFormatError('missing field "order"')
    if "table" not in obj:
        raise TableFormatError('missing field "table"')
    order = obj["order"]
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise TableFormatError(f'field "order" must be a positive integer, got {order!r}')
    rows = obj["table"]
    if not isinstance(rows, list):
        raise TableFormatError('field "table" must be a list of rows')
    if len(rows) != order:
        raise TableFormatError(f'field "table" has {len(rows)} rows, expected {order}')
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise TableFormatError(f"table row {i} must be a list")
        if len(row) != order:
            raise TableFormatError(f"table row {i} has {len(row)} entries, expected {order}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < order:
                raise TableFormatError(f"table[{i}][{j}] = {v!r} is not an index in 0..{order - 1}")
    names = obj.get("names")
    if names is not None:
        if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
            raise TableFormatError('field "names" must be a list of strings')
        if len(names) != order:
            raise TableFormatError(f'field "names" has {len(names)} entries, expected {order}')
        names = tuple(names)
    return CayleyTable(order=order, rows=tuple(tuple(r) for r in rows), names=names)


def table_from_json(text: str) -> CayleyTable:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return table_from_dict(obj)
