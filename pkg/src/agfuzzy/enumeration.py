"""Exhaustive generation of LA-semigroups and deterministic fuzzy-subset sampling."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from .errors import BudgetExceeded
from .fuzzy import FuzzySubset, Thresholds
from .magma import CayleyTable, has_left_identity, regularity

DEFAULT_SEED = 271828

FILTER_NAMES = frozenset({"regular", "intra_regular", "weakly_regular"})


@dataclass(frozen=True)
class EnumSpec:
    """What to generate: order, hypothesis filters, isomorph rejection, budget."""

    order: int
    require_left_identity: bool = False
    filters: frozenset[str] = frozenset()
    isomorph_reject: bool = True
    cell_budget: Optional[int] = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        object.__setattr__(self, "filters", frozenset(self.filters))
        unknown = self.filters - FILTER_NAMES
        if unknown:
            raise ValueError(f"unknown filters {sorted(unknown)}; expected subset of {sorted(FILTER_NAMES)}")
        if self.cell_budget is not None and self.cell_budget <= 0:
            raise ValueError("cell_budget must be positive when given")


@lru_cache(maxsize=None)
def _perms(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.permutations(range(n)))


def relabel(table: CayleyTable, perm: tuple[int, ...]) -> CayleyTable:
    """Apply the bijection perm to elements and entries alike."""
    n = table.order
    rows = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            rows[perm[a]][perm[b]] = perm[table.rows[a][b]]
    return CayleyTable(n, tuple(tuple(r) for r in rows))


def canonical_key(table: CayleyTable) -> bytes:
    """Lexicographically minimal row-major encoding over all relabelings.

    Two tables get equal keys exactly when some bijection carries one onto the
    other (acting on both operands and values).
    """
    n = table.order
    rows = table.rows
    best = None
    for perm in _perms(n):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        flat = bytes(perm[rows[inv[x]][inv[y]]] for x in range(n) for y in range(n))
        if best is None or flat < best:
            best = flat
    return best


def table_from_key(key: bytes, order: int) -> CayleyTable:
    rows = tuple(tuple(key[a * order + b] for b in range(order)) for a in range(order))
    return CayleyTable(order, rows)


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def spend(self, cells) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(
                f"cell budget {self.limit} exhausted during enumeration",
                nodes=self.used,
                progress=tuple(v for row in cells for v in row),
            )


def _raw_tables(order: int, budget: _Budget, pin_first: Optional[int] = None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Backtracking over cells in row-major order with forced-cell propagation.

    Whenever a*b = p and c*b = q are both set, the law forces p*c = q*a; a set
    cell on either side forces the other, a clash prunes. Propagation runs to
    fixpoint after each decision.
    """
    n = order
    cells = [[None] * n for _ in range(n)]

    def propagate(trail: list[tuple[int, int]]) -> bool:
        changed = True
        while changed:
            changed = False
            for a in range(n):
                row_a = cells[a]
                for b in range(n):
                    p = row_a[b]
                    if p is None:
                        continue
                    for c in range(n):
                        q = cells[c][b]
                        if q is None:
                            continue
                        lhs = cells[p][c]
                        rhs = cells[q][a]
                        if lhs is None:
                            if rhs is None:
                                continue
                            cells[p][c] = rhs
                            trail.append((p, c))
                            budget.spend(cells)
                            changed = True
                        elif rhs is None:
                            cells[q][a] = lhs
                            trail.append((q, a))
                            budget.spend(cells)
                            changed = True
                        elif lhs != rhs:
                            return False
        return True

    def next_cell() -> Optional[tuple[int, int]]:
        for a in range(n):
            for b in range(n):
                if cells[a][b] is None:
                    return a, b
        return None

    def rec() -> Iterator[tuple[tuple[int, ...], ...]]:
        spot = next_cell()
        if spot is None:
            yield tuple(tuple(r) for r in cells)
            return
        a, b = spot
        values = (pin_first,) if (a, b) == (0, 0) and pin_first is not None else range(n)
        for v in values:
            trail: list[tuple[int, int]] = [(a, b)]
            cells[a][b] = v
            budget.spend(cells)
            if propagate(trail):
                yield from rec()
            for (x, y) in trail:
                cells[x][y] = None

    yield from rec()


def passes_filters(table: CayleyTable, spec: EnumSpec) -> bool:
    if spec.require_left_identity and not has_left_identity(table):
        return False
    if spec.filters:
        rep = regularity(table)
        if "regular" in spec.filters and not rep.regular:
            return False
        if "intra_regular" in spec.filters and not rep.intra_regular:
            return False
        if "weakly_regular" in spec.filters and not rep.weakly_regular:
            return False
    return True


def enumerate_tables(spec: EnumSpec) -> Iterator[CayleyTable]:
    """All order-n tables satisfying the left invertive law and the requested filters.

    Raw mode emits in row-major lexicographic order; isomorph rejection emits
    one canonical representative per isomorphism class, ascending by key.
    """
    budget = _Budget(spec.cell_budget)
    if not spec.isomorph_reject:
        for rows in _raw_tables(spec.order, budget):
            table = CayleyTable(spec.order, rows)
            if passes_filters(table, spec):
                yield table
        return
    keys = set()
    for rows in _raw_tables(spec.order, budget):
        table = CayleyTable(spec.order, rows)
        if passes_filters(table, spec):
            keys.add(canonical_key(table))
    for key in sorted(keys):
        yield table_from_key(key, spec.order)


def raw_tables_pinned(order: int, pin_first: int) -> list[tuple[tuple[int, ...], ...]]:
    """Raw law-satisfying tables whose (0,0) cell is pinned; worker-friendly."""
    return list(_raw_tables(order, _Budget(None), pin_first=pin_first))


def count_summary(spec: EnumSpec) -> dict:
    """Raw and isomorphism-class counts under the requested filters."""
    budget = _Budget(spec.cell_budget)
    raw = 0
    keys = set()
    for rows in _raw_tables(spec.order, budget):
        table = CayleyTable(spec.order, rows)
        if passes_filters(table, spec):
            raw += 1
            keys.add(canonical_key(table))
    return {"order": spec.order, "raw": raw, "up_to_iso": len(keys)}


class SplitMix64:
    """The splitmix64 sequence; identical output on every platform."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self._state = seed & self.MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & self.MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def bounded(self, m: int) -> int:
        """Uniform draw from 0..m-1 by rejection; no modulo bias."""
        if m <= 0:
            raise ValueError("bound must be positive")
        span = 1 << 64
        limit = span - span % m
        while True:
            v = self.next_u64()
            if v < limit:
                return v % m


@dataclass(frozen=True)
class SampleSpec:
    """A deterministic stream of fuzzy subsets over a carrier.

    Exhaustive mode walks all (denominator+1)^order grade vectors over
    {0, 1/d, ..., 1} in lexicographic order; random mode draws `count` vectors
    from the splitmix64 sequence, each grade uniform on the same grid.
    """

    order: int
    denominator: int = 4
    mode: str = "exhaustive"
    seed: int = DEFAULT_SEED
    count: int = 0
    thresholds_grid_flag: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.denominator < 1:
            raise ValueError("denominator must be >= 1")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"mode must be 'exhaustive' or 'random', got {self.mode!r}")
        if self.mode == "random" and self.count < 0:
            raise ValueError("count must be non-negative")


def sample_fuzzy(spec: SampleSpec) -> Iterator[FuzzySubset]:
    d = spec.denominator
    if spec.mode == "exhaustive":
        for nums in itertools.product(range(d + 1), repeat=spec.order):
            yield FuzzySubset(spec.order, tuple(Fraction(k, d) for k in nums))
        return
    rng = SplitMix64(spec.seed)
    for _ in range(spec.count):
        nums = tuple(rng.bounded(d + 1) for _ in range(spec.order))
        yield FuzzySubset(spec.order, tuple(Fraction(k, d) for k in nums))


def thresholds_grid(denominator: int = 4) -> tuple[Thresholds, ...]:
    """All grid pairs gamma < delta with the given denominator, lex order."""
    d = denominator
    return tuple(
        Thresholds(Fraction(g, d), Fraction(dl, d))
        for g in range(d + 1)
        for dl in range(g + 1, d + 1)
    )
