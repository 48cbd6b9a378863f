"""Verification engine: run catalog statements over structures, thresholds and samples."""
from __future__ import annotations

import hashlib
import itertools
import json
import time
from dataclasses import dataclass, replace as dc_replace
from fractions import Fraction
from functools import lru_cache
from math import lcm, prod
from typing import Iterator, Optional

from .classifiers import (
    IdealKind,
    check_inequality_form,
    iter_inequality_violations,
    passes_inequality,
)
from .enumeration import DEFAULT_SEED, EnumSpec, SplitMix64, enumerate_tables, thresholds_grid
from .errors import BudgetExceeded, HypothesisMismatch
from .fuzzy import (
    ONE,
    FuzzySubset,
    Thresholds,
    compose,
    compose_values,
    fuzzy_from_dict,
    fuzzy_to_dict,
    join,
    leq,
    level_set,
    meet,
    star,
)
from .magma import (
    CayleyTable,
    CrispSubset,
    all_subsets,
    check_laws,
    classify_crisp,
    has_left_identity,
    regularity,
    subset_product,
    table_from_dict,
    table_to_dict,
)
from .statements import (
    CATALOG,
    HYPOTHESIS_NAMES,
    SHAPES,
    Statement,
    crisp_condition,
    get_statement,
    prop_holds,
    relation_holds,
)

DEFAULT_THRESHOLDS = thresholds_grid(4)

STATUS_CONFIRMED_EXHAUSTIVE = "confirmed_exhaustive"
STATUS_CONFIRMED_SAMPLED = "confirmed_sampled"
STATUS_REFUTED = "refuted"


@dataclass(frozen=True)
class Scope:
    """Where a statement is checked: structures, thresholds, fuzzy quantifier pool.

    ``structures`` (explicit tables), when given, supplies the structures;
    otherwise ``orders`` names the orders to enumerate isomorph-free. ``enforce`` names hypotheses that are
    verified on every structure; explicit structures failing one raise, and
    enumerated structures are filtered. ``subsets``, when given, replaces the
    grade-grid pool with an explicit spot set.
    """

    structures: Optional[tuple[CayleyTable, ...]] = None
    orders: tuple[int, ...] = (1, 2, 3, 4)
    enforce: frozenset[str] = frozenset()
    thresholds: tuple[Thresholds, ...] = DEFAULT_THRESHOLDS
    denominator: int = 4
    mode: str = "exhaustive"
    random_count: int = 10_000
    subsets: Optional[tuple[FuzzySubset, ...]] = None
    sample_cap: int = 10_000
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"mode must be 'exhaustive' or 'random', got {self.mode!r}")
        if self.denominator < 1 or self.sample_cap < 1:
            raise ValueError("denominator and sample_cap must be positive")
        unknown = set(self.enforce) - set(HYPOTHESIS_NAMES)
        if unknown:
            raise ValueError(f"unknown hypotheses {sorted(unknown)}; expected subset of {list(HYPOTHESIS_NAMES)}")


def default_scope(stmt: Statement, max_order: int = 4, **overrides) -> Scope:
    """The statement's default scope: its hypothesis class up to max_order."""
    base = dict(
        orders=tuple(range(1, max_order + 1)),
        enforce=stmt.requires | stmt.default_enforce,
    )
    base.update(overrides)
    return Scope(**base)


@dataclass(frozen=True)
class Counterexample:
    """A concrete refutation bundle; every grade and set re-evaluates exactly."""

    statement_id: str
    variant: Optional[str]
    table: CayleyTable
    thresholds: Optional[Thresholds]
    fuzzy: tuple[tuple[str, FuzzySubset], ...] = ()
    crisp: tuple[tuple[str, tuple[int, ...]], ...] = ()
    element: Optional[int] = None
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None
    relation: Optional[str] = None
    extra: tuple[tuple[str, str], ...] = ()
    detail: str = ""

    def fuzzy_named(self, name: str) -> FuzzySubset:
        for key, value in self.fuzzy:
            if key == name:
                return value
        raise KeyError(name)

    def extra_named(self, name: str) -> str:
        for key, value in self.extra:
            if key == name:
                return value
        raise KeyError(name)


@dataclass(frozen=True)
class TheoremVerdict:
    id: str
    status: str
    structures: int
    samples: int
    coverage: tuple[tuple[str, object], ...]
    counterexample: Optional[Counterexample]
    scope_digest: str
    wall_time: float = 0.0

    def coverage_dict(self) -> dict:
        return dict(self.coverage)


class _Counter:
    __slots__ = ("limit", "used")

    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def spend(self, amount: int, where: str) -> None:
        self.used += amount
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(
                f"verification budget {self.limit} exhausted at {where}",
                nodes=self.used,
                progress=where,
            )


class _Stats:
    __slots__ = ("structures", "samples", "space", "sampled_any")

    def __init__(self):
        self.structures = 0
        self.samples = 0
        self.space = 0
        self.sampled_any = False


def structure_hypotheses(table: CayleyTable) -> frozenset[str]:
    rep = regularity(table)
    names = set()
    if has_left_identity(table):
        names.add("left_identity")
    if rep.regular:
        names.add("regular")
    if rep.intra_regular:
        names.add("intra_regular")
    if rep.weakly_regular:
        names.add("weakly_regular")
    return frozenset(names)


@lru_cache(maxsize=256)
def _enumerated_cached(order: int, require_left_identity: bool, filters: frozenset) -> tuple[CayleyTable, ...]:
    spec = EnumSpec(
        order=order,
        require_left_identity=require_left_identity,
        filters=filters,
        isomorph_reject=True,
    )
    return tuple(enumerate_tables(spec))


def _candidate_structures(stmt: Statement, scope: Scope) -> Iterator[CayleyTable]:
    enforce = scope.enforce | stmt.requires
    if scope.structures is not None:
        for table in scope.structures:
            missing = enforce - structure_hypotheses(table)
            if missing:
                raise HypothesisMismatch(
                    f"{stmt.id}: explicit structure of order {table.order} lacks "
                    f"required hypotheses {sorted(missing)}"
                )
            yield table
        return
    for order in scope.orders:
        yield from _enumerated_cached(
            order,
            "left_identity" in enforce,
            frozenset(enforce & {"regular", "intra_regular", "weakly_regular"}),
        )


@lru_cache(maxsize=64)
def _grid_pool(order: int, denominator: int, scale: int) -> tuple[tuple[int, ...], ...]:
    step = scale // denominator
    return tuple(
        tuple(k * step for k in nums)
        for nums in itertools.product(range(denominator + 1), repeat=order)
    )


@lru_cache(maxsize=16)
def _random_pool(order: int, denominator: int, scale: int, seed: int, count: int) -> tuple[tuple[int, ...], ...]:
    rng = SplitMix64(seed)
    step = scale // denominator
    out = []
    for _ in range(count):
        out.append(tuple(rng.bounded(denominator + 1) * step for _ in range(order)))
    return tuple(out)


class _StructureData:
    """Threshold-independent caches for one structure."""

    def __init__(self, table: CayleyTable):
        self.table = table
        self.rows = table.rows
        self._crisp_by_kind: dict[IdealKind, list[CrispSubset]] = {}
        self._crisp_reports = None

    def crisp_reports(self) -> list[tuple[CrispSubset, object]]:
        if self._crisp_reports is None:
            self._crisp_reports = [
                (a, classify_crisp(self.table, a)) for a in all_subsets(self.table.order, nonempty=True)
            ]
        return self._crisp_reports

    def crisp_of_kind(self, kind: IdealKind) -> list[CrispSubset]:
        if kind not in self._crisp_by_kind:
            attr = {
                IdealKind.LA_SUBSEMIGROUP: "la_subsemigroup",
                IdealKind.LEFT_IDEAL: "left_ideal",
                IdealKind.RIGHT_IDEAL: "right_ideal",
                IdealKind.TWO_SIDED_IDEAL: "two_sided_ideal",
                IdealKind.GENERALIZED_BI_IDEAL: "generalized_bi_ideal",
                IdealKind.BI_IDEAL: "bi_ideal",
                IdealKind.INTERIOR_IDEAL: "interior_ideal",
                IdealKind.QUASI_IDEAL: "quasi_ideal",
            }[kind]
            self._crisp_by_kind[kind] = [a for a, rep in self.crisp_reports() if getattr(rep, attr)]
        return self._crisp_by_kind[kind]


class _Context:
    """One (structure, thresholds) evaluation context over a scaled exact lattice.

    Grades become integer numerators over a common denominator ``scale``; min,
    max and clamp act identically there, so every check stays exact while the
    hot loops run on machine integers.
    """

    def __init__(self, data: _StructureData, th: Thresholds, scope: Scope):
        self.data = data
        self.th = th
        self.scope = scope
        dens = [scope.denominator, th.gamma.denominator, th.delta.denominator]
        if scope.subsets is not None:
            for mu in scope.subsets:
                dens.extend(g.denominator for g in mu.grades)
        self.scale = lcm(*dens)
        self.gamma = int(th.gamma * self.scale)
        self.delta = int(th.delta * self.scale)
        self.top = self.scale
        n = data.table.order
        if scope.subsets is not None:
            self.pool = tuple(tuple(int(g * self.scale) for g in mu.grades) for mu in scope.subsets)
            self.pool_sampled = False
        elif scope.mode == "exhaustive":
            self.pool = _grid_pool(n, scope.denominator, self.scale)
            self.pool_sampled = False
        else:
            self.pool = _random_pool(n, scope.denominator, self.scale, scope.seed, scope.random_count)
            self.pool_sampled = True
        self._survivors: dict[Optional[IdealKind], list[tuple[int, ...]]] = {}

    def grade(self, v: int) -> Fraction:
        return Fraction(v, self.scale)

    def to_subset(self, vals: tuple[int, ...]) -> FuzzySubset:
        return FuzzySubset(self.data.table.order, tuple(self.grade(v) for v in vals))

    def chi_star(self, a: CrispSubset) -> tuple[int, ...]:
        return tuple(self.delta if x in a else self.gamma for x in range(a.order))

    def survivors(self, kind: Optional[IdealKind]) -> list[tuple[int, ...]]:
        if kind in self._survivors:
            return self._survivors[kind]
        rows, g, d, top = self.data.rows, self.gamma, self.delta, self.top
        if kind is None:
            out = list(self.pool)
        else:
            out = [v for v in self.pool if passes_inequality(kind, rows, v, g, d, top)]
            if self.scope.subsets is None:
                seen = set(out)
                n = self.data.table.order
                witnesses = [self.chi_star(a) for a in self.data.crisp_of_kind(kind)]
                witnesses.append((top,) * n)
                for w in witnesses:
                    if w not in seen and passes_inequality(kind, rows, w, g, d, top):
                        out.append(w)
                        seen.add(w)
        self._survivors[kind] = out
        return out

    def tuples(self, kinds: tuple[Optional[IdealKind], ...]) -> tuple[Iterator[tuple], int, bool]:
        """Quantifier tuples for a variant: (iterator, space size, sampled flag)."""
        lists = [self.survivors(k) for k in kinds]
        total = prod(len(lst) for lst in lists)
        if total <= self.scope.sample_cap:
            return itertools.product(*lists), total, False
        cap = self.scope.sample_cap
        rng = SplitMix64(self.scope.seed)

        def sampled() -> Iterator[tuple]:
            sizes = [len(lst) for lst in lists]
            for _ in range(cap):
                idx = rng.bounded(total)
                pick = []
                for size, lst in zip(sizes, lists):
                    pick.append(lst[idx % size])
                    idx //= size
                yield tuple(pick)

        return sampled(), total, True


def _identity_forward(stmt: Statement, ctx: _Context, counter: _Counter, stats: _Stats) -> Optional[Counterexample]:
    rows, g, d, top = ctx.data.rows, ctx.gamma, ctx.delta, ctx.top
    for variant in stmt.variants:
        tuples, space, sampled = ctx.tuples(variant.kinds)
        stats.space += space
        if sampled or ctx.pool_sampled:
            stats.sampled_any = True
        shape = SHAPES[variant.shape]
        for mus in tuples:
            counter.spend(1, f"{stmt.id}/{variant.label}")
            stats.samples += 1
            lhs, rhs = shape(rows, g, d, mus, top)
            bad = relation_holds(variant.relation, lhs, rhs)
            if bad is not None:
                names = [f"mu{i + 1}" for i in range(len(mus))]
                return Counterexample(
                    statement_id=stmt.id,
                    variant=variant.label,
                    table=ctx.data.table,
                    thresholds=ctx.th,
                    fuzzy=tuple((name, ctx.to_subset(vals)) for name, vals in zip(names, mus)),
                    element=bad,
                    lhs=ctx.grade(lhs[bad]),
                    rhs=ctx.grade(rhs[bad]),
                    relation=variant.relation,
                    extra=(("shape", variant.shape), ("direction", "forward")),
                    detail=f"clause {variant.display} fails at element index {bad}",
                )
    return None


def _identity_converse(stmt: Statement, ctx: _Context, counter: _Counter, stats: _Stats) -> Optional[Counterexample]:
    """On a structure violating the property, each clause must admit a witness violation.

    Witnesses follow the characterization proofs: clamped characteristic
    functions of crisp ideals of the right kinds, plus the constant-one subset.
    """
    rows, g, d, top = ctx.data.rows, ctx.gamma, ctx.delta, ctx.top
    n = ctx.data.table.order
    for variant in stmt.variants:
        shape = SHAPES[variant.shape]
        wlists = []
        for kind in variant.kinds:
            if kind is None:
                wlists.append(list(ctx.pool))
                continue
            ws = [ctx.chi_star(a) for a in ctx.data.crisp_of_kind(kind)]
            ws.append((top,) * n)
            wlists.append(ws)
        found = False
        for mus in itertools.product(*wlists):
            counter.spend(1, f"{stmt.id}/{variant.label}/converse")
            stats.samples += 1
            lhs, rhs = shape(rows, g, d, mus, top)
            if relation_holds(variant.relation, lhs, rhs) is not None:
                found = True
                break
        if not found:
            return Counterexample(
                statement_id=stmt.id,
                variant=variant.label,
                table=ctx.data.table,
                thresholds=ctx.th,
                relation=variant.relation,
                extra=(("shape", variant.shape), ("direction", "converse")),
                detail=(
                    f"structure violates {stmt.prop} yet clause {variant.display} holds for "
                    "every characteristic witness; the equivalence fails in the converse direction"
                ),
            )
    return None


def _check_implication(stmt: Statement, ctx: _Context, counter: _Counter, stats: _Stats) -> Optional[Counterexample]:
    rows, g, d, top = ctx.data.rows, ctx.gamma, ctx.delta, ctx.top
    pool = ctx.survivors(stmt.premise_kind)
    stats.space += len(pool)
    if ctx.pool_sampled:
        stats.sampled_any = True
    for vals in pool:
        counter.spend(1, stmt.id)
        stats.samples += 1
        for kind in stmt.conclusion_kinds:
            first = next(iter_inequality_violations(kind, rows, vals, g, d, top), None)
            if first is not None:
                part, elements, lhs, rhs = first
                return Counterexample(
                    statement_id=stmt.id,
                    variant=None,
                    table=ctx.data.table,
                    thresholds=ctx.th,
                    fuzzy=(("mu", ctx.to_subset(vals)),),
                    element=elements[0],
                    lhs=ctx.grade(lhs),
                    rhs=ctx.grade(rhs),
                    relation="ge",
                    extra=(
                        ("premise", stmt.premise_kind.value),
                        ("conclusion", kind.value),
                        ("part", part),
                        ("elements", ",".join(map(str, elements))),
                    ),
                    detail=f"{stmt.premise_kind.value} holds but {kind.value} fails on condition {part} at {elements}",
                )
    return None


def _check_product(stmt: Statement, ctx: _Context, counter: _Counter, stats: _Stats) -> Optional[Counterexample]:
    rows, g, d, top = ctx.data.rows, ctx.gamma, ctx.delta, ctx.top
    tuples, space, sampled = ctx.tuples((IdealKind.LEFT_IDEAL, IdealKind.RIGHT_IDEAL))
    stats.space += space
    if sampled or ctx.pool_sampled:
        stats.sampled_any = True
    for mu, nu in tuples:
        counter.spend(1, stmt.id)
        stats.samples += 1
        pi = compose_values(rows, mu, nu)
        first = next(iter_inequality_violations(IdealKind.TWO_SIDED_IDEAL, rows, pi, g, d, top), None)
        if first is not None:
            part, elements, lhs, rhs = first
            return Counterexample(
                statement_id=stmt.id,
                variant=None,
                table=ctx.data.table,
                thresholds=ctx.th,
                fuzzy=(("mu", ctx.to_subset(mu)), ("nu", ctx.to_subset(nu)), ("mu_o_nu", ctx.to_subset(pi))),
                element=elements[0],
                lhs=ctx.grade(lhs),
                rhs=ctx.grade(rhs),
                relation="ge",
                extra=(("part", part), ("elements", ",".join(map(str, elements)))),
                detail=f"composition of a left and a right ideal fails {part} at {elements}",
            )
    return None


def _check_star_projection(stmt: Statement, ctx: _Context, counter: _Counter, stats: _Stats) -> Optional[Counterexample]:
    rows, g, d, top = ctx.data.rows, ctx.gamma, ctx.delta, ctx.top
    n = ctx.data.table.order
    pool = ctx.survivors(IdealKind.LA_SUBSEMIGROUP)
    stats.space += len(pool)
    if ctx.pool_sampled:
        stats.sampled_any = True
    for vals in pool:
        counter.spend(1, stmt.id)
        stats.samples += 1
        clamped = tuple(min(max(v, g), d) for v in vals)
        for a in range(n):
            for b in range(n):
                lhs = clamped[rows[a][b]]
                rhs = min(clamped[a], clamped[b])
                if lhs < rhs:
                    return Counterexample(
                        statement_id=stmt.id,
                        variant=None,
                        table=ctx.data.table,
                        thresholds=ctx.th,
                        fuzzy=(("mu", ctx.to_subset(vals)), ("mu_star", ctx.to_subset(clamped))),
                        element=rows[a][b],
                        lhs=ctx.grade(lhs),
                        rhs=ctx.grade(rhs),
                        relation="ge",
                        extra=(("elements", f"{a},{b}"),),
                        detail=f"mu passes the threshold subsemigroup check but mu* fails at ({a},{b})",
                    )
    return None


def _check_char_identities(stmt: Statement, ctx: _Context, counter: _Counter, stats: _Stats) -> Optional[Counterexample]:
    table = ctx.data.table
    rows, g, d, top = ctx.data.rows, ctx.gamma, ctx.delta, ctx.top
    n = table.order

    def chi(a: CrispSubset) -> tuple[int, ...]:
        return tuple(top if x in a else 0 for x in range(n))

    def cl(vals):
        return tuple(min(max(v, g), d) for v in vals)

    subsets = list(all_subsets(n, nonempty=False))
    for left in subsets:
        for right in subsets:
            counter.spend(1, stmt.id)
            stats.samples += 1
            cl_l, cl_r = chi(left), chi(right)
            checks = (
                ("meet", cl(tuple(min(a, b) for a, b in zip(cl_l, cl_r))), left.intersection(right)),
                ("join", cl(tuple(max(a, b) for a, b in zip(cl_l, cl_r))), left.union(right)),
                ("prod", cl(compose_values(rows, cl_l, cl_r)), subset_product(table, left, right)),
            )
            for name, lhs_vals, crisp_result in checks:
                rhs_vals = cl(chi(crisp_result))
                bad = relation_holds("eq", lhs_vals, rhs_vals)
                if bad is not None:
                    return Counterexample(
                        statement_id=stmt.id,
                        variant=name,
                        table=table,
                        thresholds=ctx.th,
                        crisp=(("L", left.indices()), ("R", right.indices()), ("result", crisp_result.indices())),
                        element=bad,
                        lhs=ctx.grade(lhs_vals[bad]),
                        rhs=ctx.grade(rhs_vals[bad]),
                        relation="eq",
                        extra=(("identity", name),),
                        detail=f"characteristic identity {name} fails at element index {bad}",
                    )
    return None


def _check_char_correspondence(stmt: Statement, ctx: _Context, counter: _Counter, stats: _Stats) -> Optional[Counterexample]:
    rows, g, d, top = ctx.data.rows, ctx.gamma, ctx.delta, ctx.top
    kind = stmt.corr_kind
    attr = {
        IdealKind.LEFT_IDEAL: "left_ideal",
        IdealKind.RIGHT_IDEAL: "right_ideal",
        IdealKind.QUASI_IDEAL: "quasi_ideal",
    }[kind]
    for a, rep in ctx.data.crisp_reports():
        counter.spend(1, stmt.id)
        stats.samples += 1
        crisp_holds = getattr(rep, attr)
        fuzzy_holds = passes_inequality(kind, rows, ctx.chi_star(a), g, d, top)
        if crisp_holds != fuzzy_holds:
            return Counterexample(
                statement_id=stmt.id,
                variant=None,
                table=ctx.data.table,
                thresholds=ctx.th,
                crisp=(("A", a.indices()),),
                relation="eq",
                extra=(("kind", kind.value), ("crisp_holds", str(crisp_holds)), ("fuzzy_holds", str(fuzzy_holds))),
                detail=f"crisp and clamped-characteristic {kind.value} classifications disagree on {a.indices()}",
            )
    return None


def _check_crisp(stmt: Statement, data: _StructureData, counter: _Counter, stats: _Stats) -> Optional[Counterexample]:
    holds = prop_holds(stmt.prop, data.table)
    for variant in stmt.variants:
        counter.spend(1, f"{stmt.id}/{variant.label}")
        stats.samples += 1
        witness = crisp_condition(variant.shape, data.table)
        if holds and witness is not None:
            crisp = tuple(
                (name, value.indices()) for name, value in witness.items()
            )
            return Counterexample(
                statement_id=stmt.id,
                variant=variant.label,
                table=data.table,
                thresholds=None,
                crisp=crisp,
                relation="crisp",
                extra=(("condition", variant.shape), ("direction", "forward")),
                detail=f"property {stmt.prop} holds but clause {variant.display} fails",
            )
        if not holds and witness is None:
            return Counterexample(
                statement_id=stmt.id,
                variant=variant.label,
                table=data.table,
                thresholds=None,
                relation="crisp",
                extra=(("condition", variant.shape), ("direction", "converse")),
                detail=f"clause {variant.display} holds on a structure violating {stmt.prop}",
            )
    return None


def _check_structure(stmt: Statement, table: CayleyTable, scope: Scope,
                     counter: _Counter, stats: _Stats) -> Optional[Counterexample]:
    data = _StructureData(table)
    stats.structures += 1
    if stmt.form == "crisp":
        return _check_crisp(stmt, data, counter, stats)
    forward = stmt.prop is None or prop_holds(stmt.prop, table)
    for th in scope.thresholds:
        ctx = _Context(data, th, scope)
        if stmt.form == "identity":
            found = (_identity_forward if forward else _identity_converse)(stmt, ctx, counter, stats)
        elif stmt.form == "implication":
            found = _check_implication(stmt, ctx, counter, stats)
        elif stmt.form == "product":
            found = _check_product(stmt, ctx, counter, stats)
        elif stmt.form == "star_projection":
            found = _check_star_projection(stmt, ctx, counter, stats)
        elif stmt.form == "char_identities":
            found = _check_char_identities(stmt, ctx, counter, stats)
        elif stmt.form == "char_correspondence":
            found = _check_char_correspondence(stmt, ctx, counter, stats)
        else:
            raise ValueError(f"unknown statement form {stmt.form!r}")
        if found is not None:
            return found
    return None


def _scope_digest(stmt: Statement, scope: Scope) -> str:
    parts = [
        stmt.id,
        "explicit" if scope.structures is not None else f"orders={scope.orders}",
        f"enforce={sorted(scope.enforce | stmt.requires)}",
        f"th={[(str(t.gamma), str(t.delta)) for t in scope.thresholds]}",
        f"d={scope.denominator}", f"mode={scope.mode}", f"count={scope.random_count}",
        f"cap={scope.sample_cap}", f"seed={scope.seed}",
    ]
    if scope.structures is not None:
        parts.append(str([t.rows for t in scope.structures]))
    if scope.subsets is not None:
        parts.append(str([tuple(str(g) for g in s.grades) for s in scope.subsets]))
    return hashlib.sha256("|".join(parts).encode()).hexdigest()[:12]


def verify(stmt_or_id, scope: Optional[Scope] = None, budget: Optional[int] = None) -> TheoremVerdict:
    """Check one catalog statement over a scope; never returns a partial verdict.

    Exceeding the budget raises BudgetExceeded instead of guessing.
    """
    stmt = get_statement(stmt_or_id) if isinstance(stmt_or_id, str) else stmt_or_id
    if scope is None:
        scope = default_scope(stmt)
    counter = _Counter(budget)
    stats = _Stats()
    start = time.perf_counter()
    bundle = None
    for table in _candidate_structures(stmt, scope):
        bundle = _check_structure(stmt, table, scope, counter, stats)
        if bundle is not None:
            break
    elapsed = time.perf_counter() - start
    if bundle is not None:
        status = STATUS_REFUTED
    elif stats.sampled_any:
        status = STATUS_CONFIRMED_SAMPLED
    else:
        status = STATUS_CONFIRMED_EXHAUSTIVE
    coverage = (
        ("scope_digest", _scope_digest(stmt, scope)),
        ("thresholds", 0 if stmt.form == "crisp" else len(scope.thresholds)),
        ("crisp", "exhaustive"),
        ("fuzzy_checked", stats.samples),
        ("fuzzy_space", stats.space),
        ("fuzzy", "sampled" if stats.sampled_any else "exhaustive"),
    )
    return TheoremVerdict(
        id=stmt.id,
        status=status,
        structures=stats.structures,
        samples=stats.samples,
        coverage=coverage,
        counterexample=bundle,
        scope_digest=_scope_digest(stmt, scope),
        wall_time=elapsed,
    )


def search_counterexample(stmt_or_id, max_order: int = 3, budget: Optional[int] = None,
                          scope: Optional[Scope] = None) -> Optional[Counterexample]:
    """First refutation bundle in canonical order, or None when the scope is clean.

    Budget exhaustion raises BudgetExceeded; it is never conflated with a clean
    sweep.
    """
    stmt = get_statement(stmt_or_id) if isinstance(stmt_or_id, str) else stmt_or_id
    if scope is None:
        scope = default_scope(stmt, max_order=max_order)
    elif scope.structures is None:
        scope = dc_replace(scope, orders=tuple(range(1, max_order + 1)))
    counter = _Counter(budget)
    stats = _Stats()
    for table in _candidate_structures(stmt, scope):
        bundle = _check_structure(stmt, table, scope, counter, stats)
        if bundle is not None:
            return bundle
    return None


def recheck_counterexample(bundle: Counterexample, stmt: Optional[Statement] = None) -> bool:
    """Re-evaluate a bundle through the public exact operations."""
    if stmt is None:
        stmt = CATALOG.get(bundle.statement_id)
        if stmt is None:
            raise KeyError(f"statement {bundle.statement_id!r} not in catalog; pass it explicitly")
    table, th = bundle.table, bundle.thresholds
    if stmt.form == "identity":
        variant = next(v for v in stmt.variants if v.label == bundle.variant)
        if bundle.extra_named("direction") == "converse":
            if prop_holds(stmt.prop, table):
                return False
            shape = SHAPES[variant.shape]
            wlists = []
            data = _StructureData(table)
            for kind in variant.kinds:
                ws = [FuzzySubset(table.order, tuple(th.delta if x in a else th.gamma for x in range(table.order)))
                      for a in data.crisp_of_kind(kind)]
                ws.append(FuzzySubset.constant(table.order, 1))
                wlists.append(ws)
            for mus in itertools.product(*wlists):
                vals = [m.grades for m in mus]
                lhs, rhs = shape(table.rows, th.gamma, th.delta, vals, ONE)
                if relation_holds(variant.relation, lhs, rhs) is not None:
                    return False
            return True
        mus = [value.grades for _, value in bundle.fuzzy]
        lhs, rhs = SHAPES[variant.shape](table.rows, th.gamma, th.delta, mus, ONE)
        bad = relation_holds(variant.relation, lhs, rhs)
        return (
            bad is not None
            and lhs[bundle.element] == bundle.lhs
            and rhs[bundle.element] == bundle.rhs
            and relation_holds(variant.relation, (lhs[bundle.element],), (rhs[bundle.element],)) == 0
        )
    if stmt.form == "crisp":
        holds = prop_holds(stmt.prop, table)
        variant = next(v for v in stmt.variants if v.label == bundle.variant)
        witness = crisp_condition(variant.shape, table)
        if bundle.extra_named("direction") == "forward":
            return holds and witness is not None
        return not holds and witness is None
    if stmt.form == "implication":
        mu = bundle.fuzzy_named("mu")
        premise_ok = check_inequality_form(stmt.premise_kind, table, mu, th, count=False).holds
        conclusion = IdealKind(bundle.extra_named("conclusion"))
        fails = not check_inequality_form(conclusion, table, mu, th, count=False).holds
        return premise_ok and fails
    if stmt.form == "product":
        mu, nu = bundle.fuzzy_named("mu"), bundle.fuzzy_named("nu")
        left_ok = check_inequality_form(IdealKind.LEFT_IDEAL, table, mu, th, count=False).holds
        right_ok = check_inequality_form(IdealKind.RIGHT_IDEAL, table, nu, th, count=False).holds
        pi = compose(table, mu, nu)
        fails = not check_inequality_form(IdealKind.TWO_SIDED_IDEAL, table, pi, th, count=False).holds
        return left_ok and right_ok and fails
    if stmt.form == "star_projection":
        mu = bundle.fuzzy_named("mu")
        if not check_inequality_form(IdealKind.LA_SUBSEMIGROUP, table, mu, th, count=False).holds:
            return False
        clamped = star(mu, th)
        a, b = (int(v) for v in bundle.extra_named("elements").split(","))
        return clamped[table.rows[a][b]] < min(clamped[a], clamped[b])
    if stmt.form == "char_identities":
        crisp = dict(bundle.crisp)
        left = CrispSubset.from_indices(table.order, crisp["L"])
        right = CrispSubset.from_indices(table.order, crisp["R"])
        chi_l = FuzzySubset.characteristic(left)
        chi_r = FuzzySubset.characteristic(right)
        ident = bundle.extra_named("identity")
        if ident == "meet":
            lhs = star(meet(chi_l, chi_r), th)
            result = left.intersection(right)
        elif ident == "join":
            lhs = star(join(chi_l, chi_r), th)
            result = left.union(right)
        else:
            lhs = star(compose(table, chi_l, chi_r), th)
            result = subset_product(table, left, right)
        rhs = star(FuzzySubset.characteristic(result), th)
        return lhs.grades[bundle.element] != rhs.grades[bundle.element]
    if stmt.form == "char_correspondence":
        crisp = dict(bundle.crisp)
        a = CrispSubset.from_indices(table.order, crisp["A"])
        rep = classify_crisp(table, a)
        attr = {
            IdealKind.LEFT_IDEAL: "left_ideal",
            IdealKind.RIGHT_IDEAL: "right_ideal",
            IdealKind.QUASI_IDEAL: "quasi_ideal",
        }[stmt.corr_kind]
        chi = star(FuzzySubset.characteristic(a), th)
        fuzzy_holds = check_inequality_form(stmt.corr_kind, table, chi, th, count=False).holds
        return getattr(rep, attr) != fuzzy_holds
    raise ValueError(f"unknown statement form {stmt.form!r}")


def counterexample_to_dict(bundle: Counterexample) -> dict:
    return {
        "statement": bundle.statement_id,
        "variant": bundle.variant,
        "table": table_to_dict(bundle.table),
        "thresholds": None if bundle.thresholds is None else {
            "gamma": str(bundle.thresholds.gamma), "delta": str(bundle.thresholds.delta),
        },
        "fuzzy": {name: fuzzy_to_dict(value) for name, value in bundle.fuzzy},
        "crisp": {name: list(value) for name, value in bundle.crisp},
        "element": bundle.element,
        "lhs": None if bundle.lhs is None else str(bundle.lhs),
        "rhs": None if bundle.rhs is None else str(bundle.rhs),
        "relation": bundle.relation,
        "extra": dict(bundle.extra),
        "detail": bundle.detail,
    }


def counterexample_from_dict(obj: dict) -> Counterexample:
    th = obj.get("thresholds")
    return Counterexample(
        statement_id=obj["statement"],
        variant=obj.get("variant"),
        table=table_from_dict(obj["table"]),
        thresholds=None if th is None else Thresholds(Fraction(th["gamma"]), Fraction(th["delta"])),
        fuzzy=tuple((name, fuzzy_from_dict(value)) for name, value in obj.get("fuzzy", {}).items()),
        crisp=tuple((name, tuple(value)) for name, value in obj.get("crisp", {}).items()),
        element=obj.get("element"),
        lhs=None if obj.get("lhs") is None else Fraction(obj["lhs"]),
        rhs=None if obj.get("rhs") is None else Fraction(obj["rhs"]),
        relation=obj.get("relation"),
        extra=tuple((k, v) for k, v in obj.get("extra", {}).items()),
        detail=obj.get("detail", ""),
    )


def verdict_to_dict(verdict: TheoremVerdict) -> dict:
    return {
        "id": verdict.id,
        "status": verdict.status,
        "structures": verdict.structures,
        "samples": verdict.samples,
        "coverage": verdict.coverage_dict(),
        "counterexample": None if verdict.counterexample is None else counterexample_to_dict(verdict.counterexample),
    }


def verdict_from_dict(obj: dict) -> TheoremVerdict:
    ce = obj.get("counterexample")
    coverage = tuple(obj.get("coverage", {}).items())
    return TheoremVerdict(
        id=obj["id"],
        status=obj["status"],
        structures=obj["structures"],
        samples=obj["samples"],
        coverage=coverage,
        counterexample=None if ce is None else counterexample_from_dict(ce),
        scope_digest=dict(coverage).get("scope_digest", ""),
    )


def verdict_to_json(verdict: TheoremVerdict) -> str:
    return json.dumps(verdict_to_dict(verdict), separators=(", ", ": "))


# The bundled worked example: an order-4 structure with two fuzzy two-sided
# ideals whose composition exceeds their meet.

EXAMPLE_ROWS = ((3, 3, 3, 3), (2, 0, 2, 0), (3, 0, 3, 3), (3, 3, 3, 3))
EXAMPLE_NAMES = ("1", "2", "3", "4")


def example_table() -> CayleyTable:
    return CayleyTable(4, EXAMPLE_ROWS, EXAMPLE_NAMES)


def example_mu() -> FuzzySubset:
    return FuzzySubset(4, tuple(Fraction(k, 10) for k in (3, 2, 6, 3)))


def example_nu() -> FuzzySubset:
    return FuzzySubset(4, tuple(Fraction(k, 10) for k in (4, 3, 4, 5)))


@dataclass(frozen=True)
class GoldenCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class WorkedExample:
    table: CayleyTable
    mu: FuzzySubset
    nu: FuzzySubset

    def checks(self) -> tuple[GoldenCheck, ...]:
        table, mu, nu = self.table, self.mu, self.nu
        out: list[GoldenCheck] = []

        def add(name: str, passed: bool, detail: str) -> None:
            out.append(GoldenCheck(name, bool(passed), detail))

        law = check_laws(table)
        add("left invertive law", law.left_invertive, "checked over all 64 triples")
        prod = compose(table, mu, nu)
        m = meet(mu, nu)
        add("(mu o nu)(4) = 1/2", prod[3] == Fraction(1, 2), f"(mu o nu)(4) = {prod[3]}")
        add("(mu ^ nu)(4) = 3/10", m[3] == Fraction(3, 10), f"(mu ^ nu)(4) = {m[3]}")
        add("mu o nu is not <= mu ^ nu", not leq(prod, m), "composition exceeds the meet at element 4")

        full = (1 << 4) - 1
        mu_bands = (
            ("1/10", full), ("1/5", full),
            ("1/4", 0b1101), ("3/10", 0b1101),
            ("1/2", 0b0100), ("3/5", 0b0100),
            ("7/10", 0),
        )
        ok = all(level_set(mu, Fraction(t)).mask == mask for t, mask in mu_bands)
        add("level bands of mu", ok, "S, {1,3,4}, {3}, empty at the listed cut points")
        nu_bands = (
            ("1/10", full), ("3/10", full),
            ("7/20", 0b1101), ("2/5", 0b1101),
            ("9/20", 0b1000), ("1/2", 0b1000),
            ("11/20", 0), ("7/10", 0),
        )
        ok = all(level_set(nu, Fraction(t)).mask == mask for t, mask in nu_bands)
        add("level bands of nu", ok, "S, {1,3,4}, {4}, empty at the listed cut points")

        th = Thresholds(Fraction(0), Fraction(3, 10))
        for name, subset in (("mu", mu), ("nu", nu)):
            left = check_inequality_form(IdealKind.LEFT_IDEAL, table, subset, th, count=False).holds
            right = check_inequality_form(IdealKind.RIGHT_IDEAL, table, subset, th, count=False).holds
            add(f"{name} is a two-sided ideal at gamma=0, delta=3/10", left and right,
                f"left={left}, right={right}")
        return tuple(out)


def worked_example() -> WorkedExample:
    return WorkedExample(example_table(), example_mu(), example_nu())
