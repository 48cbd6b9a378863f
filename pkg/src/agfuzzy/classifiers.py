"""Threshold fuzzy ideal classifiers: inequality forms and fuzzy-point forms."""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import CarrierMismatch
from .fuzzy import ONE, FuzzySubset, Thresholds, compose_values
from .magma import CayleyTable


class IdealKind(Enum):
    LA_SUBSEMIGROUP = "la-subsemigroup"
    LEFT_IDEAL = "left-ideal"
    RIGHT_IDEAL = "right-ideal"
    TWO_SIDED_IDEAL = "two-sided-ideal"
    GENERALIZED_BI_IDEAL = "generalized-bi-ideal"
    BI_IDEAL = "bi-ideal"
    INTERIOR_IDEAL = "interior-ideal"
    QUASI_IDEAL = "quasi-ideal"


# Elementary conditions making up each kind. "subsemigroup" constrains ab
# against a, b; "left"/"right" constrain ab against b/a; "sandwich" constrains
# (as)b against a, b; "interior" constrains (ac)b against c; "quasi" is the
# functional condition against (mu o 1) and (1 o mu).
KIND_PARTS: dict[IdealKind, tuple[str, ...]] = {
    IdealKind.LA_SUBSEMIGROUP: ("subsemigroup",),
    IdealKind.LEFT_IDEAL: ("left",),
    IdealKind.RIGHT_IDEAL: ("right",),
    IdealKind.TWO_SIDED_IDEAL: ("left", "right"),
    IdealKind.GENERALIZED_BI_IDEAL: ("sandwich",),
    IdealKind.BI_IDEAL: ("subsemigroup", "sandwich"),
    IdealKind.INTERIOR_IDEAL: ("subsemigroup", "interior"),
    IdealKind.QUASI_IDEAL: ("quasi",),
}


def _part_instances(part: str, rows: Sequence[Sequence[int]], vals: Sequence, top) -> Iterator[tuple[tuple[int, ...], object, object]]:
    """Yield (elements, target_grade, bound_grade) for one elementary condition.

    target_grade is the grade at the constrained product; bound_grade is the
    antecedent minimum it is measured against. Lexicographic element order.
    """
    n = len(vals)
    rng = range(n)
    if part == "subsemigroup":
        for a in rng:
            va = vals[a]
            row = rows[a]
            for b in rng:
                yield (a, b), vals[row[b]], min(va, vals[b])
    elif part == "left":
        for a in rng:
            row = rows[a]
            for b in rng:
                yield (a, b), vals[row[b]], vals[b]
    elif part == "right":
        for a in rng:
            va = vals[a]
            row = rows[a]
            for b in rng:
                yield (a, b), vals[row[b]], va
    elif part == "sandwich":
        for a in rng:
            va = vals[a]
            row = rows[a]
            for s in rng:
                sub = rows[row[s]]
                for b in rng:
                    yield (a, s, b), vals[sub[b]], min(va, vals[b])
    elif part == "interior":
        for a in rng:
            row = rows[a]
            for c in rng:
                vc = vals[c]
                sub = rows[row[c]]
                for b in rng:
                    yield (a, c, b), vals[sub[b]], vc
    elif part == "quasi":
        ones = (top,) * n
        mo1 = compose_values(rows, vals, ones)
        om1 = compose_values(rows, ones, vals)
        for x in rng:
            yield (x,), vals[x], min(mo1[x], om1[x])
    else:
        raise ValueError(f"unknown condition part {part!r}")


def iter_inequality_violations(kind: IdealKind, rows, vals, gamma, delta, top) -> Iterator[tuple[str, tuple[int, ...], object, object]]:
    """All failures of max(target, gamma) >= min(bound, delta), lex order per part."""
    for part in KIND_PARTS[kind]:
        for elements, target, bound in _part_instances(part, rows, vals, top):
            lhs = target if target > gamma else gamma
            rhs = bound if bound < delta else delta
            if lhs < rhs:
                yield part, elements, lhs, rhs


def iter_point_failures(kind: IdealKind, rows, vals, gamma, delta, top) -> Iterator[tuple[str, tuple[int, ...], object, object]]:
    """Threshold intervals on which the fuzzy-point implication fails.

    For an instantiation with target grade w and antecedent bound m, the
    implication "points at value t belong => product point at t belongs or is
    quasi-coincident" fails exactly for t in (max(gamma, w), min(m, 2*delta - w)].
    Yields (part, elements, lower, upper) with lower < upper. The quasi-ideal
    condition has no point form and reuses its functional inequality.
    """
    for part in KIND_PARTS[kind]:
        if part == "quasi":
            for elements, target, bound in _part_instances(part, rows, vals, top):
                lhs = target if target > gamma else gamma
                rhs = bound if bound < delta else delta
                if lhs < rhs:
                    yield part, elements, lhs, rhs
            continue
        for elements, w, m in _part_instances(part, rows, vals, top):
            lower = w if w > gamma else gamma
            upper = min(m, 2 * delta - w)
            if lower < upper:
                yield part, elements, lower, upper


def passes_inequality(kind: IdealKind, rows, vals, gamma, delta, top) -> bool:
    return next(iter_inequality_violations(kind, rows, vals, gamma, delta, top), None) is None


@dataclass(frozen=True)
class Violation:
    """One failed condition instance, exact on both sides.

    For the inequality form, lhs/rhs are the two sides of the failed
    inequality. For the point form they are the open/closed ends of the failing
    threshold interval and witness_threshold is its midpoint.
    """

    part: str
    elements: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction
    witness_threshold: Optional[Fraction] = None


@dataclass(frozen=True)
class KindVerdict:
    kind: IdealKind
    holds: bool
    violation: Optional[Violation]
    violation_count: Optional[int]


def _check_args(table: CayleyTable, mu: FuzzySubset) -> None:
    if mu.order != table.order:
        raise CarrierMismatch("fuzzy subset carrier does not match the table")


def check_inequality_form(kind: IdealKind, table: CayleyTable, mu: FuzzySubset,
                          th: Thresholds, count: bool = True) -> KindVerdict:
    """Decide the clamped inequality form of the kind, exhaustively.

    Returns the lexicographically first violation; with count=True also the
    total number of violating instances.
    """
    _check_args(table, mu)
    gen = iter_inequality_violations(kind, table.rows, mu.grades, th.gamma, th.delta, ONE)
    first = next(gen, None)
    if first is None:
        return KindVerdict(kind, True, None, 0 if count else None)
    part, elements, lhs, rhs = first
    total = 1 + sum(1 for _ in gen) if count else None
    return KindVerdict(kind, False, Violation(part, elements, Fraction(lhs), Fraction(rhs)), total)


def check_point_form(kind: IdealKind, table: CayleyTable, mu: FuzzySubset,
                     th: Thresholds, count: bool = True) -> KindVerdict:
    """Decide the universally quantified fuzzy-point form, exactly.

    No grid sampling: for each element instantiation the failing thresholds
    form an interval with rational endpoints, and the statement holds iff every
    such interval is empty.
    """
    _check_args(table, mu)
    gen = iter_point_failures(kind, table.rows, mu.grades, th.gamma, th.delta, ONE)
    first = next(gen, None)
    if first is None:
        return KindVerdict(kind, True, None, 0 if count else None)
    part, elements, lower, upper = first
    witness = None if part == "quasi" else (Fraction(lower) + Fraction(upper)) / 2
    total = 1 + sum(1 for _ in gen) if count else None
    return KindVerdict(kind, False, Violation(part, elements, Fraction(lower), Fraction(upper), witness), total)


def recheck_inequality_violation(part: str, table: CayleyTable, mu: FuzzySubset,
                                 th: Thresholds, elements: tuple[int, ...]) -> bool:
    """Re-evaluate one reported inequality violation from scratch."""
    for els, target, bound in _part_instances(part, table.rows, mu.grades, ONE):
        if els == tuple(elements):
            return max(target, th.gamma) < min(bound, th.delta)
    return False


def recheck_point_violation(part: str, table: CayleyTable, mu: FuzzySubset, th: Thresholds,
                            elements: tuple[int, ...], t: Fraction) -> bool:
    """Check that threshold t really witnesses the fuzzy-point failure."""
    for els, w, m in _part_instances(part, table.rows, mu.grades, ONE):
        if els == tuple(elements):
            antecedent = m >= t > th.gamma
            concluded = (w >= t) or (w + t > 2 * th.delta)
            return antecedent and not concluded
    return False


ALL_KINDS = (
    IdealKind.LA_SUBSEMIGROUP,
    IdealKind.LEFT_IDEAL,
    IdealKind.RIGHT_IDEAL,
    IdealKind.TWO_SIDED_IDEAL,
    IdealKind.GENERALIZED_BI_IDEAL,
    IdealKind.BI_IDEAL,
    IdealKind.INTERIOR_IDEAL,
    IdealKind.QUASI_IDEAL,
)


@dataclass(frozen=True)
class FuzzyClassReport:
    verdicts: tuple[KindVerdict, ...]

    def verdict(self, kind: IdealKind) -> KindVerdict:
        for v in self.verdicts:
            if v.kind is kind:
                return v
        raise KeyError(kind)

    def holds(self, kind: IdealKind) -> bool:
        return self.verdict(kind).holds


def classify_fuzzy(table: CayleyTable, mu: FuzzySubset, th: Thresholds, count: bool = True) -> FuzzyClassReport:
    """Run the inequality form for every kind."""
    return FuzzyClassReport(tuple(check_inequality_form(k, table, mu, th, count=count) for k in ALL_KINDS))


# Classical fuzzy ideal predicates (the gamma=0, delta=1 reading), written as
# direct definition scans so they stay independent of the clamped machinery.

def is_classical_la_subsemigroup(table: CayleyTable, mu: FuzzySubset) -> bool:
    rows, g = table.rows, mu.grades
    return all(g[rows[x][y]] >= min(g[x], g[y]) for x in range(table.order) for y in range(table.order))


def is_classical_left_ideal(table: CayleyTable, mu: FuzzySubset) -> bool:
    rows, g = table.rows, mu.grades
    return all(g[rows[x][y]] >= g[y] for x in range(table.order) for y in range(table.order))


def is_classical_right_ideal(table: CayleyTable, mu: FuzzySubset) -> bool:
    rows, g = table.rows, mu.grades
    return all(g[rows[x][y]] >= g[x] for x in range(table.order) for y in range(table.order))


def is_classical_generalized_bi_ideal(table: CayleyTable, mu: FuzzySubset) -> bool:
    rows, g = table.rows, mu.grades
    n = range(table.order)
    return all(g[rows[rows[x][y]][z]] >= min(g[x], g[z]) for x in n for y in n for z in n)


def is_classical_bi_ideal(table: CayleyTable, mu: FuzzySubset) -> bool:
    return is_classical_la_subsemigroup(table, mu) and is_classical_generalized_bi_ideal(table, mu)


def verdict_to_dict(v: KindVerdict) -> dict:
    violations = []
    if v.violation is not None:
        entry = {
            "part": v.violation.part,
            "elements": list(v.violation.elements),
            "lhs": str(v.violation.lhs),
            "rhs": str(v.violation.rhs),
        }
        if v.violation.witness_threshold is not None:
            entry["witness"] = str(v.violation.witness_threshold)
        violations.append(entry)
    return {
        "kind": v.kind.value,
        "verdict": v.holds,
        "violations": violations,
        "count": v.violation_count,
    }


def verdict_from_dict(obj: dict) -> KindVerdict:
    kind = IdealKind(obj["kind"])
    violations = obj.get("violations") or []
    violation = None
    if violations:
        raw = violations[0]
        witness = raw.get("witness")
        violation = Violation(
            part=raw["part"],
            elements=tuple(raw["elements"]),
            lhs=Fraction(raw["lhs"]),
            rhs=Fraction(raw["rhs"]),
            witness_threshold=None if witness is None else Fraction(witness),
        )
    return KindVerdict(kind, bool(obj["verdict"]), violation, obj.get("count"))


def verdict_to_json(v: KindVerdict) -> str:
    return json.dumps(verdict_to_dict(v), separators=(", ", ": "))


def verdict_from_json(text: str) -> KindVerdict:
    return verdict_from_dict(json.loads(text))
