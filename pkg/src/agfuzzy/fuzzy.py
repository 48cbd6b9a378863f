"""Exact fuzzy-subset arithmetic: grades are rationals in [0, 1], never floats."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence, Union

from .errors import CarrierMismatch, GradeError
from .magma import CayleyTable, CrispSubset

Grade = Fraction
GradeLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_grade(value: GradeLike) -> Fraction:
    """Coerce to an exact rational in [0, 1]. Floats are rejected outright."""
    if isinstance(value, float):
        raise GradeError(f"floating point grade {value!r} rejected; pass a string or Fraction")
    try:
        f = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise GradeError(f"cannot parse grade from {value!r}: {exc}") from exc
    if not ZERO <= f <= ONE:
        raise GradeError(f"grade {f} outside [0, 1]")
    return f


@dataclass(frozen=True)
class Thresholds:
    """The pair (gamma, delta) with 0 <= gamma < delta <= 1."""

    gamma: Fraction
    delta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "gamma", as_grade(self.gamma))
        object.__setattr__(self, "delta", as_grade(self.delta))
        if not self.gamma < self.delta:
            raise GradeError(f"thresholds require gamma < delta, got {self.gamma} >= {self.delta}")

    def clamp(self, v: Fraction) -> Fraction:
        return min(max(v, self.gamma), self.delta)

    def __str__(self) -> str:
        return f"gamma={self.gamma}, delta={self.delta}"


CLASSICAL = Thresholds(ZERO, ONE)


@dataclass(frozen=True)
class FuzzySubset:
    """A total map from the carrier 0..order-1 into [0, 1]."""

    order: int
    grades: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        grades = tuple(as_grade(g) for g in self.grades)
        object.__setattr__(self, "grades", grades)
        if len(grades) != self.order:
            raise ValueError(f"{len(grades)} grades for a carrier of order {self.order}")

    def __getitem__(self, x: int) -> Fraction:
        return self.grades[x]

    @classmethod
    def constant(cls, order: int, c: GradeLike) -> "FuzzySubset":
        g = as_grade(c)
        return cls(order, (g,) * order)

    @classmethod
    def characteristic(cls, subset: CrispSubset) -> "FuzzySubset":
        return cls(subset.order, tuple(ONE if x in subset else ZERO for x in range(subset.order)))

    def support(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.order) if self.grades[x] > 0)


def _check_carrier(a, b) -> None:
    if a.order != b.order:
        raise CarrierMismatch(f"carriers of order {a.order} and {b.order}")


# Value-level cores. These work over any totally ordered grade domain closed
# under min/max (Fractions here; the verification engine reuses them with
# integer numerators over a fixed denominator).

def meet_values(mu: Sequence, nu: Sequence) -> tuple:
    return tuple(a if a < b else b for a, b in zip(mu, nu))


def join_values(mu: Sequence, nu: Sequence) -> tuple:
    return tuple(a if a > b else b for a, b in zip(mu, nu))


def clamp_values(values: Sequence, gamma, delta) -> tuple:
    return tuple(min(max(v, gamma), delta) for v in values)


def compose_values(rows: Sequence[Sequence[int]], mu: Sequence, nu: Sequence) -> tuple:
    """Sup-min composition over all factorizations; 0 where none exist."""
    res = [0] * len(mu)
    for y, row in enumerate(rows):
        my = mu[y]
        for z, x in enumerate(row):
            v = my if my < nu[z] else nu[z]
            if v > res[x]:
                res[x] = v
    return tuple(res)


def leq_values(mu: Sequence, nu: Sequence) -> bool:
    return all(a <= b for a, b in zip(mu, nu))


def meet(mu: FuzzySubset, nu: FuzzySubset) -> FuzzySubset:
    """Pointwise minimum."""
    _check_carrier(mu, nu)
    return FuzzySubset(mu.order, meet_values(mu.grades, nu.grades))


def join(mu: FuzzySubset, nu: FuzzySubset) -> FuzzySubset:
    """Pointwise maximum."""
    _check_carrier(mu, nu)
    return FuzzySubset(mu.order, join_values(mu.grades, nu.grades))


def leq(mu: FuzzySubset, nu: FuzzySubset) -> bool:
    """Pointwise order: mu(x) <= nu(x) for every x."""
    _check_carrier(mu, nu)
    return leq_values(mu.grades, nu.grades)


def compose(table: CayleyTable, mu: FuzzySubset, nu: FuzzySubset) -> FuzzySubset:
    """(mu o nu)(x) = max over factorizations x = yz of min(mu(y), nu(z)), else 0."""
    if mu.order != table.order or nu.order != table.order:
        raise CarrierMismatch("fuzzy subset carrier does not match the table")
    return FuzzySubset(table.order, compose_values(table.rows, mu.grades, nu.grades))


def star(mu: FuzzySubset, th: Thresholds) -> FuzzySubset:
    """mu*(x) = (mu(x) v gamma) ^ delta."""
    return FuzzySubset(mu.order, clamp_values(mu.grades, th.gamma, th.delta))


def meet_star(mu: FuzzySubset, nu: FuzzySubset, th: Thresholds) -> FuzzySubset:
    return star(meet(mu, nu), th)


def join_star(mu: FuzzySubset, nu: FuzzySubset, th: Thresholds) -> FuzzySubset:
    return star(join(mu, nu), th)


def prod_star(table: CayleyTable, mu: FuzzySubset, nu: FuzzySubset, th: Thresholds) -> FuzzySubset:
    return star(compose(table, mu, nu), th)


def level_set(mu: FuzzySubset, t: GradeLike) -> CrispSubset:
    """U(mu; t) = {x : mu(x) >= t}, defined for t in (0, 1]."""
    t = as_grade(t)
    if t == 0:
        raise GradeError("level sets are defined for t in (0, 1]; t = 0 rejected")
    mask = 0
    for x, g in enumerate(mu.grades):
        if g >= t:
            mask |= 1 << x
    return CrispSubset(mu.order, mask)


@dataclass(frozen=True)
class RelationFlags:
    """Threshold membership of a fuzzy point x_t in mu.

    in_gamma:  mu(x) >= t > gamma
    q_delta:   mu(x) + t > 2*delta
    in_or_q:   the disjunction; the not_* properties are complements.
    """

    in_gamma: bool
    q_delta: bool

    @property
    def in_or_q(self) -> bool:
        return self.in_gamma or self.q_delta

    @property
    def not_in_gamma(self) -> bool:
        return not self.in_gamma

    @property
    def not_q_delta(self) -> bool:
        return not self.q_delta

    @property
    def not_in_or_q(self) -> bool:
        return not self.in_or_q


def point_relation(mu: FuzzySubset, x: int, t: GradeLike, th: Thresholds) -> RelationFlags:
    t = as_grade(t)
    if t == 0:
        raise GradeError("fuzzy points carry a value t in (0, 1]; t = 0 rejected")
    g = mu[x]
    return RelationFlags(in_gamma=(g >= t > th.gamma), q_delta=(g + t > 2 * th.delta))


def fuzzy_to_dict(mu: FuzzySubset) -> dict:
    den = lcm(*(g.denominator for g in mu.grades))
    return {"den": den, "num": [int(g * den) for g in mu.grades]}


def fuzzy_to_json(mu: FuzzySubset) -> str:
    return json.dumps(fuzzy_to_dict(mu), separators=(", ", ": "))


def fuzzy_from_dict(obj: object) -> FuzzySubset:
    """Build a fuzzy subset from {"den": d, "num": [k0, ...]} meaning mu(i) = ki/d."""
    if not isinstance(obj, dict):
        raise GradeError(f"expected a JSON object, got {type(obj).__name__}")
    for key in ("den", "num"):
        if key not in obj:
            raise GradeError(f'missing field "{key}"')
    den = obj["den"]
    if not isinstance(den, int) or isinstance(den, bool) or den < 1:
        raise GradeError(f'field "den" must be a positive integer, got {den!r}')
    num = obj["num"]
    if not isinstance(num, list) or not num:
        raise GradeError('field "num" must be a non-empty list')
    grades = []
    for i, k in enumerate(num):
        if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k <= den:
            raise GradeError(f"num[{i}] = {k!r} is not an integer in 0..{den}")
        grades.append(Fraction(k, den))
    return FuzzySubset(len(grades), tuple(grades))


def fuzzy_from_json(text: str) -> FuzzySubset:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GradeError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return fuzzy_from_dict(obj)
