from fractions import Fraction

import pytest

from agfuzzy.enumeration import EnumSpec, enumerate_tables
from agfuzzy.fuzzy import FuzzySubset
from agfuzzy.magma import CayleyTable

EXAMPLE_ROWS = ((3, 3, 3, 3), (2, 0, 2, 0), (3, 0, 3, 3), (3, 3, 3, 3))

Z3_ROWS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


@pytest.fixture
def example_table():
    return CayleyTable(4, EXAMPLE_ROWS, ("1", "2", "3", "4"))


@pytest.fixture
def mu():
    return FuzzySubset(4, tuple(Fraction(k, 10) for k in (3, 2, 6, 3)))


@pytest.fixture
def nu():
    return FuzzySubset(4, tuple(Fraction(k, 10) for k in (4, 3, 4, 5)))


@pytest.fixture
def z3_table():
    return CayleyTable(3, Z3_ROWS)


def constant_table(order: int) -> CayleyTable:
    return CayleyTable(order, tuple((0,) * order for _ in range(order)))


_ISO_CACHE: dict[int, tuple[CayleyTable, ...]] = {}


def iso_tables(order: int) -> tuple[CayleyTable, ...]:
    """Isomorphism-class representatives of all LA-semigroups of one order."""
    if order not in _ISO_CACHE:
        _ISO_CACHE[order] = tuple(enumerate_tables(EnumSpec(order)))
    return _ISO_CACHE[order]


def iso_tables_up_to(order: int) -> list[CayleyTable]:
    out = []
    for n in range(1, order + 1):
        out.extend(iso_tables(n))
    return out
