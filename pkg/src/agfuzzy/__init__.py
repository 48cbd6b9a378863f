"""Finite LA-semigroups, threshold fuzzy ideals, and an executable statement catalog."""

from .classifiers import (
    ALL_KINDS,
    FuzzyClassReport,
    IdealKind,
    KindVerdict,
    Violation,
    check_inequality_form,
    check_point_form,
    classify_fuzzy,
)
from .enumeration import (
    DEFAULT_SEED,
    EnumSpec,
    SampleSpec,
    SplitMix64,
    canonical_key,
    count_summary,
    enumerate_tables,
    relabel,
    sample_fuzzy,
    thresholds_grid,
)
from .errors import (
    BudgetExceeded,
    CarrierMismatch,
    EmptySubsetError,
    GradeError,
    HypothesisMismatch,
    TableFormatError,
)
from .fuzzy import (
    FuzzySubset,
    Grade,
    RelationFlags,
    Thresholds,
    as_grade,
    compose,
    join,
    join_star,
    leq,
    level_set,
    meet,
    meet_star,
    point_relation,
    prod_star,
    star,
)
from .harness import (
    Counterexample,
    Scope,
    TheoremVerdict,
    default_scope,
    example_table,
    recheck_counterexample,
    search_counterexample,
    verify,
    worked_example,
)
from .magma import (
    CayleyTable,
    CrispClassReport,
    CrispSubset,
    LawReport,
    RegularityReport,
    all_subsets,
    check_laws,
    classify_crisp,
    has_left_identity,
    regularity,
    subset_product,
    table_from_json,
    table_to_json,
)
from .statements import CATALOG, CATALOG_IDS, Statement, corrupted_for_selftest, get_statement

__version__ = "0.1.0"
