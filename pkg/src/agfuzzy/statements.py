"""Executable catalog of the crisp and fuzzy characterization statements."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

from .classifiers import IdealKind
from .fuzzy import clamp_values, compose_values, join_values, meet_values
from .magma import CayleyTable, CrispSubset, all_subsets, classify_crisp, regularity, subset_product

HYPOTHESIS_NAMES = ("weakly_regular", "left_identity", "regular", "intra_regular")

WEAK_E = frozenset({"weakly_regular", "left_identity"})


@dataclass(frozen=True)
class IdentityVariant:
    """One quantified clause of a statement.

    kinds lists the ideal kinds the quantified subsets must pass, in the order
    the shape consumes them; None means an unfiltered fuzzy quantifier.
    display keeps the clause label verbatim even where the source numbering is
    irregular; label is the normalized roman numeral.
    """

    label: str
    display: str
    kinds: tuple[Optional[IdealKind], ...]
    shape: str
    relation: str  # "eq" | "le" | "ge" | "crisp"


@dataclass(frozen=True)
class Statement:
    id: str
    title: str
    form: str  # identity | crisp | implication | product | star_projection | char_identities | char_correspondence
    requires: frozenset[str]
    default_enforce: frozenset[str]
    prop: Optional[str]
    variants: tuple[IdentityVariant, ...] = ()
    premise_kind: Optional[IdealKind] = None
    conclusion_kinds: tuple[IdealKind, ...] = ()
    corr_kind: Optional[IdealKind] = None


# Shapes map (rows, gamma, delta, mus, top) to the (lhs, rhs) value vectors of
# the clause, in whatever exact grade domain the caller works in.

def _cl(vals, g, d):
    return clamp_values(vals, g, d)


def _shape_meet_vs_prod(rows, g, d, mus, top):
    mu, nu = mus
    return _cl(meet_values(mu, nu), g, d), _cl(compose_values(rows, mu, nu), g, d)


def _shape_sandwich3(rows, g, d, mus, top):
    mu, nu, rho = mus
    lhs = _cl(meet_values(_cl(meet_values(mu, nu), g, d), rho), g, d)
    rhs = _cl(compose_values(rows, _cl(compose_values(rows, mu, nu), g, d), rho), g, d)
    return lhs, rhs


def _shape_unit_triple(rows, g, d, mus, top):
    (mu,) = mus
    ones = (top,) * len(mu)
    rhs = _cl(compose_values(rows, _cl(compose_values(rows, mu, ones), g, d), mu), g, d)
    return _cl(mu, g, d), rhs


def _shape_middle(rows, g, d, mus, top):
    mu, nu = mus
    rhs = _cl(compose_values(rows, _cl(compose_values(rows, mu, nu), g, d), mu), g, d)
    return _cl(meet_values(mu, nu), g, d), rhs


def _shape_self_prod(rows, g, d, mus, top):
    (mu,) = mus
    return _cl(compose_values(rows, mu, mu), g, d), _cl(mu, g, d)


def _shape_both_products(rows, g, d, mus, top):
    mu, nu = mus
    rhs = meet_values(_cl(compose_values(rows, mu, nu), g, d), _cl(compose_values(rows, nu, mu), g, d))
    return _cl(meet_values(mu, nu), g, d), rhs


def _shape_meet_star_dist(rows, g, d, mus, top):
    mu, nu = mus
    return _cl(meet_values(mu, nu), g, d), meet_values(_cl(mu, g, d), _cl(nu, g, d))


def _shape_join_star_dist(rows, g, d, mus, top):
    mu, nu = mus
    return _cl(join_values(mu, nu), g, d), join_values(_cl(mu, g, d), _cl(nu, g, d))


def _shape_prod_star_dist(rows, g, d, mus, top):
    mu, nu = mus
    return _cl(compose_values(rows, mu, nu), g, d), compose_values(rows, _cl(mu, g, d), _cl(nu, g, d))


SHAPES: dict[str, Callable] = {
    "meet_vs_prod": _shape_meet_vs_prod,
    "sandwich3": _shape_sandwich3,
    "unit_triple": _shape_unit_triple,
    "middle": _shape_middle,
    "self_prod": _shape_self_prod,
    "both_products": _shape_both_products,
    "meet_star_dist": _shape_meet_star_dist,
    "join_star_dist": _shape_join_star_dist,
    "prod_star_dist": _shape_prod_star_dist,
}


def relation_holds(relation: str, lhs: Sequence, rhs: Sequence) -> Optional[int]:
    """First index where the pointwise relation fails, or None."""
    if relation == "eq":
        for x, (a, b) in enumerate(zip(lhs, rhs)):
            if a != b:
                return x
    elif relation == "le":
        for x, (a, b) in enumerate(zip(lhs, rhs)):
            if a > b:
                return x
    elif relation == "ge":
        for x, (a, b) in enumerate(zip(lhs, rhs)):
            if a < b:
                return x
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return None


# Structural properties usable as the left-hand side of an equivalence.

def prop_holds(name: str, table: CayleyTable) -> bool:
    rep = regularity(table)
    if name == "regular":
        return rep.regular
    if name == "intra_regular":
        return rep.intra_regular
    if name == "regular_and_intra":
        return rep.regular and rep.intra_regular
    raise ValueError(f"unknown property {name!r}")


# Crisp conditions quantified exhaustively over non-empty subsets. Each
# returns None when the condition holds, else a witness dict.

def _crisp_kind_sets(table: CayleyTable, kind: str) -> list[CrispSubset]:
    out = []
    for a in all_subsets(table.order, nonempty=True):
        rep = classify_crisp(table, a)
        if getattr(rep, kind):
            out.append(a)
    return out


def crisp_condition(key: str, table: CayleyTable) -> Optional[dict]:
    full = CrispSubset.full(table.order)
    if key == "prod_eq_meet_LR":
        for left in _crisp_kind_sets(table, "left_ideal"):
            for right in _crisp_kind_sets(table, "right_ideal"):
                prod = subset_product(table, left, right)
                if right.intersection(left) != prod:
                    return {"L": left, "R": right, "lhs": right.intersection(left), "rhs": prod}
        return None
    if key == "meet_sub_prod_LR":
        for left in _crisp_kind_sets(table, "left_ideal"):
            for right in _crisp_kind_sets(table, "right_ideal"):
                prod = subset_product(table, left, right)
                if not left.intersection(right).issubset(prod):
                    return {"L": left, "R": right, "lhs": left.intersection(right), "rhs": prod}
        return None
    if key == "quasi_idempotent":
        for q in _crisp_kind_sets(table, "quasi_ideal"):
            sq = subset_product(table, q, q)
            if sq != q:
                return {"Q": q, "lhs": sq, "rhs": q}
        return None
    if key == "meet_eq_prod_BA":
        for a in _crisp_kind_sets(table, "left_ideal"):
            for b in _crisp_kind_sets(table, "right_ideal"):
                prod = subset_product(table, b, a)
                if a.intersection(b) != prod:
                    return {"A": a, "B": b, "lhs": a.intersection(b), "rhs": prod}
        return None
    if key == "quasi_sandwich":
        for a in _crisp_kind_sets(table, "quasi_ideal"):
            asa = subset_product(table, subset_product(table, a, full), a)
            if asa != a:
                return {"A": a, "lhs": asa, "rhs": a}
        return None
    raise ValueError(f"unknown crisp condition {key!r}")


def _iv(label, display, kinds, shape, relation) -> IdentityVariant:
    return IdentityVariant(label, display, kinds, shape, relation)


K = IdealKind

CATALOG: dict[str, Statement] = {}


def _add(stmt: Statement) -> None:
    CATALOG[stmt.id] = stmt


_add(Statement(
    id="CRISP-TH1", title="regular iff R∩L = LR for all left L, right R",
    form="crisp", requires=WEAK_E, default_enforce=WEAK_E, prop="regular",
    variants=(_iv("ii", "(ii)", (), "prod_eq_meet_LR", "crisp"),),
))
_add(Statement(
    id="CRISP-TH12", title="regular iff L∩R ⊆ LR for all left L, right R",
    form="crisp", requires=WEAK_E, default_enforce=WEAK_E, prop="regular",
    variants=(_iv("ii", "(ii)", (), "meet_sub_prod_LR", "crisp"),),
))
_add(Statement(
    id="CRISP-TH2", title="regular and intra-regular iff every quasi-ideal is idempotent",
    form="crisp", requires=WEAK_E, default_enforce=WEAK_E, prop="regular_and_intra",
    variants=(_iv("ii", "(ii)", (), "quasi_idempotent", "crisp"),),
))
_add(Statement(
    id="CRISP-TH3", title="regular iff A∩B = BA for left A, right B, iff (AS)A = A for quasi A",
    form="crisp", requires=WEAK_E, default_enforce=WEAK_E, prop="regular",
    variants=(
        _iv("ii", "(ii)", (), "meet_eq_prod_BA", "crisp"),
        _iv("iii", "(ii)", (), "quasi_sandwich", "crisp"),
    ),
))
_add(Statement(
    id="FT-GENBI", title="every generalized bi-ideal is a bi-ideal (weakly regular, left identity)",
    form="implication", requires=WEAK_E, default_enforce=WEAK_E, prop=None,
    premise_kind=K.GENERALIZED_BI_IDEAL, conclusion_kinds=(K.BI_IDEAL,),
))
_add(Statement(
    id="FT-QUASI", title="every quasi-ideal is a bi-ideal (weakly regular, left identity)",
    form="implication", requires=WEAK_E, default_enforce=WEAK_E, prop=None,
    premise_kind=K.QUASI_IDEAL, conclusion_kinds=(K.BI_IDEAL,),
))
_add(Statement(
    id="FT-PROD", title="left ideal ∘ right ideal is a two-sided ideal (weakly regular, left identity)",
    form="product", requires=WEAK_E, default_enforce=WEAK_E, prop=None,
))
_add(Statement(
    id="L-STAR", title="clamp distributes over meet, join and composition",
    form="identity", requires=frozenset(), default_enforce=frozenset({"left_identity"}), prop=None,
    variants=(
        _iv("i", "(i)", (None, None), "meet_star_dist", "eq"),
        _iv("ii", "(ii)", (None, None), "join_star_dist", "eq"),
        _iv("iii", "(iii)", (None, None), "prod_star_dist", "eq"),
    ),
))
_add(Statement(
    id="L-CHAR", title="clamped characteristic functions turn ∩, ∪, product into ∧*, ∨*, ∗",
    form="char_identities", requires=frozenset(), default_enforce=frozenset(), prop=None,
))
_add(Statement(
    id="L-CHARIDEAL-L", title="A is a left ideal iff its clamped characteristic function is one",
    form="char_correspondence", requires=frozenset(), default_enforce=frozenset(), prop=None,
    corr_kind=K.LEFT_IDEAL,
))
_add(Statement(
    id="L-CHARIDEAL-R", title="A is a right ideal iff its clamped characteristic function is one",
    form="char_correspondence", requires=frozenset(), default_enforce=frozenset(), prop=None,
    corr_kind=K.RIGHT_IDEAL,
))
_add(Statement(
    id="L-CHARIDEAL-Q", title="A is a quasi-ideal iff its clamped characteristic function is one",
    form="char_correspondence", requires=frozenset(), default_enforce=frozenset(), prop=None,
    corr_kind=K.QUASI_IDEAL,
))
_add(Statement(
    id="P-STAR", title="the clamp of a threshold subsemigroup is a classical fuzzy subsemigroup",
    form="star_projection", requires=frozenset(), default_enforce=frozenset(), prop=None,
))
_add(Statement(
    id="T-REG-MEET", title="regular iff μ∧*ν = μ∗ν for right μ, left ν",
    form="identity", requires=frozenset(), default_enforce=WEAK_E, prop="regular",
    variants=(_iv("ii", "(ii)", (K.RIGHT_IDEAL, K.LEFT_IDEAL), "meet_vs_prod", "eq"),),
))
_add(Statement(
    id="T-REG-SANDWICH", title="regular iff (μ∧*ν)∧*ρ ≤ (μ∗ν)∗ρ for right μ, left ν, ρ of each kind",
    form="identity", requires=WEAK_E, default_enforce=WEAK_E, prop="regular",
    variants=(
        _iv("ii", "(ii)", (K.RIGHT_IDEAL, K.LEFT_IDEAL, K.GENERALIZED_BI_IDEAL), "sandwich3", "le"),
        _iv("iii", "(iii)", (K.RIGHT_IDEAL, K.LEFT_IDEAL, K.BI_IDEAL), "sandwich3", "le"),
        _iv("iv", "(iv)", (K.RIGHT_IDEAL, K.LEFT_IDEAL, K.QUASI_IDEAL), "sandwich3", "le"),
    ),
))
_add(Statement(
    id="T-REG-TRIPLE", title="regular iff μ* = (μ∗1)∗μ for each kind of μ",
    form="identity", requires=WEAK_E, default_enforce=WEAK_E, prop="regular",
    variants=(
        _iv("ii", "(ii)", (K.GENERALIZED_BI_IDEAL,), "unit_triple", "eq"),
        _iv("iii", "(iii)", (K.BI_IDEAL,), "unit_triple", "eq"),
        _iv("iv", "(iv)", (K.QUASI_IDEAL,), "unit_triple", "eq"),
    ),
))
_add(Statement(
    id="T-REG-MIDDLE", title="regular iff μ∧*ν = (μ∗ν)∗μ across six kind combinations",
    form="identity", requires=WEAK_E, default_enforce=WEAK_E, prop="regular",
    variants=(
        _iv("ii", "(ii)", (K.QUASI_IDEAL, K.TWO_SIDED_IDEAL), "middle", "eq"),
        _iv("iii", "(iii)", (K.QUASI_IDEAL, K.INTERIOR_IDEAL), "middle", "eq"),
        _iv("iv", "(iv)", (K.BI_IDEAL, K.TWO_SIDED_IDEAL), "middle", "eq"),
        _iv("v", "(v)", (K.BI_IDEAL, K.INTERIOR_IDEAL), "middle", "eq"),
        _iv("vi", "(vi)", (K.GENERALIZED_BI_IDEAL, K.TWO_SIDED_IDEAL), "middle", "eq"),
        _iv("vii", "(vii)", (K.GENERALIZED_BI_IDEAL, K.INTERIOR_IDEAL), "middle", "eq"),
    ),
))
_add(Statement(
    id="T-REG-QLE", title="regular iff μ∧*ν ≤ μ∗ν for μ of each kind, left ν",
    form="identity", requires=WEAK_E, default_enforce=WEAK_E, prop="regular",
    variants=(
        _iv("ii", "(ii)", (K.QUASI_IDEAL, K.LEFT_IDEAL), "meet_vs_prod", "le"),
        _iv("iii", "(iii)", (K.BI_IDEAL, K.LEFT_IDEAL), "meet_vs_prod", "le"),
        _iv("iv", "(iv)", (K.GENERALIZED_BI_IDEAL, K.LEFT_IDEAL), "meet_vs_prod", "le"),
    ),
))
_add(Statement(
    id="T-INTRA", title="intra-regular iff μ∧*ν ≤ μ∗ν for left μ, right ν",
    form="identity", requires=WEAK_E, default_enforce=WEAK_E, prop="intra_regular",
    variants=(_iv("ii", "(ii)", (K.LEFT_IDEAL, K.RIGHT_IDEAL), "meet_vs_prod", "le"),),
))
_add(Statement(
    id="T-RI-IDEM", title="regular and intra-regular iff μ∗μ = μ* (quasi, bi) and μ∗ν ≥ μ∧*ν (pairs)",
    form="identity", requires=WEAK_E, default_enforce=WEAK_E, prop="regular_and_intra",
    variants=(
        _iv("ii", "(ii)", (K.QUASI_IDEAL,), "self_prod", "eq"),
        _iv("iii", "(iii)", (K.BI_IDEAL,), "self_prod", "eq"),
        _iv("iv", "(iv)", (K.QUASI_IDEAL, K.QUASI_IDEAL), "meet_vs_prod", "le"),
        _iv("v", "(iv)", (K.QUASI_IDEAL, K.BI_IDEAL), "meet_vs_prod", "le"),
        _iv("vi", "(vi)", (K.BI_IDEAL, K.BI_IDEAL), "meet_vs_prod", "le"),
    ),
))
_add(Statement(
    id="T-RI-BOTH", title="regular and intra-regular iff (μ∗ν)∧(ν∗μ) ≥ μ∧*ν across thirteen kind pairs",
    form="identity", requires=WEAK_E, default_enforce=WEAK_E, prop="regular_and_intra",
    variants=(
        _iv("ii", "(ii)", (K.RIGHT_IDEAL, K.LEFT_IDEAL), "both_products", "le"),
        _iv("iii", "(iii)", (K.RIGHT_IDEAL, K.QUASI_IDEAL), "both_products", "le"),
        _iv("iv", "(iv)", (K.RIGHT_IDEAL, K.BI_IDEAL), "both_products", "le"),
        _iv("v", "(v)", (K.RIGHT_IDEAL, K.GENERALIZED_BI_IDEAL), "both_products", "le"),
        _iv("vi", "(vi)", (K.LEFT_IDEAL, K.QUASI_IDEAL), "both_products", "le"),
        _iv("vii", "(vii)", (K.LEFT_IDEAL, K.BI_IDEAL), "both_products", "le"),
        _iv("viii", "(viii)", (K.LEFT_IDEAL, K.GENERALIZED_BI_IDEAL), "both_products", "le"),
        _iv("ix", "(ix)", (K.QUASI_IDEAL, K.QUASI_IDEAL), "both_products", "le"),
        _iv("x", "(x)", (K.QUASI_IDEAL, K.LEFT_IDEAL), "both_products", "le"),
        _iv("xi", "(xi)", (K.QUASI_IDEAL, K.GENERALIZED_BI_IDEAL), "both_products", "le"),
        _iv("xii", "(xii)", (K.BI_IDEAL, K.BI_IDEAL), "both_products", "le"),
        _iv("xiii", "(xiii)", (K.BI_IDEAL, K.GENERALIZED_BI_IDEAL), "both_products", "le"),
        _iv("xiv", "(ixv)", (K.GENERALIZED_BI_IDEAL, K.GENERALIZED_BI_IDEAL), "both_products", "le"),
    ),
))

CATALOG_IDS = tuple(CATALOG)


def get_statement(stmt_id: str) -> Statement:
    try:
        return CATALOG[stmt_id]
    except KeyError:
        known = ", ".join(CATALOG_IDS)
        raise KeyError(f"unknown statement id {stmt_id!r}; known ids: {known}") from None


def corrupted_for_selftest(stmt_id: str, variant_label: str) -> Statement:
    """Mutation fixture: flip one variant's inequality and drop all hypotheses.

    The flipped claim is searched over the unrestricted structure class, where
    the engine must produce a concrete refutation. Equality variants cannot be
    flipped this way.
    """
    stmt = get_statement(stmt_id)
    flipped = {"le": "ge", "ge": "le"}
    target = next((v for v in stmt.variants if v.label == variant_label), None)
    if target is None:
        raise ValueError(f"{stmt_id} has no variant labelled {variant_label!r}")
    if target.relation not in flipped:
        raise ValueError(f"variant {variant_label} of {stmt_id} has relation {target.relation!r}, not flippable")
    return replace(
        stmt,
        id=f"{stmt_id}[flipped-{variant_label}]",
        title=f"mutated self-test copy of {stmt_id} (clause {variant_label} flipped)",
        requires=frozenset(),
        default_enforce=frozenset(),
        prop=None,
        variants=(replace(target, relation=flipped[target.relation]),),
    )
