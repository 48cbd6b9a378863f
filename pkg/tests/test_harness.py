import json
from dataclasses import replace
from fractions import Fraction

import pytest

from agfuzzy.classifiers import IdealKind
from agfuzzy.errors import BudgetExceeded, HypothesisMismatch
from agfuzzy.fuzzy import Thresholds, compose, prod_star, star
from agfuzzy.harness import (
    Scope,
    counterexample_from_dict,
    counterexample_to_dict,
    default_scope,
    recheck_counterexample,
    search_counterexample,
    structure_hypotheses,
    verdict_from_dict,
    verdict_to_dict,
    verdict_to_json,
    verify,
    worked_example,
)
from agfuzzy.statements import CATALOG_IDS, IdentityVariant, Statement, corrupted_for_selftest, get_statement

from conftest import constant_table

F = Fraction


class TestWorkedExample:
    def test_all_golden_checks_pass(self):
        ex = worked_example()
        failures = [c for c in ex.checks() if not c.passed]
        assert failures == []

    def test_displays_match_bundled_names(self):
        ex = worked_example()
        assert ex.table.names == ("1", "2", "3", "4")
        assert ex.mu.grades == tuple(F(k, 10) for k in (3, 2, 6, 3))
        assert ex.nu.grades == tuple(F(k, 10) for k in (4, 3, 4, 5))


class TestVerify:
    def test_star_distribution_on_explicit_spot_set(self, example_table, mu, nu):
        scope = Scope(
            structures=(example_table,),
            thresholds=(Thresholds(F(0), F(3, 5)),),
            subsets=(mu, nu),
        )
        verdict = verify("L-STAR", scope)
        assert verdict.status == "confirmed_exhaustive"
        th = Thresholds(F(0), F(3, 5))
        lhs = prod_star(example_table, mu, nu, th)
        rhs = compose(example_table, star(mu, th), star(nu, th))
        assert lhs[3] == F(1, 2) == rhs[3]

    def test_crisp_theorem_small_orders(self, z3_table):
        stmt = get_statement("CRISP-TH2")
        verdict = verify(stmt, default_scope(stmt, max_order=3))
        assert verdict.status == "confirmed_exhaustive"
        assert verdict.structures == 8
        # on the cyclic group only the full carrier is a quasi-ideal, and it is idempotent
        from agfuzzy.magma import CrispSubset, all_subsets, classify_crisp, subset_product

        quasis = [a for a in all_subsets(3) if classify_crisp(z3_table, a).quasi_ideal]
        assert quasis == [CrispSubset.full(3)]
        assert subset_product(z3_table, quasis[0], quasis[0]) == quasis[0]

    def test_explicit_structure_missing_hypotheses_is_an_error(self, example_table):
        with pytest.raises(HypothesisMismatch):
            verify("FT-PROD", Scope(structures=(example_table,)))

    def test_enforced_hypotheses_are_recorded_not_assumed(self, example_table):
        # the same table is fine for statements with no hard hypotheses
        verdict = verify("L-CHAR", Scope(structures=(example_table,), thresholds=(Thresholds(F(0), F(1, 2)),)))
        assert verdict.status == "confirmed_exhaustive"

    def test_budget_error_instead_of_partial_verdict(self):
        stmt = get_statement("L-CHAR")
        with pytest.raises(BudgetExceeded):
            verify(stmt, default_scope(stmt, max_order=2), budget=3)

    def test_sampled_status_when_joint_space_exceeds_cap(self):
        stmt = get_statement("L-STAR")
        scope = default_scope(stmt, max_order=3, thresholds=(Thresholds(F(0), F(1, 2)),))
        verdict = verify(stmt, scope)
        assert verdict.status == "confirmed_sampled"
        cov = verdict.coverage_dict()
        assert cov["fuzzy_checked"] < cov["fuzzy_space"]


class TestRefutations:
    def test_star_distribution_fails_unrestricted(self):
        bundle = search_counterexample("L-STAR", max_order=2, scope=Scope(enforce=frozenset()))
        assert bundle is not None
        assert bundle.variant == "iii"
        assert bundle.table.rows == ((0, 0), (0, 0))
        assert bundle.thresholds.gamma > 0
        assert recheck_counterexample(bundle)

    def test_star_distribution_clean_on_default_scope(self):
        assert search_counterexample("L-STAR", max_order=3) is None

    def test_refuted_verdict_carries_bundle(self):
        stmt = get_statement("L-STAR")
        verdict = verify(stmt, Scope(orders=(1, 2), enforce=frozenset()))
        assert verdict.status == "refuted"
        assert verdict.counterexample is not None
        assert recheck_counterexample(verdict.counterexample)

    def test_converse_gap_is_refuted_and_rechecks(self):
        # a clause that holds unconditionally can never witness non-regularity,
        # so a biconditional built on it must be refuted in the converse direction
        fake = Statement(
            id="FAKE-CONVERSE",
            title="regular iff clamp distributes over meet",
            form="identity",
            requires=frozenset(),
            default_enforce=frozenset(),
            prop="regular",
            variants=(IdentityVariant("ii", "(ii)", (IdealKind.LEFT_IDEAL, IdealKind.LEFT_IDEAL), "meet_star_dist", "eq"),),
        )
        bundle = search_counterexample(fake, max_order=3)
        assert bundle is not None
        assert bundle.extra_named("direction") == "converse"
        assert recheck_counterexample(bundle, stmt=fake)

    def test_forward_refutation_on_made_up_claim(self, example_table):
        # composition rarely equals the meet; an equality claim refutes quickly
        fake = Statement(
            id="FAKE-FORWARD",
            title="meet equals composition everywhere",
            form="identity",
            requires=frozenset(),
            default_enforce=frozenset(),
            prop=None,
            variants=(IdentityVariant("i", "(i)", (None, None), "meet_vs_prod", "eq"),),
        )
        verdict = verify(fake, Scope(structures=(example_table,), thresholds=(Thresholds(F(0), F(1)),)))
        assert verdict.status == "refuted"
        assert recheck_counterexample(verdict.counterexample, stmt=fake)


class TestMutationSelfTest:
    def test_flipped_inequality_is_caught_deterministically(self):
        mutated = corrupted_for_selftest("T-REG-QLE", "ii")
        first = search_counterexample(mutated, max_order=3)
        second = search_counterexample(mutated, max_order=3)
        assert first is not None
        assert counterexample_to_dict(first) == counterexample_to_dict(second)
        assert recheck_counterexample(first, stmt=mutated)
        assert first.relation == "ge"

    def test_equality_variants_cannot_be_flipped(self):
        with pytest.raises(ValueError):
            corrupted_for_selftest("T-REG-MEET", "ii")

    def test_unknown_variant_rejected(self):
        with pytest.raises(ValueError):
            corrupted_for_selftest("T-REG-QLE", "xxi")


class TestSearch:
    def test_budget_exhaustion_is_distinguished_from_clean(self):
        with pytest.raises(BudgetExceeded):
            search_counterexample("L-CHAR", max_order=3, budget=5)
        assert search_counterexample("L-CHAR", max_order=2) is None

    def test_search_respects_explicit_scope_structures(self, example_table):
        scope = Scope(structures=(constant_table(2),), enforce=frozenset(),
                      thresholds=(Thresholds(F(1, 4), F(1, 2)),))
        bundle = search_counterexample("L-STAR", scope=scope)
        assert bundle is not None and bundle.table.rows == ((0, 0), (0, 0))


class TestSerialization:
    def test_verdict_round_trip(self):
        stmt = get_statement("CRISP-TH1")
        verdict = verify(stmt, default_scope(stmt, max_order=2))
        obj = verdict_to_dict(verdict)
        again = verdict_from_dict(obj)
        assert verdict_to_dict(again) == obj
        parsed = json.loads(verdict_to_json(verdict))
        assert parsed == json.loads(json.dumps(obj))

    def test_counterexample_round_trip(self):
        mutated = corrupted_for_selftest("T-REG-QLE", "ii")
        bundle = search_counterexample(mutated, max_order=3)
        obj = counterexample_to_dict(bundle)
        again = counterexample_from_dict(obj)
        assert counterexample_to_dict(again) == obj
        assert recheck_counterexample(again, stmt=mutated)

    def test_verdict_json_has_wire_fields(self):
        stmt = get_statement("CRISP-TH1")
        verdict = verify(stmt, default_scope(stmt, max_order=2))
        obj = json.loads(verdict_to_json(verdict))
        assert set(obj) == {"id", "status", "structures", "samples", "coverage", "counterexample"}


class TestCatalog:
    def test_every_statement_verifies_at_order_two(self):
        for sid in CATALOG_IDS:
            stmt = get_statement(sid)
            verdict = verify(stmt, default_scope(stmt, max_order=2))
            assert verdict.status.startswith("confirmed"), (sid, verdict.status)

    def test_catalog_covers_all_statement_ids(self):
        expected = {
            "CRISP-TH1", "CRISP-TH12", "CRISP-TH2", "CRISP-TH3",
            "FT-GENBI", "FT-QUASI", "FT-PROD",
            "L-STAR", "L-CHAR", "L-CHARIDEAL-L", "L-CHARIDEAL-R", "L-CHARIDEAL-Q",
            "P-STAR",
            "T-REG-MEET", "T-REG-SANDWICH", "T-REG-TRIPLE", "T-REG-MIDDLE", "T-REG-QLE",
            "T-INTRA", "T-RI-IDEM", "T-RI-BOTH",
        }
        assert set(CATALOG_IDS) == expected

    def test_variant_labels_are_normalized_with_source_display(self):
        both = get_statement("T-RI-BOTH")
        assert [v.label for v in both.variants][-1] == "xiv"
        assert [v.display for v in both.variants][-1] == "(ixv)"
        idem = get_statement("T-RI-IDEM")
        assert [v.display for v in idem.variants].count("(iv)") == 2
        th3 = get_statement("CRISP-TH3")
        assert [v.display for v in th3.variants] == ["(ii)", "(ii)"]
        assert [v.label for v in th3.variants] == ["ii", "iii"]


class TestHypothesesHelper:
    def test_structure_hypotheses_on_known_tables(self, z3_table, example_table):
        assert structure_hypotheses(z3_table) == {
            "left_identity", "regular", "intra_regular", "weakly_regular",
        }
        assert structure_hypotheses(example_table) == frozenset()


class TestVerdictMonotonicity:
    def test_enlarging_the_sample_never_unrefutes(self):
        # order-3 scope forces pair sampling; the violating structure is the
        # canonical-first constant table, where every pair violates clause iii
        small = Scope(orders=(3,), enforce=frozenset(),
                      thresholds=(Thresholds(F(1, 4), F(1, 2)),), sample_cap=100)
        big = replace(small, sample_cap=1000)
        a = verify("L-STAR", small)
        b = verify("L-STAR", big)
        assert a.status == "refuted" and b.status == "refuted"
        assert counterexample_to_dict(a.counterexample) == counterexample_to_dict(b.counterexample)
