import itertools
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from agfuzzy.classifiers import (
    ALL_KINDS,
    IdealKind,
    check_inequality_form,
    check_point_form,
    classify_fuzzy,
    is_classical_bi_ideal,
    is_classical_generalized_bi_ideal,
    is_classical_la_subsemigroup,
    is_classical_left_ideal,
    is_classical_right_ideal,
    recheck_inequality_violation,
    recheck_point_violation,
    verdict_from_json,
    verdict_to_json,
)
from agfuzzy.fuzzy import FuzzySubset, Thresholds, compose, point_relation
from agfuzzy.magma import CayleyTable, CrispSubset

from conftest import iso_tables_up_to

F = Fraction
K = IdealKind


def grid_subsets(order, denominator):
    for nums in itertools.product(range(denominator + 1), repeat=order):
        yield FuzzySubset(order, tuple(F(k, denominator) for k in nums))


def point_form_grid_oracle(kind, table, mu, th, denominator=100):
    """Check the fuzzy-point implications on the t, r grid {1/d, ..., 1} directly.

    Independent of the interval analysis: instantiates every element tuple and
    every grid threshold pair and evaluates the implication via point_relation.
    """
    n = table.order
    cuts = [F(k, denominator) for k in range(1, denominator + 1)]

    def conclusion(w, s):
        return mu[w] >= s or mu[w] + s > 2 * th.delta

    def implication_two(points_of, product_of):
        for a in range(n):
            for b in range(n):
                w = product_of(a, b)
                for t in cuts:
                    if not point_relation(mu, points_of(a, b)[0], t, th).in_gamma:
                        continue
                    for r in cuts:
                        if not point_relation(mu, points_of(a, b)[1], r, th).in_gamma:
                            continue
                        if not conclusion(w, min(t, r)):
                            return False
        return True

    if kind is K.LA_SUBSEMIGROUP:
        return implication_two(lambda a, b: (a, b), table.mul)
    if kind is K.LEFT_IDEAL:
        for a in range(n):
            for b in range(n):
                for t in cuts:
                    if point_relation(mu, b, t, th).in_gamma and not conclusion(table.mul(a, b), t):
                        return False
        return True
    raise NotImplementedError(kind)


class TestInequalityForm:
    def test_example_mu_is_two_sided_at_low_delta(self, example_table, mu):
        th = Thresholds(F(0), F(3, 10))
        assert check_inequality_form(K.LEFT_IDEAL, example_table, mu, th).holds
        assert check_inequality_form(K.RIGHT_IDEAL, example_table, mu, th).holds
        # oracle: every product lands in {1,3,4} where mu >= 3/10 = delta
        for a in range(4):
            for b in range(4):
                assert mu[example_table.mul(a, b)] >= F(3, 10)

    def test_constant_subsets_pass_every_kind(self, example_table, z3_table):
        for c in ("0", "1/3", "1"):
            for table in (example_table, z3_table):
                f = FuzzySubset.constant(table.order, c)
                for th in (Thresholds(F(0), F(1)), Thresholds(F(1, 4), F(1, 2))):
                    report = classify_fuzzy(table, f, th)
                    assert all(v.holds for v in report.verdicts), (c, th)

    def test_classical_corner_matches_unclamped_definition(self, example_table, mu):
        th = Thresholds(F(0), F(1))
        verdict = check_inequality_form(K.LEFT_IDEAL, example_table, mu, th)
        assert not verdict.holds
        # lexicographically first violation: mu(1*3) = 3/10 < 3/5 = mu(3)
        assert verdict.violation.elements == (0, 2)
        assert verdict.violation.lhs == F(3, 10)
        assert verdict.violation.rhs == F(3, 5)
        # the violation named in prose, 3*3 = 4 with mu(4) < mu(3), is counted too
        assert verdict.violation_count >= 2
        assert example_table.mul(2, 2) == 3 and mu[3] < mu[2]

    def test_characteristic_singleton_violation(self, example_table):
        chi = FuzzySubset.characteristic(CrispSubset.from_indices(4, [3]))
        verdict = check_inequality_form(K.LEFT_IDEAL, example_table, chi, Thresholds(F(0), F(1, 2)))
        assert not verdict.holds
        assert verdict.violation.elements == (1, 3)
        assert verdict.violation.lhs == F(0) and verdict.violation.rhs == F(1, 2)

    def test_count_is_total_number_of_failures(self, example_table, mu):
        th = Thresholds(F(0), F(1))
        verdict = check_inequality_form(K.LEFT_IDEAL, example_table, mu, th)
        brute = sum(
            1
            for a in range(4) for b in range(4)
            if mu[example_table.mul(a, b)] < mu[b]
        )
        assert verdict.violation_count == brute

    def test_violations_recheck(self, example_table, mu):
        th = Thresholds(F(0), F(1))
        v = check_inequality_form(K.LEFT_IDEAL, example_table, mu, th).violation
        assert recheck_inequality_violation(v.part, example_table, mu, th, v.elements)


class TestPointForm:
    def test_agrees_with_inequality_exhaustively_small(self):
        th_pairs = [Thresholds(F(g, 2), F(d, 2)) for g in range(3) for d in range(g + 1, 3)]
        for table in iso_tables_up_to(2):
            for mu in grid_subsets(table.order, 2):
                for th in th_pairs:
                    for kind in ALL_KINDS:
                        a = check_inequality_form(kind, table, mu, th, count=False).holds
                        b = check_point_form(kind, table, mu, th, count=False).holds
                        assert a == b, (table.rows, mu.grades, th, kind)

    @given(
        st.integers(0, 3 ** 9 - 1),
        st.tuples(*([st.integers(0, 6)] * 3)),
        st.integers(0, 5),
        st.integers(1, 6),
        st.sampled_from(ALL_KINDS),
    )
    @settings(max_examples=300)
    def test_agreement_on_arbitrary_magmas(self, code, nums, g, step, kind):
        # the equivalence is a lattice fact: it holds for any magma, law or not
        digits = []
        for _ in range(9):
            code, r = divmod(code, 3)
            digits.append(r)
        rows = tuple(tuple(digits[3 * a + b] for b in range(3)) for a in range(3))
        table = CayleyTable(3, rows)
        mu = FuzzySubset(3, tuple(F(k, 6) for k in nums))
        th = Thresholds(F(g, 6), F(min(g + step, 6), 6))
        a = check_inequality_form(kind, table, mu, th, count=False).holds
        b = check_point_form(kind, table, mu, th, count=False).holds
        assert a == b

    def test_grid_oracle_on_characteristic_subset(self, example_table):
        chi = FuzzySubset.characteristic(CrispSubset.from_indices(4, [0, 2, 3]))
        th = Thresholds(F(0), F(1, 2))
        assert point_form_grid_oracle(K.LEFT_IDEAL, example_table, chi, th)
        assert check_point_form(K.LEFT_IDEAL, example_table, chi, th).holds

    def test_grid_oracle_catches_failures_too(self, example_table, mu):
        th = Thresholds(F(0), F(1))
        assert not point_form_grid_oracle(K.LEFT_IDEAL, example_table, mu, th)
        assert not check_point_form(K.LEFT_IDEAL, example_table, mu, th).holds

    def test_witness_threshold_reevaluates(self, example_table, mu):
        th = Thresholds(F(0), F(1))
        v = check_point_form(K.LEFT_IDEAL, example_table, mu, th).violation
        assert v.witness_threshold is not None
        assert recheck_point_violation(v.part, example_table, mu, th, v.elements, v.witness_threshold)

    def test_all_grades_at_or_below_gamma_is_vacuous(self, example_table):
        th = Thresholds(F(1, 2), F(3, 4))
        f = FuzzySubset.constant(4, F(1, 2))
        for kind in ALL_KINDS:
            assert check_point_form(kind, example_table, f, th).holds


class TestClassifyFuzzy:
    def test_constant_one_all_kinds(self, example_table):
        report = classify_fuzzy(example_table, FuzzySubset.constant(4, 1), Thresholds(F(0), F(1)))
        assert all(v.holds for v in report.verdicts)

    def test_example_nu_two_sided_at_two_fifths(self, example_table, nu):
        th = Thresholds(F(0), F(2, 5))
        report = classify_fuzzy(example_table, nu, th)
        assert report.holds(K.LEFT_IDEAL) and report.holds(K.RIGHT_IDEAL)
        assert report.holds(K.TWO_SIDED_IDEAL)
        for a in range(4):
            for b in range(4):
                assert nu[example_table.mul(a, b)] >= F(2, 5)

    def test_composite_kinds_are_conjunctions(self, example_table):
        th = Thresholds(F(0), F(1, 2))
        for mu in grid_subsets(4, 2):
            report = classify_fuzzy(example_table, mu, th, count=False)
            assert report.holds(K.TWO_SIDED_IDEAL) == (
                report.holds(K.LEFT_IDEAL) and report.holds(K.RIGHT_IDEAL)
            )
            assert report.holds(K.BI_IDEAL) == (
                report.holds(K.LA_SUBSEMIGROUP) and report.holds(K.GENERALIZED_BI_IDEAL)
            )


class TestClassicalReduction:
    def test_kinds_match_direct_definitions_on_z3_grid(self, z3_table):
        th = Thresholds(F(0), F(1))
        pairs = (
            (K.LA_SUBSEMIGROUP, is_classical_la_subsemigroup),
            (K.LEFT_IDEAL, is_classical_left_ideal),
            (K.RIGHT_IDEAL, is_classical_right_ideal),
            (K.GENERALIZED_BI_IDEAL, is_classical_generalized_bi_ideal),
            (K.BI_IDEAL, is_classical_bi_ideal),
        )
        for mu in grid_subsets(3, 3):
            for kind, oracle in pairs:
                assert check_inequality_form(kind, z3_table, mu, th, count=False).holds == oracle(z3_table, mu)

    def test_classical_subsemigroup_stays_one_under_any_thresholds(self, example_table):
        # monotone weakening: the classical property implies every clamped one
        for mu in grid_subsets(4, 2):
            if not is_classical_la_subsemigroup(example_table, mu):
                continue
            for th in (Thresholds(F(0), F(1, 4)), Thresholds(F(1, 4), F(3, 4)), Thresholds(F(1, 2), F(1))):
                assert check_inequality_form(K.LA_SUBSEMIGROUP, example_table, mu, th, count=False).holds


class TestQuasi:
    def test_quasi_uses_constant_one_products(self, example_table, mu):
        th = Thresholds(F(0), F(3, 10))
        one = FuzzySubset.constant(4, 1)
        mo1 = compose(example_table, mu, one)
        om1 = compose(example_table, one, mu)
        verdict = check_inequality_form(K.QUASI_IDEAL, example_table, mu, th)
        brute = all(
            max(mu[x], th.gamma) >= min(mo1[x], om1[x], th.delta)
            for x in range(4)
        )
        assert verdict.holds == brute


class TestReportJson:
    def test_round_trip(self, example_table, mu):
        verdict = check_inequality_form(K.LEFT_IDEAL, example_table, mu, Thresholds(F(0), F(1)))
        text = verdict_to_json(verdict)
        again = verdict_from_json(text)
        assert again == verdict
        assert verdict_to_json(again) == text

    def test_schema_fields(self, example_table, mu):
        import json

        verdict = check_inequality_form(K.LEFT_IDEAL, example_table, mu, Thresholds(F(0), F(1)))
        obj = json.loads(verdict_to_json(verdict))
        assert set(obj) == {"kind", "verdict", "violations", "count"}
        assert obj["violations"][0]["lhs"] == "3/10"
