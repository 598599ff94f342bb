from fractions import Fraction
from itertools import product

from django.test import SimpleTestCase

from cube.dyadic import Dyadic
from cube.exceptions import PreconditionError
from cube.family import dictatorship, family_from_sets, full_family, measure, slice_family, total_influence
from fraclex.bootstrap import bootstrap_pair_report, bootstrap_single_report
from fraclex.bounds import MID_MINUS, ORDER2, OUT_OF_REGIME, SMALL_MINUS, check_order1_bound, check_order2_bound
from fraclex.families import FracLexFamily, associate, frac_influence
from fraclex.sweeps import BASE_CASE, FLAGGED, sweep_order1_grid, sweep_order2_grid
from lex.segments import lex_segment


def grid(log_den):
    return [Dyadic(a, log_den) for a in range((1 << log_den) + 1)]


class FracLexFamilyTests(SimpleTestCase):
    def test_validation(self):
        with self.assertRaises(PreconditionError):
            FracLexFamily(3, [0] * 8)
        with self.assertRaises(PreconditionError):
            FracLexFamily(1, [0, 0, 0])
        with self.assertRaises(PreconditionError):
            FracLexFamily.order1(0, Dyadic(3, 1))

    def test_values(self):
        family = FracLexFamily.order2(Dyadic(1, 3), Dyadic(1, 2), Dyadic(3, 3), 1)
        self.assertEqual(family.value(()), Fraction(1, 8))
        self.assertEqual(family.value({1}), Fraction(1, 4))
        self.assertEqual(family.value({2}), Fraction(3, 8))
        self.assertEqual(family.value({1, 2}), 1)
        self.assertEqual(family.measure, Fraction(7, 16))
        self.assertEqual(family.log_den, 3)

    def test_associated_families(self):
        for m in range(5):
            self.assertEqual(associate(FracLexFamily.order1(0, 1), m), dictatorship(1 + m, 1))
        self.assertEqual(associate(FracLexFamily(2, [1, 1, 1, 1]), 3), full_family(5))
        built = associate(FracLexFamily.order1(Dyadic(1, 2), Dyadic(3, 2)), 2)
        self.assertEqual(built, family_from_sets([{2, 3}, {1, 2, 3}, {1, 2}, {1, 3}], 3))
        self.assertEqual(slice_family(built, {1}, ()), lex_segment(2, 1))
        self.assertEqual(slice_family(built, {1}, {1}), lex_segment(2, 3))

    def test_padding_limits(self):
        with self.assertRaises(PreconditionError):
            associate(FracLexFamily.order1(Dyadic(1, 3), 1), 2)
        with self.assertRaises(PreconditionError):
            associate(FracLexFamily.order1(0, 1), 12)

    def test_influence(self):
        self.assertEqual(frac_influence(FracLexFamily.order1(0, 1)), 1)
        self.assertEqual(frac_influence(FracLexFamily.order1(Dyadic(1, 2), Dyadic(3, 2))), Fraction(3, 2))
        self.assertEqual(frac_influence(FracLexFamily.order1(Dyadic(1, 4), Dyadic(9, 4))), Fraction(11, 8))

    def test_padding_independence(self):
        families = [FracLexFamily.order1(a, b) for a, b in product(grid(2), repeat=2)]
        families += [FracLexFamily(2, values) for values in product(grid(1), repeat=4)]
        for family in families:
            for m in range(family.log_den, 6):
                built = associate(family, m)
                self.assertEqual(measure(built), family.measure)
                self.assertEqual(total_influence(built), frac_influence(family))


class BoundTests(SimpleTestCase):
    def test_equality_case(self):
        report = check_order1_bound(Dyadic(1, 4), Dyadic(9, 4))
        self.assertEqual(report.hypothesis_regime, SMALL_MINUS)
        self.assertEqual((report.j, report.r), (2, Fraction(1, 16)))
        self.assertEqual(report.lhs, Fraction(11, 8))
        self.assertEqual(report.rhs, Fraction(11, 8))
        self.assertEqual(report.slack, 0)
        self.assertTrue(report.base_case)
        self.assertTrue(report.holds)

    def test_empty_lower_slice(self):
        for b in grid(3)[1:]:
            report = check_order1_bound(0, b)
            self.assertEqual(report.hypothesis_regime, SMALL_MINUS)
            self.assertGreaterEqual(report.slack, 0)

    def test_out_of_regime(self):
        report = check_order1_bound(Dyadic(1, 2), Dyadic(1, 2))
        self.assertEqual(report.hypothesis_regime, OUT_OF_REGIME)
        self.assertFalse(report.in_regime)
        self.assertTrue(report.holds)
        self.assertEqual(check_order1_bound(0, 0).hypothesis_regime, OUT_OF_REGIME)
        with self.assertRaises(PreconditionError):
            check_order1_bound(Dyadic(1, 1), Dyadic(1, 2))

    def test_order2_gate(self):
        quarter = Dyadic(1, 2)
        report = check_order2_bound(FracLexFamily(2, [quarter] * 4))
        self.assertEqual(report.hypothesis_regime, OUT_OF_REGIME)
        with self.assertRaises(PreconditionError):
            check_order2_bound(FracLexFamily.order1(0, 1))

    def test_report_dict(self):
        record = check_order1_bound(Dyadic(1, 4), Dyadic(9, 4)).to_dict()
        self.assertEqual(record["hypothesis_regime"], SMALL_MINUS)
        self.assertTrue(record["base_case"])
        self.assertNotIn("flagged", record)


class SweepTests(SimpleTestCase):
    """Grid sweeps against the point-by-point checks."""

    def test_order1_matches_point_checks(self):
        log_den = 3
        report = sweep_order1_grid(log_den)
        points = {SMALL_MINUS: [], MID_MINUS: [], BASE_CASE: [], FLAGGED: []}
        values = grid(log_den)
        for a, b in product(range(len(values)), repeat=2):
            if a > b:
                continue
            check = check_order1_bound(values[a], values[b])
            if not check.in_regime:
                continue
            name = FLAGGED if check.flagged and check.hypothesis_regime == MID_MINUS else check.hypothesis_regime
            points[name].append(check.slack)
            if check.base_case:
                points[BASE_CASE].append(check.slack)
        for name, slacks in points.items():
            summary = report.regimes[name]
            self.assertEqual(summary.points, len(slacks), name)
            if slacks:
                self.assertEqual(summary.min_slack, min(slacks), name)
                self.assertEqual(summary.violations, sum(1 for s in slacks if s < 0), name)

    def test_order1_grid_holds_with_equality(self):
        report = sweep_order1_grid(6)
        self.assertTrue(report.holds)
        self.assertEqual(report.regimes[SMALL_MINUS].min_slack, 0)
        self.assertGreaterEqual(report.regimes[SMALL_MINUS].zero_slack, 1)
        self.assertEqual(report.to_dict()["grid"], "order1")

    def test_order2_matches_point_checks(self):
        log_den = 3
        report = sweep_order2_grid(log_den)
        summary = report.regimes[ORDER2]
        slacks = []
        for values in product(grid(log_den), repeat=4):
            check = check_order2_bound(FracLexFamily.order2(*values))
            if check.in_regime:
                slacks.append(check.slack)
        self.assertEqual(summary.points, len(slacks))
        self.assertTrue(slacks)
        self.assertEqual(summary.min_slack, min(slacks))
        argmin = check_order2_bound(FracLexFamily.order2(*summary.argmin))
        self.assertEqual(argmin.slack, summary.min_slack)

    def test_order2_grid_holds(self):
        self.assertTrue(sweep_order2_grid(4).holds)


class BootstrapReportTests(SimpleTestCase):
    def test_single_lemma_on_a_segment(self):
        report = bootstrap_single_report(lex_segment(4, 5), 1)
        self.assertTrue(report.applies)
        self.assertEqual(report.terms, (0,))
        self.assertTrue(report.holds)

    def test_single_lemma_outside_its_hypothesis(self):
        remark = family_from_sets([{1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}, {3, 4}, {1, 3, 4}, {2, 3, 4}], 4)
        report = bootstrap_single_report(remark, 1)
        self.assertFalse(report.applies)
        self.assertIsNone(report.holds)
        self.assertEqual(report.eps, Fraction(1, 4))

    def test_pair_lemma_needs_a_gap(self):
        self.assertFalse(bootstrap_pair_report(lex_segment(4, 5)).applies)
        with self.assertRaises(PreconditionError):
            bootstrap_pair_report(lex_segment(4, 5), 2, 2)

    def test_report_dict(self):
        record = bootstrap_single_report(lex_segment(4, 5), 1).to_dict()
        self.assertEqual(set(record), {"applies", "eps", "terms", "holds"})
