import io
import math
import operator
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase, TestCase, override_settings

from cube.batch import all_masks
from cube.exceptions import DimensionError, PreconditionError
from cube.family import SetFamily, family_from_sets
from cube.literals import family_from_literal
from fraclex.bootstrap import bootstrap_pair_report, bootstrap_single_report
from fraclex.bounds import SMALL_MINUS, check_order1_bound
from symmetry.canonical import burnside_count

from .config import VerifierConfig
from .dichotomy import GridCell, c2_bounds, exact_argmin, prop41_cases, verify_prop41_dichotomy
from .examples import check_remark_family, check_tightness_family, make_remark_family, make_tightness_family
from .fraclex_suite import EQUALITY_CASE, bootstrap_masks, check_padding, verify_bootstrapping, verify_fraclex
from .isoperimetry import UNKNOWN, stability_table, verify_conjecture, verify_iso_and_uniqueness
from .models import VerificationRun
from .parallel import map_reduce
from .population import (
    class_totals,
    coverage,
    enumerate_families,
    exhaustive_units,
    is_complete,
    orbit_representatives,
    orbit_units,
    population,
    sampled_masks,
)
from .reports import Finding, VerificationReport, dumps, record_report, write_s_table_csv
from .shifting_suite import (
    disjoint_pairs,
    find_pivotal_exchange_instances,
    verify_cascade,
    verify_shifting,
    verify_slice_identity,
)


def remark_family():
    return family_from_sets([{1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}, {3, 4}, {1, 3, 4}, {2, 3, 4}], 4)


def report_lines(report):
    return [dumps(record) for record in report.records()]


class VerifierConfigTests(SimpleTestCase):
    def test_defaults(self):
        config = VerifierConfig.from_settings()
        self.assertEqual(config.seed, 0)
        self.assertEqual(config.conjecture_c, 2)
        self.assertEqual(config.order2_c, Fraction(1, 6))
        self.assertEqual(config.samples_for(5), 2000)

    @override_settings(CUBE_ISO={"SEED": 7, "CONJECTURE_C": "3/2"})
    def test_settings_then_overrides(self):
        config = VerifierConfig.from_settings()
        self.assertEqual((config.seed, config.conjecture_c), (7, Fraction(3, 2)))
        self.assertEqual(config.orbit_max_size, 8)
        self.assertEqual(VerifierConfig.from_settings(seed=3, jobs=None).seed, 3)

    @override_settings(CUBE_ISO={"ORDER2_C": "0"})
    def test_constants_must_be_positive(self):
        with self.assertRaises(PreconditionError):
            VerifierConfig.from_settings()

    def test_unknown_sample_size(self):
        with self.assertRaises(PreconditionError):
            VerifierConfig.from_settings().samples_for(7)

    def test_dict_leaves_out_jobs(self):
        record = VerifierConfig.from_settings(jobs=4).to_dict()
        self.assertNotIn("jobs", record)
        self.assertEqual(record["samples"], {"5": 2000, "6": 10000})


class PopulationTests(SimpleTestCase):
    def test_class_representatives(self):
        self.assertEqual(len(list(enumerate_families(2, 1))), burnside_count(2, 1))
        self.assertEqual(len(list(enumerate_families(3, 4))), 6)
        self.assertEqual(orbit_representatives(5, 2, cap=2).size, burnside_count(5, 2))
        self.assertEqual(orbit_representatives(5, 31, cap=2).size, 1)
        with self.assertRaises(PreconditionError):
            orbit_representatives(5, 20, cap=2)

    def test_weighted_populations_are_complete(self):
        self.assertTrue(is_complete(3, class_totals(exhaustive_units(3, 64))))
        self.assertTrue(is_complete(3, class_totals(orbit_units(3, 8, 16))))
        self.assertFalse(is_complete(3, class_totals(orbit_units(3, 2, 16))))

    def test_coverage_names_the_missing_sizes(self):
        self.assertEqual(coverage(3, exhaustive_units(3, 64)), {"complete": True, "covered_sizes": list(range(9))})
        partial = coverage(5, orbit_units(5, 2, 4096))
        self.assertFalse(partial["complete"])
        self.assertEqual(partial["covered_sizes"], [0, 1, 2, 30, 31, 32])

    def test_samples_follow_the_seed(self):
        first = sampled_masks(6, 50, seed=11)
        self.assertTrue(np.array_equal(first, sampled_masks(6, 50, seed=11)))
        self.assertFalse(np.array_equal(first, sampled_masks(6, 50, seed=12)))

    def test_population_kinds(self):
        config = VerifierConfig.from_settings(unit_size=100)
        self.assertEqual(sum(len(unit) for unit in population(3, config)), 256)
        self.assertEqual(len(population(3, config)), 3)
        with self.assertRaises(DimensionError):
            population(7, config)


class MapReduceTests(SimpleTestCase):
    def test_single_process(self):
        self.assertEqual(map_reduce(math.factorial, operator.add, [1, 2, 3, 4]), 33)

    def test_workers_keep_unit_order(self):
        self.assertEqual(map_reduce(math.factorial, operator.add, [1, 2, 3, 4], jobs=2), 33)
        self.assertEqual(map_reduce(str, operator.add, [1, 2, 3, 4, 5], jobs=3), "12345")

    def test_needs_units(self):
        with self.assertRaises(ValueError):
            map_reduce(str, operator.add, [])


class IsoperimetryTests(SimpleTestCase):
    def test_inequality_and_uniqueness(self):
        for n in (3, 4):
            report = verify_iso_and_uniqueness(n)
            self.assertTrue(report.passed)
            self.assertEqual(report.summary["families"], 1 << (1 << n))
            self.assertTrue(report.summary["complete"])
            self.assertEqual(report.findings, [])

    def test_conjecture_with_two(self):
        report = verify_conjecture(3, 2)
        self.assertTrue(report.passed)
        self.assertLessEqual(report.summary["max_ratio"], 2)

    def test_conjecture_fails_with_one(self):
        report = verify_conjecture(4, 1)
        self.assertFalse(report.passed)
        self.assertTrue(report.findings)
        for finding in report.findings:
            self.assertGreater(finding.data["dist"], finding.data["excess"])

    def test_stability_table(self):
        rows, constant, witness = stability_table(4)
        table = {(m, l): s for _, m, l, s in rows}
        for m in range(17):
            self.assertEqual(table[m, 0], 0)
        self.assertGreaterEqual(table[7, 2], 4)
        self.assertGreaterEqual(constant, 2)
        self.assertEqual(Fraction(witness["dist"], witness["excess"]), constant)
        with self.assertRaises(DimensionError):
            stability_table(6)

    def test_table_csv(self):
        rows, _, _ = stability_table(2)
        stream = io.StringIO()
        write_s_table_csv(rows, stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(lines[0], "n,m,l,s")
        self.assertEqual(len(lines), len(rows) + 1)

    def test_uncovered_sizes_are_unknown(self):
        rows, constant, _ = stability_table(5, VerifierConfig.from_settings(orbit_max_size=2))
        unknown = [m for _, m, l, s in rows if s == UNKNOWN]
        self.assertEqual(unknown, list(range(3, 30)))
        self.assertTrue(all(l is None for _, m, l, _ in rows if m in unknown))
        self.assertIn((5, 2, 0, 0), rows)
        self.assertGreaterEqual(constant, 0)

        stream = io.StringIO()
        write_s_table_csv(rows, stream)
        self.assertIn("5,3,,unknown", stream.getvalue().splitlines())

    def test_reports_do_not_depend_on_the_split(self):
        baseline = report_lines(verify_conjecture(3, 2))
        self.assertEqual(report_lines(verify_conjecture(3, 2, VerifierConfig.from_settings(unit_size=16))), baseline)
        self.assertEqual(report_lines(verify_conjecture(3, 2, VerifierConfig.from_settings(unit_size=16), jobs=2)), baseline)


class ConstructedExampleTests(SimpleTestCase):
    def test_tightness_family(self):
        self.assertEqual(
            make_tightness_family(4, 4, 2),
            family_from_sets([{1, 2}, {1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}, {3, 4}, {1, 3, 4}, {2, 3, 4}], 4),
        )
        result = check_tightness_family(4, 4, 2)
        self.assertEqual((result["excess"], result["dist"]), (2, 4))

    def test_tightness_holds_for_every_parameter(self):
        for n in range(4, 7):
            for t in range(2, n - 1):
                for s in range(t + 2, n + 1):
                    self.assertTrue(check_tightness_family(n, s, t)["holds"], (n, s, t))

    def test_remark_family(self):
        self.assertEqual(make_remark_family(4, 4), remark_family())
        result = check_remark_family(4, 4)
        self.assertEqual(result["eps"], Fraction(1, 4))
        self.assertEqual(result["checks"]["influence"]["actual"], Fraction(3, 2))
        for t in range(4, 11):
            self.assertTrue(check_remark_family(t, t)["holds"], t)

    def test_bad_parameters(self):
        with self.assertRaises(PreconditionError):
            make_tightness_family(4, 3, 2)
        with self.assertRaises(PreconditionError):
            make_remark_family(4, 3)


class DichotomyTests(SimpleTestCase):
    def test_remark_family_cases(self):
        cases = prop41_cases(remark_family(), 1)
        self.assertEqual(cases["eps"], Fraction(1, 4))
        self.assertFalse(cases["case1"])
        self.assertTrue(cases["case2"])
        self.assertTrue(prop41_cases(remark_family(), Fraction(4, 3))["case2"])

    def test_c2_bound_of_the_remark_family(self):
        num, den, m, excess = c2_bounds(np.array([remark_family().mask], dtype=np.uint64), 4)
        self.assertEqual((int(m[0]), int(excess[0])), (6, 2))
        self.assertGreaterEqual(Fraction(int(num[0]), int(den[0])), Fraction(4, 3))

    def test_sweep(self):
        report = verify_prop41_dichotomy(3)
        self.assertTrue(report.passed)
        self.assertTrue(report.summary["complete"])
        self.assertEqual(len(report.summary["grid"]), 7)
        with self.assertRaises(DimensionError):
            verify_prop41_dichotomy(1)

    def test_argmin_is_exact(self):
        k = 1 << 30
        # k / (k + 1) < (k + 1) / (k + 2), though both round to the same float
        self.assertEqual(exact_argmin(np.array([k + 1, k]), np.array([k + 2, k + 1])), 1)
        self.assertEqual(exact_argmin(np.array([2, 1, 1]), np.array([4, 2, 2])), 0)
        self.assertEqual(exact_argmin(np.array([1, 3, -1]), np.array([0, 2, 1])), 2)

    def test_cells_merge_exactly(self):
        k = 1 << 30
        self.assertEqual(GridCell(1, k + 1, k + 2, 5).merge(GridCell(1, k, k + 1, 6)).mask, 6)
        tied = GridCell(1, 1, 2, 5).merge(GridCell(2, 2, 4, 6))
        self.assertEqual((tied.eligible, tied.mask, tied.c2), (3, 5, Fraction(1, 2)))
        self.assertEqual(GridCell().merge(GridCell(1, -1, 1, 7)).c2, 0)
        self.assertEqual(GridCell(1).c2, "inf")
        self.assertIsNone(GridCell().c2)


class ShiftingSuiteTests(SimpleTestCase):
    def test_pairs(self):
        self.assertEqual(len(list(disjoint_pairs(3))), 27)
        self.assertEqual(len(list(disjoint_pairs(3, max_block=1))), 7)

    def test_slice_identity(self):
        report = verify_slice_identity(3)
        self.assertTrue(report.passed)
        self.assertEqual(report.summary["pairs"], 2048)
        self.assertEqual(report.summary["population"], "exhaustive")

    def test_shifting(self):
        report = verify_shifting(3)
        self.assertTrue(report.passed)
        witness = report.summary["unstable_shift_witness"]
        self.assertIsNotNone(witness)
        self.assertFalse(witness["hypothesis"])
        self.assertGreater(witness["boundary_after"], witness["boundary_before"])

    def test_pivotal_exchanges(self):
        instances = find_pivotal_exchange_instances(3)
        self.assertTrue(instances)
        self.assertTrue(all(instance["holds"] for instance in instances))
        majority = family_from_sets([{1, 2}, {1, 3}, {2, 3}, {1, 2, 3}], 3)
        self.assertIn(majority, [instance["family"] for instance in instances])
        self.assertEqual(len(find_pivotal_exchange_instances(3, limit=1)), 1)

    def test_cascade(self):
        report = verify_cascade(4)
        self.assertTrue(report.passed)
        self.assertEqual(report.summary["stages"], 3)
        self.assertGreater(report.summary["families"], 0)


class BootstrapSuiteTests(SimpleTestCase):
    def test_batch_matches_reports(self):
        n = 3
        masks = all_masks(n)
        single_applies, single_bad, pair_applies, pair_bad = bootstrap_masks(masks, n)
        for k, mask in enumerate(masks.tolist()):
            family = SetFamily(n, mask)
            for i in range(1, n + 1):
                report = bootstrap_single_report(family, i)
                self.assertEqual(bool(single_applies[k, i - 1]), report.applies)
                self.assertEqual(bool(single_bad[k, i - 1]), report.applies and not report.holds)
                for j in range(1, n + 1):
                    if i == j:
                        continue
                    report = bootstrap_pair_report(family, i, j)
                    self.assertEqual(bool(pair_applies[k, i - 1, j - 1]), report.applies)
                    self.assertEqual(bool(pair_bad[k, i - 1, j - 1]), report.applies and not report.holds)

    def test_lemmas_hold_on_every_family(self):
        report = verify_bootstrapping(4)
        self.assertTrue(report.passed)
        self.assertGreater(report.summary["single_cases"], 0)
        self.assertEqual(report.summary["families"], 1 << 16)


class FracLexSuiteTests(SimpleTestCase):
    def test_padding(self):
        padding = check_padding(5)
        self.assertEqual(padding["mismatches"], [])
        self.assertGreater(padding["checked"], 0)

    def test_suite(self):
        report = verify_fraclex(VerifierConfig.from_settings(order1_log_den=5, order2_log_den=4))
        self.assertTrue(report.passed)
        self.assertIsNone(report.n)
        self.assertTrue(all(report.summary["checks"].values()))

    def test_equality_case_is_tight(self):
        self.assertEqual(tuple(mu.to_fraction() for mu in EQUALITY_CASE), (Fraction(1, 16), Fraction(9, 16)))
        report = check_order1_bound(*EQUALITY_CASE)
        self.assertEqual(report.hypothesis_regime, SMALL_MINUS)
        self.assertEqual(report.mu.to_fraction(), Fraction(5, 16))
        self.assertEqual(report.slack, 0)


class RecordReportTests(TestCase):
    def test_run_and_findings_are_stored(self):
        family = family_from_sets([{1, 2}, {1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}, {3, 4}, {1, 3, 4}, {2, 3, 4}], 4)
        report = VerificationReport(
            "conjecture",
            4,
            False,
            {"constant": Fraction(1)},
            [Finding("counterexample", family, {"m": 7, "excess": 2, "dist": 4})],
        )
        run = record_report(report, {"seed": 0, "C": Fraction(1)})
        stored = VerificationRun.objects.get(pk=run.pk)
        self.assertFalse(stored.passed)
        self.assertEqual(stored.parameters, {"seed": 0, "C": "1"})
        self.assertEqual(stored.summary["constant"], "1")
        self.assertEqual(stored.finding_count, 1)
        row = stored.findings.get()
        self.assertEqual((row.n, row.m, row.excess, row.dist), (4, 7, 2, 4))
        self.assertEqual(family_from_literal(row.family), family)
        self.assertEqual(str(stored), "conjecture n=4 (findings)")
