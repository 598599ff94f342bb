import json
import tempfile
from fractions import Fraction
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings

from cube.dyadic import parse_exact
from cube.family import family_from_sets
from cube.literals import family_from_literal
from lex.segments import lex_segment
from search.models import VerificationRun

from .base import EXIT_FINDINGS, EXIT_USAGE


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


def records(*args):
    return [json.loads(line) for line in run(*args).splitlines() if line.strip()]


class FamilyFileTestCase(SimpleTestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.directory = Path(directory.name)

    def family_file(self, literal, name="family.json"):
        path = self.directory / name
        path.write_text(literal if isinstance(literal, str) else json.dumps(literal))
        return str(path)


class LexCommandTests(SimpleTestCase):
    def test_segment(self):
        (record,) = records("lex", "3", "3")
        self.assertEqual(record["boundary"], 5)
        self.assertEqual(parse_exact(record["influence"]), Fraction(5, 4))
        self.assertEqual(family_from_literal(record["family"]), lex_segment(3, 3))

    def test_size_out_of_range(self):
        with self.assertRaises(CommandError) as raised:
            run("lex", "3", "9")
        self.assertEqual(raised.exception.returncode, EXIT_USAGE)


class FamilyCommandTests(FamilyFileTestCase):
    def test_boundary(self):
        path = self.family_file({"n": 3, "sets": ["111", "110", "101"]})
        (record,) = records("boundary", path)
        self.assertEqual((record["boundary"], record["lex_boundary"], record["excess"]), (5, 5, 0))
        self.assertEqual(parse_exact(record["gap"]), 0)

    def test_influence(self):
        path = self.family_file({"n": 3, "sets": ["111", "110", "101"]})
        (record,) = records("influence", path)
        self.assertEqual(parse_exact(record["influence"]), Fraction(5, 4))
        self.assertEqual(parse_exact(record["coordinates"]["1"]), Fraction(3, 4))

        (record,) = records("influence", path, "--coord", "2")
        self.assertEqual(family_from_literal(record["pivotal"]), family_from_sets([{1, 2}], 3))

    def test_shift(self):
        path = self.family_file({"n": 3, "sets": ["100", "110"]})
        (record,) = records("shift", path, "--S", "1", "2", "--T", "3")
        self.assertEqual(family_from_literal(record["family"]), family_from_sets([{1}, {3}], 3))
        self.assertEqual((record["boundary_before"], record["boundary_after"]), (4, 6))
        self.assertFalse(record["stability_hypothesis"])

    def test_shift_with_overlapping_sets(self):
        path = self.family_file({"n": 3, "sets": ["100"]})
        with self.assertRaises(CommandError) as raised:
            run("shift", path, "--S", "1", "--T", "1")
        self.assertEqual(raised.exception.returncode, EXIT_USAGE)

    def test_dist(self):
        family = family_from_sets([{1, 2}, {1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}, {3, 4}, {1, 3, 4}, {2, 3, 4}], 4)
        path = self.family_file({"n": 4, "mask_hex": format(family.mask, "04x")})
        (record,) = records("dist", path)
        self.assertEqual((record["dist"], record["excess"]), (4, 2))
        self.assertEqual(len(record["automorphism"]["pi"]), 4)
        image = family_from_literal(record["image"])
        self.assertEqual(bin(image.mask ^ family.mask).count("1"), 4)

    def test_malformed_files(self):
        for literal in ["{not json", {"n": 3}, {"n": 3, "sets": ["11"]}, {"n": 3, "sets": ["110", "110"]}]:
            path = self.family_file(literal)
            with self.assertRaises(CommandError) as raised:
                run("boundary", path)
            self.assertEqual(raised.exception.returncode, EXIT_USAGE)
        with self.assertRaises(CommandError):
            run("boundary", str(self.directory / "missing.json"))


class ExampleCommandTests(SimpleTestCase):
    def test_remark(self):
        (record,) = records("example", "remark", "--n", "4", "--t", "4")
        self.assertTrue(record["holds"])
        self.assertEqual(record["example"], "remark")
        self.assertEqual(parse_exact(record["eps"]), Fraction(1, 4))

    def test_tightness(self):
        (record,) = records("example", "tightness", "--n", "5", "--t", "2")
        self.assertTrue(record["holds"])
        self.assertEqual(record["s"], 5)
        self.assertEqual(record["dist"], 2 * record["excess"])

    def test_bad_parameters(self):
        with self.assertRaises(CommandError) as raised:
            run("example", "tightness", "--n", "4", "--s", "3", "--t", "2")
        self.assertEqual(raised.exception.returncode, EXIT_USAGE)


class VerifyCommandTests(SimpleTestCase):
    def test_conjecture_passes(self):
        summary = records("verify", "conjecture", "--n", "3")[0]
        self.assertEqual(summary["record"], "summary")
        self.assertTrue(summary["passed"])
        self.assertEqual(summary["constant"], "2")
        self.assertTrue(summary["complete"])
        self.assertEqual(summary["covered_sizes"], list(range(9)))

    def test_counterexamples_exit_with_findings(self):
        out = StringIO()
        with self.assertRaises(CommandError) as raised:
            call_command("verify", "conjecture", "--n", "4", "--C", "1", stdout=out)
        self.assertEqual(raised.exception.returncode, EXIT_FINDINGS)
        lines = [json.loads(line) for line in out.getvalue().splitlines()]
        self.assertFalse(lines[0]["passed"])
        self.assertTrue(all(line["record"] == "finding" for line in lines[1:]))
        self.assertEqual(len(lines) - 1, lines[0]["findings"])

    @override_settings(CUBE_ISO={"UNIT_SIZE": 16})
    def test_output_does_not_depend_on_jobs(self):
        single = run("verify", "conjecture", "--n", "3", "--jobs", "1")
        self.assertEqual(run("verify", "conjecture", "--n", "3", "--jobs", "2"), single)

    def test_usage_errors(self):
        for args in (("verify", "conjecture"), ("verify", "iso", "--n", "3", "--jobs", "0"), ("verify", "conjecture", "--n", "3", "--C", "1/0")):
            with self.assertRaises(CommandError) as raised:
                run(*args)
            self.assertEqual(raised.exception.returncode, EXIT_USAGE)

    def test_uniqueness_keeps_its_name(self):
        summary = records("verify", "uniqueness", "--n", "3")[0]
        self.assertEqual(summary["kind"], "uniqueness")
        self.assertEqual(summary["uniqueness_violations"], 0)

    def test_default_dimension(self):
        summary = records("verify", "slices")[0]
        self.assertEqual((summary["n"], summary["pairs"]), (3, 2048))

    @override_settings(CUBE_ISO={"ORDER1_LOG_DEN": 5, "ORDER2_LOG_DEN": 4})
    def test_fraclex(self):
        summary = records("verify", "fraclex")[0]
        self.assertTrue(summary["passed"])
        self.assertIsNone(summary["n"])


class StableCommandTests(SimpleTestCase):
    def test_csv(self):
        lines = run("stable", "3").splitlines()
        self.assertEqual(lines[0], "n,m,l,s")
        self.assertIn("3,0,0,0", lines)
        self.assertTrue(all(line.startswith("3,") for line in lines[1:]))

    @override_settings(CUBE_ISO={"ORBIT_MAX_SIZE": 2})
    def test_uncovered_sizes(self):
        lines = run("stable", "5").splitlines()
        self.assertIn("5,2,0,0", lines)
        self.assertIn("5,16,,unknown", lines)
        self.assertNotIn("5,30,,unknown", lines)

    def test_dimension_limit(self):
        with self.assertRaises(CommandError) as raised:
            run("stable", "6")
        self.assertEqual(raised.exception.returncode, EXIT_USAGE)


class RunsCommandTests(TestCase):
    def test_recorded_runs_are_listed(self):
        run("verify", "slices", "--n", "2", "--record")
        self.assertEqual(VerificationRun.objects.count(), 1)
        (record,) = records("runs")
        self.assertEqual((record["kind"], record["n"], record["passed"], record["findings"]), ("slices", 2, True, 0))
        self.assertEqual(record["parameters"]["n"], 2)
        self.assertEqual(records("runs", "--kind", "iso"), [])
