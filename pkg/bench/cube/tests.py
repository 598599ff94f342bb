import json
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from cube.batch import (
    all_masks,
    bit_count64,
    bit_lengths,
    boundary_sizes,
    coordinate_boundaries,
    increasing_flags,
    sizes,
    slice_counts,
    slice_masks,
)
from cube.dyadic import Dyadic, format_exact, parse_exact
from cube.exceptions import CubeError, DimensionError, FamilyFormatError, PreconditionError
from cube.family import (
    SetFamily,
    complement,
    coordinate_boundary,
    decompose_influence,
    dictatorship,
    edge_boundary_size,
    empty_family,
    family_from_sets,
    full_family,
    influence,
    is_increasing,
    measure,
    pivotal_family,
    slice_family,
    subcube,
    subset_from_index,
    subset_index,
    symmetric_difference_size,
    total_influence,
)
from cube.literals import family_from_literal, family_to_literal, load_family_file
from cube.stats import slice_stats, slice_stats2
from lex.segments import lex_segment


def remark_family():
    # {S : {1,2} in S, S meets {3,4}} | {S : {3,4} in S}
    return family_from_sets([{1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}, {3, 4}, {1, 3, 4}, {2, 3, 4}], 4)


class DyadicTests(SimpleTestCase):
    def test_values_are_reduced(self):
        self.assertEqual(Dyadic(2, 2), Dyadic(1, 1))
        self.assertEqual(Dyadic(4, 2).log_den, 0)
        self.assertEqual(Dyadic(0, 7), Dyadic(0))

    def test_arithmetic(self):
        self.assertEqual(Dyadic(1, 1) + Dyadic(1, 2), Dyadic(3, 2))
        self.assertEqual(1 - Dyadic(3, 3), Dyadic(5, 3))
        self.assertEqual(3 * Dyadic(1, 2), Dyadic(3, 2))
        self.assertEqual(Dyadic(3).halve(2), Dyadic(3, 2))
        self.assertEqual(Dyadic(3, 2).double(3), Dyadic(6))
        self.assertEqual(abs(Dyadic(-1, 3)), Dyadic(1, 3))

    def test_comparison_against_int_and_fraction(self):
        self.assertEqual(Dyadic(1, 1), Fraction(1, 2))
        self.assertLess(Dyadic(3, 3), Fraction(1, 2))
        self.assertGreater(Dyadic(5, 2), 1)
        self.assertEqual(hash(Dyadic(1, 1)), hash(Fraction(1, 2)))

    def test_text_forms(self):
        self.assertEqual(str(Dyadic(3, 3)), "3/2^3")
        self.assertEqual(str(Dyadic(4, 1)), "2")
        self.assertEqual(Dyadic.parse("3/2^3"), Dyadic(3, 3))
        self.assertEqual(Dyadic.of("6/16"), Dyadic(3, 3))
        self.assertEqual(format_exact(Fraction(1, 6)), "1/6")
        self.assertEqual(format_exact(Fraction(1, 4)), "1/2^2")
        self.assertEqual(parse_exact("1/6"), Fraction(1, 6))
        self.assertEqual(parse_exact("3/2^2"), Fraction(3, 4))
        self.assertEqual(parse_exact(2), Fraction(2))

    def test_rejects_non_dyadic(self):
        with self.assertRaises(CubeError):
            Dyadic.of(Fraction(1, 3))
        with self.assertRaises(CubeError):
            parse_exact("1/0")
        with self.assertRaises(CubeError):
            Dyadic.parse("half")


class FamilyTests(SimpleTestCase):
    def test_index_convention(self):
        self.assertEqual(subset_index({1}, 3), 4)
        self.assertEqual(subset_index({1, 2}, 3), 6)
        self.assertEqual(subset_from_index(5, 3), frozenset({1, 3}))

    def test_constructors(self):
        self.assertEqual(family_from_sets([], 3).size, 0)
        self.assertEqual(full_family(3).size, 8)
        family = family_from_sets([{1, 2}, {1, 3}, {1, 2, 3}], 3)
        self.assertEqual(family.mask, (1 << 6) | (1 << 5) | (1 << 7))
        self.assertEqual(family.members(), [frozenset({1, 2, 3}), frozenset({1, 2}), frozenset({1, 3})])
        self.assertIn({1, 3}, family)
        self.assertNotIn({3}, family)

    def test_construction_errors(self):
        with self.assertRaises(FamilyFormatError):
            family_from_sets([{4}], 3)
        with self.assertRaises(FamilyFormatError):
            family_from_sets([{1}, {1}], 3)
        with self.assertRaises(FamilyFormatError):
            SetFamily(2, 1 << 4)
        with self.assertRaises(DimensionError):
            empty_family(13)
        with self.assertRaises(PreconditionError):
            subcube(3, {1}, {2})

    def test_measure(self):
        self.assertEqual(measure(empty_family(4)), 0)
        self.assertEqual(measure(dictatorship(4, 1)), Fraction(1, 2))
        self.assertEqual(measure(remark_family()), Fraction(3, 8))

    def test_edge_boundary(self):
        for n in range(1, 6):
            for d in range(n + 1):
                block = set(range(d + 1, n + 1))
                self.assertEqual(edge_boundary_size(subcube(n, block, ())), (n - d) << d)
        self.assertEqual(edge_boundary_size(lex_segment(3, 3)), 5)
        self.assertEqual(edge_boundary_size(remark_family()), 12)

    def test_influence(self):
        for n in range(1, 7):
            self.assertEqual(total_influence(dictatorship(n, 1)), 1)
        self.assertEqual(total_influence(remark_family()), Fraction(3, 2))
        self.assertEqual(total_influence(lex_segment(3, 3)), Fraction(5, 4))
        self.assertEqual(influence(dictatorship(4, 1), 1), 1)
        self.assertEqual(influence(dictatorship(4, 1), 2), 0)
        self.assertEqual(influence(full_family(3), 2), 0)
        self.assertEqual(influence(lex_segment(3, 3), 1), Fraction(3, 4))

    def test_influences_sum_to_total(self):
        for mask in range(0, 1 << 16, 97):
            family = SetFamily(4, mask)
            total = sum((influence(family, i) for i in range(1, 5)), Dyadic(0))
            self.assertEqual(total, total_influence(family))

    def test_total_influence_is_scaled_boundary(self):
        rng = np.random.default_rng(2024)
        sampled = {
            4: range(0, 1 << 16, 257),
            5: rng.integers(0, 1 << 32, size=40).tolist(),
            6: [high << 32 | low for high, low in rng.integers(0, 1 << 32, size=(40, 2)).tolist()],
        }
        for n in range(1, 7):
            for mask in sampled.get(n, range(1 << (1 << n))):
                family = SetFamily(n, mask)
                total = total_influence(family)
                self.assertEqual(total, Fraction(edge_boundary_size(family), 1 << (n - 1)))
                self.assertEqual(sum((influence(family, i) for i in range(1, n + 1)), Dyadic(0)), total)

    def test_pivotal_family(self):
        self.assertEqual(pivotal_family(dictatorship(3, 1), 1), dictatorship(3, 1))
        self.assertEqual(pivotal_family(full_family(3), 2), empty_family(3))
        # {1,3} and {1,2,3} are both members, so only {1,2} has its partner outside
        self.assertEqual(pivotal_family(lex_segment(3, 3), 2), family_from_sets([{1, 2}], 3))

    def test_slices(self):
        self.assertEqual(slice_family(dictatorship(3, 1), {1}, {1}), full_family(2))
        self.assertEqual(slice_family(dictatorship(3, 1), {1}, ()), empty_family(2))
        minus = slice_family(remark_family(), {1}, ())
        # {3,4} and {2,3,4} re-indexed onto coordinates 2, 3, 4
        self.assertEqual(minus, family_from_sets([{2, 3}, {1, 2, 3}], 3))
        self.assertEqual(measure(minus), Fraction(1, 4))

    def test_is_increasing(self):
        self.assertTrue(is_increasing(dictatorship(4, 2)))
        self.assertFalse(is_increasing(family_from_sets([()], 3)))
        self.assertTrue(is_increasing(remark_family()))

    def test_complement_and_distance(self):
        family = lex_segment(3, 3)
        self.assertEqual(complement(family).size, 5)
        self.assertEqual(edge_boundary_size(complement(family)), edge_boundary_size(family))
        self.assertEqual(symmetric_difference_size(family, complement(family)), 8)
        with self.assertRaises(DimensionError):
            symmetric_difference_size(family, empty_family(4))

    def test_influence_decomposition(self):
        family = remark_family()
        self.assertEqual(decompose_influence(family, ()), (total_influence(family), 0))
        self.assertEqual(decompose_influence(family, {1, 2, 3, 4}), (0, total_influence(family)))
        expectation, influence_sum = decompose_influence(family, {1})
        self.assertEqual(expectation + influence_sum, Fraction(3, 2))
        for mask in range(256):
            family = SetFamily(3, mask)
            for index in range(8):
                expectation, influence_sum = decompose_influence(family, subset_from_index(index, 3))
                self.assertEqual(expectation + influence_sum, total_influence(family))


class SliceStatsTests(SimpleTestCase):
    def test_dictatorship(self):
        stats = slice_stats(dictatorship(4, 1), 1)
        self.assertEqual((stats.mu_plus, stats.mu_minus), (1, 0))
        self.assertEqual((stats.eps_plus, stats.eps_minus), (0, 0))

    def test_remark_family(self):
        stats = slice_stats(remark_family(), 1)
        self.assertEqual(stats.mu_plus, Fraction(1, 2))
        self.assertEqual(stats.eps_plus, Fraction(1, 2))
        self.assertEqual(stats.mu_minus, Fraction(1, 4))

    def test_lex_slices_have_no_gap(self):
        for n in range(1, 5):
            for m in range((1 << n) + 1):
                segment = lex_segment(n, m)
                for i in range(1, n + 1):
                    stats = slice_stats(segment, i)
                    self.assertEqual((stats.eps_plus, stats.eps_minus), (0, 0))

    def test_pair_statistics(self):
        stats = slice_stats2(remark_family(), 1, 2)
        self.assertEqual(stats.mu_pp, Fraction(3, 4))
        self.assertEqual(stats.eps_pp, 0)
        self.assertEqual(stats.mu_pp + stats.mu_pm + stats.mu_mp + stats.mu_mm, 4 * Fraction(3, 8))
        self.assertNotIn("mu_pp", slice_stats(remark_family(), 1).to_dict())
        with self.assertRaises(PreconditionError):
            slice_stats2(remark_family(), 2, 2)


class LiteralTests(SimpleTestCase):
    def test_sets_form(self):
        family = family_from_literal({"n": 4, "sets": ["1100", "0011"]})
        self.assertEqual(family, family_from_sets([{1, 2}, {3, 4}], 4))
        self.assertEqual(family_to_literal(family), {"n": 4, "sets": ["1100", "0011"]})

    def test_hex_form(self):
        family = family_from_literal('{"n": 3, "mask_hex": "e0"}')
        self.assertEqual(family, lex_segment(3, 3))
        self.assertEqual(family_to_literal(family, "mask_hex"), {"n": 3, "mask_hex": "e0"})

    def test_emitted_literals_parse_back(self):
        for mask in range(0, 1 << 16, 331):
            family = SetFamily(4, mask)
            for form in ("sets", "mask_hex"):
                self.assertEqual(family_from_literal(json.dumps(family_to_literal(family, form))), family)

    def test_malformed_literals(self):
        bad = [
            "not json",
            {"sets": []},
            {"n": 3},
            {"n": 3, "sets": [], "mask_hex": "0"},
            {"n": 3, "sets": ["10"]},
            {"n": 3, "sets": ["102"]},
            {"n": 3, "sets": ["100", "100"]},
            {"n": 2, "mask_hex": "1ff"},
            {"n": 2, "mask_hex": "zz"},
            {"n": 20, "sets": []},
        ]
        for literal in bad:
            with self.subTest(literal=literal), self.assertRaises(FamilyFormatError):
                family_from_literal(literal)

    def test_family_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "family.json"
            path.write_text(json.dumps({"n": 3, "sets": ["111", "110", "101"]}))
            self.assertEqual(load_family_file(path), lex_segment(3, 3))
            with self.assertRaises(FamilyFormatError):
                load_family_file(Path(directory) / "missing.json")


class BatchTests(SimpleTestCase):
    """Vectorized operations against their scalar counterparts."""

    def setUp(self):
        self.masks = all_masks(4)

    def test_popcount(self):
        values = np.array([0, 1, 0xFFFFFFFFFFFFFFFF, 0x8000000000000001], dtype=np.uint64)
        self.assertEqual(bit_count64(values).tolist(), [0, 1, 64, 2])
        self.assertEqual(sizes(self.masks).tolist(), [int(m).bit_count() for m in self.masks.tolist()])

    def test_boundaries(self):
        directions = coordinate_boundaries(self.masks, 4)
        totals = boundary_sizes(self.masks, 4)
        for mask in range(0, 1 << 16, 61):
            family = SetFamily(4, mask)
            self.assertEqual(directions[mask].tolist(), [coordinate_boundary(family, i) for i in range(1, 5)])
            self.assertEqual(int(totals[mask]), edge_boundary_size(family))

    def test_coordinate_boundaries_add_up(self):
        for n in range(1, 5):
            masks = all_masks(n)
            self.assertTrue(np.array_equal(coordinate_boundaries(masks, n).sum(axis=1), boundary_sizes(masks, n)))

    def test_complements_share_boundaries(self):
        for n in range(1, 5):
            masks = all_masks(n)
            full = np.uint64((1 << (1 << n)) - 1)
            self.assertTrue(np.array_equal(boundary_sizes(masks ^ full, n), boundary_sizes(masks, n)))

    def test_bit_lengths(self):
        values = np.arange(-3, 1 << 12)
        expected = [max(v, 0).bit_length() for v in values.tolist()]
        self.assertEqual(bit_lengths(values, 12).tolist(), expected)
        # float rounding would report 54 here
        self.assertEqual(bit_lengths(np.array([(1 << 53) - 1]), 53).tolist(), [53])

    def test_increasing(self):
        flags = increasing_flags(self.masks, 4)
        expected = [is_increasing(SetFamily(4, mask)) for mask in range(1 << 16)]
        self.assertEqual(flags.tolist(), expected)
        # 168 increasing families on four points
        self.assertEqual(int(flags.sum()), 168)

    def test_slices(self):
        masks = all_masks(3)
        for block, chosen in [({1}, {1}), ({2}, ()), ({1, 3}, {3}), ({1, 2, 3}, {1, 2})]:
            sliced = slice_masks(masks, 3, block, chosen)
            counts, boundaries = slice_counts(masks, 3, block, chosen)
            for mask in range(256):
                expected = slice_family(SetFamily(3, mask), block, chosen)
                self.assertEqual(int(sliced[mask]), expected.mask)
                self.assertEqual(int(counts[mask]), expected.size)
                self.assertEqual(int(boundaries[mask]), edge_boundary_size(expected))
